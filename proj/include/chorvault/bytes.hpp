#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chorvault {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
    return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
    return std::string(b.begin(), b.end());
}

std::string hex_encode(BytesView data);
Bytes hex_decode(std::string_view hex);

/// Thrown by Decoder on truncated or malformed input.
class CodecError : public std::runtime_error {
public:
    explicit CodecError(const std::string& what) : std::runtime_error(what) {}
};

/// Little-endian binary writer with length-prefixed strings/blobs.
/// All on-wire integers are fixed-width LE; blobs carry a u32 length.
class Encoder {
public:
    void put_u8(std::uint8_t v) { buf_.push_back(v); }
    void put_u32(std::uint32_t v);
    void put_u64(std::uint64_t v);
    void put_i64(std::int64_t v) { put_u64(static_cast<std::uint64_t>(v)); }
    void put_bytes(BytesView b);
    void put_string(std::string_view s);
    void put_raw(BytesView b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class Decoder {
public:
    explicit Decoder(BytesView data) : data_(data) {}

    std::uint8_t get_u8();
    std::uint32_t get_u32();
    std::uint64_t get_u64();
    std::int64_t get_i64() { return static_cast<std::int64_t>(get_u64()); }
    Bytes get_bytes();
    std::string get_string();
    Bytes get_raw(std::size_t n);

    bool done() const { return pos_ == data_.size(); }
    void expect_done() const;

private:
    void need(std::size_t n) const;

    BytesView data_;
    std::size_t pos_ = 0;
};

}  // namespace chorvault
