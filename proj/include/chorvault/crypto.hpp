#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "chorvault/bytes.hpp"

namespace chorvault::crypto {

inline constexpr std::size_t kHashSize = 32;
inline constexpr std::size_t kKeySize = 32;
inline constexpr std::size_t kNonceSize = 12;
inline constexpr std::size_t kTagSize = 16;
inline constexpr std::size_t kSeedSize = 32;
inline constexpr std::size_t kPublicKeySize = 32;
inline constexpr std::size_t kSecretKeySize = 64;
inline constexpr std::size_t kSignatureSize = 64;

using Hash = std::array<std::uint8_t, kHashSize>;
using Key = std::array<std::uint8_t, kKeySize>;

/// AEAD open failed: ciphertext or tag does not authenticate.
class AeadFailure : public std::runtime_error {
public:
    AeadFailure() : std::runtime_error("aead: authentication failed") {}
};

Hash sha256(BytesView data);
Hash hmac_sha256(const Key& key, BytesView data);

/// Extract-and-expand KDF (HKDF-SHA256). `okm` is always 32 bytes here.
Key hkdf(BytesView salt, BytesView ikm, BytesView info);

/// ChaCha20-Poly1305-IETF, 96-bit nonce, 128-bit tag appended.
Bytes aead_seal(const Key& key, BytesView nonce, BytesView plaintext, BytesView aad);
Bytes aead_open(const Key& key, BytesView nonce, BytesView ciphertext, BytesView aad);

struct SignatureKeyPair {
    std::array<std::uint8_t, kPublicKeySize> public_key{};
    std::array<std::uint8_t, kSecretKeySize> secret_key{};
};

SignatureKeyPair signature_keypair(const std::array<std::uint8_t, kSeedSize>& seed);
std::array<std::uint8_t, kSignatureSize> sign(const SignatureKeyPair& kp, BytesView message);
bool verify(const std::array<std::uint8_t, kPublicKeySize>& pub,
            BytesView message,
            const std::array<std::uint8_t, kSignatureSize>& sig);

void random_bytes(std::span<std::uint8_t> out);

/// Deterministic byte stream (keyed-hash counter mode). Seeded instances
/// reproduce the same stream; default-constructed ones draw an OS-random key.
/// Not synchronized: callers own the locking or fork() per thread.
class Rng {
public:
    Rng();
    explicit Rng(std::uint64_t seed);

    void fill(std::span<std::uint8_t> out);
    std::uint64_t next_u64();
    /// Derives an independent generator; streams do not overlap.
    Rng fork();

private:
    explicit Rng(const Key& key) : key_(key) {}

    Key key_{};
    std::uint64_t counter_ = 0;
    std::array<std::uint8_t, kHashSize> block_{};
    std::size_t avail_ = 0;
};

}  // namespace chorvault::crypto
