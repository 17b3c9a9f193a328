#include "chorvault/crypto.hpp"

#include <sodium.h>

#include <cstring>
#include <mutex>

namespace chorvault::crypto {

namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) {
            throw std::runtime_error("libsodium initialization failed");
        }
    });
}

}  // namespace

std::string hex_encode_impl(BytesView data);

Hash sha256(BytesView data) {
    ensure_sodium();
    Hash out{};
    crypto_hash_sha256(out.data(), data.data(), data.size());
    return out;
}

Hash hmac_sha256(const Key& key, BytesView data) {
    ensure_sodium();
    crypto_auth_hmacsha256_state st;
    crypto_auth_hmacsha256_init(&st, key.data(), key.size());
    crypto_auth_hmacsha256_update(&st, data.data(), data.size());
    Hash out{};
    crypto_auth_hmacsha256_final(&st, out.data());
    return out;
}

Key hkdf(BytesView salt, BytesView ikm, BytesView info) {
    ensure_sodium();
    // Extract: PRK = HMAC(salt, ikm). Empty salt means a zero key.
    Key salt_key{};
    if (!salt.empty()) {
        if (salt.size() == kKeySize) {
            std::memcpy(salt_key.data(), salt.data(), kKeySize);
        } else {
            salt_key = sha256(salt);
        }
    }
    Key prk = hmac_sha256(salt_key, ikm);
    // Expand, single block: OKM = HMAC(PRK, info || 0x01).
    Bytes block(info.begin(), info.end());
    block.push_back(0x01);
    return hmac_sha256(prk, block);
}

Bytes aead_seal(const Key& key, BytesView nonce, BytesView plaintext, BytesView aad) {
    ensure_sodium();
    if (nonce.size() != kNonceSize) {
        throw std::runtime_error("aead: bad nonce size");
    }
    Bytes out(plaintext.size() + kTagSize);
    unsigned long long out_len = 0;
    crypto_aead_chacha20poly1305_ietf_encrypt(
        out.data(), &out_len, plaintext.data(), plaintext.size(), aad.data(), aad.size(),
        nullptr, nonce.data(), key.data());
    out.resize(static_cast<std::size_t>(out_len));
    return out;
}

Bytes aead_open(const Key& key, BytesView nonce, BytesView ciphertext, BytesView aad) {
    ensure_sodium();
    if (nonce.size() != kNonceSize || ciphertext.size() < kTagSize) {
        throw AeadFailure();
    }
    Bytes out(ciphertext.size() - kTagSize);
    unsigned long long out_len = 0;
    int rc = crypto_aead_chacha20poly1305_ietf_decrypt(
        out.empty() ? reinterpret_cast<unsigned char*>(&out) : out.data(), &out_len, nullptr,
        ciphertext.data(), ciphertext.size(), aad.data(), aad.size(), nonce.data(), key.data());
    if (rc != 0) {
        throw AeadFailure();
    }
    out.resize(static_cast<std::size_t>(out_len));
    return out;
}

SignatureKeyPair signature_keypair(const std::array<std::uint8_t, kSeedSize>& seed) {
    ensure_sodium();
    SignatureKeyPair kp;
    crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed.data());
    return kp;
}

std::array<std::uint8_t, kSignatureSize> sign(const SignatureKeyPair& kp, BytesView message) {
    ensure_sodium();
    std::array<std::uint8_t, kSignatureSize> sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), kp.secret_key.data());
    return sig;
}

bool verify(const std::array<std::uint8_t, kPublicKeySize>& pub,
            BytesView message,
            const std::array<std::uint8_t, kSignatureSize>& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pub.data()) == 0;
}

void random_bytes(std::span<std::uint8_t> out) {
    ensure_sodium();
    randombytes_buf(out.data(), out.size());
}

Rng::Rng() {
    random_bytes(key_);
}

Rng::Rng(std::uint64_t seed) {
    Key zero{};
    Encoder enc;
    enc.put_string("chorvault.rng.seed");
    enc.put_u64(seed);
    key_ = hmac_sha256(zero, enc.bytes());
}

void Rng::fill(std::span<std::uint8_t> out) {
    std::size_t off = 0;
    while (off < out.size()) {
        if (avail_ == 0) {
            Encoder enc;
            enc.put_u64(counter_++);
            block_ = hmac_sha256(key_, enc.bytes());
            avail_ = block_.size();
        }
        std::size_t n = std::min(avail_, out.size() - off);
        std::memcpy(out.data() + off, block_.data() + (block_.size() - avail_), n);
        avail_ -= n;
        off += n;
    }
}

std::uint64_t Rng::next_u64() {
    std::array<std::uint8_t, 8> b{};
    fill(b);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | b[static_cast<std::size_t>(i)];
    }
    return v;
}

Rng Rng::fork() {
    Encoder enc;
    enc.put_string("chorvault.rng.fork");
    enc.put_u64(counter_);
    counter_ += 1U << 20;  // reserve a block range for the child
    return Rng(hmac_sha256(key_, enc.bytes()));
}

}  // namespace chorvault::crypto
