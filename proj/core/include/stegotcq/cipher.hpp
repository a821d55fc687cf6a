#pragma once

#include <memory>

#include "stegotcq/prf.hpp"

namespace stegotcq {

/// Matched asymmetric key pair as produced by a cipher provider.
struct KeyPair {
    std::vector<std::uint8_t> public_key;
    std::vector<std::uint8_t> private_key;
};

/// 256-bit temporary session key, transported during the initialization phase.
struct TempKey {
    Key256 seed{};

    bool operator==(const TempKey&) const = default;
};

TempKey random_temp_key(std::uint64_t rng_seed);

/// Pluggable asymmetric cipher: encrypt with the public key, decrypt with the
/// private one, ciphertext indistinguishable from coin flips.
class CipherProvider {
   public:
    virtual ~CipherProvider() = default;

    virtual KeyPair generate_keypair(std::uint64_t rng_seed) const = 0;
    virtual std::vector<std::uint8_t> encrypt(std::span<const std::uint8_t> plaintext,
                                              std::span<const std::uint8_t> public_key) const = 0;
    virtual std::vector<std::uint8_t> decrypt(std::span<const std::uint8_t> ciphertext,
                                              std::span<const std::uint8_t> private_key) const = 0;
};

/// Deterministic keyed test cipher: the public key is a PRF image of the
/// private key and the ciphertext is a keystream XOR. Self-contained and
/// reproducible; not a real cryptosystem, which stays out of scope behind
/// this interface.
class XorStreamCipher final : public CipherProvider {
   public:
    KeyPair generate_keypair(std::uint64_t rng_seed) const override;
    std::vector<std::uint8_t> encrypt(std::span<const std::uint8_t> plaintext,
                                      std::span<const std::uint8_t> public_key) const override;
    std::vector<std::uint8_t> decrypt(std::span<const std::uint8_t> ciphertext,
                                      std::span<const std::uint8_t> private_key) const override;

    static std::vector<std::uint8_t> public_from_private(std::span<const std::uint8_t> private_key);
};

}  // namespace stegotcq
