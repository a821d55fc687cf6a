#include "stegotcq/cipher.hpp"

#include "stegotcq/errors.hpp"

namespace stegotcq {

TempKey random_temp_key(std::uint64_t rng_seed) {
    TempKey key;
    PrfStream stream(key_from_seed(rng_seed), "temp-key");
    stream.fill(key.seed);
    return key;
}

KeyPair XorStreamCipher::generate_keypair(std::uint64_t rng_seed) const {
    KeyPair pair;
    Key256 prv{};
    PrfStream stream(key_from_seed(rng_seed), "keypair");
    stream.fill(prv);
    pair.private_key.assign(prv.begin(), prv.end());
    pair.public_key = public_from_private(pair.private_key);
    return pair;
}

std::vector<std::uint8_t> XorStreamCipher::public_from_private(
    std::span<const std::uint8_t> private_key) {
    const Key256 derived = derive_subkey(key_from_bytes(private_key), "public-key");
    return {derived.begin(), derived.end()};
}

std::vector<std::uint8_t> XorStreamCipher::encrypt(std::span<const std::uint8_t> plaintext,
                                                   std::span<const std::uint8_t> public_key) const {
    if (public_key.empty()) throw InvalidParameterError("cipher: empty public key");
    PrfStream stream(key_from_bytes(public_key), "xor-keystream");
    std::vector<std::uint8_t> out(plaintext.begin(), plaintext.end());
    for (auto& b : out) b ^= stream.next_byte();
    return out;
}

std::vector<std::uint8_t> XorStreamCipher::decrypt(std::span<const std::uint8_t> ciphertext,
                                                   std::span<const std::uint8_t> private_key) const {
    if (private_key.empty()) throw InvalidParameterError("cipher: empty private key");
    return encrypt(ciphertext, public_from_private(private_key));
}

}  // namespace stegotcq
