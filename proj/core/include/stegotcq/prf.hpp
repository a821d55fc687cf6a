#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace stegotcq {

/// 256-bit key used throughout for keyed pseudo-random expansion.
using Key256 = std::array<std::uint8_t, 32>;

Key256 key_from_bytes(std::span<const std::uint8_t> bytes);
Key256 key_from_seed(std::uint64_t seed);

std::string key_hex(const Key256& key);
Key256 key_from_hex(std::string_view hex);

/// ChaCha20 block function (RFC 8439). 64-byte output per (key, nonce, counter).
void chacha20_block(const Key256& key, const std::array<std::uint8_t, 12>& nonce,
                    std::uint32_t counter, std::uint8_t out[64]);

/// Deterministic keyed byte/word/double stream. The nonce is derived from a short
/// domain string so independent uses of one key never share output.
class PrfStream {
   public:
    PrfStream(const Key256& key, std::string_view domain);

    std::uint8_t next_byte();
    std::uint64_t next_u64();
    /// Uniform double in [0, 1), 53 bits of precision.
    double next_unit();
    void fill(std::span<std::uint8_t> out);

   private:
    void refill();

    Key256 key_;
    std::array<std::uint8_t, 12> nonce_{};
    std::uint32_t counter_ = 0;
    std::array<std::uint8_t, 64> block_{};
    std::size_t pos_ = 64;
};

/// Expand a sub-key for an independent purpose (dither tables, interleavers, keystreams).
Key256 derive_subkey(const Key256& key, std::string_view domain);

/// CRC-32 (IEEE 802.3, reflected) over a byte span.
std::uint32_t crc32(std::span<const std::uint8_t> data);

}  // namespace stegotcq
