#include "stegotcq/prf.hpp"

#include <cstring>

#include "stegotcq/errors.hpp"

namespace stegotcq {

namespace {

inline std::uint32_t rotl32(std::uint32_t v, int n) { return (v << n) | (v >> (32 - n)); }

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c, std::uint32_t& d) {
    a += b; d ^= a; d = rotl32(d, 16);
    c += d; b ^= c; b = rotl32(b, 12);
    a += b; d ^= a; d = rotl32(d, 8);
    c += d; b ^= c; b = rotl32(b, 7);
}

inline std::uint32_t load_le32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

inline void store_le32(std::uint8_t* p, std::uint32_t v) {
    p[0] = std::uint8_t(v);
    p[1] = std::uint8_t(v >> 8);
    p[2] = std::uint8_t(v >> 16);
    p[3] = std::uint8_t(v >> 24);
}

}  // namespace

void chacha20_block(const Key256& key, const std::array<std::uint8_t, 12>& nonce,
                    std::uint32_t counter, std::uint8_t out[64]) {
    std::uint32_t state[16];
    state[0] = 0x61707865;
    state[1] = 0x3320646e;
    state[2] = 0x79622d32;
    state[3] = 0x6b206574;
    for (int i = 0; i < 8; ++i) state[4 + i] = load_le32(key.data() + 4 * i);
    state[12] = counter;
    for (int i = 0; i < 3; ++i) state[13 + i] = load_le32(nonce.data() + 4 * i);

    std::uint32_t w[16];
    std::memcpy(w, state, sizeof w);
    for (int round = 0; round < 10; ++round) {
        quarter_round(w[0], w[4], w[8], w[12]);
        quarter_round(w[1], w[5], w[9], w[13]);
        quarter_round(w[2], w[6], w[10], w[14]);
        quarter_round(w[3], w[7], w[11], w[15]);
        quarter_round(w[0], w[5], w[10], w[15]);
        quarter_round(w[1], w[6], w[11], w[12]);
        quarter_round(w[2], w[7], w[8], w[13]);
        quarter_round(w[3], w[4], w[9], w[14]);
    }
    for (int i = 0; i < 16; ++i) store_le32(out + 4 * i, w[i] + state[i]);
}

Key256 key_from_bytes(std::span<const std::uint8_t> bytes) {
    Key256 key{};
    // Short inputs zero-pad; longer inputs fold in via a PRF pass so all bytes matter.
    if (bytes.size() <= key.size()) {
        std::copy(bytes.begin(), bytes.end(), key.begin());
        return key;
    }
    Key256 acc{};
    std::array<std::uint8_t, 12> nonce{};
    std::uint8_t block[64];
    std::uint32_t counter = 0;
    for (std::size_t off = 0; off < bytes.size(); off += 32) {
        Key256 chunk{};
        const std::size_t n = std::min<std::size_t>(32, bytes.size() - off);
        std::copy(bytes.begin() + off, bytes.begin() + off + n, chunk.begin());
        for (int i = 0; i < 32; ++i) chunk[i] ^= acc[i];
        chacha20_block(chunk, nonce, counter++, block);
        std::copy(block, block + 32, acc.begin());
    }
    return acc;
}

Key256 key_from_seed(std::uint64_t seed) {
    Key256 key{};
    for (int i = 0; i < 8; ++i) key[i] = std::uint8_t(seed >> (8 * i));
    return key;
}

std::string key_hex(const Key256& key) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : key) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Key256 key_from_hex(std::string_view hex) {
    if (hex.size() != 64) throw FormatError("key hex string must be 64 characters");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw FormatError("invalid hex digit in key");
    };
    Key256 key{};
    for (int i = 0; i < 32; ++i)
        key[i] = std::uint8_t(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    return key;
}

PrfStream::PrfStream(const Key256& key, std::string_view domain) : key_(key) {
    // Domain string folds into the nonce; distinct domains give disjoint streams.
    for (std::size_t i = 0; i < domain.size(); ++i)
        nonce_[i % nonce_.size()] ^= std::uint8_t(domain[i]) + std::uint8_t(i);
}

void PrfStream::refill() {
    chacha20_block(key_, nonce_, counter_++, block_.data());
    pos_ = 0;
}

std::uint8_t PrfStream::next_byte() {
    if (pos_ >= block_.size()) refill();
    return block_[pos_++];
}

std::uint64_t PrfStream::next_u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(next_byte()) << (8 * i);
    return v;
}

double PrfStream::next_unit() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

void PrfStream::fill(std::span<std::uint8_t> out) {
    for (auto& b : out) b = next_byte();
}

Key256 derive_subkey(const Key256& key, std::string_view domain) {
    PrfStream stream(key, domain);
    Key256 sub{};
    stream.fill(sub);
    return sub;
}

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    std::uint32_t crc = 0xffffffffu;
    for (std::uint8_t byte : data) {
        crc ^= byte;
        for (int i = 0; i < 8; ++i) crc = (crc >> 1) ^ (0xedb88320u & (~(crc & 1) + 1));
    }
    return ~crc;
}

}  // namespace stegotcq
