#include "stegotcq/protocol.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "stegotcq/errors.hpp"
#include "stegotcq/init_embed.hpp"
#include "stegotcq/scs.hpp"

namespace stegotcq {

namespace {

// Phase-1 partition key. Public by construction: any sender must be able to
// reach Bob before sharing any secret, so the initialization trellis hides
// nothing; secrecy rests entirely on the encrypted payload.
const Key256 kInitPartitionKey = key_from_seed(0x73746567696e6974ull);

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

const CipherProvider& default_cipher() {
    static const XorStreamCipher cipher;
    return cipher;
}

void SessionConfig::validate() const {
    if (init_order < 1 || init_order > 16 || perm_order < 1 || perm_order > 16)
        throw InvalidParameterError("session: trellis orders must be in [1, 16]");
    if (!(init_delta > 0.0)) throw InvalidParameterError("session: init_delta must be positive");
    if (!(init_noise_variance >= 0.0) || !(perm_noise_variance > 0.0))
        throw InvalidParameterError("session: invalid noise variances");
    if (!(perm_power > 0.0)) throw InvalidParameterError("session: perm_power must be positive");
    if (init_block < 8 || perm_block < 16)
        throw InvalidParameterError("session: block sizes too small");
    if (init_max_iterations < 1)
        throw InvalidParameterError("session: init_max_iterations must be >= 1");
    if (spread_length < 1) throw InvalidParameterError("session: spread_length must be >= 1");
}

std::string SessionConfig::to_text() const {
    validate();
    std::ostringstream out;
    out << "stegotcq-session v1\n";
    out << "init_order=" << init_order << "\n";
    out << "init_delta=" << format_double(init_delta) << "\n";
    out << "init_noise=" << format_double(init_noise_variance) << "\n";
    out << "init_margin=" << format_double(init_margin) << "\n";
    out << "init_block=" << init_block << "\n";
    out << "init_max_iterations=" << init_max_iterations << "\n";
    out << "perm_codec=" << (perm_codec == PermanentCodec::kTurbo ? "turbo" : "scs") << "\n";
    out << "perm_order=" << perm_order << "\n";
    out << "perm_power=" << format_double(perm_power) << "\n";
    out << "perm_noise=" << format_double(perm_noise_variance) << "\n";
    out << "perm_block=" << perm_block << "\n";
    out << "perm_composition="
        << (perm_composition == TurboComposition::kDitherAverage ? "average" : "alternating")
        << "\n";
    out << "spread_length=" << spread_length << "\n";
    if (!band_deltas.empty()) {
        out << "band_deltas=";
        for (std::size_t i = 0; i < band_deltas.size(); ++i) {
            if (i) out << ',';
            out << format_double(band_deltas[i]);
        }
        out << "\n";
    }
    return out.str();
}

SessionConfig SessionConfig::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "stegotcq-session v1")
        throw FormatError("not a stegotcq-session v1 document");

    SessionConfig cfg;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw FormatError("session: malformed line: " + line);
        const std::string name = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (name == "init_order") cfg.init_order = std::stoi(value);
            else if (name == "init_delta") cfg.init_delta = std::stod(value);
            else if (name == "init_noise") cfg.init_noise_variance = std::stod(value);
            else if (name == "init_margin") cfg.init_margin = std::stod(value);
            else if (name == "init_block") cfg.init_block = std::stoul(value);
            else if (name == "init_max_iterations") cfg.init_max_iterations = std::stoi(value);
            else if (name == "perm_codec") {
                if (value == "turbo") cfg.perm_codec = PermanentCodec::kTurbo;
                else if (value == "scs") cfg.perm_codec = PermanentCodec::kScs;
                else throw FormatError("session: unknown codec " + value);
            } else if (name == "perm_order") cfg.perm_order = std::stoi(value);
            else if (name == "perm_power") cfg.perm_power = std::stod(value);
            else if (name == "perm_noise") cfg.perm_noise_variance = std::stod(value);
            else if (name == "perm_block") cfg.perm_block = std::stoul(value);
            else if (name == "perm_composition") {
                if (value == "average") cfg.perm_composition = TurboComposition::kDitherAverage;
                else if (value == "alternating") cfg.perm_composition = TurboComposition::kAlternating;
                else throw FormatError("session: unknown composition " + value);
            } else if (name == "spread_length") cfg.spread_length = std::stoul(value);
            else if (name == "band_deltas") {
                cfg.band_deltas.clear();
                std::istringstream list(value);
                std::string item;
                while (std::getline(list, item, ',')) cfg.band_deltas.push_back(std::stod(item));
            } else {
                throw FormatError("session: unknown field " + name);
            }
        } catch (const std::invalid_argument&) {
            throw FormatError("session: bad value for " + name);
        } catch (const std::out_of_range&) {
            throw FormatError("session: bad value for " + name);
        }
    }
    cfg.validate();
    return cfg;
}

BitMessage bits_from_bytes(std::span<const std::uint8_t> bytes) {
    BitMessage bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 7; i >= 0; --i) bits.push_back((b >> i) & 1);
    return bits;
}

std::vector<std::uint8_t> bytes_from_bits(const BitMessage& bits) {
    if (bits.size() % 8 != 0)
        throw InvalidParameterError("bytes_from_bits: bit count must be a multiple of 8");
    std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        bytes[i / 8] = std::uint8_t(bytes[i / 8] << 1 | (bits[i] & 1));
    return bytes;
}

std::vector<std::uint8_t> frame_payload(std::span<const std::uint8_t> payload) {
    std::vector<std::uint8_t> framed;
    framed.reserve(payload.size() + 8);
    const std::uint32_t len = std::uint32_t(payload.size());
    for (int i = 0; i < 4; ++i) framed.push_back(std::uint8_t(len >> (8 * i)));
    framed.insert(framed.end(), payload.begin(), payload.end());
    const std::uint32_t crc = crc32(payload);
    for (int i = 0; i < 4; ++i) framed.push_back(std::uint8_t(crc >> (8 * i)));
    return framed;
}

std::vector<std::uint8_t> deframe_payload(std::span<const std::uint8_t> framed) {
    if (framed.size() < 8) throw IntegrityError("frame too short");
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len |= std::uint32_t(framed[i]) << (8 * i);
    if (std::size_t(len) + 8 > framed.size()) throw IntegrityError("frame length exceeds data");
    std::vector<std::uint8_t> payload(framed.begin() + 4, framed.begin() + 4 + len);
    std::uint32_t crc = 0;
    for (int i = 0; i < 4; ++i) crc |= std::uint32_t(framed[4 + len + i]) << (8 * i);
    if (crc != crc32(payload)) throw IntegrityError("frame checksum mismatch");
    return payload;
}

namespace {

constexpr std::size_t kTempKeyBytes = 32;

std::size_t init_payload_bytes() { return kTempKeyBytes + 8; }  // frame overhead

TcqParams init_tcq_params(const SessionConfig& cfg) {
    TcqParams params;
    params.trellis = build_trellis(cfg.init_order, cfg.init_delta, kInitPartitionKey);
    params.alpha = 1.0;  // quantization strength is irrelevant to the iterative embedder
    return params;
}

}  // namespace

std::size_t init_capacity_required(const SessionConfig& cfg) {
    const std::size_t bits = init_payload_bytes() * 8;
    const std::size_t blocks = (bits + cfg.init_block - 1) / cfg.init_block;
    return blocks * cfg.init_block;
}

std::size_t permanent_capacity_required(std::size_t payload_bytes, const SessionConfig& cfg) {
    const std::size_t bits = (payload_bytes + 8) * 8;
    const std::size_t blocks = (bits + cfg.perm_block - 1) / cfg.perm_block;
    return blocks * cfg.perm_block;
}

InitSendResult send_init(const Signal& cover, std::span<const std::uint8_t> recipient_public_key,
                         const SessionConfig& cfg, std::uint64_t rng_seed,
                         const CipherProvider& cipher) {
    cfg.validate();
    const std::size_t required = init_capacity_required(cfg);
    if (cover.size() < required) throw CapacityError(required, cover.size());

    InitSendResult result;
    result.temp_key = random_temp_key(rng_seed);

    const std::vector<std::uint8_t> framed =
        frame_payload(std::span(result.temp_key.seed.data(), result.temp_key.seed.size()));
    const std::vector<std::uint8_t> ciphertext = cipher.encrypt(framed, recipient_public_key);
    BitMessage bits = bits_from_bytes(ciphertext);
    // Fill the final block with deterministic padding bits.
    PrfStream pad(kInitPartitionKey, "init-padding");
    while (bits.size() < required) bits.push_back(pad.next_byte() & 1);

    InitEmbedConfig embed_cfg;
    embed_cfg.noise_variance = cfg.init_noise_variance;
    embed_cfg.margin =
        cfg.init_margin >= 0.0 ? cfg.init_margin : default_margin(cfg.init_noise_variance);
    embed_cfg.max_iterations = cfg.init_max_iterations;
    embed_cfg.tcq = init_tcq_params(cfg);

    result.stego = cover;
    for (std::size_t off = 0; off < required; off += cfg.init_block) {
        const Signal block(cover.begin() + off, cover.begin() + off + cfg.init_block);
        const BitMessage block_bits(bits.begin() + off, bits.begin() + off + cfg.init_block);
        IterativeEmbedResult embedded = iterative_embed(block, block_bits, embed_cfg);
        // A failed block retries with a widened margin before giving up.
        InitEmbedConfig retry = embed_cfg;
        for (int attempt = 0; !embedded.converged && attempt < 3; ++attempt) {
            retry.margin = 2.0 * (retry.margin > 0.0 ? retry.margin : 0.1);
            embedded = iterative_embed(block, block_bits, retry);
        }
        if (!embedded.converged)
            throw InvalidDataError("send_init: iterative embedding failed to converge");
        std::copy(embedded.stego.begin(), embedded.stego.end(), result.stego.begin() + off);
    }
    return result;
}

TempKey receive_init(const Signal& stego, std::span<const std::uint8_t> private_key,
                     const SessionConfig& cfg, const CipherProvider& cipher) {
    cfg.validate();
    const std::size_t required = init_capacity_required(cfg);
    if (stego.size() < required) throw CapacityError(required, stego.size());

    const TcqParams params = init_tcq_params(cfg);
    BitMessage bits;
    bits.reserve(required);
    for (std::size_t off = 0; off < required; off += cfg.init_block) {
        const Signal block(stego.begin() + off, stego.begin() + off + cfg.init_block);
        const BitMessage decoded = tcq_decode(block, params);
        bits.insert(bits.end(), decoded.begin(), decoded.end());
    }
    bits.resize(init_payload_bytes() * 8);

    const std::vector<std::uint8_t> ciphertext = bytes_from_bits(bits);
    const std::vector<std::uint8_t> framed = cipher.decrypt(ciphertext, private_key);
    const std::vector<std::uint8_t> seed_bytes = deframe_payload(framed);
    if (seed_bytes.size() != kTempKeyBytes)
        throw IntegrityError("receive_init: unexpected seed length");
    TempKey key;
    std::copy(seed_bytes.begin(), seed_bytes.end(), key.seed.begin());
    return key;
}

TurboParams permanent_turbo_params(const TempKey& temp_key, const SessionConfig& cfg,
                                   std::size_t block_length) {
    ChannelParams channel{cfg.perm_power, cfg.perm_noise_variance};
    TurboParams params =
        turbo_params_for_channel(channel, cfg.perm_order, temp_key.seed, block_length);
    params.composition = cfg.perm_composition;
    return params;
}

namespace {

ScsParams permanent_scs_params(const TempKey& temp_key, const SessionConfig& cfg,
                               std::size_t length) {
    ChannelParams channel{cfg.perm_power, cfg.perm_noise_variance};
    return scs_params_for_channel(channel, derive_subkey(temp_key.seed, "perm-scs"), length);
}

}  // namespace

Signal send_message(const Signal& cover, std::span<const std::uint8_t> payload,
                    const TempKey& temp_key, const SessionConfig& cfg) {
    cfg.validate();
    const std::size_t required = permanent_capacity_required(payload.size(), cfg);
    if (cover.size() < required) throw CapacityError(required, cover.size());

    BitMessage bits = bits_from_bytes(frame_payload(payload));
    PrfStream pad(derive_subkey(temp_key.seed, "perm-padding"), "pad");
    while (bits.size() < required) bits.push_back(pad.next_byte() & 1);

    Signal stego = cover;
    if (cfg.perm_codec == PermanentCodec::kScs) {
        const Signal segment(cover.begin(), cover.begin() + required);
        const ScsParams params = permanent_scs_params(temp_key, cfg, required);
        const Signal embedded = scs_embed(segment, bits, params);
        std::copy(embedded.begin(), embedded.end(), stego.begin());
        return stego;
    }

    const ChannelParams channel{cfg.perm_power, cfg.perm_noise_variance};
    const TurboParams params = permanent_turbo_params(temp_key, cfg, cfg.perm_block);
    for (std::size_t off = 0; off < required; off += cfg.perm_block) {
        const Signal block(cover.begin() + off, cover.begin() + off + cfg.perm_block);
        const BitMessage block_bits(bits.begin() + off, bits.begin() + off + cfg.perm_block);
        const Signal embedded = turbo_encode(block, block_bits, params, channel);
        std::copy(embedded.begin(), embedded.end(), stego.begin() + off);
    }
    return stego;
}

std::vector<std::uint8_t> receive_message(const Signal& stego, const TempKey& temp_key,
                                          const SessionConfig& cfg) {
    cfg.validate();
    if (stego.size() < cfg.perm_block) throw CapacityError(cfg.perm_block, stego.size());

    BitMessage bits;
    if (cfg.perm_codec == PermanentCodec::kScs) {
        const std::size_t usable = stego.size();
        const Signal segment(stego.begin(), stego.begin() + usable);
        const ScsParams params = permanent_scs_params(temp_key, cfg, usable);
        bits = scs_decode(segment, params);
    } else {
        const TurboParams params = permanent_turbo_params(temp_key, cfg, cfg.perm_block);
        const std::size_t blocks = stego.size() / cfg.perm_block;
        bits.reserve(blocks * cfg.perm_block);
        for (std::size_t off = 0; off + cfg.perm_block <= stego.size(); off += cfg.perm_block) {
            const Signal block(stego.begin() + off, stego.begin() + off + cfg.perm_block);
            const TurboDecodeResult decoded = turbo_decode(block, params);
            bits.insert(bits.end(), decoded.message.begin(), decoded.message.end());
        }
    }

    // Header first: read the length, then bound the frame before the checksum.
    if (bits.size() < 64) throw CapacityError(64, bits.size());
    const std::vector<std::uint8_t> head = bytes_from_bits(BitMessage(bits.begin(), bits.begin() + 32));
    std::uint32_t len = 0;
    for (int i = 0; i < 4; ++i) len |= std::uint32_t(head[i]) << (8 * i);
    const std::size_t frame_bits = (std::size_t(len) + 8) * 8;
    if (frame_bits > bits.size())
        throw IntegrityError("receive_message: frame length exceeds decoded data");
    bits.resize(frame_bits);
    return deframe_payload(bytes_from_bits(bits));
}

}  // namespace stegotcq
