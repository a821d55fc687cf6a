#pragma once

#include <optional>
#include <string>

#include "stegotcq/cipher.hpp"
#include "stegotcq/turbo.hpp"

namespace stegotcq {

/// Which code carries the permanent-phase payload.
enum class PermanentCodec { kTurbo, kScs };

/// Public out-of-band parameter set for one steganographic session. Everything
/// here may be known to the warden; secrecy rests on the recipient's private
/// key (phase 1) and the temporary key (phase 2).
struct SessionConfig {
    // Initialization phase: statistics-preserving embedding on a public partition.
    int init_order = 8;
    double init_delta = 1.0;
    double init_noise_variance = 0.004;
    double init_margin = -1.0;  ///< negative: use default_margin(init_noise_variance)
    std::size_t init_block = 64;
    int init_max_iterations = 50;

    // Permanent phase: keyed dirty-paper code.
    PermanentCodec perm_codec = PermanentCodec::kTurbo;
    int perm_order = 4;
    double perm_power = 1.0;
    double perm_noise_variance = 0.0631;  ///< 12 dB default operating point
    std::size_t perm_block = 4096;
    TurboComposition perm_composition = TurboComposition::kAlternating;

    // Audio-mode extras (unused for plain signals).
    std::size_t spread_length = 1;
    std::vector<double> band_deltas;

    void validate() const;

    std::string to_text() const;
    static SessionConfig from_text(const std::string& text);
};

/// MSB-first within each byte.
BitMessage bits_from_bytes(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> bytes_from_bits(const BitMessage& bits);

/// Length prefix plus CRC-32 over the payload.
std::vector<std::uint8_t> frame_payload(std::span<const std::uint8_t> payload);
std::vector<std::uint8_t> deframe_payload(std::span<const std::uint8_t> framed);

const CipherProvider& default_cipher();

struct InitSendResult {
    Signal stego;
    TempKey temp_key;
};

/// Phase 1: draw a temporary key, encrypt it for the recipient, and embed the
/// framed ciphertext with the iterative embedder over the public partition.
InitSendResult send_init(const Signal& cover, std::span<const std::uint8_t> recipient_public_key,
                         const SessionConfig& cfg, std::uint64_t rng_seed,
                         const CipherProvider& cipher = default_cipher());

/// Phase 1 receive: trellis-decode, decrypt with the private key, check framing.
TempKey receive_init(const Signal& stego, std::span<const std::uint8_t> private_key,
                     const SessionConfig& cfg, const CipherProvider& cipher = default_cipher());

/// Phase 2: embed a framed payload with the keyed permanent-phase code.
Signal send_message(const Signal& cover, std::span<const std::uint8_t> payload,
                    const TempKey& temp_key, const SessionConfig& cfg);

/// Phase 2 receive: decode, deframe, verify integrity.
std::vector<std::uint8_t> receive_message(const Signal& stego, const TempKey& temp_key,
                                          const SessionConfig& cfg);

/// Elements required to carry a payload of the given size in phase 2.
std::size_t permanent_capacity_required(std::size_t payload_bytes, const SessionConfig& cfg);

/// Elements consumed by phase 1 (fixed by the cipher's output size).
std::size_t init_capacity_required(const SessionConfig& cfg);

/// Permanent-phase code parameters derived deterministically from a temporary key.
TurboParams permanent_turbo_params(const TempKey& temp_key, const SessionConfig& cfg,
                                   std::size_t block_length);

}  // namespace stegotcq
