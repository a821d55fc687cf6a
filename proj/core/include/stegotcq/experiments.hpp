#pragma once

#include <string>

#include "stegotcq/protocol.hpp"
#include "stegotcq/security.hpp"

namespace stegotcq::experiments {

/// One experiment run: grids, sizes and seeds are all explicit so identical
/// configs reproduce byte-identical CSV output.
struct ExperimentConfig {
    std::string experiment;  ///< "ber", "pdf" or "security"
    std::vector<std::string> codecs = {"scs", "tcq", "turbo"};
    std::vector<double> snr_db_grid = {8, 9, 10, 11, 12, 13, 14};
    std::size_t samples = 1'000'000;
    std::uint64_t seed = 1;
    int tcq_order = 9;
    int turbo_order = 4;
    std::size_t block_size = 65536;
    std::vector<double> rate_grid = {1.0, 0.5, 0.25, 0.125};

    // pdf experiment
    double cover_stddev = 1000.0;  ///< X ~ N(0, 1e6)
    double embed_power = 1e4;
    std::size_t bins = 100;

    // security sweep
    double epsilon = 0.05;
    std::size_t band_frames = 400;  ///< frames of 160 samples per synthetic band

    void validate() const;
};

/// Named experiment defaults; "fig2", "fig4" and "fig5" regenerate the standard
/// pdf, BER and security experiments.
ExperimentConfig preset(const std::string& name);

/// Apply "key=value" lines (same names as the CLI flags) over a config.
void apply_config_file(ExperimentConfig& config, const std::string& text);

std::string run_ber_sweep(const ExperimentConfig& config);
std::string run_pdf_experiment(const ExperimentConfig& config);
std::string run_security_sweep(const ExperimentConfig& config);

/// Dispatch on config.experiment.
std::string run(const ExperimentConfig& config);

/// Operating P/N (in dB) at which each codec holds BER <= 1e-5 at 1 bit per
/// element; the security sweep sizes its embedding power from these.
double codec_operating_snr_db(const std::string& codec);

/// File-level protocol: cover WAV in, stego WAV plus session file out.
struct AudioSendResult {
    std::size_t payload_bytes = 0;
    std::size_t carrier_elements = 0;
};
AudioSendResult audio_send(const std::string& cover_wav, const std::string& stego_wav,
                           const std::string& session_path,
                           std::span<const std::uint8_t> recipient_public_key,
                           std::span<const std::uint8_t> payload, std::uint64_t seed);

/// Inverse of audio_send given the recipient's private key and the session file.
std::vector<std::uint8_t> audio_recv(const std::string& stego_wav, const std::string& session_path,
                                     std::span<const std::uint8_t> private_key);

/// Stego-vs-cover KL divergence per sub-band between two WAV files.
std::vector<double> audio_band_kl(const std::string& cover_wav, const std::string& stego_wav,
                                  std::size_t num_bins = 100);

}  // namespace stegotcq::experiments
