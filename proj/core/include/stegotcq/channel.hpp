#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace stegotcq {

/// Real-valued sample vector: the universal carrier for cover, stego and noise data.
using Signal = std::vector<double>;

/// Binary message, one bit per element.
using BitMessage = std::vector<std::uint8_t>;

/// Per-element embedding power constraint and channel noise variance.
struct ChannelParams {
    double embed_power = 1.0;     ///< P > 0, per-element: (1/n) sum w[i]^2 <= P
    double noise_variance = 0.0;  ///< N >= 0

    void validate() const;
};

/// Mean squared amplitude (1/n) sum s[i]^2.
double power(const Signal& s);

/// Side-informed channel capacity in bits per element, 0.5*log2(1 + P/N).
/// Returns +infinity for N = 0.
double capacity(const ChannelParams& params);

/// 10*log10(P/N). N must be positive.
double snr_db(const ChannelParams& params);

/// Embedding power that realizes a given P/N in dB at the given noise variance.
double power_for_snr_db(double snr_db, double noise_variance);

/// Seedable Gaussian sampler: mt19937_64 plus an explicit Box-Muller transform,
/// so sequences are reproducible bit-for-bit across standard libraries.
class GaussianSampler {
   public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    /// Zero-mean sample with the given standard deviation.
    double next(double stddev);

   private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

/// signal + i.i.d. zero-mean Gaussian noise of the given variance.
/// Deterministic for a fixed seed; variance 0 returns the input unchanged.
Signal awgn_apply(const Signal& signal, double variance, std::uint64_t rng_seed);

}  // namespace stegotcq
