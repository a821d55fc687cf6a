#include "stegotcq/channel.hpp"

#include <cmath>
#include <limits>

#include "stegotcq/errors.hpp"

namespace stegotcq {

void ChannelParams::validate() const {
    if (!(embed_power > 0.0) || !std::isfinite(embed_power))
        throw InvalidParameterError("embed_power must be positive and finite");
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
        throw InvalidParameterError("noise_variance must be non-negative and finite");
}

double power(const Signal& s) {
    if (s.empty()) throw InvalidDataError("power of empty signal");
    double acc = 0.0;
    for (double v : s) acc += v * v;
    return acc / double(s.size());
}

double capacity(const ChannelParams& params) {
    params.validate();
    if (params.noise_variance == 0.0) return std::numeric_limits<double>::infinity();
    return 0.5 * std::log2(1.0 + params.embed_power / params.noise_variance);
}

double snr_db(const ChannelParams& params) {
    params.validate();
    if (params.noise_variance == 0.0)
        throw InvalidParameterError("snr_db undefined for zero noise variance");
    return 10.0 * std::log10(params.embed_power / params.noise_variance);
}

double power_for_snr_db(double snr_db, double noise_variance) {
    if (!(noise_variance > 0.0))
        throw InvalidParameterError("noise_variance must be positive");
    return noise_variance * std::pow(10.0, snr_db / 10.0);
}

double GaussianSampler::next(double stddev) {
    if (have_cached_) {
        have_cached_ = false;
        return cached_ * stddev;
    }
    // Box-Muller on two uniforms; u1 is kept away from 0 so log stays finite.
    double u1;
    do {
        u1 = double(engine_() >> 11) * 0x1.0p-53;
    } while (u1 <= 0.0);
    const double u2 = double(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle) * stddev;
}

Signal awgn_apply(const Signal& signal, double variance, std::uint64_t rng_seed) {
    if (!(variance >= 0.0) || !std::isfinite(variance))
        throw InvalidParameterError("noise variance must be non-negative and finite");
    if (variance == 0.0) return signal;
    GaussianSampler gauss(rng_seed);
    const double stddev = std::sqrt(variance);
    Signal out(signal.size());
    for (std::size_t i = 0; i < signal.size(); ++i) out[i] = signal[i] + gauss.next(stddev);
    return out;
}

}  // namespace stegotcq
