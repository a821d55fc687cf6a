#include "stegotcq/scs.hpp"

#include <cmath>

#include "stegotcq/errors.hpp"

namespace stegotcq {

namespace {

// Round-half-up: exact midpoints go to the larger codeword.
inline double nearest_lattice_point(double value, double step, double offset) {
    return offset + step * std::floor((value - offset) / step + 0.5);
}

}  // namespace

void ScsParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidParameterError("scs delta must be positive and finite");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw InvalidParameterError("scs alpha must be in (0, 1]");
    for (double d : dither)
        if (!(std::fabs(d) <= delta / 2.0))
            throw InvalidParameterError("scs dither values must lie in [-delta/2, +delta/2]");
}

Signal scs_dither_from_key(const Key256& key, double delta, std::size_t length) {
    PrfStream stream(key, "scs-dither");
    Signal dither(length);
    for (auto& d : dither) d = delta * (stream.next_unit() - 0.5);
    return dither;
}

ScsParams scs_params_for_channel(const ChannelParams& channel, const Key256& dither_key,
                                 std::size_t length) {
    channel.validate();
    const double p = channel.embed_power;
    const double n = channel.noise_variance;
    ScsParams params;
    params.alpha = std::sqrt(p / (p + 2.71 * n));
    // Embedding power of SCS is alpha^2 * delta^2 / 12; solve delta for power P.
    params.delta = std::sqrt(12.0 * p) / params.alpha;
    params.dither = scs_dither_from_key(dither_key, params.delta, length);
    return params;
}

Signal scs_nearest_codeword(const Signal& x, const BitMessage& m, const ScsParams& params) {
    params.validate();
    if (x.size() != m.size() || x.size() != params.dither.size())
        throw InvalidParameterError("scs: signal, message and dither lengths must match");
    Signal u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double offset = params.dither[i] + params.delta * double(m[i]) / 2.0;
        u[i] = nearest_lattice_point(x[i], params.delta, offset);
    }
    return u;
}

Signal scs_embed(const Signal& x, const BitMessage& m, const ScsParams& params) {
    Signal u = scs_nearest_codeword(x, m, params);
    Signal y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + params.alpha * (u[i] - x[i]);
    return y;
}

BitMessage scs_decode(const Signal& y, const ScsParams& params) {
    params.validate();
    if (y.size() != params.dither.size())
        throw InvalidParameterError("scs: signal and dither lengths must match");
    const double half_step = params.delta / 2.0;
    BitMessage m(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        // The full codebook is a half-step lattice; odd indices belong to bit 1.
        const auto j = (long long)std::floor((y[i] - params.dither[i]) / half_step + 0.5);
        m[i] = std::uint8_t(j & 1);
    }
    return m;
}

}  // namespace stegotcq
