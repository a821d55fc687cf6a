#include "stegotcq/turbo.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "stegotcq/errors.hpp"

namespace stegotcq {

namespace {

inline double nearest_lattice_point(double value, double step, double offset) {
    return offset + step * std::floor((value - offset) / step + 0.5);
}

inline double branch_distance_sq(double value, double step, double offset) {
    const double diff = value - nearest_lattice_point(value, step, offset);
    return diff * diff;
}

/// log(e^a + e^b); with exact = false this is plain max (max-log decoding).
inline double merge_scores(double a, double b, bool exact) {
    const double hi = std::max(a, b);
    if (!exact || hi == -std::numeric_limits<double>::infinity()) return hi;
    return hi + std::log1p(std::exp(-std::fabs(a - b)));
}

/// Soft-output pass over one constituent trellis. Branch scores combine the
/// (optionally weighted) channel term with symmetric bit priors; the output is
/// the per-index posterior log-likelihood ratio log P(b=1)/P(b=0).
std::vector<double> soft_pass(const Trellis& trellis, const Signal& y,
                              const std::vector<double>& channel_weight, double sigma_sq,
                              const std::vector<double>& prior_llr, int start_state,
                              bool exact) {
    const int states = trellis.num_states();
    const int high_bit = states >> 1;
    const std::size_t n = y.size();
    const double neg_inf = -std::numeric_limits<double>::infinity();
    const double inv_two_sigma = 1.0 / (2.0 * sigma_sq);

    auto gamma = [&](std::size_t i, int s, int b) {
        double score = b ? 0.5 * prior_llr[i] : -0.5 * prior_llr[i];
        if (channel_weight[i] != 0.0)
            score -= channel_weight[i] * inv_two_sigma *
                     branch_distance_sq(y[i], trellis.delta, trellis.offset(i, s, b));
        return score;
    };

    // Forward scores, one row per index boundary.
    std::vector<double> fwd((n + 1) * std::size_t(states), neg_inf);
    fwd[std::size_t(start_state)] = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double* cur = fwd.data() + i * states;
        double* next = fwd.data() + (i + 1) * states;
        for (int to = 0; to < states; ++to) {
            const int bit = to & 1;
            const int pred0 = to >> 1;
            const int pred1 = pred0 | high_bit;
            const double m0 =
                cur[pred0] > neg_inf ? cur[pred0] + gamma(i, pred0, bit) : neg_inf;
            const double m1 =
                cur[pred1] > neg_inf ? cur[pred1] + gamma(i, pred1, bit) : neg_inf;
            next[to] = merge_scores(m0, m1, exact);
        }
    }

    // Backward scores and posterior LLRs in one sweep.
    std::vector<double> bwd(states, 0.0), bwd_next(states);
    std::vector<double> llr(n);
    for (std::size_t i = n; i-- > 0;) {
        const double* cur = fwd.data() + i * states;
        double best1 = neg_inf, best0 = neg_inf;
        bwd_next.swap(bwd);
        for (int s = 0; s < states; ++s) {
            const double g0 = gamma(i, s, 0);
            const double g1 = gamma(i, s, 1);
            const double b0 = g0 + bwd_next[trellis.next_state(s, 0)];
            const double b1 = g1 + bwd_next[trellis.next_state(s, 1)];
            bwd[s] = merge_scores(b0, b1, exact);
            if (cur[s] > neg_inf) {
                best1 = merge_scores(best1, cur[s] + b1, exact);
                best0 = merge_scores(best0, cur[s] + b0, exact);
            }
        }
        llr[i] = best1 - best0;
    }
    return llr;
}

constexpr double kMaxLlr = 60.0;  // saturation keeps extrinsics finite on noiseless input

inline double clamp_llr(double v) { return std::clamp(v, -kMaxLlr, kMaxLlr); }

}  // namespace

Interleaver Interleaver::identity(std::size_t n) {
    Interleaver out;
    out.forward_.resize(n);
    out.inverse_.resize(n);
    std::iota(out.forward_.begin(), out.forward_.end(), 0u);
    std::iota(out.inverse_.begin(), out.inverse_.end(), 0u);
    return out;
}

Interleaver Interleaver::random(std::size_t n, std::uint64_t seed) {
    Interleaver out;
    out.forward_.resize(n);
    std::iota(out.forward_.begin(), out.forward_.end(), 0u);
    std::mt19937_64 rng(seed);
    for (std::size_t i = n; i-- > 1;) {
        const std::size_t j = rng() % (i + 1);
        std::swap(out.forward_[i], out.forward_[j]);
    }
    out.inverse_.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.inverse_[out.forward_[j]] = std::uint32_t(j);
    return out;
}

Interleaver Interleaver::spread(std::size_t n, std::uint64_t seed) {
    // pi(j) = f1*j + f2*j^2 mod n is a permutation of 2^k when f1 is odd and
    // f2 is even. Falls back to the random layout for other lengths.
    if (n < 4 || (n & (n - 1)) != 0) return random(n, seed);
    std::mt19937_64 rng(seed);
    const std::uint64_t f1 = (rng() | 1) % n;
    std::uint64_t f2 = (rng() & ~std::uint64_t(1)) % n;
    if (f2 == 0) f2 = n / 2;
    Interleaver out;
    out.forward_.resize(n);
    out.inverse_.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t jj = j;
        out.forward_[j] = std::uint32_t((f1 * jj + ((f2 * jj) % n) * jj) % n);
    }
    for (std::size_t j = 0; j < n; ++j) out.inverse_[out.forward_[j]] = std::uint32_t(j);
    return out;
}

void Interleaver::validate() const {
    std::vector<bool> seen(forward_.size(), false);
    for (std::uint32_t f : forward_) {
        if (f >= forward_.size() || seen[f])
            throw InvalidParameterError("interleaver is not a permutation");
        seen[f] = true;
    }
    if (inverse_.size() != forward_.size())
        throw InvalidParameterError("interleaver inverse table out of sync");
}

void TurboParams::validate() const {
    trellis_a.validate();
    trellis_b.validate();
    if (trellis_a.delta != trellis_b.delta)
        throw InvalidParameterError("turbo: constituent trellises must share one delta");
    interleaver.validate();
    if (max_iterations < 1) throw InvalidParameterError("turbo: max_iterations must be >= 1");
    if (!(agreement_threshold > 0.0))
        throw InvalidParameterError("turbo: agreement_threshold must be positive");
    if (!(alpha > 0.0) || alpha > 1.0) throw InvalidParameterError("turbo: alpha must be in (0, 1]");
    if (!(noise_variance >= 0.0))
        throw InvalidParameterError("turbo: noise_variance must be non-negative");
    if (!(extrinsic_scale > 0.0) || extrinsic_scale > 1.0)
        throw InvalidParameterError("turbo: extrinsic_scale must be in (0, 1]");
    if (start_state_a < 0 || start_state_a >= trellis_a.num_states() || start_state_b < 0 ||
        start_state_b >= trellis_b.num_states())
        throw InvalidParameterError("turbo: start state out of range");
}

TurboParams turbo_params_for_channel(const ChannelParams& channel, int order, const Key256& key,
                                     std::size_t block_length) {
    channel.validate();
    const double p = channel.embed_power;
    const double n = channel.noise_variance;
    TurboParams params;
    params.alpha = p / (p + n);
    const double delta = std::sqrt(12.0 * p) / params.alpha;
    // Constituents use per-state phase spreading: the iterative exchange feeds
    // on the path-distance diversity it creates.
    params.trellis_a = build_trellis(order, delta, derive_subkey(key, "turbo-trellis-a"),
                                     DitherStyle::kStratifiedComplementary);
    params.trellis_b = build_trellis(order, delta, derive_subkey(key, "turbo-trellis-b"),
                                     DitherStyle::kStratifiedComplementary);
    params.interleaver =
        Interleaver::spread(block_length, PrfStream(key, "turbo-interleaver").next_u64());
    params.noise_variance = n;
    params.exact_metrics = true;
    params.extrinsic_scale = 0.9;
    return params;
}

namespace {

/// Composed per-index offsets for a message: both constituent paths are pinned,
/// so each index gets a deterministic joint dither.
Signal composed_offsets(const BitMessage& m, const TurboParams& params) {
    const std::size_t n = m.size();
    const Interleaver& pi = params.interleaver;

    Signal dither_a(n);
    int state = params.start_state_a;
    for (std::size_t i = 0; i < n; ++i) {
        const int bit = m[i] & 1;
        dither_a[i] = params.trellis_a.offset(i, state, bit);
        state = params.trellis_a.next_state(state, bit);
    }

    Signal dither_b(n);
    state = params.start_state_b;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t i = pi.forward(j);
        const int bit = m[i] & 1;
        dither_b[i] = params.trellis_b.offset(j, state, bit);
        state = params.trellis_b.next_state(state, bit);
    }

    Signal d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (params.composition == TurboComposition::kDitherAverage)
            d[i] = 0.5 * (dither_a[i] + dither_b[i]);
        else
            d[i] = (i % 2 == 0) ? dither_a[i] : dither_b[i];
    }
    return d;
}

}  // namespace

Signal turbo_encode(const Signal& x, const BitMessage& m, const TurboParams& params,
                    const ChannelParams& channel) {
    params.validate();
    channel.validate();
    if (x.size() != m.size())
        throw InvalidParameterError("turbo_encode: signal and message lengths must match");
    if (x.size() != params.interleaver.size())
        throw InvalidParameterError("turbo_encode: interleaver length must match the block");
    const double implied_power =
        params.alpha * params.alpha * params.delta() * params.delta() / 12.0;
    if (implied_power > 1.05 * channel.embed_power)
        throw InvalidParameterError("turbo_encode: parameters exceed the power constraint");

    const Signal offsets = composed_offsets(m, params);
    Signal y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double u = nearest_lattice_point(x[i], params.delta(), offsets[i]);
        y[i] = x[i] + params.alpha * (u - x[i]);
    }
    return y;
}

TurboDecodeResult turbo_decode_trace(const Signal& y, const TurboParams& params,
                                     std::vector<BitMessage>* per_iteration) {
    params.validate();
    const std::size_t n = y.size();
    if (n == 0) throw InvalidParameterError("turbo_decode: empty signal");
    if (n != params.interleaver.size())
        throw InvalidParameterError("turbo_decode: interleaver length must match the block");

    const Interleaver& pi = params.interleaver;
    const double delta = params.delta();
    const double self_noise =
        (1.0 - params.alpha) * (1.0 - params.alpha) * delta * delta / 12.0;

    // Channel term effective variance and per-index weights per composition.
    // Averaging keeps every observation with the constituent's own offset but
    // inflates the variance by the other constituent's half-offset spread;
    // alternation gives each pass exact observations at its own indices and
    // marginalizes (weight 0) the foreign ones.
    double sigma_a = params.noise_variance + self_noise;
    double sigma_b = sigma_a;
    std::vector<double> weight_a(n, 1.0), weight_b(n, 1.0);
    if (params.composition == TurboComposition::kDitherAverage) {
        sigma_a += delta * delta / 24.0;
        sigma_b += delta * delta / 24.0;
    } else {
        for (std::size_t i = 0; i < n; ++i) weight_a[i] = (i % 2 == 0) ? 1.0 : 0.0;
        for (std::size_t j = 0; j < n; ++j) weight_b[j] = (pi.forward(j) % 2 == 0) ? 0.0 : 1.0;
    }
    if (sigma_a <= 0.0) sigma_a = 1e-12;
    if (sigma_b <= 0.0) sigma_b = 1e-12;

    const Signal y_perm = pi.permute(y);
    std::vector<double> prior_a(n, 0.0), prior_b(n, 0.0);
    std::vector<double> llr_a(n, 0.0), llr_b(n, 0.0);
    std::vector<double> ext_a(n, 0.0), ext_b(n, 0.0);  // undamped, natural order

    TurboDecodeResult result;
    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        llr_a = soft_pass(params.trellis_a, y, weight_a, sigma_a, prior_a, params.start_state_a, params.exact_metrics);
        for (std::size_t i = 0; i < n; ++i) ext_a[i] = llr_a[i] - prior_a[i];
        for (std::size_t j = 0; j < n; ++j)
            prior_b[j] = clamp_llr(params.extrinsic_scale * ext_a[pi.forward(j)]);

        llr_b = soft_pass(params.trellis_b, y_perm, weight_b, sigma_b, prior_b,
                          params.start_state_b, params.exact_metrics);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = pi.inverse(i);
            ext_b[i] = llr_b[j] - prior_b[j];
            prior_a[i] = clamp_llr(params.extrinsic_scale * ext_b[i]);
        }
        result.iterations_used = iter;

        if (per_iteration) {
            BitMessage snapshot(n);
            for (std::size_t i = 0; i < n; ++i) snapshot[i] = ext_a[i] + ext_b[i] > 0.0 ? 1 : 0;
            per_iteration->push_back(std::move(snapshot));
        }

        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            diff += std::fabs(std::tanh(llr_a[i] / 2.0) - std::tanh(llr_b[pi.inverse(i)] / 2.0));
        if (diff / double(n) <= params.agreement_threshold) break;
    }

    result.message.resize(n);
    result.reliabilities.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double combined = ext_a[i] + ext_b[i];
        result.reliabilities[i] = combined;
        result.message[i] = combined > 0.0 ? 1 : 0;
    }
    return result;
}

TurboDecodeResult turbo_decode(const Signal& y, const TurboParams& params) {
    return turbo_decode_trace(y, params, nullptr);
}

}  // namespace stegotcq
