#include "stegotcq/init_embed.hpp"

#include <cmath>

#include "stegotcq/errors.hpp"

namespace stegotcq {

void InitEmbedConfig::validate() const {
    if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance))
        throw InvalidParameterError("init embed: noise_variance must be non-negative");
    if (!(margin >= 0.0) || !std::isfinite(margin))
        throw InvalidParameterError("init embed: margin must be non-negative");
    if (max_iterations < 1)
        throw InvalidParameterError("init embed: max_iterations must be >= 1");
    tcq.validate();
}

IterativeEmbedResult iterative_embed(const Signal& x, const BitMessage& m,
                                     const InitEmbedConfig& cfg) {
    cfg.validate();
    if (x.size() != m.size())
        throw InvalidParameterError("iterative_embed: signal and message lengths must match");

    // Target: the constrained optimum for (x, m). Embedding here is full-strength
    // quantization; transparency comes from where the iteration leaves y, not alpha.
    const Signal target = tcq_encode(x, m, cfg.tcq, cfg.start_state).codeword;
    const double reach = std::sqrt(cfg.noise_variance) + cfg.margin;

    IterativeEmbedResult result;
    result.stego = x;
    for (int iter = 0; iter <= cfg.max_iterations; ++iter) {
        const NearestCodewordResult nearest =
            nearest_codeword_any(result.stego, cfg.tcq, cfg.start_state);
        double gap_sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = target[i] - nearest.codeword[i];
            gap_sq += d * d;
        }
        if (gap_sq == 0.0) {
            result.iterations = iter;
            result.converged = true;
            return result;
        }
        if (iter == cfg.max_iterations) break;
        const double gap = std::sqrt(gap_sq);
        const double step = gap / 2.0 + reach;
        for (std::size_t i = 0; i < x.size(); ++i)
            result.stego[i] += step * (target[i] - nearest.codeword[i]) / gap;
    }
    result.iterations = cfg.max_iterations;
    result.converged = false;
    return result;
}

double distance_statistics(const std::vector<Signal>& signals, const TcqParams& tcq,
                           int start_state) {
    if (signals.empty()) throw InvalidParameterError("distance_statistics: no signals");
    tcq.validate();
    double total = 0.0;
    std::size_t count = 0;
    for (const Signal& s : signals) {
        if (s.empty()) throw InvalidParameterError("distance_statistics: empty signal");
        total += nearest_codeword_any(s, tcq, start_state).squared_distance;
        count += s.size();
    }
    return total / double(count);
}

double artifact_gap(const std::vector<Signal>& cover, const std::vector<Signal>& stego,
                    const TcqParams& tcq, int start_state) {
    const double cover_dist = distance_statistics(cover, tcq, start_state);
    const double stego_dist = distance_statistics(stego, tcq, start_state);
    if (cover_dist == 0.0)
        throw InvalidDataError("artifact_gap: cover signals sit exactly on codewords");
    return stego_dist / cover_dist;
}

}  // namespace stegotcq
