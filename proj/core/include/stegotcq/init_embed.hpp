#pragma once

#include "stegotcq/tcq.hpp"

namespace stegotcq {

/// Configuration for the initialization-phase embedder: drive the cover inside
/// the target codeword's decision region to a depth of sqrt(N) + epsilon.
struct InitEmbedConfig {
    double noise_variance = 0.0;  ///< N >= 0, expected channel noise at the decoder
    double margin = 0.0;          ///< epsilon >= 0; 0.5*sqrt(N) is a reasonable default
    int max_iterations = 50;
    TcqParams tcq;
    int start_state = 0;

    void validate() const;
};

/// Margin convention used when none is supplied.
inline double default_margin(double noise_variance) { return 0.5 * std::sqrt(noise_variance); }

struct IterativeEmbedResult {
    Signal stego;        ///< final y (last iterate when not converged)
    int iterations = 0;  ///< correction steps applied
    bool converged = false;
};

/// Iterative embedding: start from the cover, and while the globally nearest
/// codeword differs from the target, step toward the target by half the gap
/// plus sqrt(N) + epsilon along the unit gap direction. On success the nearest
/// codeword of the result is exactly the target.
IterativeEmbedResult iterative_embed(const Signal& x, const BitMessage& m,
                                     const InitEmbedConfig& cfg);

/// Mean over signals of per-element mean squared distance to the globally
/// nearest trellis codeword.
double distance_statistics(const std::vector<Signal>& signals, const TcqParams& tcq,
                           int start_state = 0);

/// distance_statistics(stego) / distance_statistics(cover); values near 1 mean
/// embedding left no distance artifact for a warden to measure.
double artifact_gap(const std::vector<Signal>& cover, const std::vector<Signal>& stego,
                    const TcqParams& tcq, int start_state = 0);

}  // namespace stegotcq
