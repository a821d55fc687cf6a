#pragma once

#include <functional>
#include <string>

#include "stegotcq/channel.hpp"

namespace stegotcq {

/// Equal-width empirical histogram; out-of-range samples count in the edge bins.
struct Histogram {
    std::vector<double> bin_edges;       ///< sorted, size = bins + 1
    std::vector<std::uint64_t> counts;   ///< size = bins
    std::uint64_t total = 0;

    std::size_t bins() const { return counts.size(); }
    void validate() const;
};

Histogram build_histogram(const Signal& s, std::size_t num_bins, double range_lo, double range_hi);

/// Binning convention used by the security experiments: num_bins over mean
/// plus/minus 5 standard deviations of the reference signal.
std::pair<double, double> histogram_range_for(const Signal& reference, double num_stddev = 5.0);

/// Relative entropy in bits: sum over bins with p-mass of p_hat*log2(p_hat/q_hat),
/// where empty q bins are floored at 1/(2*q.total). Zero when p == q exactly.
double kl_divergence(const Histogram& p, const Histogram& q);

/// One epsilon-security verdict for an embedding configuration.
struct SecurityReport {
    double rate = 1.0;       ///< bits per element
    double kl_bits = 0.0;    ///< max over evaluated bands (equals mean when global)
    double kl_mean_bits = 0.0;
    double epsilon = 0.0;
    bool secure = false;     ///< kl_bits <= epsilon
    std::string descriptor;  ///< codec / configuration label
};

/// Embeds a fresh random message into the cover at the given rate and returns
/// the stego signal; supplied by the caller per codec.
using EmbedFn = std::function<Signal(const Signal& cover, double rate)>;

/// Evaluate KL(cover against stego) at each rate with the standard binning.
std::vector<SecurityReport> epsilon_security_sweep(const Signal& cover, const EmbedFn& embedder,
                                                   const std::vector<double>& rates,
                                                   double epsilon, std::size_t num_bins = 100,
                                                   const std::string& descriptor = "");

}  // namespace stegotcq
