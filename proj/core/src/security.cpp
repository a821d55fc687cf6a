#include "stegotcq/security.hpp"

#include <algorithm>
#include <cmath>

#include "stegotcq/errors.hpp"

namespace stegotcq {

void Histogram::validate() const {
    if (bin_edges.size() < 3 || counts.size() + 1 != bin_edges.size())
        throw InvalidParameterError("histogram: inconsistent edges and counts");
    if (!std::is_sorted(bin_edges.begin(), bin_edges.end()))
        throw InvalidParameterError("histogram: edges must be sorted");
    std::uint64_t sum = 0;
    for (auto c : counts) sum += c;
    if (sum != total) throw InvalidParameterError("histogram: total out of sync");
}

Histogram build_histogram(const Signal& s, std::size_t num_bins, double range_lo,
                          double range_hi) {
    if (num_bins < 2) throw InvalidParameterError("histogram: need at least 2 bins");
    if (!(range_lo < range_hi) || !std::isfinite(range_lo) || !std::isfinite(range_hi))
        throw InvalidParameterError("histogram: degenerate range");
    if (s.empty()) throw InvalidDataError("histogram: empty signal");

    Histogram h;
    h.bin_edges.resize(num_bins + 1);
    const double width = (range_hi - range_lo) / double(num_bins);
    for (std::size_t i = 0; i <= num_bins; ++i) h.bin_edges[i] = range_lo + width * double(i);
    h.counts.assign(num_bins, 0);
    for (double v : s) {
        auto bin = (long long)std::floor((v - range_lo) / width);
        bin = std::clamp(bin, 0ll, (long long)num_bins - 1);
        ++h.counts[std::size_t(bin)];
    }
    h.total = s.size();
    return h;
}

std::pair<double, double> histogram_range_for(const Signal& reference, double num_stddev) {
    if (reference.empty()) throw InvalidDataError("histogram range: empty signal");
    double mean = 0.0;
    for (double v : reference) mean += v;
    mean /= double(reference.size());
    double var = 0.0;
    for (double v : reference) var += (v - mean) * (v - mean);
    var /= double(reference.size());
    const double spread = num_stddev * std::sqrt(var);
    if (!(spread > 0.0)) throw InvalidDataError("histogram range: constant signal");
    return {mean - spread, mean + spread};
}

double kl_divergence(const Histogram& p, const Histogram& q) {
    p.validate();
    q.validate();
    if (p.bin_edges != q.bin_edges)
        throw InvalidParameterError("kl_divergence: histograms must share bin edges");
    if (p.total == 0 || q.total == 0)
        throw InvalidParameterError("kl_divergence: empty histogram");

    const double q_floor = 1.0 / (2.0 * double(q.total));
    double kl = 0.0;
    for (std::size_t i = 0; i < p.bins(); ++i) {
        if (p.counts[i] == 0) continue;
        const double p_hat = double(p.counts[i]) / double(p.total);
        const double q_hat =
            q.counts[i] == 0 ? q_floor : double(q.counts[i]) / double(q.total);
        kl += p_hat * std::log2(p_hat / q_hat);
    }
    return kl;
}

std::vector<SecurityReport> epsilon_security_sweep(const Signal& cover, const EmbedFn& embedder,
                                                   const std::vector<double>& rates,
                                                   double epsilon, std::size_t num_bins,
                                                   const std::string& descriptor) {
    if (rates.empty()) throw InvalidParameterError("security sweep: empty rate list");
    for (double r : rates)
        if (!(r > 0.0) || r > 1.0)
            throw InvalidParameterError("security sweep: rates must lie in (0, 1]");

    const auto [lo, hi] = histogram_range_for(cover);
    const Histogram cover_hist = build_histogram(cover, num_bins, lo, hi);

    std::vector<SecurityReport> reports;
    reports.reserve(rates.size());
    for (double rate : rates) {
        const Signal stego = embedder(cover, rate);
        const Histogram stego_hist = build_histogram(stego, num_bins, lo, hi);
        SecurityReport report;
        report.rate = rate;
        report.kl_bits = kl_divergence(cover_hist, stego_hist);
        report.kl_mean_bits = report.kl_bits;
        report.epsilon = epsilon;
        report.secure = report.kl_bits <= epsilon;
        report.descriptor = descriptor;
        reports.push_back(std::move(report));
    }
    return reports;
}

}  // namespace stegotcq
