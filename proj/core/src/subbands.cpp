#include "stegotcq/subbands.hpp"

#include <algorithm>
#include <cmath>

#include "stegotcq/errors.hpp"

namespace stegotcq {

void SubbandLayout::validate() const {
    if (num_bands == 0 || windows_per_frame == 0 || coeffs_per_window == 0)
        throw InvalidParameterError("subband layout: zero dimension");
    if (coeffs_per_window % num_bands != 0)
        throw InvalidParameterError("subband layout: bands must evenly divide a window");
}

std::span<double> SubbandFrame::band(std::size_t b) {
    return std::span(data).subspan(b * layout.band_length(), layout.band_length());
}

std::span<const double> SubbandFrame::band(std::size_t b) const {
    return std::span(data).subspan(b * layout.band_length(), layout.band_length());
}

SubbandFrame group_subbands(std::span<const double> coeffs, const SubbandLayout& layout) {
    layout.validate();
    if (coeffs.size() != layout.frame_coeffs())
        throw FormatError("group_subbands: coefficient count does not fill one frame");

    SubbandFrame frame;
    frame.layout = layout;
    frame.data.resize(coeffs.size());
    const std::size_t width = layout.band_width();
    for (std::size_t w = 0; w < layout.windows_per_frame; ++w) {
        for (std::size_t f = 0; f < layout.coeffs_per_window; ++f) {
            const std::size_t band = f / width;
            const std::size_t pos = w * width + f % width;
            frame.data[band * layout.band_length() + pos] =
                coeffs[w * layout.coeffs_per_window + f];
        }
    }
    return frame;
}

std::vector<double> ungroup_subbands(const SubbandFrame& frame) {
    frame.layout.validate();
    if (frame.data.size() != frame.layout.frame_coeffs())
        throw FormatError("ungroup_subbands: frame data has wrong size");

    std::vector<double> coeffs(frame.data.size());
    const std::size_t width = frame.layout.band_width();
    for (std::size_t w = 0; w < frame.layout.windows_per_frame; ++w) {
        for (std::size_t f = 0; f < frame.layout.coeffs_per_window; ++f) {
            const std::size_t band = f / width;
            const std::size_t pos = w * width + f % width;
            coeffs[w * frame.layout.coeffs_per_window + f] =
                frame.data[band * frame.layout.band_length() + pos];
        }
    }
    return coeffs;
}

double laplacian_fit(std::span<const double> band) {
    if (band.empty()) throw InvalidDataError("laplacian_fit: empty band");
    std::vector<double> sorted(band.begin(), band.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double median =
        n % 2 == 1 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    double scale = 0.0;
    for (double v : band) scale += std::fabs(v - median);
    return scale / double(n);
}

std::vector<double> spreading_chips(const Key256& key, std::size_t num_bits, std::size_t length) {
    PrfStream stream(key, "spread-chips");
    const double magnitude = 1.0 / std::sqrt(double(length));
    std::vector<double> chips(num_bits * length);
    for (auto& c : chips) c = (stream.next_byte() & 1) ? magnitude : -magnitude;
    return chips;
}

Signal spread_embed(const Signal& band, const BitMessage& bits, std::size_t spread_length,
                    const Key256& key, const SpreadEmbedFn& embed) {
    if (spread_length == 0) throw InvalidParameterError("spread_embed: spread length must be >= 1");
    if (band.size() < bits.size() * spread_length)
        throw CapacityError(bits.size() * spread_length, band.size());

    const std::vector<double> chips = spreading_chips(key, bits.size(), spread_length);
    Signal projected(bits.size());
    for (std::size_t j = 0; j < bits.size(); ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < spread_length; ++t)
            acc += chips[j * spread_length + t] * band[j * spread_length + t];
        projected[j] = acc;
    }

    const Signal embedded = embed(projected, bits);
    if (embedded.size() != projected.size())
        throw InvalidDataError("spread_embed: codec changed the projection length");

    Signal out = band;
    for (std::size_t j = 0; j < bits.size(); ++j) {
        const double move = embedded[j] - projected[j];
        for (std::size_t t = 0; t < spread_length; ++t)
            out[j * spread_length + t] += move * chips[j * spread_length + t];
    }
    return out;
}

BitMessage spread_extract(const Signal& band, std::size_t num_bits, std::size_t spread_length,
                          const Key256& key, const SpreadDecodeFn& decode) {
    if (spread_length == 0)
        throw InvalidParameterError("spread_extract: spread length must be >= 1");
    if (band.size() < num_bits * spread_length)
        throw CapacityError(num_bits * spread_length, band.size());

    const std::vector<double> chips = spreading_chips(key, num_bits, spread_length);
    Signal projected(num_bits);
    for (std::size_t j = 0; j < num_bits; ++j) {
        double acc = 0.0;
        for (std::size_t t = 0; t < spread_length; ++t)
            acc += chips[j * spread_length + t] * band[j * spread_length + t];
        projected[j] = acc;
    }
    return decode(projected);
}

}  // namespace stegotcq
