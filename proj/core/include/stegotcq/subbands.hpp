#pragma once

#include <functional>

#include "stegotcq/channel.hpp"
#include "stegotcq/prf.hpp"

namespace stegotcq {

/// Tiling of MDCT coefficients into sub-bands. The default groups each frame of
/// 20 windows x 256 coefficients into 32 bands of 8 adjacent frequency lines,
/// 160 coefficients per band; the 10-window variant (80 per band) is available
/// behind the same switch.
struct SubbandLayout {
    std::size_t num_bands = 32;
    std::size_t windows_per_frame = 20;
    std::size_t coeffs_per_window = 256;

    std::size_t band_width() const { return coeffs_per_window / num_bands; }
    std::size_t band_length() const { return windows_per_frame * band_width(); }
    std::size_t frame_coeffs() const { return windows_per_frame * coeffs_per_window; }

    void validate() const;
};

/// One frame of grouped coefficients, band-major storage.
struct SubbandFrame {
    SubbandLayout layout;
    std::vector<double> data;  ///< layout.num_bands * layout.band_length()

    std::span<double> band(std::size_t b);
    std::span<const double> band(std::size_t b) const;
};

/// Frequency-major grouping: band b holds coefficient lines [b*W, (b+1)*W) of
/// every window in the frame, window-major within the band.
SubbandFrame group_subbands(std::span<const double> coeffs, const SubbandLayout& layout);

/// Exact inverse of group_subbands.
std::vector<double> ungroup_subbands(const SubbandFrame& frame);

/// Maximum-likelihood Laplacian scale: mean absolute deviation from the median.
double laplacian_fit(std::span<const double> band);

using SpreadEmbedFn = std::function<Signal(const Signal& projected, const BitMessage& bits)>;
using SpreadDecodeFn = std::function<BitMessage(const Signal& projected)>;

/// Unit-norm spreading chips for each bit position, derived from the key.
std::vector<double> spreading_chips(const Key256& key, std::size_t num_bits, std::size_t length);

/// Spread-transform embedding at rate 1/L: each bit modulates the projection of
/// L consecutive coefficients onto its spreading vector, and the codec operates
/// on the projected scalars.
Signal spread_embed(const Signal& band, const BitMessage& bits, std::size_t spread_length,
                    const Key256& key, const SpreadEmbedFn& embed);

/// Projection + decode; num_bits tells how many bits were embedded.
BitMessage spread_extract(const Signal& band, std::size_t num_bits, std::size_t spread_length,
                          const Key256& key, const SpreadDecodeFn& decode);

}  // namespace stegotcq
