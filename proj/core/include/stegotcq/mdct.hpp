#pragma once

#include <complex>
#include <span>

#include "stegotcq/channel.hpp"

namespace stegotcq {

/// Modified discrete cosine transform with a sine window and 50% overlap.
/// Scaling is orthonormal across the lapped structure, so white time-domain
/// noise keeps its variance per coefficient. Implemented by folding to a
/// DCT-IV evaluated through a half-size complex FFT.
class Mdct {
   public:
    /// window_size = 2N samples per analysis frame; must be a power of two >= 8.
    explicit Mdct(std::size_t window_size = 512);

    std::size_t window_size() const { return 2 * half_; }
    std::size_t num_coefficients() const { return half_; }  ///< N per frame
    const std::vector<double>& window() const { return window_; }

    /// One frame of 2N samples to N coefficients.
    std::vector<double> forward(std::span<const double> frame) const;

    /// N coefficients to a windowed 2N-sample segment; adjacent segments
    /// overlap-added at hop N reconstruct the interior exactly.
    std::vector<double> inverse(std::span<const double> coeffs) const;

    /// Frame a signal (length a multiple of N) with N zeros of padding on each
    /// side, so every sample is interior. Returns (length/N + 1) * N coefficients.
    std::vector<double> analyze(std::span<const double> signal) const;

    /// Inverse of analyze for the given original signal length.
    std::vector<double> synthesize(std::span<const double> coeffs, std::size_t signal_length) const;

   private:
    void dct4_inplace(std::vector<double>& values) const;

    std::size_t half_;  // N
    std::vector<double> window_;
    std::vector<std::complex<double>> fft_twiddle_;   // FFT butterflies
    std::vector<std::complex<double>> pre_twiddle_;   // DCT-IV input rotation
    std::vector<std::complex<double>> post_twiddle_;  // DCT-IV output rotation
};

}  // namespace stegotcq
