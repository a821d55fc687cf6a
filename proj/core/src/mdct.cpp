#include "stegotcq/mdct.hpp"

#include <cmath>

#include "stegotcq/errors.hpp"

namespace stegotcq {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Iterative radix-2 decimation-in-time FFT, e^{-2*pi*i*j*k/n} convention.
void fft_inplace(std::vector<std::complex<double>>& a,
                 const std::vector<std::complex<double>>& twiddle) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t block = 0; block < n; block += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> w = twiddle[k * stride];
                const std::complex<double> lo = a[block + k];
                const std::complex<double> hi = a[block + k + len / 2] * w;
                a[block + k] = lo + hi;
                a[block + k + len / 2] = lo - hi;
            }
        }
    }
}

}  // namespace

Mdct::Mdct(std::size_t window_size) {
    if (window_size < 8 || !is_power_of_two(window_size))
        throw InvalidParameterError("mdct: window size must be a power of two >= 8");
    half_ = window_size / 2;

    window_.resize(window_size);
    for (std::size_t n = 0; n < window_size; ++n)
        window_[n] = std::sin(M_PI * (double(n) + 0.5) / double(window_size));

    const std::size_t quarter = half_ / 2;  // FFT size
    fft_twiddle_.resize(quarter / 2 == 0 ? 1 : quarter / 2);
    for (std::size_t k = 0; k < fft_twiddle_.size(); ++k) {
        const double phi = -2.0 * M_PI * double(k) / double(quarter);
        fft_twiddle_[k] = {std::cos(phi), std::sin(phi)};
    }
    pre_twiddle_.resize(quarter);
    post_twiddle_.resize(quarter);
    for (std::size_t m = 0; m < quarter; ++m) {
        const double pre = -M_PI * double(m) / double(half_);
        pre_twiddle_[m] = {std::cos(pre), std::sin(pre)};
        const double post = -M_PI * (4.0 * double(m) + 1.0) / (4.0 * double(half_));
        post_twiddle_[m] = {std::cos(post), std::sin(post)};
    }
}

// In-place DCT-IV: d[k] = sum_n values[n] * cos(pi/N * (n + 1/2) * (k + 1/2)),
// computed with one complex FFT of size N/2.
void Mdct::dct4_inplace(std::vector<double>& values) const {
    const std::size_t n = half_;
    const std::size_t quarter = n / 2;
    std::vector<std::complex<double>> work(quarter);
    for (std::size_t m = 0; m < quarter; ++m)
        work[m] = std::complex<double>(values[2 * m], values[n - 1 - 2 * m]) * pre_twiddle_[m];
    fft_inplace(work, fft_twiddle_);
    for (std::size_t j = 0; j < quarter; ++j) {
        const std::complex<double> g = work[j] * post_twiddle_[j];
        values[2 * j] = g.real();
        values[n - 1 - 2 * j] = -g.imag();
    }
}

std::vector<double> Mdct::forward(std::span<const double> frame) const {
    if (frame.size() != window_size())
        throw InvalidParameterError("mdct: frame length must equal the window size");
    const std::size_t n = half_;
    // Window, then fold 2N samples to the N-point DCT-IV input.
    std::vector<double> z(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) z[i] = frame[i] * window_[i];
    std::vector<double> u(n);
    for (std::size_t j = 0; j < n / 2; ++j)
        u[j] = -z[3 * n / 2 - 1 - j] - z[3 * n / 2 + j];
    for (std::size_t j = n / 2; j < n; ++j)
        u[j] = z[j - n / 2] - z[3 * n / 2 - 1 - j];
    dct4_inplace(u);
    const double scale = std::sqrt(2.0 / double(n));
    for (double& v : u) v *= scale;
    return u;
}

std::vector<double> Mdct::inverse(std::span<const double> coeffs) const {
    if (coeffs.size() != half_)
        throw InvalidParameterError("mdct: coefficient count must equal window_size/2");
    const std::size_t n = half_;
    std::vector<double> d(coeffs.begin(), coeffs.end());
    dct4_inplace(d);
    // Unfold the DCT-IV extension back to 2N samples and window.
    std::vector<double> y(2 * n);
    for (std::size_t i = 0; i < n / 2; ++i) y[i] = d[i + n / 2];
    for (std::size_t i = n / 2; i < 3 * n / 2; ++i) y[i] = -d[3 * n / 2 - 1 - i];
    for (std::size_t i = 3 * n / 2; i < 2 * n; ++i) y[i] = -d[i - 3 * n / 2];
    // Analysis and synthesis gains multiply to 2/N for TDAC reconstruction;
    // splitting it evenly keeps the lapped transform orthonormal.
    const double gain = std::sqrt(2.0 / double(n));
    for (std::size_t i = 0; i < 2 * n; ++i) y[i] *= gain * window_[i];
    return y;
}

std::vector<double> Mdct::analyze(std::span<const double> signal) const {
    const std::size_t n = half_;
    if (signal.size() % n != 0)
        throw InvalidParameterError("mdct: signal length must be a multiple of window_size/2");
    std::vector<double> padded(signal.size() + 2 * n, 0.0);
    std::copy(signal.begin(), signal.end(), padded.begin() + n);
    const std::size_t frames = signal.size() / n + 1;
    std::vector<double> coeffs;
    coeffs.reserve(frames * n);
    for (std::size_t f = 0; f < frames; ++f) {
        const auto out = forward(std::span(padded).subspan(f * n, 2 * n));
        coeffs.insert(coeffs.end(), out.begin(), out.end());
    }
    return coeffs;
}

std::vector<double> Mdct::synthesize(std::span<const double> coeffs,
                                     std::size_t signal_length) const {
    const std::size_t n = half_;
    if (signal_length % n != 0)
        throw InvalidParameterError("mdct: signal length must be a multiple of window_size/2");
    const std::size_t frames = signal_length / n + 1;
    if (coeffs.size() != frames * n)
        throw InvalidParameterError("mdct: coefficient count does not match the signal length");
    std::vector<double> padded(signal_length + 2 * n, 0.0);
    for (std::size_t f = 0; f < frames; ++f) {
        const auto segment = inverse(coeffs.subspan(f * n, n));
        for (std::size_t i = 0; i < 2 * n; ++i) padded[f * n + i] += segment[i];
    }
    return {padded.begin() + n, padded.begin() + n + signal_length};
}

}  // namespace stegotcq
