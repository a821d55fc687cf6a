#pragma once

#include <cstdint>
#include <string>

#include "stegotcq/channel.hpp"
#include "stegotcq/prf.hpp"

namespace stegotcq {

/// Keyed dither layout for the trellis output table.
enum class DitherStyle {
    /// Keyed per-state parity labels plus a small per-state jitter, on top of a
    /// keyed per-index phase stream. Every state exposes the same half-step
    /// lattice per index, so quantization statistics match a plain half-step
    /// quantizer exactly; the secret is in which paths own which points.
    kParityLabeling,
    /// Keyed permutation of stratified per-state phases, the two outputs of a
    /// state half a step apart. Path choices trade distortion against future
    /// phases, which is what gives the iteratively decoded codes their gain.
    kStratifiedComplementary,
    /// Every (state, bit) entry drawn independently and uniformly.
    kIndependentUniform,
};

/// Shift-register trellis with keyed per-(state, bit) dither outputs and a
/// keyed per-index phase stream. next_state(s, b) = ((s << 1) | b) mod 2^order;
/// codewords for a branch at index i are { k*delta + offset(i, s, b) : k integer }.
struct Trellis {
    int order = 1;        ///< r, number of register bits; 2^r states
    double delta = 1.0;   ///< lattice step, > 0
    std::vector<double> dither;  ///< 2^(order+1) entries, [s*2 + b], each in [-delta/2, +delta/2)
    std::uint64_t phase_seed = 0;       ///< seeds the per-index phase stream
    std::uint64_t key_fingerprint = 0;  ///< identifies the build key in serialized form

    int num_states() const { return 1 << order; }
    int next_state(int state, int bit) const {
        return ((state << 1) | bit) & (num_states() - 1);
    }
    double output(int state, int bit) const { return dither[std::size_t(state) * 2 + bit]; }

    /// Public per-index phase in [-delta/2, delta/2).
    double index_phase(std::size_t index) const {
        std::uint64_t z = phase_seed + 0x9e3779b97f4a7c15ull * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z ^= z >> 31;
        return delta * (double(z >> 11) * 0x1.0p-53 - 0.5);
    }

    /// Lattice offset of branch (state, bit) at a block position.
    double offset(std::size_t index, int state, int bit) const {
        return index_phase(index) + output(state, bit);
    }

    void validate() const;
};

/// Build a keyed trellis. Deterministic for a fixed (order, delta, key, style).
Trellis build_trellis(int order, double delta, const Key256& key,
                      DitherStyle style = DitherStyle::kParityLabeling);

/// Versioned text form (order, delta, key fingerprint, phase seed, dither
/// table); value round trips are bit-exact.
std::string trellis_to_text(const Trellis& trellis);
Trellis trellis_from_text(const std::string& text);

}  // namespace stegotcq
