#pragma once

#include "stegotcq/tcq.hpp"

namespace stegotcq {

/// Permutation of block indices. Slot j of the interleaved stream reads source
/// index forward(j).
class Interleaver {
   public:
    Interleaver() = default;

    static Interleaver identity(std::size_t n);
    static Interleaver random(std::size_t n, std::uint64_t seed);
    /// Quadratic permutation polynomial over power-of-two lengths: strong
    /// index spreading, which keeps short decoding cycles out of the floor.
    static Interleaver spread(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return forward_.size(); }
    std::uint32_t forward(std::size_t slot) const { return forward_[slot]; }
    std::uint32_t inverse(std::size_t index) const { return inverse_[index]; }

    template <typename T>
    std::vector<T> permute(const std::vector<T>& v) const {
        std::vector<T> out(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) out[j] = v[forward_[j]];
        return out;
    }
    template <typename T>
    std::vector<T> unpermute(const std::vector<T>& v) const {
        std::vector<T> out(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) out[forward_[j]] = v[j];
        return out;
    }

    void validate() const;

   private:
    std::vector<std::uint32_t> forward_;
    std::vector<std::uint32_t> inverse_;
};

/// How the two constituent dither sequences combine into the joint codebook.
enum class TurboComposition {
    kDitherAverage,  ///< joint offset = mean of the two constituent offsets
    kAlternating,    ///< even indices carry trellis A's offset, odd indices trellis B's
};

struct TurboParams {
    Trellis trellis_a;
    Trellis trellis_b;
    Interleaver interleaver;
    int max_iterations = 10;
    double agreement_threshold = 1e-3;  ///< on mean |soft-bit| difference between the passes

    double alpha = 1.0;
    double noise_variance = 0.0;  ///< decoder-assumed channel noise (self-noise added internally)
    TurboComposition composition = TurboComposition::kAlternating;
    double extrinsic_scale = 0.75;  ///< damping on exchanged extrinsics
    bool exact_metrics = false;     ///< max* with correction instead of plain max
    int start_state_a = 0;
    int start_state_b = 0;

    double delta() const { return trellis_a.delta; }
    void validate() const;
};

/// Conventional operating point for a block of the given length: alpha = P/(P+N),
/// delta for embedding power P, constituent trellises and the interleaver all
/// expanded from the key.
TurboParams turbo_params_for_channel(const ChannelParams& channel, int order, const Key256& key,
                                     std::size_t block_length);

/// Joint informed encoding: both constituent paths are pinned by the message,
/// the composed per-index offset defines the codeword lattice, and the stego is
/// y = x + alpha * (u* - x). Embedding power stays within 5% of delta()-implied P.
Signal turbo_encode(const Signal& x, const BitMessage& m, const TurboParams& params,
                    const ChannelParams& channel);

struct TurboDecodeResult {
    BitMessage message;
    int iterations_used = 0;
    std::vector<double> reliabilities;  ///< combined per-index log-likelihood ratios
};

/// Iterative decoding: alternating soft trellis passes (A on y, B on the
/// interleaved y), each feeding damped extrinsic reliabilities to the other as
/// priors, until the two a posteriori soft-bit vectors agree to within the
/// threshold or max_iterations is reached. Non-convergence is not an error.
TurboDecodeResult turbo_decode(const Signal& y, const TurboParams& params);

/// As turbo_decode, also reporting the hard decisions after every iteration.
TurboDecodeResult turbo_decode_trace(const Signal& y, const TurboParams& params,
                                     std::vector<BitMessage>* per_iteration);

}  // namespace stegotcq
