#pragma once

#include "stegotcq/trellis.hpp"

namespace stegotcq {

/// Trellis-coded quantization embedding parameters. The lattice step lives in
/// the trellis; alpha scales the informed-embedding move toward the codeword.
struct TcqParams {
    Trellis trellis;
    double alpha = 1.0;  ///< in (0, 1]; P/(P+N) is the conventional operating point

    double delta() const { return trellis.delta; }
    void validate() const;
};

/// Conventional operating point: alpha = P/(P+N), delta solved so the
/// embedding power equals P (power of the forced-path quantization error).
TcqParams tcq_params_for_channel(const ChannelParams& channel, int order, const Key256& key);

struct TcqEncodeResult {
    Signal codeword;  ///< u*, the minimum-distortion codeword consistent with the message
    Signal stego;     ///< y = x + alpha * (u* - x)
};

/// Informed encoding. The message pins the state path, so the search reduces to
/// the per-index nearest lattice point of each forced branch.
TcqEncodeResult tcq_encode(const Signal& x, const BitMessage& m, const TcqParams& params,
                           int start_state = 0);

/// Viterbi decoding over the unconstrained trellis: returns the bit labels of
/// the minimum-distortion state path.
BitMessage tcq_decode(const Signal& y, const TcqParams& params, int start_state = 0);

struct NearestCodewordResult {
    Signal codeword;
    BitMessage message;
    double squared_distance = 0.0;  ///< total over the block
};

/// Same search as tcq_decode, returning the winning codeword with its labeling.
NearestCodewordResult nearest_codeword_any(const Signal& y, const TcqParams& params,
                                           int start_state = 0);

}  // namespace stegotcq
