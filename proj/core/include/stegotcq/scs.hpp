#pragma once

#include "stegotcq/channel.hpp"
#include "stegotcq/prf.hpp"

namespace stegotcq {

/// Scalar Costa scheme parameters. The per-index dither acts as the private key:
/// codewords for bit b at index i are { k*delta + dither[i] + b*delta/2 : k integer }.
struct ScsParams {
    double delta = 1.0;   ///< quantization step, > 0
    double alpha = 1.0;   ///< embedding strength, in (0, 1]
    Signal dither;        ///< per-index offsets, each in [-delta/2, +delta/2]

    void validate() const;
};

/// Conventional operating point for a channel: alpha = sqrt(P / (P + 2.71 N)),
/// delta solved so the embedding power equals P. Dither expands from the key.
ScsParams scs_params_for_channel(const ChannelParams& channel, const Key256& dither_key,
                                 std::size_t length);

/// Dither sequence uniform over [-delta/2, +delta/2], expanded from a key.
Signal scs_dither_from_key(const Key256& key, double delta, std::size_t length);

/// Per-index nearest codeword of the message sub-codebook. Exact midpoints
/// resolve toward the larger codeword.
Signal scs_nearest_codeword(const Signal& x, const BitMessage& m, const ScsParams& params);

/// y = x + alpha * (u* - x) with u* = scs_nearest_codeword(x, m).
Signal scs_embed(const Signal& x, const BitMessage& m, const ScsParams& params);

/// Per-index hard decision: the bit whose sub-codebook owns the nearest point
/// of the full codebook to y[i].
BitMessage scs_decode(const Signal& y, const ScsParams& params);

}  // namespace stegotcq
