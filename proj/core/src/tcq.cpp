#include "stegotcq/tcq.hpp"

#include <cmath>
#include <limits>

#include "stegotcq/errors.hpp"

namespace stegotcq {

namespace {

inline double nearest_lattice_point(double value, double step, double offset) {
    return offset + step * std::floor((value - offset) / step + 0.5);
}

inline double branch_distance_sq(double value, double step, double offset) {
    const double diff = value - nearest_lattice_point(value, step, offset);
    return diff * diff;
}

}  // namespace

void TcqParams::validate() const {
    trellis.validate();
    if (!(alpha > 0.0) || alpha > 1.0)
        throw InvalidParameterError("tcq alpha must be in (0, 1]");
}

TcqParams tcq_params_for_channel(const ChannelParams& channel, int order, const Key256& key) {
    channel.validate();
    const double p = channel.embed_power;
    const double n = channel.noise_variance;
    TcqParams params;
    params.alpha = p / (p + n);
    // Quantization error of the forced path is uniform over one step, so the
    // embedding power is alpha^2 * delta^2 / 12.
    const double delta = std::sqrt(12.0 * p) / params.alpha;
    params.trellis = build_trellis(order, delta, key);
    return params;
}

TcqEncodeResult tcq_encode(const Signal& x, const BitMessage& m, const TcqParams& params,
                           int start_state) {
    params.validate();
    if (x.size() != m.size())
        throw InvalidParameterError("tcq_encode: signal and message lengths must match");
    if (start_state < 0 || start_state >= params.trellis.num_states())
        throw InvalidParameterError("tcq_encode: start state out of range");

    const Trellis& trellis = params.trellis;
    TcqEncodeResult result;
    result.codeword.resize(x.size());
    result.stego.resize(x.size());
    int state = start_state;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const int bit = m[i] & 1;
        const double u = nearest_lattice_point(x[i], trellis.delta, trellis.offset(i, state, bit));
        result.codeword[i] = u;
        result.stego[i] = x[i] + params.alpha * (u - x[i]);
        state = trellis.next_state(state, bit);
    }
    return result;
}

NearestCodewordResult nearest_codeword_any(const Signal& y, const TcqParams& params,
                                           int start_state) {
    params.validate();
    if (y.empty()) throw InvalidParameterError("nearest_codeword_any: empty signal");
    if (start_state < 0 || start_state >= params.trellis.num_states())
        throw InvalidParameterError("nearest_codeword_any: start state out of range");

    const Trellis& trellis = params.trellis;
    const int states = trellis.num_states();
    const int high_bit = states >> 1;
    const std::size_t n = y.size();
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> cur(states, inf), next(states);
    cur[start_state] = 0.0;

    // One traceback bit per (index, state): which of the two shift-register
    // predecessors won. The branch bit itself is the state's low bit.
    const std::size_t words_per_index = (std::size_t(states) + 63) / 64;
    std::vector<std::uint64_t> traceback(words_per_index * n, 0);

    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t* tb = traceback.data() + i * words_per_index;
        for (int to = 0; to < states; ++to) {
            const int bit = to & 1;
            const int pred0 = to >> 1;
            const int pred1 = pred0 | high_bit;
            double m0 = cur[pred0];
            if (m0 < inf) m0 += branch_distance_sq(y[i], trellis.delta, trellis.offset(i, pred0, bit));
            double m1 = cur[pred1];
            if (m1 < inf) m1 += branch_distance_sq(y[i], trellis.delta, trellis.offset(i, pred1, bit));
            if (m1 < m0) {
                next[to] = m1;
                tb[std::size_t(to) >> 6] |= std::uint64_t(1) << (to & 63);
            } else {
                next[to] = m0;
            }
        }
        cur.swap(next);
    }

    int state = 0;
    double best = cur[0];
    for (int s = 1; s < states; ++s)
        if (cur[s] < best) {
            best = cur[s];
            state = s;
        }

    NearestCodewordResult result;
    result.squared_distance = best;
    result.message.resize(n);
    result.codeword.resize(n);
    std::vector<int> path(n);  // state entered before consuming index i
    for (std::size_t i = n; i-- > 0;) {
        const std::uint64_t* tb = traceback.data() + i * words_per_index;
        const int bit = state & 1;
        const bool took_high = (tb[std::size_t(state) >> 6] >> (state & 63)) & 1;
        const int pred = (state >> 1) | (took_high ? high_bit : 0);
        result.message[i] = std::uint8_t(bit);
        path[i] = pred;
        state = pred;
    }
    for (std::size_t i = 0; i < n; ++i) {
        result.codeword[i] = nearest_lattice_point(y[i], trellis.delta,
                                                   trellis.offset(i, path[i], result.message[i]));
    }
    return result;
}

BitMessage tcq_decode(const Signal& y, const TcqParams& params, int start_state) {
    return nearest_codeword_any(y, params, start_state).message;
}

}  // namespace stegotcq
