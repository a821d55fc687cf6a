#include "stegotcq/trellis.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "stegotcq/errors.hpp"

namespace stegotcq {

void Trellis::validate() const {
    if (order < 1 || order > 16)
        throw InvalidParameterError("trellis order must be in [1, 16]");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidParameterError("trellis delta must be positive and finite");
    if (dither.size() != std::size_t(num_states()) * 2)
        throw InvalidParameterError("trellis dither table has wrong size");
    for (double d : dither)
        if (!(std::fabs(d) <= delta / 2.0))
            throw InvalidParameterError("trellis dither values must lie in [-delta/2, +delta/2]");
}

Trellis build_trellis(int order, double delta, const Key256& key, DitherStyle style) {
    if (order < 1 || order > 16)
        throw InvalidParameterError("trellis order must be in [1, 16]");
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw InvalidParameterError("trellis delta must be positive and finite");

    const int states = 1 << order;
    Trellis trellis;
    trellis.order = order;
    trellis.delta = delta;
    trellis.dither.resize(std::size_t(states) * 2);
    trellis.key_fingerprint = PrfStream(key, "trellis-fingerprint").next_u64();
    trellis.phase_seed = PrfStream(key, "trellis-phase").next_u64();

    PrfStream stream(key, "trellis-dither");
    const double half = delta / 2.0;
    auto wrap = [&](double v) {
        if (v >= half) v -= delta;
        if (v < -half) v += delta;
        return v;
    };

    switch (style) {
        case DitherStyle::kIndependentUniform:
            for (auto& d : trellis.dither) d = delta * (stream.next_unit() - 0.5);
            break;

        case DitherStyle::kParityLabeling:
            // Which paths own which half-step points is the keyed secret; the
            // jitter keeps tables from distinct keys disjoint and is small
            // enough not to disturb the half-step quantization statistics.
            for (int s = 0; s < states; ++s) {
                const double jitter = (stream.next_unit() - 0.5) * delta / 512.0;
                const int parity = int(stream.next_u64() & 1);
                trellis.dither[std::size_t(s) * 2] = wrap(jitter + parity * half);
                trellis.dither[std::size_t(s) * 2 + 1] = wrap(jitter + (1 - parity) * half);
            }
            break;

        case DitherStyle::kStratifiedComplementary: {
            // Evenly spread per-state phases in keyed order; each state's
            // second output sits half a step away.
            std::vector<int> perm(states);
            std::iota(perm.begin(), perm.end(), 0);
            for (int i = states - 1; i > 0; --i) {
                const int j = int(stream.next_u64() % std::uint64_t(i + 1));
                std::swap(perm[i], perm[j]);
            }
            for (int s = 0; s < states; ++s) {
                const double phase = (double(perm[s]) + stream.next_unit()) / double(states);
                const double d0 = delta * (phase - 0.5);
                trellis.dither[std::size_t(s) * 2] = d0;
                trellis.dither[std::size_t(s) * 2 + 1] = wrap(d0 + half);
            }
            break;
        }
    }
    return trellis;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_u64_hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

}  // namespace

std::string trellis_to_text(const Trellis& trellis) {
    trellis.validate();
    std::ostringstream out;
    out << "stegotcq-trellis v1\n";
    out << "order " << trellis.order << "\n";
    out << "delta " << format_double(trellis.delta) << "\n";
    out << "key_fp " << format_u64_hex(trellis.key_fingerprint) << "\n";
    out << "phase_seed " << format_u64_hex(trellis.phase_seed) << "\n";
    out << "dither";
    for (double d : trellis.dither) out << ' ' << format_double(d);
    out << "\n";
    return out.str();
}

Trellis trellis_from_text(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "stegotcq-trellis" || version != "v1")
        throw FormatError("not a stegotcq-trellis v1 document");

    Trellis trellis;
    std::string tag, hex;
    if (!(in >> tag >> trellis.order) || tag != "order")
        throw FormatError("trellis text: missing order");
    if (!(in >> tag >> trellis.delta) || tag != "delta")
        throw FormatError("trellis text: missing delta");
    if (!(in >> tag >> hex) || tag != "key_fp" || hex.size() != 16)
        throw FormatError("trellis text: missing key fingerprint");
    trellis.key_fingerprint = std::stoull(hex, nullptr, 16);
    if (!(in >> tag >> hex) || tag != "phase_seed" || hex.size() != 16)
        throw FormatError("trellis text: missing phase seed");
    trellis.phase_seed = std::stoull(hex, nullptr, 16);
    if (!(in >> tag) || tag != "dither") throw FormatError("trellis text: missing dither table");
    if (trellis.order < 1 || trellis.order > 16)
        throw FormatError("trellis text: order out of range");
    const std::size_t count = std::size_t(1) << (trellis.order + 1);
    trellis.dither.resize(count);
    for (auto& d : trellis.dither)
        if (!(in >> d)) throw FormatError("trellis text: truncated dither table");
    trellis.validate();
    return trellis;
}

}  // namespace stegotcq
