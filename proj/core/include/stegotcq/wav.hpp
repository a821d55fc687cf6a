#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegotcq/channel.hpp"

namespace stegotcq {

/// 16-bit PCM audio, single channel (channel 0 of multi-channel files).
struct PcmAudio {
    std::vector<std::int16_t> samples;
    std::uint32_t sample_rate = 44100;

    Signal to_signal() const;
    /// Rounds and saturates to the 16-bit range; the rounding error is the
    /// quantization noise the embedding has to survive.
    static PcmAudio from_signal(const Signal& s, std::uint32_t sample_rate);
};

/// Canonical RIFF/WAVE PCM-16 reader. Unknown chunks are skipped; malformed or
/// truncated files and unsupported encodings raise FormatError.
PcmAudio read_wav(const std::string& path);

/// Canonical 44-byte-header mono PCM-16 writer; write/read round trips are
/// bit-exact.
void write_wav(const PcmAudio& audio, const std::string& path);

}  // namespace stegotcq
