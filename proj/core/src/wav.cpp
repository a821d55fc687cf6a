#include "stegotcq/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "stegotcq/errors.hpp"

namespace stegotcq {

Signal PcmAudio::to_signal() const {
    Signal s(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) s[i] = double(samples[i]);
    return s;
}

PcmAudio PcmAudio::from_signal(const Signal& s, std::uint32_t sample_rate) {
    PcmAudio audio;
    audio.sample_rate = sample_rate;
    audio.samples.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double rounded = std::nearbyint(s[i]);
        audio.samples[i] = std::int16_t(std::clamp(rounded, -32768.0, 32767.0));
    }
    return audio;
}

namespace {

std::uint32_t read_u32(const std::uint8_t* p) {
    return std::uint32_t(p[0]) | std::uint32_t(p[1]) << 8 | std::uint32_t(p[2]) << 16 |
           std::uint32_t(p[3]) << 24;
}

std::uint16_t read_u16(const std::uint8_t* p) {
    return std::uint16_t(p[0] | p[1] << 8);
}

void write_u32(std::ofstream& out, std::uint32_t v) {
    const std::uint8_t bytes[4] = {std::uint8_t(v), std::uint8_t(v >> 8), std::uint8_t(v >> 16),
                                   std::uint8_t(v >> 24)};
    out.write(reinterpret_cast<const char*>(bytes), 4);
}

void write_u16(std::ofstream& out, std::uint16_t v) {
    const std::uint8_t bytes[2] = {std::uint8_t(v), std::uint8_t(v >> 8)};
    out.write(reinterpret_cast<const char*>(bytes), 2);
}

}  // namespace

PcmAudio read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("wav: cannot open " + path);
    std::vector<std::uint8_t> data((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());

    if (data.size() < 12 || std::memcmp(data.data(), "RIFF", 4) != 0 ||
        std::memcmp(data.data() + 8, "WAVE", 4) != 0)
        throw FormatError("wav: not a RIFF/WAVE file");

    bool have_fmt = false;
    std::uint16_t channels = 0, bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    const std::uint8_t* pcm_data = nullptr;
    std::size_t pcm_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= data.size()) {
        const char* id = reinterpret_cast<const char*>(data.data() + pos);
        const std::uint32_t chunk_size = read_u32(data.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + chunk_size > data.size()) throw FormatError("wav: truncated chunk");
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (chunk_size < 16) throw FormatError("wav: fmt chunk too small");
            const std::uint16_t format = read_u16(data.data() + body);
            channels = read_u16(data.data() + body + 2);
            sample_rate = read_u32(data.data() + body + 4);
            bits_per_sample = read_u16(data.data() + body + 14);
            if (format != 1) throw FormatError("wav: only PCM (format 1) is supported");
            if (bits_per_sample != 16) throw FormatError("wav: only 16-bit samples are supported");
            if (channels == 0) throw FormatError("wav: zero channels");
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            pcm_data = data.data() + body;
            pcm_size = chunk_size;
        }
        pos = body + chunk_size + (chunk_size & 1);  // chunks are word-aligned
    }

    if (!have_fmt || pcm_data == nullptr) throw FormatError("wav: missing fmt or data chunk");

    PcmAudio audio;
    audio.sample_rate = sample_rate;
    const std::size_t frame_bytes = std::size_t(channels) * 2;
    const std::size_t frames = pcm_size / frame_bytes;
    audio.samples.resize(frames);
    for (std::size_t f = 0; f < frames; ++f) {
        const std::uint8_t* p = pcm_data + f * frame_bytes;  // channel 0
        audio.samples[f] = std::int16_t(read_u16(p));
    }
    return audio;
}

void write_wav(const PcmAudio& audio, const std::string& path) {
    if (audio.sample_rate == 0) throw InvalidParameterError("wav: sample rate must be positive");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("wav: cannot create " + path);

    const std::uint32_t data_bytes = std::uint32_t(audio.samples.size() * 2);
    out.write("RIFF", 4);
    write_u32(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_u32(out, 16);
    write_u16(out, 1);  // PCM
    write_u16(out, 1);  // mono
    write_u32(out, audio.sample_rate);
    write_u32(out, audio.sample_rate * 2);
    write_u16(out, 2);
    write_u16(out, 16);
    out.write("data", 4);
    write_u32(out, data_bytes);
    for (std::int16_t s : audio.samples) write_u16(out, std::uint16_t(s));
    if (!out) throw FormatError("wav: write failed for " + path);
}

}  // namespace stegotcq
