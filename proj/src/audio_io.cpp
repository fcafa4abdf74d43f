#include "mir/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace mir {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint32_t read_u32le(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16le(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void append_u32le(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
}

void append_u16le(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
}

}  // namespace

AudioBuffer read_wav(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw MalformedContainer("cannot open file: " + path);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(file)),
                                   std::istreambuf_iterator<char>());

  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw MalformedContainer("missing RIFF/WAVE magic");
  }

  bool have_fmt = false;
  WavFormat fmt;
  const unsigned char* data_chunk = nullptr;
  std::size_t data_size = 0;

  // Walk chunks; fmt must appear before data, other ordering is not assumed.
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* header = bytes.data() + pos;
    std::uint32_t chunk_size = read_u32le(header + 4);
    std::size_t body = pos + 8;
    if (body + chunk_size > bytes.size()) throw MalformedContainer("truncated chunk");

    if (std::memcmp(header, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw MalformedContainer("fmt chunk too small");
      std::uint16_t audio_format = read_u16le(bytes.data() + body);
      fmt.num_channels = read_u16le(bytes.data() + body + 2);
      fmt.sample_rate_hz = static_cast<int>(read_u32le(bytes.data() + body + 4));
      fmt.bits_per_sample = read_u16le(bytes.data() + body + 14);
      if (audio_format != 1) throw UnsupportedFormat("only PCM is supported");
      if (fmt.bits_per_sample != 16) throw UnsupportedFormat("only 16-bit samples are supported");
      if (fmt.num_channels < 1 || fmt.sample_rate_hz <= 0) {
        throw MalformedContainer("invalid fmt fields");
      }
      have_fmt = true;
    } else if (std::memcmp(header, "data", 4) == 0) {
      if (!have_fmt) throw MalformedContainer("data chunk before fmt");
      data_chunk = bytes.data() + body;
      data_size = chunk_size;
      break;
    }
    pos = body + chunk_size + (chunk_size % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data_chunk == nullptr) throw MalformedContainer("missing fmt or data chunk");

  const int channels = fmt.num_channels;
  const std::size_t num_frames = data_size / (2u * channels);
  if (num_frames == 0) throw EmptyAudio("zero audio frames");

  AudioBuffer audio;
  audio.sample_rate_hz = fmt.sample_rate_hz;
  audio.samples.resize(num_frames);
  for (std::size_t n = 0; n < num_frames; ++n) {
    double sum = 0.0;
    for (int c = 0; c < channels; ++c) {
      const unsigned char* p = data_chunk + 2 * (n * channels + c);
      std::int16_t s = static_cast<std::int16_t>(p[0] | (p[1] << 8));
      sum += static_cast<double>(s);
    }
    audio.samples[n] = sum / channels / 32768.0;
  }
  return audio;
}

void write_wav(const std::string& path, const AudioBuffer& audio) {
  const std::uint32_t num_samples = static_cast<std::uint32_t>(audio.samples.size());
  const std::uint32_t data_size = num_samples * 2;
  const std::uint32_t sample_rate = static_cast<std::uint32_t>(audio.sample_rate_hz);

  std::vector<unsigned char> out;
  out.reserve(44 + data_size);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  append_u32le(out, 36 + data_size);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  append_u32le(out, 16);
  append_u16le(out, 1);            // PCM
  append_u16le(out, 1);            // mono
  append_u32le(out, sample_rate);
  append_u32le(out, sample_rate * 2);  // byte rate
  append_u16le(out, 2);            // block align
  append_u16le(out, 16);           // bits per sample
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  append_u32le(out, data_size);

  const double kMax = 1.0 - std::pow(2.0, -15);
  for (double s : audio.samples) {
    double clamped = std::clamp(s, -1.0, kMax);
    std::int16_t q = static_cast<std::int16_t>(std::lround(clamped * 32768.0));
    append_u16le(out, static_cast<std::uint16_t>(q));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open file for writing: " + path);
  file.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoFailure("write failed: " + path);
}

AudioBuffer synth_sine(double freq_hz, double duration_s, int sample_rate_hz,
                       double amplitude) {
  if (freq_hz <= 0.0 || duration_s <= 0.0 || sample_rate_hz <= 0 ||
      amplitude <= 0.0 || amplitude > 1.0) {
    throw Error("invalid sine parameters");
  }
  if (freq_hz >= sample_rate_hz / 2.0) {
    throw AliasedFrequency("frequency at or above Nyquist");
  }
  AudioBuffer audio;
  audio.sample_rate_hz = sample_rate_hz;
  const std::size_t num_samples =
      static_cast<std::size_t>(std::lround(duration_s * sample_rate_hz));
  audio.samples.resize(num_samples);
  for (std::size_t n = 0; n < num_samples; ++n) {
    audio.samples[n] =
        amplitude * std::sin(kTwoPi * freq_hz * static_cast<double>(n) / sample_rate_hz);
  }
  return audio;
}

AudioBuffer synth_click_train(double period_s, double duration_s, int sample_rate_hz) {
  if (period_s <= 0.0 || duration_s <= 0.0 || sample_rate_hz <= 0 ||
      period_s < 2.0 / sample_rate_hz) {
    throw Error("invalid click train parameters");
  }
  AudioBuffer audio;
  audio.sample_rate_hz = sample_rate_hz;
  const std::size_t num_samples =
      static_cast<std::size_t>(std::lround(duration_s * sample_rate_hz));
  audio.samples.assign(num_samples, 0.0);
  for (long k = 0;; ++k) {
    long idx = std::lround(k * period_s * sample_rate_hz);
    if (idx >= static_cast<long>(num_samples)) break;
    audio.samples[static_cast<std::size_t>(idx)] = 1.0;
  }
  return audio;
}

}  // namespace mir
