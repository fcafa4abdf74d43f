#include "mir/fingerprint.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

#include "mir/spectral.h"

namespace mir {

namespace {

constexpr int kBlockSize = 2048;
constexpr int kHopSize = 64;
constexpr int kNumBands = 33;
constexpr double kBandLowHz = 300.0;
constexpr double kBandHighHz = 2000.0;
constexpr char kMagic[4] = {'A', 'C', 'A', 'F'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

Fingerprint extract_fingerprint(const AudioBuffer& audio) {
  if (audio.samples.size() < kBlockSize) {
    throw AudioTooShort("audio shorter than one analysis block");
  }

  StftParams params;
  params.block_size = kBlockSize;
  params.hop_size = kHopSize;
  params.window = WindowType::kHann;
  params.sample_rate_hz = audio.sample_rate_hz;
  const Spectrogram spec = stft(audio, params);

  // Logarithmically spaced band edges; a bin belongs to band m when its
  // center frequency falls in [edge_m, edge_{m+1}).
  std::array<double, kNumBands + 1> edges;
  for (int m = 0; m <= kNumBands; ++m) {
    edges[m] = kBandLowHz *
               std::pow(kBandHighHz / kBandLowHz, static_cast<double>(m) / kNumBands);
  }
  std::vector<int> band_of_bin(static_cast<std::size_t>(params.num_bins()), -1);
  for (int k = 0; k < params.num_bins(); ++k) {
    const double f = bin_to_hz(k, params);
    for (int m = 0; m < kNumBands; ++m) {
      if (f >= edges[m] && f < edges[m + 1]) {
        band_of_bin[k] = m;
        break;
      }
    }
  }

  Fingerprint fp;
  fp.frame_rate_hz = params.frame_rate_hz();
  fp.words.resize(static_cast<std::size_t>(spec.num_frames()));

  std::vector<double> prev_energy(kNumBands, 0.0);
  std::vector<double> energy(kNumBands);
  for (int n = 0; n < spec.num_frames(); ++n) {
    std::fill(energy.begin(), energy.end(), 0.0);
    for (int k = 0; k < params.num_bins(); ++k) {
      const int m = band_of_bin[k];
      if (m < 0) continue;
      const double mag = spec.magnitudes(k, n);
      energy[m] += mag * mag;
    }

    std::uint32_t word = 0;
    for (int m = 0; m < 32; ++m) {
      const double now = energy[m] - energy[m + 1];
      const double before = prev_energy[m] - prev_energy[m + 1];
      if (now - before > 0.0) word |= 1u << m;
    }
    fp.words[n] = word;
    prev_energy = energy;
  }
  return fp;
}

double fingerprint_distance(const Fingerprint& a, const Fingerprint& b) {
  if (a.words.size() != b.words.size()) {
    throw LengthMismatch("fingerprints have different lengths");
  }
  if (a.words.empty()) return 0.0;
  long bits = 0;
  for (std::size_t n = 0; n < a.words.size(); ++n) {
    bits += __builtin_popcount(a.words[n] ^ b.words[n]);
  }
  return static_cast<double>(bits) / (32.0 * static_cast<double>(a.words.size()));
}

void write_fingerprint(const std::string& path, const Fingerprint& fp) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoFailure("cannot open file for writing: " + path);

  file.write(kMagic, 4);
  std::uint32_t version = kVersion;
  file.write(reinterpret_cast<const char*>(&version), 4);
  file.write(reinterpret_cast<const char*>(&fp.frame_rate_hz), 8);
  for (std::uint32_t word : fp.words) {
    file.write(reinterpret_cast<const char*>(&word), 4);
  }
  if (!file) throw IoFailure("write failed: " + path);
}

Fingerprint read_fingerprint(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoFailure("cannot open file: " + path);

  char magic[4];
  std::uint32_t version = 0;
  Fingerprint fp;
  file.read(magic, 4);
  file.read(reinterpret_cast<char*>(&version), 4);
  file.read(reinterpret_cast<char*>(&fp.frame_rate_hz), 8);
  if (!file || std::memcmp(magic, kMagic, 4) != 0 || version != kVersion) {
    throw MalformedContainer("not a fingerprint file: " + path);
  }
  std::uint32_t word = 0;
  while (file.read(reinterpret_cast<char*>(&word), 4)) fp.words.push_back(word);
  return fp;
}

}  // namespace mir
