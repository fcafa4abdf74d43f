#include "mir/spectral.h"

#include <cmath>
#include <complex>

namespace mir {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

/// In-place iterative radix-2 FFT (decimation in time).
void fft_inplace(std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = -kTwoPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::complex<double> u = x[i + j];
        std::complex<double> v = x[i + j + len / 2] * w;
        x[i + j] = u + v;
        x[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace

std::vector<double> make_window(WindowType type, int length) {
  std::vector<double> w(static_cast<std::size_t>(length), 1.0);
  for (int n = 0; n < length; ++n) {
    double phase = kTwoPi * n / length;
    switch (type) {
      case WindowType::kHann:
        w[n] = 0.5 * (1.0 - std::cos(phase));
        break;
      case WindowType::kHamming:
        w[n] = 0.54 - 0.46 * std::cos(phase);
        break;
      case WindowType::kRectangular:
        break;
    }
  }
  return w;
}

std::vector<double> fft_magnitude(const std::vector<double>& block) {
  const std::size_t n = block.size();
  if (n < 2 || !is_power_of_two(n)) {
    throw NonPowerOfTwoLength("block length must be a power of two >= 2");
  }
  std::vector<std::complex<double>> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = block[i];
  fft_inplace(x);

  std::vector<double> mag(n / 2 + 1);
  for (std::size_t k = 0; k <= n / 2; ++k) mag[k] = std::abs(x[k]);
  return mag;
}

Spectrogram stft(const AudioBuffer& audio, const StftParams& params) {
  if (audio.samples.empty()) throw EmptyAudio("empty audio buffer");

  const std::size_t len = audio.samples.size();
  const int hop = params.hop_size;
  const int block = params.block_size;
  const int num_frames = static_cast<int>((len + hop - 1) / hop);
  const std::vector<double> window = make_window(params.window, block);

  Spectrogram spec;
  spec.params = params;
  spec.magnitudes = Matrix(params.num_bins(), num_frames);
  spec.frame_times_s.resize(static_cast<std::size_t>(num_frames));

  std::vector<double> buf(static_cast<std::size_t>(block));
  for (int n = 0; n < num_frames; ++n) {
    const std::size_t start = static_cast<std::size_t>(n) * hop;
    for (int i = 0; i < block; ++i) {
      std::size_t idx = start + i;
      double sample = idx < len ? audio.samples[idx] : 0.0;
      buf[i] = sample * window[i];
    }
    spec.magnitudes.set_column(n, fft_magnitude(buf));
    spec.frame_times_s[n] =
        (static_cast<double>(n) * hop + block / 2.0) / params.sample_rate_hz;
  }
  return spec;
}

double hz_to_mel(double f_hz) { return 2595.0 * std::log10(1.0 + f_hz / 700.0); }

double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

double hz_to_midi(double f_hz) {
  if (f_hz <= 0.0) throw NonPositiveFrequency("frequency must be positive");
  return 69.0 + 12.0 * std::log2(f_hz / 440.0);
}

double midi_to_hz(double pitch) {
  return 440.0 * std::pow(2.0, (pitch - 69.0) / 12.0);
}

double bin_to_hz(double k, const StftParams& params) {
  if (k < 0.0 || k > params.block_size / 2.0) {
    throw BinOutOfRange("bin index outside [0, block_size/2]");
  }
  return k * params.sample_rate_hz / params.block_size;
}

}  // namespace mir
