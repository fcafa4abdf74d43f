#ifndef MIR_SPECTRAL_H
#define MIR_SPECTRAL_H

#include <vector>

#include "mir/audio_io.h"
#include "mir/errors.h"
#include "mir/matrix.h"

namespace mir {

enum class WindowType { kHann, kHamming, kRectangular };

/// STFT analysis parameters shared by all downstream analyses.
struct StftParams {
  int block_size = 4096;  // power of two
  int hop_size = 2048;
  WindowType window = WindowType::kHann;
  int sample_rate_hz = 44100;

  int num_bins() const { return block_size / 2 + 1; }
  double frame_rate_hz() const {
    return static_cast<double>(sample_rate_hz) / hop_size;
  }
};

/// Magnitude spectrogram: (block_size/2 + 1) x num_frames, all entries >= 0.
/// Frame timestamps refer to the block center.
struct Spectrogram {
  Matrix magnitudes;
  StftParams params;
  std::vector<double> frame_times_s;

  int num_frames() const { return magnitudes.cols; }
};

/// Periodic (DFT-even) window of the given length.
std::vector<double> make_window(WindowType type, int length);

/// Magnitudes |X(k)|, k = 0..N/2, of the unnormalized DFT of a real block
/// whose length N must be a power of two >= 2. Throws NonPowerOfTwoLength.
std::vector<double> fft_magnitude(const std::vector<double>& block);

/// Short-time Fourier transform magnitude spectrogram. Blocks start at
/// n*hop_size; the final partial block is zero-padded, so the number of
/// frames is ceil(len / hop_size).
Spectrogram stft(const AudioBuffer& audio, const StftParams& params);

double hz_to_mel(double f_hz);
double mel_to_hz(double mel);

/// MIDI pitch number 69 + 12*log2(f/440). Throws NonPositiveFrequency.
double hz_to_midi(double f_hz);
double midi_to_hz(double pitch);

/// Center frequency of bin k; k may be fractional for interpolated peaks.
/// Throws BinOutOfRange outside [0, block_size/2].
double bin_to_hz(double k, const StftParams& params);

}  // namespace mir

#endif  // MIR_SPECTRAL_H
