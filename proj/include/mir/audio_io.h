#ifndef MIR_AUDIO_IO_H
#define MIR_AUDIO_IO_H

#include <string>
#include <vector>

#include "mir/errors.h"

namespace mir {

/// Mono audio signal. Samples are dimensionless amplitudes with a nominal
/// range of [-1, 1]; multichannel input is downmixed at load time.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  double duration_s() const {
    return static_cast<double>(samples.size()) / sample_rate_hz;
  }
};

/// Container-level description of a WAV file (16-bit PCM only).
struct WavFormat {
  int num_channels = 1;
  int bits_per_sample = 16;
  int sample_rate_hz = 0;
  long num_frames = 0;
};

/// Reads a RIFF/WAVE file containing 16-bit PCM samples.
///
/// Samples are scaled to [-1, 1) by dividing by 32768 and multichannel
/// content is downmixed by the arithmetic mean of the channels.
/// Throws MalformedContainer, UnsupportedFormat, or EmptyAudio.
AudioBuffer read_wav(const std::string& path);

/// Writes mono 16-bit PCM. Samples are clamped to [-1, 1 - 2^-15] and
/// quantized round-to-nearest. Throws IoFailure.
void write_wav(const std::string& path, const AudioBuffer& audio);

/// Sine test signal: samples[n] = amplitude * sin(2*pi*freq*n/fs).
/// Throws AliasedFrequency if freq >= fs/2.
AudioBuffer synth_sine(double freq_hz, double duration_s, int sample_rate_hz,
                       double amplitude = 1.0);

/// Unit impulses at samples round(k * period_s * fs), zeros elsewhere.
AudioBuffer synth_click_train(double period_s, double duration_s,
                              int sample_rate_hz);

}  // namespace mir

#endif  // MIR_AUDIO_IO_H
