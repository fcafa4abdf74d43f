#ifndef MIR_PITCH_H
#define MIR_PITCH_H

#include <vector>

#include "mir/audio_io.h"
#include "mir/spectral.h"

namespace mir {

enum class PitchMethod {
  kTimeAcf,
  kTimeAmdf,
  kTimeZeroCrossing,
  kSpectralAcf,
  kSpectralHps,
};

PitchMethod pitch_method_from_name(const std::string& name);
std::string pitch_method_name(PitchMethod method);

/// Per-frame f0 estimates in Hz; 0 marks unvoiced/undetected frames.
struct PitchTrack {
  std::vector<double> f0_hz;
  std::vector<double> frame_times_s;
  PitchMethod method = PitchMethod::kTimeAcf;
};

/// Autocorrelation-maximum estimator with parabolic peak interpolation and
/// a voicing threshold of 0.3 * r[0]. Throws BlockTooShort when the block
/// cannot hold one period of f_min.
double f0_time_acf(const std::vector<double>& block, int sample_rate_hz,
                   double f_min = 50.0, double f_max = 2000.0);

/// Average magnitude difference function minimum over the search lags.
double f0_time_amdf(const std::vector<double>& block, int sample_rate_hz,
                    double f_min = 50.0, double f_max = 2000.0);

/// Mean spacing of interpolated positive-going zero crossings.
double f0_zero_crossing(const std::vector<double>& block, int sample_rate_hz);

/// Harmonic product spectrum P(k) = prod_j |X(j*k)|, argmax above f_min.
/// Throws InvalidOrder for order < 2.
double f0_hps(const std::vector<double>& mag, const StftParams& params,
              int order = 4, double f_min = 50.0);

/// Autocorrelation of the magnitude column over bin lags in [f_min, f_max].
double f0_spectral_acf(const std::vector<double>& mag, const StftParams& params,
                       double f_min = 50.0, double f_max = 2000.0);

/// Applies the chosen per-frame estimator over the whole signal.
PitchTrack track_pitch(const AudioBuffer& audio, const StftParams& params,
                       PitchMethod method);

}  // namespace mir

#endif  // MIR_PITCH_H
