#ifndef MIR_ONSET_H
#define MIR_ONSET_H

#include <vector>

#include "mir/spectral.h"

namespace mir {

/// Per-frame spectral novelty, non-negative.
struct NoveltyCurve {
  std::vector<double> values;
  double frame_rate_hz = 0.0;
  std::vector<double> frame_times_s;
};

/// Detected onset times in seconds, strictly increasing.
struct OnsetList {
  std::vector<double> times_s;
};

/// Strength of periodicity per tempo value, 30..200 BPM in 1 BPM steps.
struct BeatHistogram {
  std::vector<double> bpm_axis;
  std::vector<double> strength;
};

/// Half-wave rectified L2 spectral flux; frame 0 is computed against a
/// zero frame.
NoveltyCurve novelty_flux(const Spectrogram& spec);

/// Adaptive-threshold peak picking: the novelty is normalized to max 1, a
/// moving average plus a fixed offset forms the threshold, and accepted
/// peaks must be strict local maxima separated by min_separation_s.
OnsetList pick_onsets(const NoveltyCurve& nov, double smooth_s = 0.07,
                      double threshold_offset = 0.1,
                      double min_separation_s = 0.03);

/// Autocorrelation of the mean-removed novelty curve sampled at the lag of
/// each BPM value, rectified and normalized to max 1.
BeatHistogram beat_histogram(const NoveltyCurve& nov);

/// BPM of the strongest histogram bin; 0 when the histogram is all-zero.
double estimate_tempo(const BeatHistogram& hist);

}  // namespace mir

#endif  // MIR_ONSET_H
