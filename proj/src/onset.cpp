#include "mir/onset.h"

#include <algorithm>
#include <cmath>

namespace mir {

NoveltyCurve novelty_flux(const Spectrogram& spec) {
  const int num_bins = spec.magnitudes.rows;
  const int num_frames = spec.num_frames();

  NoveltyCurve nov;
  nov.frame_rate_hz = spec.params.frame_rate_hz();
  nov.frame_times_s = spec.frame_times_s;
  nov.values.resize(static_cast<std::size_t>(num_frames));

  for (int n = 0; n < num_frames; ++n) {
    double sum_sq = 0.0;
    for (int k = 0; k < num_bins; ++k) {
      const double prev = n > 0 ? spec.magnitudes(k, n - 1) : 0.0;
      const double diff = spec.magnitudes(k, n) - prev;
      if (diff > 0.0) sum_sq += diff * diff;
    }
    nov.values[n] = std::sqrt(sum_sq) / num_bins;
  }
  return nov;
}

OnsetList pick_onsets(const NoveltyCurve& nov, double smooth_s,
                      double threshold_offset, double min_separation_s) {
  OnsetList onsets;
  const int num_frames = static_cast<int>(nov.values.size());
  if (num_frames == 0) return onsets;

  const double peak = *std::max_element(nov.values.begin(), nov.values.end());
  if (peak <= 0.0) return onsets;

  std::vector<double> norm(nov.values);
  for (double& v : norm) v /= peak;

  // Centered moving average, window clamped at the curve edges.
  const int window = std::max(
      1, static_cast<int>(std::lround(smooth_s * nov.frame_rate_hz)));
  std::vector<double> threshold(static_cast<std::size_t>(num_frames));
  for (int n = 0; n < num_frames; ++n) {
    const int lo = std::max(0, n - window / 2);
    const int hi = std::min(num_frames - 1, lo + window - 1);
    double sum = 0.0;
    for (int i = lo; i <= hi; ++i) sum += norm[i];
    threshold[n] = sum / (hi - lo + 1) + threshold_offset;
  }

  double last_time = -1e30;
  for (int n = 0; n < num_frames; ++n) {
    const double left = n > 0 ? norm[n - 1] : -1.0;
    const double right = n < num_frames - 1 ? norm[n + 1] : -1.0;
    const bool local_max = norm[n] > left && norm[n] > right;
    if (!local_max || norm[n] <= threshold[n]) continue;
    const double t = nov.frame_times_s[n];
    if (t - last_time < min_separation_s) continue;
    onsets.times_s.push_back(t);
    last_time = t;
  }
  return onsets;
}

BeatHistogram beat_histogram(const NoveltyCurve& nov) {
  BeatHistogram hist;
  for (int bpm = 30; bpm <= 200; ++bpm) hist.bpm_axis.push_back(bpm);
  hist.strength.assign(hist.bpm_axis.size(), 0.0);

  const int num_frames = static_cast<int>(nov.values.size());
  if (num_frames == 0) return hist;

  double mean = 0.0;
  for (double v : nov.values) mean += v;
  mean /= num_frames;
  std::vector<double> centered(nov.values);
  for (double& v : centered) v -= mean;

  auto acf = [&](int lag) {
    if (lag < 0 || lag >= num_frames) return 0.0;
    double r = 0.0;
    for (int n = 0; n + lag < num_frames; ++n) r += centered[n] * centered[n + lag];
    return r;
  };

  for (std::size_t i = 0; i < hist.bpm_axis.size(); ++i) {
    const int lag =
        static_cast<int>(std::lround(60.0 * nov.frame_rate_hz / hist.bpm_axis[i]));
    hist.strength[i] = std::max(acf(lag), 0.0);
  }

  const double peak = *std::max_element(hist.strength.begin(), hist.strength.end());
  if (peak > 0.0) {
    for (double& s : hist.strength) s /= peak;
  }
  return hist;
}

double estimate_tempo(const BeatHistogram& hist) {
  double best_bpm = 0.0;
  double best_strength = 0.0;
  for (std::size_t i = 0; i < hist.bpm_axis.size(); ++i) {
    if (hist.strength[i] > best_strength) {
      best_strength = hist.strength[i];
      best_bpm = hist.bpm_axis[i];
    }
  }
  return best_strength > 0.0 ? best_bpm : 0.0;
}

}  // namespace mir
