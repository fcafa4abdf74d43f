#include "mir/pitch.h"

#include <algorithm>
#include <cmath>

namespace mir {

namespace {

struct LagRange {
  int min_lag;
  int max_lag;
};

LagRange time_lag_range(int sample_rate_hz, double f_min, double f_max) {
  LagRange r;
  r.min_lag = std::max(1, static_cast<int>(std::ceil(sample_rate_hz / f_max)));
  r.max_lag = static_cast<int>(std::floor(sample_rate_hz / f_min));
  return r;
}

bool is_silent(const std::vector<double>& block) {
  for (double x : block) {
    if (x != 0.0) return false;
  }
  return true;
}

}  // namespace

PitchMethod pitch_method_from_name(const std::string& name) {
  if (name == "TimeAcf") return PitchMethod::kTimeAcf;
  if (name == "TimeAmdf") return PitchMethod::kTimeAmdf;
  if (name == "TimeZeroCrossing") return PitchMethod::kTimeZeroCrossing;
  if (name == "SpectralAcf") return PitchMethod::kSpectralAcf;
  if (name == "SpectralHps") return PitchMethod::kSpectralHps;
  throw Error("unknown pitch method: " + name);
}

std::string pitch_method_name(PitchMethod method) {
  switch (method) {
    case PitchMethod::kTimeAcf: return "TimeAcf";
    case PitchMethod::kTimeAmdf: return "TimeAmdf";
    case PitchMethod::kTimeZeroCrossing: return "TimeZeroCrossing";
    case PitchMethod::kSpectralAcf: return "SpectralAcf";
    case PitchMethod::kSpectralHps: return "SpectralHps";
  }
  return "?";
}

double f0_time_acf(const std::vector<double>& block, int sample_rate_hz,
                   double f_min, double f_max) {
  const int len = static_cast<int>(block.size());
  if (static_cast<double>(len) <= sample_rate_hz / f_min) {
    throw BlockTooShort("block must exceed one period of f_min");
  }
  const LagRange range = time_lag_range(sample_rate_hz, f_min, f_max);

  double r0 = 0.0;
  for (double x : block) r0 += x * x;
  if (r0 <= 0.0) return 0.0;  // unvoiced

  auto acf = [&](int lag) {
    double r = 0.0;
    for (int n = 0; n + lag < len; ++n) r += block[n] * block[n + lag];
    return r;
  };

  int best_lag = range.min_lag;
  double best_r = acf(range.min_lag);
  for (int lag = range.min_lag + 1; lag <= range.max_lag; ++lag) {
    const double r = acf(lag);
    if (r > best_r) {
      best_r = r;
      best_lag = lag;
    }
  }
  if (best_r <= 0.3 * r0) return 0.0;  // voicing threshold

  // Parabolic interpolation, only around a strict interior peak; an argmax
  // sitting on the search boundary is not a vertex and must stay put so the
  // estimate remains inside [f_min, f_max].
  double lag_est = best_lag;
  if (best_lag > 1 && best_lag < len - 1) {
    const double left = acf(best_lag - 1);
    const double right = acf(best_lag + 1);
    if (left < best_r && right < best_r) {
      const double denom = left - 2.0 * best_r + right;
      if (denom < 0.0) lag_est += 0.5 * (left - right) / denom;
    }
  }
  return sample_rate_hz / lag_est;
}

double f0_time_amdf(const std::vector<double>& block, int sample_rate_hz,
                    double f_min, double f_max) {
  if (is_silent(block)) return 0.0;
  const int len = static_cast<int>(block.size());
  LagRange range = time_lag_range(sample_rate_hz, f_min, f_max);
  range.max_lag = std::min(range.max_lag, len - 1);

  int best_lag = range.min_lag;
  double best_d = 0.0;
  for (int lag = range.min_lag; lag <= range.max_lag; ++lag) {
    double d = 0.0;
    for (int n = 0; n + lag < len; ++n) d += std::abs(block[n] - block[n + lag]);
    d /= len;
    if (lag == range.min_lag || d < best_d) {
      best_d = d;
      best_lag = lag;
    }
  }
  return static_cast<double>(sample_rate_hz) / best_lag;
}

double f0_zero_crossing(const std::vector<double>& block, int sample_rate_hz) {
  std::vector<double> crossings;
  for (std::size_t n = 1; n < block.size(); ++n) {
    if (block[n - 1] < 0.0 && block[n] >= 0.0) {
      // Linear interpolation of the crossing position.
      const double frac = -block[n - 1] / (block[n] - block[n - 1]);
      crossings.push_back(static_cast<double>(n - 1) + frac);
    }
  }
  if (crossings.size() < 2) return 0.0;
  const double mean_spacing =
      (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  return sample_rate_hz / mean_spacing;
}

double f0_hps(const std::vector<double>& mag, const StftParams& params,
              int order, double f_min) {
  if (order < 2) throw InvalidOrder("HPS order must be >= 2");
  const int num_bins = static_cast<int>(mag.size());
  const int k_max = (num_bins - 1) / order;
  const int k_min = std::max(
      1, static_cast<int>(std::ceil(f_min * params.block_size / params.sample_rate_hz)));
  if (k_min > k_max) return 0.0;

  int best_k = 0;
  double best_p = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    double p = 1.0;
    for (int j = 1; j <= order; ++j) p *= mag[static_cast<std::size_t>(j) * k];
    if (p > best_p) {
      best_p = p;
      best_k = k;
    }
  }
  if (best_p <= 0.0) return 0.0;
  return bin_to_hz(best_k, params);
}

double f0_spectral_acf(const std::vector<double>& mag, const StftParams& params,
                       double f_min, double f_max) {
  const int num_bins = static_cast<int>(mag.size());
  double energy = 0.0;
  for (double m : mag) energy += m * m;
  if (energy <= 0.0) return 0.0;

  const double hz_per_bin =
      static_cast<double>(params.sample_rate_hz) / params.block_size;
  const int lag_min = std::max(1, static_cast<int>(std::ceil(f_min / hz_per_bin)));
  const int lag_max =
      std::min(num_bins - 1, static_cast<int>(std::floor(f_max / hz_per_bin)));
  if (lag_min > lag_max) return 0.0;

  int best_lag = lag_min;
  double best_r = 0.0;
  for (int lag = lag_min; lag <= lag_max; ++lag) {
    double r = 0.0;
    for (int k = 0; k + lag < num_bins; ++k) r += mag[k] * mag[k + lag];
    if (lag == lag_min || r > best_r) {
      best_r = r;
      best_lag = lag;
    }
  }
  return bin_to_hz(best_lag, params);
}

PitchTrack track_pitch(const AudioBuffer& audio, const StftParams& params,
                       PitchMethod method) {
  PitchTrack track;
  track.method = method;

  const bool spectral =
      method == PitchMethod::kSpectralAcf || method == PitchMethod::kSpectralHps;

  if (spectral) {
    const Spectrogram spec = stft(audio, params);
    track.frame_times_s = spec.frame_times_s;
    track.f0_hz.resize(static_cast<std::size_t>(spec.num_frames()));
    for (int n = 0; n < spec.num_frames(); ++n) {
      const std::vector<double> mag = spec.magnitudes.column(n);
      track.f0_hz[n] = method == PitchMethod::kSpectralHps
                           ? f0_hps(mag, params)
                           : f0_spectral_acf(mag, params);
    }
    return track;
  }

  const std::size_t len = audio.samples.size();
  if (len == 0) throw EmptyAudio("empty audio buffer");
  const int hop = params.hop_size;
  const int block = params.block_size;
  const int num_frames = static_cast<int>((len + hop - 1) / hop);
  track.f0_hz.resize(static_cast<std::size_t>(num_frames));
  track.frame_times_s.resize(static_cast<std::size_t>(num_frames));

  std::vector<double> buf(static_cast<std::size_t>(block));
  for (int n = 0; n < num_frames; ++n) {
    const std::size_t start = static_cast<std::size_t>(n) * hop;
    for (int i = 0; i < block; ++i) {
      std::size_t idx = start + i;
      buf[i] = idx < len ? audio.samples[idx] : 0.0;
    }
    switch (method) {
      case PitchMethod::kTimeAcf:
        track.f0_hz[n] = f0_time_acf(buf, params.sample_rate_hz);
        break;
      case PitchMethod::kTimeAmdf:
        track.f0_hz[n] = f0_time_amdf(buf, params.sample_rate_hz);
        break;
      default:
        track.f0_hz[n] = f0_zero_crossing(buf, params.sample_rate_hz);
        break;
    }
    track.frame_times_s[n] =
        (static_cast<double>(n) * hop + block / 2.0) / params.sample_rate_hz;
  }
  return track;
}

}  // namespace mir
