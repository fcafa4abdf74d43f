#include "mir/features.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mir {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kLogFloor = 1e-10;

double column_sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

/// Triangular mel filter bank: num_bands filters equally spaced on the mel
/// axis between 0 Hz and Nyquist, adjacent-overlap triangles, each
/// normalized to unit area (in Hz).
Matrix mel_filter_bank(const StftParams& params, int num_bands) {
  const int num_bins = params.num_bins();
  const double nyquist = params.sample_rate_hz / 2.0;
  const double mel_max = hz_to_mel(nyquist);

  std::vector<double> edges_hz(static_cast<std::size_t>(num_bands) + 2);
  for (int i = 0; i < num_bands + 2; ++i) {
    edges_hz[i] = mel_to_hz(mel_max * i / (num_bands + 1));
  }

  Matrix bank(num_bands, num_bins);
  for (int b = 0; b < num_bands; ++b) {
    const double lo = edges_hz[b];
    const double peak = edges_hz[b + 1];
    const double hi = edges_hz[b + 2];
    const double height = 2.0 / (hi - lo);
    for (int k = 0; k < num_bins; ++k) {
      const double f = bin_to_hz(k, params);
      double w = 0.0;
      if (f > lo && f < peak) {
        w = (f - lo) / (peak - lo);
      } else if (f >= peak && f < hi) {
        w = (hi - f) / (hi - peak);
      }
      bank(b, k) = w * height;
    }
  }
  return bank;
}

}  // namespace

int feature_dims(FeatureId id) {
  switch (id) {
    case FeatureId::kMfcc:
      return 13;
    case FeatureId::kPitchChroma:
      return 12;
    default:
      return 1;
  }
}

const std::vector<std::pair<std::string, FeatureId>>& feature_names() {
  static const std::vector<std::pair<std::string, FeatureId>> kNames = {
      {"SpectralCentroid", FeatureId::kSpectralCentroid},
      {"SpectralCrest", FeatureId::kSpectralCrest},
      {"SpectralFlatness", FeatureId::kSpectralFlatness},
      {"SpectralRolloff", FeatureId::kSpectralRolloff},
      {"SpectralSkewness", FeatureId::kSpectralSkewness},
      {"SpectralFlux", FeatureId::kSpectralFlux},
      {"Mfcc", FeatureId::kMfcc},
      {"PitchChroma", FeatureId::kPitchChroma},
      {"TimeRms", FeatureId::kTimeRms},
      {"TimeZcr", FeatureId::kTimeZcr},
  };
  return kNames;
}

FeatureId feature_from_name(const std::string& name) {
  for (const auto& [n, id] : feature_names()) {
    if (n == name) return id;
  }
  throw Error("unknown feature id: " + name);
}

std::string feature_name(FeatureId id) {
  for (const auto& [n, i] : feature_names()) {
    if (i == id) return n;
  }
  return "?";
}

double spectral_centroid(const std::vector<double>& mag, const StftParams& params) {
  double weight_sum = 0.0;
  double weighted_bins = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    const double power = mag[k] * mag[k];
    weight_sum += power;
    weighted_bins += static_cast<double>(k) * power;
  }
  if (weight_sum <= 0.0) return 0.0;
  return bin_to_hz(weighted_bins / weight_sum, params);
}

double spectral_rolloff(const std::vector<double>& mag, const StftParams& params,
                        double kappa) {
  const double total = column_sum(mag);
  if (total <= 0.0) return 0.0;
  double cumulative = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    cumulative += mag[k];
    if (cumulative >= kappa * total) return bin_to_hz(static_cast<double>(k), params);
  }
  return bin_to_hz(static_cast<double>(mag.size()) - 1.0, params);
}

double spectral_flatness(const std::vector<double>& mag) {
  const double total = column_sum(mag);
  if (total <= 0.0) return 0.0;
  double log_sum = 0.0;
  for (double m : mag) {
    if (m <= 0.0) return 0.0;  // geometric mean vanishes
    log_sum += std::log(m);
  }
  const double geometric = std::exp(log_sum / static_cast<double>(mag.size()));
  const double arithmetic = total / static_cast<double>(mag.size());
  return geometric / arithmetic;
}

double spectral_crest(const std::vector<double>& mag) {
  const double total = column_sum(mag);
  if (total <= 0.0) return 0.0;
  return *std::max_element(mag.begin(), mag.end()) / total;
}

double spectral_skewness(const std::vector<double>& mag, const StftParams&) {
  double weight_sum = 0.0;
  for (double m : mag) weight_sum += m * m;
  if (weight_sum <= 0.0) return 0.0;

  double mean = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    mean += static_cast<double>(k) * mag[k] * mag[k] / weight_sum;
  }
  double m2 = 0.0;
  double m3 = 0.0;
  for (std::size_t k = 0; k < mag.size(); ++k) {
    const double d = static_cast<double>(k) - mean;
    const double w = mag[k] * mag[k] / weight_sum;
    m2 += d * d * w;
    m3 += d * d * d * w;
  }
  if (m2 <= 0.0) return 0.0;  // zero-variance column
  return m3 / std::pow(m2, 1.5);
}

double spectral_flux(const std::vector<double>& mag_now,
                     const std::vector<double>& mag_prev) {
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < mag_now.size(); ++k) {
    const double prev = k < mag_prev.size() ? mag_prev[k] : 0.0;
    const double d = mag_now[k] - prev;
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq) / static_cast<double>(mag_now.size());
}

std::vector<double> mfcc(const std::vector<double>& mag, const StftParams& params,
                         int num_bands, int num_coeffs) {
  if (num_bands < num_coeffs || num_bands < 2) {
    throw InvalidBandCount("need num_bands >= max(num_coeffs, 2)");
  }
  const Matrix bank = mel_filter_bank(params, num_bands);

  std::vector<double> log_bands(static_cast<std::size_t>(num_bands));
  for (int b = 0; b < num_bands; ++b) {
    double energy = 0.0;
    for (std::size_t k = 0; k < mag.size(); ++k) {
      energy += bank(b, static_cast<int>(k)) * mag[k] * mag[k];
    }
    log_bands[b] = std::log10(std::max(energy, kLogFloor));
  }

  // Orthonormal DCT-II, keep the first num_coeffs coefficients.
  std::vector<double> coeffs(static_cast<std::size_t>(num_coeffs));
  for (int i = 0; i < num_coeffs; ++i) {
    double acc = 0.0;
    for (int j = 0; j < num_bands; ++j) {
      acc += log_bands[j] * std::cos(kPi * i * (j + 0.5) / num_bands);
    }
    const double scale = i == 0 ? std::sqrt(1.0 / num_bands) : std::sqrt(2.0 / num_bands);
    coeffs[i] = scale * acc;
  }
  return coeffs;
}

std::vector<double> pitch_chroma(const std::vector<double>& mag,
                                 const StftParams& params) {
  const double f_lo = 55.0;
  const double f_hi = std::min(params.sample_rate_hz / 2.0, 3520.0);

  std::vector<double> chroma(12, 0.0);
  for (std::size_t k = 1; k < mag.size(); ++k) {
    const double f = bin_to_hz(static_cast<double>(k), params);
    if (f < f_lo || f > f_hi) continue;
    const int pitch_class =
        ((static_cast<int>(std::lround(hz_to_midi(f))) % 12) + 12) % 12;
    chroma[pitch_class] += mag[k] * mag[k];
  }
  const double total = column_sum(chroma);
  if (total > 0.0) {
    for (double& c : chroma) c /= total;
  }
  return chroma;
}

double time_rms(const std::vector<double>& block) {
  if (block.empty()) return 0.0;
  double sum_sq = 0.0;
  for (double x : block) sum_sq += x * x;
  return std::sqrt(sum_sq / static_cast<double>(block.size()));
}

double time_rms_db(const std::vector<double>& block) {
  const double rms = time_rms(block);
  if (rms <= 0.0) return -100.0;
  return std::max(20.0 * std::log10(rms), -100.0);
}

double time_zcr(const std::vector<double>& block) {
  if (block.size() < 2) return 0.0;
  auto sign = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
  double acc = 0.0;
  for (std::size_t n = 1; n < block.size(); ++n) {
    acc += std::abs(sign(block[n]) - sign(block[n - 1]));
  }
  return acc / (2.0 * static_cast<double>(block.size() - 1));
}

FeatureSeries extract_feature(const AudioBuffer& audio, FeatureId id,
                              const StftParams& params) {
  const bool time_domain = id == FeatureId::kTimeRms || id == FeatureId::kTimeZcr;
  const int dims = feature_dims(id);

  FeatureSeries series;
  series.feature = id;

  if (time_domain) {
    const std::size_t len = audio.samples.size();
    if (len == 0) throw EmptyAudio("empty audio buffer");
    const int hop = params.hop_size;
    const int block = params.block_size;
    const int num_frames = static_cast<int>((len + hop - 1) / hop);
    series.values = Matrix(dims, num_frames);
    series.frame_times_s.resize(static_cast<std::size_t>(num_frames));
    std::vector<double> buf(static_cast<std::size_t>(block));
    for (int n = 0; n < num_frames; ++n) {
      const std::size_t start = static_cast<std::size_t>(n) * hop;
      for (int i = 0; i < block; ++i) {
        std::size_t idx = start + i;
        buf[i] = idx < len ? audio.samples[idx] : 0.0;
      }
      series.values(0, n) = id == FeatureId::kTimeRms ? time_rms(buf) : time_zcr(buf);
      series.frame_times_s[n] =
          (static_cast<double>(n) * hop + block / 2.0) / params.sample_rate_hz;
    }
    return series;
  }

  const Spectrogram spec = stft(audio, params);
  const int num_frames = spec.num_frames();
  series.values = Matrix(dims, num_frames);
  series.frame_times_s = spec.frame_times_s;

  std::vector<double> prev;
  for (int n = 0; n < num_frames; ++n) {
    const std::vector<double> mag = spec.magnitudes.column(n);
    switch (id) {
      case FeatureId::kSpectralCentroid:
        series.values(0, n) = spectral_centroid(mag, params);
        break;
      case FeatureId::kSpectralCrest:
        series.values(0, n) = spectral_crest(mag);
        break;
      case FeatureId::kSpectralFlatness:
        series.values(0, n) = spectral_flatness(mag);
        break;
      case FeatureId::kSpectralRolloff:
        series.values(0, n) = spectral_rolloff(mag, params);
        break;
      case FeatureId::kSpectralSkewness:
        series.values(0, n) = spectral_skewness(mag, params);
        break;
      case FeatureId::kSpectralFlux:
        series.values(0, n) = spectral_flux(mag, prev);
        prev = mag;
        break;
      case FeatureId::kMfcc:
        series.values.set_column(n, mfcc(mag, params));
        break;
      case FeatureId::kPitchChroma:
        series.values.set_column(n, pitch_chroma(mag, params));
        break;
      default:
        break;
    }
  }
  return series;
}

std::vector<double> aggregate(const FeatureSeries& series, AggregateStat stat) {
  const int dims = series.dims();
  const int frames = series.num_frames();
  std::vector<double> out(static_cast<std::size_t>(dims), 0.0);
  if (frames == 0) return out;

  for (int d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (int n = 0; n < frames; ++n) mean += series.values(d, n);
    mean /= frames;
    if (stat == AggregateStat::kMean) {
      out[d] = mean;
    } else {
      double var = 0.0;
      for (int n = 0; n < frames; ++n) {
        const double diff = series.values(d, n) - mean;
        var += diff * diff;
      }
      out[d] = std::sqrt(var / frames);  // population normalization
    }
  }
  return out;
}

}  // namespace mir
