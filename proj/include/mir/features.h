#ifndef MIR_FEATURES_H
#define MIR_FEATURES_H

#include <string>
#include <vector>

#include "mir/audio_io.h"
#include "mir/matrix.h"
#include "mir/spectral.h"

namespace mir {

enum class FeatureId {
  kSpectralCentroid,
  kSpectralCrest,
  kSpectralFlatness,
  kSpectralRolloff,
  kSpectralSkewness,
  kSpectralFlux,
  kMfcc,
  kPitchChroma,
  kTimeRms,
  kTimeZcr,
};

/// Number of values the feature produces per frame (1, except MFCC: 13 and
/// pitch chroma: 12).
int feature_dims(FeatureId id);

const std::vector<std::pair<std::string, FeatureId>>& feature_names();
FeatureId feature_from_name(const std::string& name);
std::string feature_name(FeatureId id);

/// Per-frame feature values, dims x frames, with block-center timestamps.
struct FeatureSeries {
  FeatureId feature = FeatureId::kSpectralCentroid;
  Matrix values;
  std::vector<double> frame_times_s;

  int dims() const { return values.rows; }
  int num_frames() const { return values.cols; }
};

// Per-frame kernels. Spectral features consume one magnitude column
// X(k), k = 0..K-1 with K = block_size/2 + 1; time features consume
// windowless time blocks with the same blocking as the STFT.

/// Power-weighted mean frequency in Hz; 0 for an all-zero column.
double spectral_centroid(const std::vector<double>& mag, const StftParams& params);

/// Smallest frequency below which kappa of the total magnitude lies.
double spectral_rolloff(const std::vector<double>& mag, const StftParams& params,
                        double kappa = 0.85);

/// Geometric over arithmetic mean of the magnitudes, in [0, 1].
double spectral_flatness(const std::vector<double>& mag);

/// max(X) / sum(X), in [0, 1]; 0 for an all-zero column.
double spectral_crest(const std::vector<double>& mag);

/// Third standardized moment of the power-weighted bin distribution.
double spectral_skewness(const std::vector<double>& mag, const StftParams& params);

/// L2 magnitude difference normalized by the bin count.
double spectral_flux(const std::vector<double>& mag_now,
                     const std::vector<double>& mag_prev);

/// Mel-frequency cepstral coefficients of one magnitude column.
/// Throws InvalidBandCount if num_bands < num_coeffs or num_bands < 2.
std::vector<double> mfcc(const std::vector<double>& mag, const StftParams& params,
                         int num_bands = 40, int num_coeffs = 13);

/// Octave-folded pitch-class energy distribution (12 bins, C = 0),
/// accumulated over 55 Hz .. min(Nyquist, 3520 Hz) and normalized to unit
/// sum; all-zero for silent frames.
std::vector<double> pitch_chroma(const std::vector<double>& mag,
                                 const StftParams& params);

double time_rms(const std::vector<double>& block);

/// RMS in dB (20*log10), floored at -100 dB.
double time_rms_db(const std::vector<double>& block);

/// Zero-crossing rate in [0, 1] with sign(0) = 0.
double time_zcr(const std::vector<double>& block);

/// Runs the per-frame kernel of the chosen feature over the whole signal.
FeatureSeries extract_feature(const AudioBuffer& audio, FeatureId id,
                              const StftParams& params);

enum class AggregateStat { kMean, kStd };

/// Per-dimension statistic over frames (population normalization for std).
std::vector<double> aggregate(const FeatureSeries& series, AggregateStat stat);

}  // namespace mir

#endif  // MIR_FEATURES_H
