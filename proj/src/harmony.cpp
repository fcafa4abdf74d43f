#include "mir/harmony.h"

#include <cmath>

namespace mir {

namespace {

constexpr double kSelfTransition = 0.8;

const std::array<double, 12> kKrumhanslMajor = {
    6.35, 2.23, 3.48, 2.33, 4.38, 4.09, 2.52, 5.19, 2.39, 3.66, 2.29, 2.88};
const std::array<double, 12> kKrumhanslMinor = {
    6.33, 2.68, 3.52, 5.38, 2.60, 3.53, 2.54, 4.75, 3.98, 2.69, 3.34, 3.17};

const char* const kPitchClassNames[12] = {"C",  "C#", "D",  "D#", "E",  "F",
                                          "F#", "G",  "G#", "A",  "A#", "B"};

ChordLabel label_from_index(int index) {
  return {index / 2, index % 2 == 0 ? ChordQuality::kMajor : ChordQuality::kMinor};
}

/// Template-match scores of one chroma frame against all 24 triads.
/// The frame is L2-normalized first; a silent frame scores 0 everywhere.
std::array<double, 24> frame_scores(const ChordTemplateBank& bank,
                                    const std::vector<double>& chroma_frame) {
  double norm = 0.0;
  for (double c : chroma_frame) norm += c * c;
  norm = std::sqrt(norm);

  std::array<double, 24> scores{};
  if (norm <= 0.0) return scores;
  for (int i = 0; i < 24; ++i) {
    double dot = 0.0;
    for (int pc = 0; pc < 12; ++pc) dot += bank[i][pc] * chroma_frame[pc] / norm;
    scores[i] = dot;
  }
  return scores;
}

double pearson(const std::vector<double>& x, const std::array<double, 12>& profile,
               int rotation) {
  double mean_x = 0.0;
  double mean_p = 0.0;
  for (int i = 0; i < 12; ++i) {
    mean_x += x[i];
    mean_p += profile[i];
  }
  mean_x /= 12.0;
  mean_p /= 12.0;

  double cov = 0.0;
  double var_x = 0.0;
  double var_p = 0.0;
  for (int i = 0; i < 12; ++i) {
    // Profile value for pitch class i under the rotated key.
    const double p = profile[((i - rotation) % 12 + 12) % 12];
    cov += (x[i] - mean_x) * (p - mean_p);
    var_x += (x[i] - mean_x) * (x[i] - mean_x);
    var_p += (p - mean_p) * (p - mean_p);
  }
  if (var_x <= 0.0 || var_p <= 0.0) return 0.0;
  return cov / std::sqrt(var_x * var_p);
}

}  // namespace

ChordTemplateBank build_chord_templates() {
  constexpr double kNorm = 0.57735026918962576451;  // 1/sqrt(3)
  ChordTemplateBank bank{};
  for (int root = 0; root < 12; ++root) {
    for (int q = 0; q < 2; ++q) {
      const int third = q == 0 ? 4 : 3;
      auto& tpl = bank[root * 2 + q];
      tpl.fill(0.0);
      tpl[root] = kNorm;
      tpl[(root + third) % 12] = kNorm;
      tpl[(root + 7) % 12] = kNorm;
    }
  }
  return bank;
}

std::vector<ChordLabel> detect_chords(const FeatureSeries& chroma,
                                      ChordSmoothing smoothing) {
  if (chroma.dims() != 12) throw DimensionMismatch("chroma must have 12 dims");
  const int num_frames = chroma.num_frames();
  const ChordTemplateBank bank = build_chord_templates();

  std::vector<ChordLabel> labels(static_cast<std::size_t>(num_frames));
  if (num_frames == 0) return labels;

  if (smoothing == ChordSmoothing::kNone) {
    for (int n = 0; n < num_frames; ++n) {
      const auto scores = frame_scores(bank, chroma.values.column(n));
      int best = 0;
      for (int i = 1; i < 24; ++i) {
        if (scores[i] > scores[best]) best = i;
      }
      labels[n] = label_from_index(best);
    }
    return labels;
  }

  Hmm hmm;
  hmm.initial.assign(24, 1.0 / 24.0);
  hmm.transitions = Matrix(24, 24, (1.0 - kSelfTransition) / 23.0);
  for (int s = 0; s < 24; ++s) hmm.transitions(s, s) = kSelfTransition;
  hmm.emissions = Matrix(24, num_frames);
  for (int n = 0; n < num_frames; ++n) {
    const auto scores = frame_scores(bank, chroma.values.column(n));
    double total = 0.0;
    for (double s : scores) total += s;
    for (int i = 0; i < 24; ++i) {
      hmm.emissions(i, n) = total > 0.0 ? scores[i] / total : 1.0 / 24.0;
    }
  }

  const StatePath decoded = viterbi(hmm);
  for (int n = 0; n < num_frames; ++n) labels[n] = label_from_index(decoded.states[n]);
  return labels;
}

KeyLabel detect_key(const FeatureSeries& chroma) {
  if (chroma.dims() != 12) throw DimensionMismatch("chroma must have 12 dims");
  if (chroma.num_frames() == 0) throw EmptyInput("no chroma frames");

  std::vector<double> mean_chroma(12, 0.0);
  for (int n = 0; n < chroma.num_frames(); ++n) {
    for (int pc = 0; pc < 12; ++pc) mean_chroma[pc] += chroma.values(pc, n);
  }
  double total = 0.0;
  for (double c : mean_chroma) total += c;
  if (total > 0.0) {
    for (double& c : mean_chroma) c /= total;
  }

  KeyLabel best{0, ChordQuality::kMajor};
  double best_score = -2.0;
  for (int tonic = 0; tonic < 12; ++tonic) {
    for (int q = 0; q < 2; ++q) {
      const auto& profile = q == 0 ? kKrumhanslMajor : kKrumhanslMinor;
      const double score = pearson(mean_chroma, profile, tonic);
      if (score > best_score) {
        best_score = score;
        best = {tonic, q == 0 ? ChordQuality::kMajor : ChordQuality::kMinor};
      }
    }
  }
  return best;
}

std::string chord_label_name(const ChordLabel& label) {
  return std::string(kPitchClassNames[label.root]) +
         (label.quality == ChordQuality::kMajor ? ":maj" : ":min");
}

std::string key_label_name(const KeyLabel& label) {
  return std::string(kPitchClassNames[label.tonic]) +
         (label.mode == ChordQuality::kMajor ? ":maj" : ":min");
}

}  // namespace mir
