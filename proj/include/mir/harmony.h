#ifndef MIR_HARMONY_H
#define MIR_HARMONY_H

#include <array>
#include <string>
#include <vector>

#include "mir/features.h"
#include "mir/sequence.h"

namespace mir {

enum class ChordQuality { kMajor, kMinor };

/// One of the 24 major/minor triads; root 0 = C.
struct ChordLabel {
  int root = 0;
  ChordQuality quality = ChordQuality::kMajor;

  bool operator==(const ChordLabel&) const = default;
};

/// One of the 24 keys; tonic 0 = C.
struct KeyLabel {
  int tonic = 0;
  ChordQuality mode = ChordQuality::kMajor;

  bool operator==(const KeyLabel&) const = default;
};

/// 24 unit-L2 binary triad templates, indexed root*2 + (minor ? 1 : 0).
using ChordTemplateBank = std::array<std::array<double, 12>, 24>;

ChordTemplateBank build_chord_templates();

enum class ChordSmoothing { kNone, kViterbi };

/// Per-frame chord labels by template matching. Viterbi smoothing decodes a
/// 24-state HMM with self-transition probability 0.8 and per-frame emission
/// distributions derived from the template scores.
std::vector<ChordLabel> detect_chords(const FeatureSeries& chroma,
                                      ChordSmoothing smoothing);

/// Global key from the time-averaged chroma, scored by Pearson correlation
/// against rotations of the Krumhansl major/minor key profiles.
KeyLabel detect_key(const FeatureSeries& chroma);

/// "C:maj" style rendering (sharp spellings).
std::string chord_label_name(const ChordLabel& label);
std::string key_label_name(const KeyLabel& label);

}  // namespace mir

#endif  // MIR_HARMONY_H
