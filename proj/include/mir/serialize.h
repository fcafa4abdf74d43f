#ifndef MIR_SERIALIZE_H
#define MIR_SERIALIZE_H

#include <string>
#include <vector>

#include "mir/features.h"
#include "mir/harmony.h"
#include "mir/onset.h"
#include "mir/pitch.h"

namespace mir {

/// CSV rendering of a frame series: header row `time_s,dim_0,...`, one row
/// per frame, 9 significant digits, '\n' line separator.
std::string serialize_feature_csv(const FeatureSeries& series);

// JSON renderings of symbolic results. All share the envelope
// {"command": ..., "sample_rate": ..., "params": {...}, "results": [...]}.
std::string serialize_pitch_json(const PitchTrack& track, int sample_rate_hz,
                                 const StftParams& params);
std::string serialize_onsets_json(const OnsetList& onsets, int sample_rate_hz,
                                  const StftParams& params);
std::string serialize_tempo_json(double bpm, int sample_rate_hz,
                                 const StftParams& params);
std::string serialize_chords_json(const std::vector<ChordLabel>& labels,
                                  const std::vector<double>& times_s,
                                  int sample_rate_hz, const StftParams& params);
std::string serialize_key_json(const KeyLabel& key, int sample_rate_hz,
                               const StftParams& params);

}  // namespace mir

#endif  // MIR_SERIALIZE_H
