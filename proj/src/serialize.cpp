#include "mir/serialize.h"

#include <cstdio>

#include <json.hpp>

namespace mir {

namespace {

using nlohmann::json;

std::string format_number(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

json params_json(const StftParams& params) {
  const char* window = "hann";
  if (params.window == WindowType::kHamming) window = "hamming";
  if (params.window == WindowType::kRectangular) window = "rect";
  return json{{"block_size", params.block_size},
              {"hop_size", params.hop_size},
              {"window", window}};
}

std::string envelope(const std::string& command, int sample_rate_hz,
                     const StftParams& params, json results) {
  json doc;
  doc["command"] = command;
  doc["sample_rate"] = sample_rate_hz;
  doc["params"] = params_json(params);
  doc["results"] = std::move(results);
  return doc.dump(2) + "\n";
}

}  // namespace

std::string serialize_feature_csv(const FeatureSeries& series) {
  std::string out = "time_s";
  for (int d = 0; d < series.dims(); ++d) {
    out += ",dim_" + std::to_string(d);
  }
  out += "\n";
  for (int n = 0; n < series.num_frames(); ++n) {
    out += format_number(series.frame_times_s[n]);
    for (int d = 0; d < series.dims(); ++d) {
      out += "," + format_number(series.values(d, n));
    }
    out += "\n";
  }
  return out;
}

std::string serialize_pitch_json(const PitchTrack& track, int sample_rate_hz,
                                 const StftParams& params) {
  json results = json::array();
  for (std::size_t n = 0; n < track.f0_hz.size(); ++n) {
    results.push_back({{"time_s", track.frame_times_s[n]}, {"f0_hz", track.f0_hz[n]}});
  }
  return envelope("pitch", sample_rate_hz, params, std::move(results));
}

std::string serialize_onsets_json(const OnsetList& onsets, int sample_rate_hz,
                                  const StftParams& params) {
  json results = json::array();
  for (double t : onsets.times_s) results.push_back(t);
  return envelope("onset", sample_rate_hz, params, std::move(results));
}

std::string serialize_tempo_json(double bpm, int sample_rate_hz,
                                 const StftParams& params) {
  return envelope("tempo", sample_rate_hz, params, json::array({bpm}));
}

std::string serialize_chords_json(const std::vector<ChordLabel>& labels,
                                  const std::vector<double>& times_s,
                                  int sample_rate_hz, const StftParams& params) {
  json results = json::array();
  for (std::size_t n = 0; n < labels.size(); ++n) {
    results.push_back(
        {{"time_s", times_s[n]}, {"label", chord_label_name(labels[n])}});
  }
  return envelope("chord", sample_rate_hz, params, std::move(results));
}

std::string serialize_key_json(const KeyLabel& key, int sample_rate_hz,
                               const StftParams& params) {
  return envelope("key", sample_rate_hz, params,
                  json::array({json{{"label", key_label_name(key)}}}));
}

}  // namespace mir
