// Command-line front end for the analysis library. One subcommand per
// pipeline; results go to the output file (or stdout), diagnostics to
// stderr. Exit codes: 0 success, 1 usage error, 2 data error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mir/audio_io.h"
#include "mir/features.h"
#include "mir/fingerprint.h"
#include "mir/harmony.h"
#include "mir/ml.h"
#include "mir/onset.h"
#include "mir/pitch.h"
#include "mir/sequence.h"
#include "mir/serialize.h"
#include "mir/spectral.h"

namespace {

using nlohmann::json;

struct StftOptions {
  int block_size = 4096;
  int hop_size = 2048;
  std::string window = "hann";

  void attach(CLI::App* cmd) {
    cmd->add_option("--block", block_size, "STFT block size (power of two)")
        ->capture_default_str();
    cmd->add_option("--hop", hop_size, "STFT hop size")->capture_default_str();
    cmd->add_option("--window", window, "Analysis window: hann|hamming|rect")
        ->capture_default_str();
  }

  mir::StftParams params(int sample_rate_hz) const {
    mir::StftParams p;
    p.block_size = block_size;
    p.hop_size = hop_size;
    p.sample_rate_hz = sample_rate_hz;
    if (window == "hann") {
      p.window = mir::WindowType::kHann;
    } else if (window == "hamming") {
      p.window = mir::WindowType::kHamming;
    } else if (window == "rect") {
      p.window = mir::WindowType::kRectangular;
    } else {
      throw CLI::ValidationError("--window", "unknown window: " + window);
    }
    if (p.block_size < 16 || (p.block_size & (p.block_size - 1)) != 0) {
      throw CLI::ValidationError("--block", "block size must be a power of two >= 16");
    }
    if (p.hop_size < 1 || p.hop_size > p.block_size) {
      throw CLI::ValidationError("--hop", "hop size must be in [1, block size]");
    }
    return p;
  }
};

/// Writes results only after the whole pipeline succeeded, so failed runs
/// leave no partial output behind.
void emit(const std::optional<std::string>& path, const std::string& content) {
  if (!path) {
    std::cout << content;
    return;
  }
  std::ofstream file(*path, std::ios::binary | std::ios::trunc);
  if (!file) throw mir::IoFailure("cannot open output file: " + *path);
  file << content;
  if (!file) throw mir::IoFailure("write failed: " + *path);
}

/// Numeric CSV reader for the ML subcommands: one observation per row.
/// Non-numeric rows (headers) and '#' comment lines are skipped.
std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw mir::IoFailure("cannot open input file: " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(file, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    bool numeric = true;
    while (std::getline(ss, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
      if (!numeric) break;
    }
    if (!numeric || row.empty()) continue;
    if (!rows.empty() && rows.front().size() != row.size()) {
      throw mir::Error("inconsistent column count in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw mir::Error("no numeric rows in " + path);
  return rows;
}

/// Rows-as-observations matrix to dims x count layout.
mir::Matrix rows_to_observations(const std::vector<std::vector<double>>& rows,
                                 std::size_t num_cols) {
  mir::Matrix obs(static_cast<int>(num_cols), static_cast<int>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t d = 0; d < num_cols; ++d) {
      obs(static_cast<int>(d), static_cast<int>(i)) = rows[i][d];
    }
  }
  return obs;
}

json matrix_to_json(const mir::Matrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows; ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols; ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audio content analysis toolkit"};
  app.require_subcommand(1);

  std::string input;
  std::string input_b;
  std::optional<std::string> output;
  StftOptions stft_opts;

  std::string feature_id = "SpectralCentroid";
  std::string pitch_method = "TimeAcf";
  std::string smoothing = "none";
  double kappa = 0.85;
  int k = 3;
  int rank = 2;
  std::uint64_t seed = 0;
  int max_iter = 100;
  std::string train_path;

  auto add_audio_command = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("input", input, "Input WAV file")->required();
    cmd->add_option("-o,--output", output, "Output file (stdout when omitted)");
    stft_opts.attach(cmd);
    return cmd;
  };

  CLI::App* feature_cmd = add_audio_command("feature", "Extract a per-frame feature as CSV");
  feature_cmd->add_option("--id", feature_id, "Feature id (e.g. SpectralCentroid, Mfcc)")
      ->capture_default_str();
  feature_cmd->add_option("--kappa", kappa, "Rolloff fraction")->capture_default_str();

  CLI::App* pitch_cmd = add_audio_command("pitch", "Track the fundamental frequency");
  pitch_cmd->add_option("--method", pitch_method,
                        "TimeAcf|TimeAmdf|TimeZeroCrossing|SpectralAcf|SpectralHps")
      ->capture_default_str();

  add_audio_command("onset", "Detect onset times");
  add_audio_command("tempo", "Estimate the tempo in BPM");

  CLI::App* chord_cmd = add_audio_command("chord", "Detect per-frame chords");
  chord_cmd->add_option("--smoothing", smoothing, "none|viterbi")->capture_default_str();

  add_audio_command("key", "Detect the global key");
  add_audio_command("fingerprint", "Extract a binary audio fingerprint");

  CLI::App* align_cmd = app.add_subcommand("align", "DTW-align two audio files on MFCC frames");
  align_cmd->add_option("input", input, "First WAV file")->required();
  align_cmd->add_option("input_b", input_b, "Second WAV file")->required();
  align_cmd->add_option("-o,--output", output, "Output file (stdout when omitted)");
  stft_opts.attach(align_cmd);

  auto add_table_command = [&](const std::string& name, const std::string& desc) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    cmd->add_option("input", input, "Input CSV (one observation per row)")->required();
    cmd->add_option("-o,--output", output, "Output file (stdout when omitted)");
    return cmd;
  };

  CLI::App* kmeans_cmd = add_table_command("kmeans", "K-means clustering of a feature table");
  kmeans_cmd->add_option("--k", k, "Number of clusters")->required();
  kmeans_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  kmeans_cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();

  CLI::App* gmm_cmd = add_table_command("gmm", "Gaussian mixture fit of a feature table");
  gmm_cmd->add_option("--k", k, "Number of components")->required();
  gmm_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  gmm_cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();

  add_table_command("pca", "Principal component analysis of a feature table");

  CLI::App* nmf_cmd = add_table_command("nmf", "Non-negative matrix factorization of a table");
  nmf_cmd->add_option("--rank", rank, "Factorization rank")->required();
  nmf_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  nmf_cmd->add_option("--max-iter", max_iter, "Iteration cap")->capture_default_str();

  CLI::App* knn_cmd = add_table_command("knn", "KNN classification (train: last column = label)");
  knn_cmd->add_option("--train", train_path, "Training CSV")->required();
  knn_cmd->add_option("--k", k, "Number of neighbors")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::string stage = command;
  try {
    if (command == "feature") {
      mir::FeatureId id;
      try {
        id = mir::feature_from_name(feature_id);
      } catch (const mir::Error&) {
        std::cerr << "unknown feature id: " << feature_id << "\n"
                  << feature_cmd->help() << std::endl;
        return 1;
      }
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = "feature";
      const mir::StftParams params = stft_opts.params(audio.sample_rate_hz);
      mir::FeatureSeries series;
      if (id == mir::FeatureId::kSpectralRolloff) {
        const mir::Spectrogram spec = mir::stft(audio, params);
        series.feature = id;
        series.frame_times_s = spec.frame_times_s;
        series.values = mir::Matrix(1, spec.num_frames());
        for (int n = 0; n < spec.num_frames(); ++n) {
          series.values(0, n) =
              mir::spectral_rolloff(spec.magnitudes.column(n), params, kappa);
        }
      } else {
        series = mir::extract_feature(audio, id, params);
      }
      emit(output, mir::serialize_feature_csv(series));
    } else if (command == "pitch") {
      mir::PitchMethod method;
      try {
        method = mir::pitch_method_from_name(pitch_method);
      } catch (const mir::Error&) {
        std::cerr << "unknown pitch method: " << pitch_method << "\n"
                  << pitch_cmd->help() << std::endl;
        return 1;
      }
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = "pitch";
      const mir::StftParams params = stft_opts.params(audio.sample_rate_hz);
      const mir::PitchTrack track = mir::track_pitch(audio, params, method);
      emit(output, mir::serialize_pitch_json(track, audio.sample_rate_hz, params));
    } else if (command == "onset" || command == "tempo") {
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = command;
      const mir::StftParams params = stft_opts.params(audio.sample_rate_hz);
      const mir::NoveltyCurve nov = mir::novelty_flux(mir::stft(audio, params));
      if (command == "onset") {
        const mir::OnsetList onsets = mir::pick_onsets(nov);
        emit(output, mir::serialize_onsets_json(onsets, audio.sample_rate_hz, params));
      } else {
        const double bpm = mir::estimate_tempo(mir::beat_histogram(nov));
        emit(output, mir::serialize_tempo_json(bpm, audio.sample_rate_hz, params));
      }
    } else if (command == "chord") {
      if (smoothing != "none" && smoothing != "viterbi") {
        std::cerr << "unknown smoothing: " << smoothing << "\n"
                  << chord_cmd->help() << std::endl;
        return 1;
      }
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = "chord";
      const mir::StftParams params = stft_opts.params(audio.sample_rate_hz);
      const mir::FeatureSeries chroma =
          mir::extract_feature(audio, mir::FeatureId::kPitchChroma, params);
      const std::vector<mir::ChordLabel> labels = mir::detect_chords(
          chroma, smoothing == "viterbi" ? mir::ChordSmoothing::kViterbi
                                         : mir::ChordSmoothing::kNone);
      emit(output, mir::serialize_chords_json(labels, chroma.frame_times_s,
                                              audio.sample_rate_hz, params));
    } else if (command == "key") {
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = "key";
      const mir::StftParams params = stft_opts.params(audio.sample_rate_hz);
      const mir::FeatureSeries chroma =
          mir::extract_feature(audio, mir::FeatureId::kPitchChroma, params);
      const mir::KeyLabel key = mir::detect_key(chroma);
      emit(output, mir::serialize_key_json(key, audio.sample_rate_hz, params));
    } else if (command == "fingerprint") {
      stage = "read";
      const mir::AudioBuffer audio = mir::read_wav(input);
      stage = "fingerprint";
      const mir::Fingerprint fp = mir::extract_fingerprint(audio);
      if (!output) {
        std::cerr << "fingerprint requires -o (binary output)" << std::endl;
        return 1;
      }
      mir::write_fingerprint(*output, fp);
    } else if (command == "align") {
      stage = "read";
      const mir::AudioBuffer a = mir::read_wav(input);
      const mir::AudioBuffer b = mir::read_wav(input_b);
      stage = "align";
      const mir::FeatureSeries fa =
          mir::extract_feature(a, mir::FeatureId::kMfcc, stft_opts.params(a.sample_rate_hz));
      const mir::FeatureSeries fb =
          mir::extract_feature(b, mir::FeatureId::kMfcc, stft_opts.params(b.sample_rate_hz));
      const mir::Matrix cost =
          mir::cost_matrix(fa.values, fb.values, mir::CostMetric::kEuclidean);
      const mir::AlignmentPath path = mir::dtw(cost);
      json doc;
      doc["command"] = "align";
      doc["total_cost"] = path.total_cost;
      json pairs = json::array();
      for (const auto& [i, j] : path.pairs) pairs.push_back(json::array({i, j}));
      doc["path"] = std::move(pairs);
      emit(output, doc.dump(2) + "\n");
    } else if (command == "kmeans") {
      stage = "read";
      const auto rows = read_csv_rows(input);
      stage = "kmeans";
      mir::Dataset data;
      data.observations = rows_to_observations(rows, rows.front().size());
      const mir::KmeansResult result = mir::kmeans(data, k, max_iter, seed);
      json doc;
      doc["command"] = "kmeans";
      doc["seed"] = seed;
      doc["centroids"] = matrix_to_json(result.centroids);
      doc["assignments"] = result.assignments;
      doc["inertia"] = result.inertia_history.back();
      emit(output, doc.dump(2) + "\n");
    } else if (command == "gmm") {
      stage = "read";
      const auto rows = read_csv_rows(input);
      stage = "gmm";
      mir::Dataset data;
      data.observations = rows_to_observations(rows, rows.front().size());
      const mir::GmmFit fit = mir::gmm_fit(data, k, max_iter, 1e-6, seed);
      json doc;
      doc["command"] = "gmm";
      doc["seed"] = seed;
      doc["weights"] = fit.model.weights;
      doc["means"] = matrix_to_json(fit.model.means);
      doc["variances"] = matrix_to_json(fit.model.variances);
      doc["log_likelihood"] = fit.log_likelihood_history.back();
      emit(output, doc.dump(2) + "\n");
    } else if (command == "pca") {
      stage = "read";
      const auto rows = read_csv_rows(input);
      stage = "pca";
      mir::Dataset data;
      data.observations = rows_to_observations(rows, rows.front().size());
      const mir::PcaResult result = mir::pca(data);
      json doc;
      doc["command"] = "pca";
      doc["mean"] = result.mean;
      doc["components"] = matrix_to_json(result.components);
      doc["eigenvalues"] = result.eigenvalues;
      emit(output, doc.dump(2) + "\n");
    } else if (command == "nmf") {
      stage = "read";
      const auto rows = read_csv_rows(input);
      stage = "nmf";
      mir::Matrix v(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows.front().size(); ++j) {
          v(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
        }
      }
      const mir::NmfResult result = mir::nmf(v, rank, max_iter > 100 ? max_iter : 200, 1e-4, seed);
      json doc;
      doc["command"] = "nmf";
      doc["seed"] = seed;
      doc["dictionary"] = matrix_to_json(result.dictionary);
      doc["activations"] = matrix_to_json(result.activations);
      doc["divergence"] = result.divergence_history.back();
      emit(output, doc.dump(2) + "\n");
    } else if (command == "knn") {
      stage = "read";
      const auto train_rows = read_csv_rows(train_path);
      const auto query_rows = read_csv_rows(input);
      stage = "knn";
      if (train_rows.front().size() < 2) {
        throw mir::Error("training CSV needs feature columns plus a label column");
      }
      const std::size_t dims = train_rows.front().size() - 1;
      mir::Dataset train;
      train.observations = rows_to_observations(train_rows, dims);
      for (const auto& row : train_rows) {
        train.labels.push_back(static_cast<int>(std::lround(row.back())));
      }
      if (query_rows.front().size() != dims) {
        throw mir::DimensionMismatch("query column count differs from training features");
      }
      json results = json::array();
      for (const auto& row : query_rows) {
        results.push_back(mir::knn_classify(train, row, k));
      }
      json doc;
      doc["command"] = "knn";
      doc["results"] = std::move(results);
      emit(output, doc.dump(2) + "\n");
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << std::endl;
    return 1;
  } catch (const mir::Error& e) {
    std::cerr << stage << ": " << e.what() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << stage << ": " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
