// End-to-end tests of the mir-cli binary. The test runner passes the binary
// path as the first argument; every case shells out and inspects exit codes
// and output files.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mir/audio_io.h"
#include "mir/fingerprint.h"
#include "test_util.h"

namespace {

std::string g_cli;

int run(const std::string& args) {
  const std::string cmd = "\"" + g_cli + "\" " + args;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

bool file_exists(const std::string& path) {
  return std::ifstream(path).good();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

std::string write_sine_wav(double freq_hz, double duration_s, double amplitude) {
  const std::string path = testutil::temp_path("tone.wav");
  mir::write_wav(path, mir::synth_sine(freq_hz, duration_s, 44100, amplitude));
  return path;
}

std::string write_mix_wav(const std::vector<double>& freqs, double duration_s) {
  mir::AudioBuffer mix;
  mix.sample_rate_hz = 44100;
  mix.samples.assign(static_cast<std::size_t>(duration_s * 44100), 0.0);
  for (double f : freqs) {
    const mir::AudioBuffer tone = mir::synth_sine(f, duration_s, 44100, 0.25);
    for (std::size_t n = 0; n < mix.samples.size(); ++n) {
      mix.samples[n] += tone.samples[n];
    }
  }
  const std::string path = testutil::temp_path("mix.wav");
  mir::write_wav(path, mix);
  return path;
}

std::string write_lines(const std::string& name, const std::vector<std::string>& lines) {
  const std::string path = testutil::temp_path(name);
  std::ofstream out(path);
  for (const auto& line : lines) out << line << "\n";
  return path;
}

}  // namespace

TEST_CASE("--help lists every subcommand") {
  const std::string out = testutil::temp_path("help.txt");
  CHECK(run("--help > \"" + out + "\" 2>&1") == 0);
  const std::string text = read_text(out);
  for (const char* name : {"feature", "pitch", "onset", "tempo", "chord", "key",
                           "fingerprint", "align", "kmeans", "gmm", "pca", "nmf",
                           "knn"}) {
    INFO("subcommand ", name);
    CHECK(text.find(name) != std::string::npos);
  }
}

TEST_CASE("feature subcommand writes a centroid CSV") {
  const std::string wav = write_sine_wav(1000.0, 1.0, 0.9);
  const std::string out = testutil::temp_path("centroid.csv");
  REQUIRE(run("feature --id SpectralCentroid \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 0);

  const auto lines = split(read_text(out), '\n');
  REQUIRE(lines.size() == 23);  // header + ceil(44100 / 2048) frames
  CHECK(lines[0] == "time_s,dim_0");
  for (int n = 0; n <= 19; ++n) {  // frames whose block is fully inside the tone
    const auto fields = split(lines[static_cast<std::size_t>(n) + 1], ',');
    REQUIRE(fields.size() == 2);
    const double value = std::stod(fields[1]);
    INFO("frame ", n);
    CHECK(std::abs(value - 1000.0) <= 20.0);
  }

  SUBCASE("repeated runs are byte-identical") {
    const std::string out2 = testutil::temp_path("centroid2.csv");
    REQUIRE(run("feature --id SpectralCentroid \"" + wav + "\" -o \"" + out2 +
                "\" 2>/dev/null") == 0);
    CHECK(read_text(out2) == read_text(out));
  }
}

TEST_CASE("chroma CSV carries 12 dimensions") {
  const std::string wav = write_sine_wav(440.0, 0.5, 0.5);
  const std::string out = testutil::temp_path("chroma.csv");
  REQUIRE(run("feature --id PitchChroma \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 0);
  const auto lines = split(read_text(out), '\n');
  REQUIRE(!lines.empty());
  CHECK(split(lines[0], ',').size() == 13);
}

TEST_CASE("usage errors exit 1 and leave no output") {
  const std::string wav = write_sine_wav(440.0, 0.2, 0.5);
  const std::string out = testutil::temp_path("unused.csv");

  SUBCASE("unknown feature id") {
    const std::string err = testutil::temp_path("err.txt");
    CHECK(run("feature --id Bogus \"" + wav + "\" -o \"" + out + "\" 2> \"" + err +
              "\"") == 1);
    CHECK(!file_exists(out));
    CHECK(read_text(err).find("unknown feature id") != std::string::npos);
  }
  SUBCASE("unknown pitch method") {
    CHECK(run("pitch --method Bogus \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 1);
    CHECK(!file_exists(out));
  }
  SUBCASE("unknown smoothing") {
    CHECK(run("chord --smoothing sticky \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 1);
    CHECK(!file_exists(out));
  }
  SUBCASE("bad window name") {
    CHECK(run("feature --window blackman \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 1);
    CHECK(!file_exists(out));
  }
  SUBCASE("non-power-of-two block") {
    CHECK(run("feature --block 1000 \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 1);
    CHECK(!file_exists(out));
  }
  SUBCASE("hop larger than block") {
    CHECK(run("feature --block 1024 --hop 2048 \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 1);
    CHECK(!file_exists(out));
  }
  SUBCASE("missing required positional") {
    CHECK(run("feature 2>/dev/null") == 1);
  }
  SUBCASE("unknown subcommand") {
    CHECK(run("transmogrify 2>/dev/null") == 1);
  }
}

TEST_CASE("data errors exit 2 and leave no output") {
  const std::string out = testutil::temp_path("unused.csv");

  SUBCASE("missing input file") {
    const std::string err = testutil::temp_path("err.txt");
    CHECK(run("feature \"" + testutil::temp_path("missing.wav") + "\" -o \"" + out +
              "\" 2> \"" + err + "\"") == 2);
    CHECK(!file_exists(out));
    CHECK(read_text(err).find("read:") != std::string::npos);
  }
  SUBCASE("garbage input bytes") {
    const std::string bad = testutil::temp_path("garbage.wav");
    testutil::write_bytes(bad, {'n', 'o', 't', ' ', 'a', ' ', 'w', 'a', 'v'});
    CHECK(run("feature \"" + bad + "\" -o \"" + out + "\" 2>/dev/null") == 2);
    CHECK(!file_exists(out));
  }
}

TEST_CASE("pitch subcommand tracks a 441 Hz sine") {
  const std::string wav = write_sine_wav(441.0, 1.0, 0.5);
  const std::string out = testutil::temp_path("pitch.json");
  REQUIRE(run("pitch --method TimeAcf \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 0);

  const auto doc = nlohmann::json::parse(read_text(out));
  CHECK(doc["command"] == "pitch");
  CHECK(doc["sample_rate"] == 44100);
  CHECK(doc["params"]["block_size"] == 4096);
  CHECK(doc["params"]["window"] == "hann");
  REQUIRE(doc["results"].size() == 22);
  for (int n = 0; n <= 19; ++n) {
    const double f0 = doc["results"][n]["f0_hz"];
    INFO("frame ", n);
    CHECK(std::abs(f0 - 441.0) <= 2.0);
  }
}

TEST_CASE("onset and tempo subcommands on a click train") {
  const int fs = 44100;
  mir::AudioBuffer audio;
  audio.sample_rate_hz = fs;
  audio.samples.assign(static_cast<std::size_t>(5.0 * fs), 0.0);
  for (int k = 0; k < 10; ++k) {
    const double t = 0.25 + 0.5 * k;
    audio.samples[static_cast<std::size_t>(std::lround(t * fs))] = 1.0;
  }
  const std::string wav = testutil::temp_path("clicks.wav");
  mir::write_wav(wav, audio);

  const std::string onset_out = testutil::temp_path("onsets.json");
  REQUIRE(run("onset --block 1024 --hop 512 \"" + wav + "\" -o \"" + onset_out +
              "\" 2>/dev/null") == 0);
  const auto onset_doc = nlohmann::json::parse(read_text(onset_out));
  CHECK(onset_doc["command"] == "onset");
  REQUIRE(onset_doc["results"].size() == 10);
  for (int k = 0; k < 10; ++k) {
    const double t = onset_doc["results"][k];
    CHECK(std::abs(t - (0.25 + 0.5 * k)) <= 0.05);
  }

  const std::string tempo_out = testutil::temp_path("tempo.json");
  REQUIRE(run("tempo --block 1024 --hop 512 \"" + wav + "\" -o \"" + tempo_out +
              "\" 2>/dev/null") == 0);
  const auto tempo_doc = nlohmann::json::parse(read_text(tempo_out));
  const double bpm = tempo_doc["results"][0];
  CHECK(std::abs(bpm - 120.0) <= 2.0);
}

TEST_CASE("chord and key subcommands on a C major triad") {
  const std::string wav = write_mix_wav({261.63, 329.63, 392.00}, 2.0);

  const std::string chord_out = testutil::temp_path("chords.json");
  REQUIRE(run("chord \"" + wav + "\" -o \"" + chord_out + "\" 2>/dev/null") == 0);
  const auto chord_doc = nlohmann::json::parse(read_text(chord_out));
  REQUIRE(!chord_doc["results"].empty());
  int hits = 0;
  for (const auto& entry : chord_doc["results"]) {
    hits += entry["label"] == "C:maj";
  }
  CHECK(hits >= static_cast<int>(chord_doc["results"].size()) - 2);

  const std::string smooth_out = testutil::temp_path("chords_v.json");
  REQUIRE(run("chord --smoothing viterbi \"" + wav + "\" -o \"" + smooth_out +
              "\" 2>/dev/null") == 0);
  const auto smooth_doc = nlohmann::json::parse(read_text(smooth_out));
  CHECK(smooth_doc["results"].size() == chord_doc["results"].size());

  const std::string key_out = testutil::temp_path("key.json");
  REQUIRE(run("key \"" + wav + "\" -o \"" + key_out + "\" 2>/dev/null") == 0);
  const auto key_doc = nlohmann::json::parse(read_text(key_out));
  CHECK(key_doc["results"][0]["label"] == "C:maj");
}

TEST_CASE("fingerprint subcommand") {
  const std::string wav = write_sine_wav(523.25, 1.0, 0.5);

  SUBCASE("refuses to run without -o") {
    CHECK(run("fingerprint \"" + wav + "\" 2>/dev/null") == 1);
  }
  SUBCASE("binary output matches the library") {
    const std::string out = testutil::temp_path("tone.fp");
    REQUIRE(run("fingerprint \"" + wav + "\" -o \"" + out + "\" 2>/dev/null") == 0);
    const mir::Fingerprint from_file = mir::read_fingerprint(out);
    const mir::Fingerprint direct = mir::extract_fingerprint(mir::read_wav(wav));
    CHECK(from_file.words == direct.words);
  }
}

TEST_CASE("align subcommand on identical inputs") {
  const std::string wav = write_sine_wav(330.0, 0.8, 0.5);
  const std::string out = testutil::temp_path("align.json");
  REQUIRE(run("align \"" + wav + "\" \"" + wav + "\" -o \"" + out +
              "\" 2>/dev/null") == 0);
  const auto doc = nlohmann::json::parse(read_text(out));
  CHECK(doc["command"] == "align");
  CHECK(doc["total_cost"].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  int i = 0;
  for (const auto& pair : doc["path"]) {
    CHECK(pair[0] == i);
    CHECK(pair[1] == i);
    ++i;
  }
}

TEST_CASE("table subcommands") {
  const std::string table = write_lines("table.csv", {
      "# two well separated blobs",
      "x,y",
      "0.0,0.1", "0.2,-0.1", "-0.1,0.0", "0.1,0.2",
      "10.0,10.1", "10.2,9.9", "9.9,10.0", "10.1,10.2",
  });

  SUBCASE("kmeans separates the blobs and is deterministic") {
    const std::string out = testutil::temp_path("kmeans.json");
    REQUIRE(run("kmeans --k 2 --seed 1 \"" + table + "\" -o \"" + out +
                "\" 2>/dev/null") == 0);
    const auto doc = nlohmann::json::parse(read_text(out));
    const auto assignments = doc["assignments"].get<std::vector<int>>();
    REQUIRE(assignments.size() == 8);
    for (int n = 1; n < 4; ++n) CHECK(assignments[n] == assignments[0]);
    for (int n = 5; n < 8; ++n) CHECK(assignments[n] == assignments[4]);
    CHECK(assignments[0] != assignments[4]);
    CHECK(doc["inertia"].get<double>() < 1.0);

    const std::string out2 = testutil::temp_path("kmeans2.json");
    REQUIRE(run("kmeans --k 2 --seed 1 \"" + table + "\" -o \"" + out2 +
                "\" 2>/dev/null") == 0);
    CHECK(read_text(out2) == read_text(out));
  }

  SUBCASE("gmm reports a normalized mixture") {
    const std::string out = testutil::temp_path("gmm.json");
    REQUIRE(run("gmm --k 2 --seed 5 \"" + table + "\" -o \"" + out +
                "\" 2>/dev/null") == 0);
    const auto doc = nlohmann::json::parse(read_text(out));
    const auto weights = doc["weights"].get<std::vector<double>>();
    REQUIRE(weights.size() == 2);
    CHECK(weights[0] + weights[1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::isfinite(doc["log_likelihood"].get<double>()));
  }

  SUBCASE("pca reports components and eigenvalues") {
    const std::string out = testutil::temp_path("pca.json");
    REQUIRE(run("pca \"" + table + "\" -o \"" + out + "\" 2>/dev/null") == 0);
    const auto doc = nlohmann::json::parse(read_text(out));
    CHECK(doc["mean"].size() == 2);
    CHECK(doc["components"].size() == 2);
    const auto eigenvalues = doc["eigenvalues"].get<std::vector<double>>();
    REQUIRE(eigenvalues.size() == 2);
    CHECK(eigenvalues[0] >= eigenvalues[1]);
  }

  SUBCASE("nmf factorizes a non-negative table") {
    const std::string nonneg = write_lines("nonneg.csv", {
        "1.0,2.0,3.0", "2.0,4.0,6.0", "3.0,6.0,9.0",
    });
    const std::string out = testutil::temp_path("nmf.json");
    REQUIRE(run("nmf --rank 1 --seed 3 \"" + nonneg + "\" -o \"" + out +
                "\" 2>/dev/null") == 0);
    const auto doc = nlohmann::json::parse(read_text(out));
    CHECK(doc["dictionary"].size() == 3);
    CHECK(doc["activations"].size() == 1);
    CHECK(doc["divergence"].get<double>() < 1e-2);
  }

  SUBCASE("knn labels queries from the training table") {
    const std::string train = write_lines("train.csv", {
        "x,y,label",
        "0.0,0.0,0", "0.2,0.1,0", "-0.1,0.1,0",
        "5.0,5.0,1", "5.2,4.9,1", "4.9,5.1,1",
    });
    const std::string query = write_lines("query.csv", {"0.1,0.0", "5.1,5.0"});
    const std::string out = testutil::temp_path("knn.json");
    REQUIRE(run("knn --train \"" + train + "\" --k 3 \"" + query + "\" -o \"" + out +
                "\" 2>/dev/null") == 0);
    const auto doc = nlohmann::json::parse(read_text(out));
    CHECK(doc["results"].get<std::vector<int>>() == std::vector<int>{0, 1});
  }

  SUBCASE("too many clusters is a data error") {
    const std::string out = testutil::temp_path("unused.json");
    CHECK(run("kmeans --k 50 --seed 1 \"" + table + "\" -o \"" + out +
              "\" 2>/dev/null") == 2);
    CHECK(!file_exists(out));
  }

  SUBCASE("ragged CSV is a data error") {
    const std::string ragged = write_lines("ragged.csv", {"1.0,2.0", "3.0"});
    CHECK(run("pca \"" + ragged + "\" 1>/dev/null 2>/dev/null") == 2);
  }

  SUBCASE("missing CSV is a data error") {
    CHECK(run("pca \"" + testutil::temp_path("missing.csv") + "\" 2>/dev/null") == 2);
  }
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <mir-cli path> [doctest options]\n", argv[0]);
    return 1;
  }
  g_cli = argv[1];
  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  return context.run();
}
