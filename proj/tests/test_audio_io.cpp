#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "mir/audio_io.h"
#include "mir/rng.h"
#include "test_util.h"

using namespace mir;
using namespace testutil;

TEST_CASE("read_wav decodes a hand-built mono fixture") {
  // 16384 -> 0.5, -16384 -> -0.5 after the /32768 scaling.
  const auto path = temp_path("mono.wav");
  write_bytes(path, build_wav_bytes(8000, 1, {16384, -16384}));

  const AudioBuffer audio = read_wav(path);
  REQUIRE(audio.samples.size() == 2);
  CHECK(audio.sample_rate_hz == 8000);
  CHECK(audio.samples[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(audio.samples[1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("read_wav downmixes stereo by channel mean") {
  const auto path = temp_path("stereo.wav");
  write_bytes(path, build_wav_bytes(44100, 2, {16384, 0, -16384, -16384}));

  const AudioBuffer audio = read_wav(path);
  REQUIRE(audio.samples.size() == 2);
  CHECK(audio.samples[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(audio.samples[1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("read_wav skips unknown chunks before data") {
  std::vector<unsigned char> b;
  append_tag(b, "RIFF");
  append_u32(b, 4 + 8 + 16 + 8 + 3 + 1 + 8 + 2);
  append_tag(b, "WAVE");
  append_tag(b, "fmt ");
  append_u32(b, 16);
  append_u16(b, 1);
  append_u16(b, 1);
  append_u32(b, 22050);
  append_u32(b, 44100);
  append_u16(b, 2);
  append_u16(b, 16);
  append_tag(b, "LIST");
  append_u32(b, 3);  // odd-sized chunk, padded to a word boundary
  b.push_back('a');
  b.push_back('b');
  b.push_back('c');
  b.push_back(0);
  append_tag(b, "data");
  append_u32(b, 2);
  append_u16(b, 0x4000);

  const auto path = temp_path("chunks.wav");
  write_bytes(path, b);
  const AudioBuffer audio = read_wav(path);
  REQUIRE(audio.samples.size() == 1);
  CHECK(audio.sample_rate_hz == 22050);
  CHECK(audio.samples[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("read_wav rejects broken containers and formats") {
  SUBCASE("wrong RIFF magic") {
    const auto path = temp_path("bad_magic.wav");
    auto bytes = build_wav_bytes(8000, 1, {0});
    bytes[3] = 'X';
    write_bytes(path, bytes);
    CHECK_THROWS_AS(read_wav(path), MalformedContainer);
  }
  SUBCASE("truncated header") {
    const auto path = temp_path("truncated.wav");
    write_bytes(path, {'R', 'I', 'F', 'F', 0, 0});
    CHECK_THROWS_AS(read_wav(path), MalformedContainer);
  }
  SUBCASE("24-bit samples") {
    const auto path = temp_path("wide.wav");
    auto bytes = build_wav_bytes(8000, 1, {0});
    bytes[34] = 24;  // bits-per-sample field
    write_bytes(path, bytes);
    CHECK_THROWS_AS(read_wav(path), UnsupportedFormat);
  }
  SUBCASE("float format tag") {
    const auto path = temp_path("float.wav");
    auto bytes = build_wav_bytes(8000, 1, {0});
    bytes[20] = 3;
    write_bytes(path, bytes);
    CHECK_THROWS_AS(read_wav(path), UnsupportedFormat);
  }
  SUBCASE("empty data chunk") {
    const auto path = temp_path("empty.wav");
    write_bytes(path, build_wav_bytes(8000, 1, {}));
    CHECK_THROWS_AS(read_wav(path), EmptyAudio);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_wav(temp_path("does_not_exist.wav")), Error);
  }
}

TEST_CASE("write_wav quantizes and clamps") {
  AudioBuffer audio;
  audio.sample_rate_hz = 8000;
  audio.samples = {0.0, 1.5, -2.0, 0.5, 1.0};

  const auto path = temp_path("clamp.wav");
  write_wav(path, audio);
  const auto bytes = read_bytes(path);
  REQUIRE(bytes.size() == 44 + 10);

  auto word = [&](int i) {
    return static_cast<std::int16_t>(bytes[44 + 2 * i] | (bytes[45 + 2 * i] << 8));
  };
  CHECK(word(0) == 0);
  CHECK(word(1) == 32767);
  CHECK(word(2) == -32768);
  CHECK(word(3) == 16384);
  CHECK(word(4) == 32767);  // 1.0 exceeds the largest representable value
}

TEST_CASE("wav round trip stays within one quantization step") {
  Rng rng(41);
  AudioBuffer audio;
  audio.sample_rate_hz = 44100;
  audio.samples.resize(5000);
  for (auto& s : audio.samples) s = rng.next_double() * 1.8 - 0.9;

  const auto path = temp_path("round_trip.wav");
  write_wav(path, audio);
  const AudioBuffer back = read_wav(path);

  REQUIRE(back.samples.size() == audio.samples.size());
  CHECK(back.sample_rate_hz == 44100);
  for (std::size_t n = 0; n < audio.samples.size(); ++n) {
    CHECK(std::abs(back.samples[n] - audio.samples[n]) <= 1.0 / 32768.0);
  }
}

TEST_CASE("synth_sine basic shape") {
  const AudioBuffer audio = synth_sine(441.0, 1.0, 44100, 0.8);
  REQUIRE(audio.samples.size() == 44100);
  CHECK(audio.samples[0] == 0.0);

  double peak = 0.0;
  for (double s : audio.samples) peak = std::max(peak, std::abs(s));
  CHECK(peak <= 0.8 + 1e-12);
  CHECK(peak > 0.79);

  // 441 full periods fit exactly, so the RMS matches a/sqrt(2) closely.
  double sum_sq = 0.0;
  for (double s : audio.samples) sum_sq += s * s;
  const double rms = std::sqrt(sum_sq / static_cast<double>(audio.samples.size()));
  CHECK(rms == doctest::Approx(0.8 / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("synth_sine rejects unusable frequencies") {
  CHECK_THROWS_AS(synth_sine(23000.0, 0.1, 44100), AliasedFrequency);
  CHECK_THROWS_AS(synth_sine(22050.0, 0.1, 44100), AliasedFrequency);
  CHECK_THROWS_AS(synth_sine(0.0, 0.1, 44100), Error);
}

TEST_CASE("synth_click_train places impulses at rounded period multiples") {
  const AudioBuffer clicks = synth_click_train(0.5, 2.0, 44100);
  REQUIRE(clicks.samples.size() == 88200);

  std::vector<std::size_t> hits;
  for (std::size_t n = 0; n < clicks.samples.size(); ++n) {
    if (clicks.samples[n] != 0.0) hits.push_back(n);
  }
  CHECK(hits == std::vector<std::size_t>{0, 22050, 44100, 66150});
  for (std::size_t n : hits) CHECK(clicks.samples[n] == 1.0);
}

TEST_CASE("synth_click_train shorter than one period holds a single impulse") {
  const AudioBuffer clicks = synth_click_train(1.0, 0.25, 8000);
  int count = 0;
  for (double s : clicks.samples) count += s != 0.0;
  CHECK(count == 1);
  CHECK(clicks.samples[0] == 1.0);
}
