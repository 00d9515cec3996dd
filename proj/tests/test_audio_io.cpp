#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <random>

#include "ldasvm/audio_io.hpp"
#include "test_util.hpp"

using namespace ldasvm;
using ldasvm::test::TempDir;
using ldasvm::test::thrown_code;

namespace {

// Minimal hand-rolled WAV writer, independent of ldasvm::write_wav.
std::vector<unsigned char> wav_bytes(std::uint16_t format, std::uint16_t channels,
                                     std::uint32_t rate, std::uint16_t bits,
                                     const std::vector<std::int16_t>& pcm) {
  std::vector<unsigned char> b;
  auto u16 = [&](std::uint16_t v) { b.push_back(v & 0xff); b.push_back(v >> 8); };
  auto u32 = [&](std::uint32_t v) { for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xff); };
  auto tag = [&](const char* t) { b.insert(b.end(), t, t + 4); };
  const auto data = static_cast<std::uint32_t>(pcm.size() * 2);
  tag("RIFF"); u32(36 + data); tag("WAVE");
  tag("fmt "); u32(16); u16(format); u16(channels); u32(rate);
  u32(rate * channels * bits / 8); u16(static_cast<std::uint16_t>(channels * bits / 8)); u16(bits);
  tag("data"); u32(data);
  for (auto s : pcm) u16(static_cast<std::uint16_t>(s));
  return b;
}

void write_bytes(const std::filesystem::path& p, const std::vector<unsigned char>& b) {
  std::ofstream f(p, std::ios::binary);
  f.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

}  // namespace

TEST_CASE("one second of 16-bit mono at 10 kHz decodes to 10000 samples") {
  TempDir dir("wav");
  std::vector<std::int16_t> pcm(10000);
  for (std::size_t i = 0; i < pcm.size(); ++i) pcm[i] = static_cast<std::int16_t>((i * 37) % 2000 - 1000);
  write_bytes(dir / "a.wav", wav_bytes(1, 1, 10000, 16, pcm));

  const AudioClip clip = load_wav(dir / "a.wav");
  CHECK(clip.sample_rate_hz == 10000);
  REQUIRE(clip.samples.size() == 10000);
  CHECK(clip.samples[5] == pcm[5] / 32768.0);
}

TEST_CASE("stereo with opposite channels downmixes to silence") {
  std::vector<std::int16_t> pcm;
  for (int i = 0; i < 100; ++i) {
    pcm.push_back(16384);
    pcm.push_back(-16384);
  }
  const AudioClip clip = decode_wav(wav_bytes(1, 2, 8000, 16, pcm));
  CHECK(clip.samples.size() == 100);
  CHECK(clip.sample_rate_hz == 8000);
  for (double s : clip.samples) CHECK(s == 0.0);
}

TEST_CASE("format and header errors") {
  const std::vector<std::int16_t> pcm(10, 0);
  CHECK(thrown_code([&] { decode_wav(wav_bytes(3, 1, 10000, 16, pcm)); }) == Errc::UnsupportedFormat);
  CHECK(thrown_code([&] { decode_wav(wav_bytes(1, 1, 10000, 24, pcm)); }) == Errc::UnsupportedFormat);
  CHECK(thrown_code([&] { decode_wav(wav_bytes(1, 1, 10000, 16, {})); }) == Errc::EmptyAudio);

  auto bad = wav_bytes(1, 1, 10000, 16, pcm);
  bad[0] = 'X';
  CHECK(thrown_code([&] { decode_wav(bad); }) == Errc::CorruptHeader);

  auto no_data = wav_bytes(1, 1, 10000, 16, pcm);
  no_data.resize(36);
  CHECK(thrown_code([&] { decode_wav(no_data); }) == Errc::CorruptHeader);

  const std::vector<unsigned char> tiny = {'R', 'I', 'F', 'F'};
  CHECK(thrown_code([&] { decode_wav(tiny); }) == Errc::CorruptHeader);
}

TEST_CASE("unknown chunks before data are skipped") {
  auto b = wav_bytes(1, 1, 10000, 16, {1000, -1000, 2000});
  // Splice a 3-byte (odd, padded) LIST chunk between fmt and data.
  std::vector<unsigned char> list = {'L', 'I', 'S', 'T', 3, 0, 0, 0, 'a', 'b', 'c', 0};
  b.insert(b.begin() + 36, list.begin(), list.end());
  const AudioClip clip = decode_wav(b);
  REQUIRE(clip.samples.size() == 3);
  CHECK(clip.samples[2] == 2000 / 32768.0);
}

TEST_CASE("write then load reproduces samples within one quantization step") {
  TempDir dir("wav_rt");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0 - 1.0 / 32768.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> s(257 + trial * 13);
    for (double& v : s) v = u(rng);
    write_wav(dir / "rt.wav", s, 10000);
    const AudioClip clip = load_wav(dir / "rt.wav");
    REQUIRE(clip.samples.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(std::abs(clip.samples[i] - s[i]) <= 1.0 / 32768.0);
      CHECK(clip.samples[i] >= -1.0);
      CHECK(clip.samples[i] < 1.0);
    }
  }
}

TEST_CASE("scan_corpus numbers sorted classes from 1") {
  TempDir root("corpus");
  const std::vector<std::string> names = {"up", "stop", "go", "right", "left"};
  for (const auto& n : names) {
    std::filesystem::create_directories(root / n);
    for (int i = 3; i >= 0; --i) write_wav(root / n / ("f" + std::to_string(i) + ".wav"), std::vector<double>(300, 0.1), 10000);
  }
  std::ofstream(root / "README.txt") << "not a class";

  const CorpusIndex idx = scan_corpus(root.path());
  CHECK(idx.class_names == std::vector<std::string>{"go", "left", "right", "stop", "up"});
  CHECK(idx.entries.size() == 20);
  CHECK(idx.entries.front().class_name == "go");
  CHECK(idx.entries.front().label == 1);
  CHECK(idx.entries.front().file.filename() == "f0.wav");
  CHECK(idx.entries.back().label == 5);
  CHECK(idx.entries.back().file.filename() == "f3.wav");

  const CorpusIndex again = scan_corpus(root.path());
  REQUIRE(again.entries.size() == idx.entries.size());
  for (std::size_t i = 0; i < idx.entries.size(); ++i) {
    CHECK(again.entries[i].file == idx.entries[i].file);
    CHECK(again.entries[i].label == idx.entries[i].label);
  }
}

TEST_CASE("scan_corpus errors") {
  TempDir empty("empty");
  CHECK(thrown_code([&] { scan_corpus(empty.path()); }) == Errc::NoClasses);

  TempDir root("txt_only");
  std::filesystem::create_directories(root / "go");
  std::ofstream(root / "go" / "notes.txt") << "x";
  CHECK(thrown_code([&] { scan_corpus(root.path()); }) == Errc::EmptyClass);
}
