#include "ldasvm/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ldasvm/audio_io.hpp"
#include "ldasvm/error.hpp"
#include "ldasvm/mfcc.hpp"
#include "ldasvm/rng.hpp"

namespace ldasvm {

namespace {

struct Formants {
  std::array<double, 3> hz;
};

// Rough vowel-like formant targets, one set per word.
constexpr std::array<Formants, 5> kFormants = {{
    {{500.0, 900.0, 2400.0}},   // go
    {{450.0, 1800.0, 2600.0}},  // left
    {{650.0, 1200.0, 1900.0}},  // right
    {{600.0, 1000.0, 2900.0}},  // stop
    {{700.0, 1500.0, 2300.0}},  // up
}};

constexpr double kBandwidthHz = 120.0;
constexpr double kTiltSpread = 2.5;      // nepers, std of the per-clip tilt
constexpr double kCurveSpread = 2.5;     // nepers, std of the per-clip curvature
constexpr double kFormantJitter = 0.02;  // relative
constexpr double kNoiseLevel = 1e-4;

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (a + 1) + 0xbf58476d1ce4e5b9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

const std::vector<std::string>& synth_class_names() {
  static const std::vector<std::string> names = {"go", "left", "right", "stop", "up"};
  return names;
}

std::vector<double> synth_clip(int class_index, std::uint64_t seed, const SynthOptions& options) {
  if (class_index < 0 || class_index >= static_cast<int>(kFormants.size())) {
    throw Error(Errc::InvalidArgument, "synthetic class index out of range");
  }
  Lcg64 rng(seed);
  const double fs = options.sample_rate_hz;
  const auto n = static_cast<std::size_t>(std::lround(options.duration_s * fs));
  const double nyquist_mel = hz_to_mel(fs / 2.0);

  const double f0 = rng.uniform(95.0, 125.0);
  const double tilt = kTiltSpread * rng.normal();
  const double curve = kCurveSpread * rng.normal();
  std::array<double, 3> formants = kFormants[static_cast<std::size_t>(class_index)].hz;
  for (double& f : formants) f *= 1.0 + kFormantJitter * (2.0 * rng.uniform() - 1.0);

  std::vector<double> out(n, 0.0);
  for (int h = 1; h * f0 < 0.48 * fs; ++h) {
    const double f = h * f0;
    double env = 0.02;
    for (double fc : formants) {
      const double z = (f - fc) / kBandwidthHz;
      env += 1.0 / (1.0 + z * z);
    }
    const double u = hz_to_mel(f) / nyquist_mel - 0.5;
    const double amp = env * std::exp(tilt * u + curve * (u * u - 1.0 / 12.0));
    const double phase = 2.0 * std::numbers::pi * rng.uniform();
    const double w = 2.0 * std::numbers::pi * f / fs;
    for (std::size_t t = 0; t < n; ++t) out[t] += amp * std::sin(w * static_cast<double>(t) + phase);
  }

  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? 0.8 / peak : 1.0;
  for (double& v : out) v = v * gain + kNoiseLevel * rng.normal();
  return out;
}

void write_synthetic_corpus(const std::filesystem::path& root, std::uint64_t seed,
                            const SynthOptions& options) {
  namespace fs = std::filesystem;
  const auto& names = synth_class_names();
  const std::array<std::pair<const char*, int>, 2> splits = {
      {{"train", options.train_per_class}, {"test", options.test_per_class}}};
  std::uint64_t split_id = 0;
  for (const auto& [split, count] : splits) {
    for (std::size_t c = 0; c < names.size(); ++c) {
      const fs::path dir = root / split / names[c];
      fs::create_directories(dir);
      for (int i = 0; i < count; ++i) {
        char file[32];
        std::snprintf(file, sizeof file, "clip_%02d.wav", i);
        const auto clip = synth_clip(static_cast<int>(c),
                                     mix(seed, split_id * 1000 + c, static_cast<std::uint64_t>(i)),
                                     options);
        write_wav(dir / file, clip, options.sample_rate_hz);
      }
    }
    ++split_id;
  }
}

}  // namespace ldasvm
