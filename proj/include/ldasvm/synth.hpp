#ifndef LDASVM_SYNTH_HPP
#define LDASVM_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ldasvm {

struct SynthOptions {
  int train_per_class = 4;
  int test_per_class = 2;
  int sample_rate_hz = 10000;
  double duration_s = 1.0;
};

/// Class names of the synthetic corpus, in label order.
const std::vector<std::string>& synth_class_names();

/// One clip of class `class_index` (0-based): a harmonic source shaped by
/// the class's formant envelope, multiplied by a random smooth spectral
/// tilt/curvature, plus a little white noise.
std::vector<double> synth_clip(int class_index, std::uint64_t seed, const SynthOptions& options);

/// Writes `<root>/train/<class>/clip_NN.wav` and `<root>/test/<class>/clip_NN.wav`.
/// Output depends only on (seed, options).
void write_synthetic_corpus(const std::filesystem::path& root, std::uint64_t seed,
                            const SynthOptions& options = {});

}  // namespace ldasvm

#endif  // LDASVM_SYNTH_HPP
