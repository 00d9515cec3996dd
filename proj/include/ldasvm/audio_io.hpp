#ifndef LDASVM_AUDIO_IO_HPP
#define LDASVM_AUDIO_IO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace ldasvm {

/// Decoded mono audio. Amplitudes lie in [-1, 1).
struct AudioClip {
  std::vector<double> samples;
  int sample_rate_hz = 10000;
};

struct CorpusEntry {
  std::filesystem::path file;
  int label = 0;  // 1-based
  std::string class_name;
};

/// Labeled file listing of a `<root>/<class>/*.wav` tree.
struct CorpusIndex {
  std::vector<CorpusEntry> entries;
  std::vector<std::string> class_names;  // class_names[label - 1]

  int num_classes() const { return static_cast<int>(class_names.size()); }
};

/// Reads a 16-bit PCM RIFF/WAVE file. Multi-channel input is downmixed by
/// averaging the channels of each frame.
AudioClip load_wav(const std::filesystem::path& path);

/// Parses an in-memory WAV image (the same decoder `load_wav` uses).
AudioClip decode_wav(std::span<const unsigned char> bytes);

/// Writes mono 16-bit PCM. Samples are clamped to the representable range
/// and rounded to the nearest quantization step.
void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               int sample_rate_hz);

/// Classes are sorted lexicographically and numbered from 1, files are
/// sorted within each class. Only `*.wav` files (case-insensitive) count.
CorpusIndex scan_corpus(const std::filesystem::path& root);

}  // namespace ldasvm

#endif  // LDASVM_AUDIO_IO_HPP
