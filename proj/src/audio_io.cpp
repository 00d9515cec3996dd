#include "ldasvm/audio_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ldasvm/error.hpp"

namespace ldasvm {
namespace fs = std::filesystem;

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(static_cast<unsigned char>(v & 0xff));
  out.push_back(static_cast<unsigned char>(v >> 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

void put_tag(std::vector<unsigned char>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool has_wav_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".wav";
}

}  // namespace

AudioClip decode_wav(std::span<const unsigned char> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(Errc::CorruptHeader, "missing RIFF/WAVE signature");
  }

  bool have_fmt = false;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::span<const unsigned char> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const unsigned char* hdr = bytes.data() + pos;
    const std::uint32_t size = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    // Truncated trailing data chunks are common in the wild; keep what is there.
    const std::size_t avail = std::min<std::size_t>(size, bytes.size() - body);

    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (avail < 16) throw Error(Errc::CorruptHeader, "fmt chunk shorter than 16 bytes");
      const unsigned char* f = bytes.data() + body;
      const std::uint16_t format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      const std::uint16_t bits = read_u16(f + 14);
      if (format != kFormatPcm) {
        throw Error(Errc::UnsupportedFormat,
                    "audio format code " + std::to_string(format) + " (only PCM = 1)");
      }
      if (bits != 16) {
        throw Error(Errc::UnsupportedFormat, std::to_string(bits) + "-bit samples (only 16-bit)");
      }
      if (channels == 0 || rate == 0) {
        throw Error(Errc::CorruptHeader, "zero channels or sample rate");
      }
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      if (!have_fmt) throw Error(Errc::CorruptHeader, "data chunk before fmt chunk");
      data = bytes.subspan(body, avail);
      have_data = true;
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw Error(Errc::CorruptHeader, "no fmt chunk");
  if (!have_data) throw Error(Errc::CorruptHeader, "no data chunk");

  const std::size_t frame_bytes = 2u * channels;
  const std::size_t frames = data.size() / frame_bytes;
  if (frames == 0) throw Error(Errc::EmptyAudio, "data chunk holds no complete frames");

  AudioClip clip;
  clip.sample_rate_hz = static_cast<int>(rate);
  clip.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const unsigned char* p = data.data() + i * frame_bytes;
    double acc = 0.0;
    for (std::uint16_t c = 0; c < channels; ++c) {
      acc += static_cast<std::int16_t>(read_u16(p + 2 * c)) / 32768.0;
    }
    clip.samples[i] = acc / channels;
  }
  return clip;
}

AudioClip load_wav(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.message());
  }
}

void write_wav(const fs::path& path, std::span<const double> samples, int sample_rate_hz) {
  if (sample_rate_hz <= 0) throw Error(Errc::InvalidArgument, "sample rate must be positive");
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);

  std::vector<unsigned char> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz));
  put_u32(out, static_cast<std::uint32_t>(sample_rate_hz) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double s : samples) {
    const double q = std::clamp(std::round(s * 32768.0), -32768.0, 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::Io, "cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(Errc::Io, "short write to " + path.string());
}

CorpusIndex scan_corpus(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(Errc::Io, root.string() + " is not a directory");

  std::vector<fs::path> class_dirs;
  for (const auto& e : fs::directory_iterator(root)) {
    if (e.is_directory()) class_dirs.push_back(e.path());
  }
  if (class_dirs.empty()) throw Error(Errc::NoClasses, "no class subdirectories in " + root.string());
  std::sort(class_dirs.begin(), class_dirs.end(),
            [](const fs::path& a, const fs::path& b) {
              return a.filename().string() < b.filename().string();
            });

  CorpusIndex index;
  for (std::size_t c = 0; c < class_dirs.size(); ++c) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(class_dirs[c])) {
      if (e.is_regular_file() && has_wav_extension(e.path())) files.push_back(e.path());
    }
    const std::string name = class_dirs[c].filename().string();
    if (files.empty()) throw Error(Errc::EmptyClass, "class '" + name + "' has no .wav files");
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
      return a.filename().string() < b.filename().string();
    });
    index.class_names.push_back(name);
    for (auto& f : files) {
      index.entries.push_back({std::move(f), static_cast<int>(c) + 1, name});
    }
  }
  return index;
}

}  // namespace ldasvm
