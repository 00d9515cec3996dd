#ifndef LDASVM_ERROR_HPP
#define LDASVM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace ldasvm {

enum class Errc {
  // audio_io
  UnsupportedFormat,
  CorruptHeader,
  EmptyAudio,
  NoClasses,
  EmptyClass,
  // mfcc
  InvalidConfig,
  InsufficientSamples,
  BadLength,
  TooManyFilters,
  SampleRateMismatch,
  // shared
  DimensionMismatch,
  InvalidArgument,
  // lda
  InvalidDataset,
  SingularScatter,
  BadTargetDim,
  // svm
  NoConvergence,
  DegenerateData,
  TooFewSamples,
  // model file / pipeline
  BadMagic,
  UnsupportedVersion,
  TruncatedFile,
  MalformedModel,
  ModelVersionMismatch,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library surfaces as this exception; `code()` tells
/// the caller which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }
  /// The message without the leading error-code name.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace ldasvm

#endif  // LDASVM_ERROR_HPP
