#include "ldasvm/error.hpp"

namespace ldasvm {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::CorruptHeader: return "CorruptHeader";
    case Errc::EmptyAudio: return "EmptyAudio";
    case Errc::NoClasses: return "NoClasses";
    case Errc::EmptyClass: return "EmptyClass";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InsufficientSamples: return "InsufficientSamples";
    case Errc::BadLength: return "BadLength";
    case Errc::TooManyFilters: return "TooManyFilters";
    case Errc::SampleRateMismatch: return "SampleRateMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidDataset: return "InvalidDataset";
    case Errc::SingularScatter: return "SingularScatter";
    case Errc::BadTargetDim: return "BadTargetDim";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DegenerateData: return "DegenerateData";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::MalformedModel: return "MalformedModel";
    case Errc::ModelVersionMismatch: return "ModelVersionMismatch";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), message_(what) {}

}  // namespace ldasvm
