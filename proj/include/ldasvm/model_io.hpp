#ifndef LDASVM_MODEL_IO_HPP
#define LDASVM_MODEL_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "ldasvm/pipeline.hpp"

namespace ldasvm {

inline constexpr std::string_view kModelMagic = "LDASVM-SPEECH";

/// Line-oriented text form. Reals are written with 17 significant digits so
/// parse(serialize(m)) reproduces every double exactly. Biases are stored
/// as rho = -b.
///
///   LDASVM-SPEECH v1
///   frontend
///   frame_len_n=256            (one key=value line per FrontendConfig field)
///   classes <C>
///   <label> <name>             (C lines)
///   lda none | lda <d> <r> <C>
///   eigenvalues <r reals>
///   global_mean <d reals>
///   class_mean <label> <d reals>   (C lines)
///   basis <r reals>            (d lines, row-major)
///   svm
///   kernel <linear|rbf|polynomial>
///   gamma/degree/coef0/cost/dim/nr_class lines
///   labels <C ints>
///   pair <first> <second>      (C(C-1)/2 sections, each followed by)
///   sv <s>
///   rho <real>
///   alpha_y <s reals>
///   vector <dim reals>         (s lines)
///   end
std::string serialize_model(const PipelineModel& model);

/// Throws Errc::BadMagic, Errc::UnsupportedVersion, Errc::TruncatedFile or
/// Errc::MalformedModel; messages carry the 1-based line number.
PipelineModel parse_model(std::string_view text);

/// Writes to a sibling temporary and renames it into place, so a failed
/// write never leaves a partial model behind.
void save_model(const PipelineModel& model, const std::filesystem::path& path);
PipelineModel load_model(const std::filesystem::path& path);

}  // namespace ldasvm

#endif  // LDASVM_MODEL_IO_HPP
