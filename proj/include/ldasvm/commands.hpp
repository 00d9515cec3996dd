#ifndef LDASVM_COMMANDS_HPP
#define LDASVM_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ldasvm/pipeline.hpp"

namespace ldasvm {

/// Flags shared by train / crossval / compare.
struct PipelineFlags {
  double gamma = 2.0;
  double cost = 10.0;
  std::string kernel = "rbf";
  int lda_dim = 0;
  bool no_lda = false;
  std::optional<double> ridge;
  FrontendConfig frontend;

  PipelineOptions options() const;
};

struct CvFlags : PipelineFlags {
  int folds = 10;
  std::uint64_t seed = 1;
  bool paper_protocol = false;
};

struct FilePrediction {
  std::filesystem::path file;
  std::optional<int> truth;
  int predicted = 0;
  int votes = 0;
};

struct RunReport {
  std::vector<FilePrediction> predictions;
  int correct = 0;
  int with_truth = 0;

  std::optional<double> accuracy_percent() const;
};

struct CompareReport {
  CvResult raw;
  CvResult lda;
};

/// `100*c/t` rendered the way the accuracy lines print it (%g).
std::string format_percent(double percent);
std::string accuracy_line(int correct, int total);    // Accuracy = P% (c/t) (classification)
std::string crossval_line(double percent);             // Cross Validation Accuracy = P%

PipelineModel cmd_train(const std::filesystem::path& corpus_root, const PipelineFlags& flags,
                        const std::filesystem::path& out_path, std::ostream& out);

/// Each path is a WAV file (truth unknown) or a `<dir>/<class>/*.wav` tree
/// whose class names are matched against the model's class table.
RunReport cmd_predict(const std::filesystem::path& model_path,
                      const std::vector<std::filesystem::path>& paths, std::ostream& out);

CvResult cmd_crossval(const std::filesystem::path& corpus_root, const CvFlags& flags,
                      std::ostream& out, std::ostream& err);

/// Raw-MFCC and LDA pipelines cross-validated on identical folds.
CompareReport cmd_compare(const std::filesystem::path& corpus_root, const CvFlags& flags,
                          std::ostream& out, std::ostream& err);

void cmd_synth(const std::filesystem::path& root, std::uint64_t seed, std::ostream& out);

/// Command-line entry point; `args` excludes the program name. Returns the
/// process exit code: 0 success, 1 usage error, 2 data or convergence error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ldasvm

#endif  // LDASVM_COMMANDS_HPP
