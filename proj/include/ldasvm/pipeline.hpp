#ifndef LDASVM_PIPELINE_HPP
#define LDASVM_PIPELINE_HPP

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldasvm/audio_io.hpp"
#include "ldasvm/dataset.hpp"
#include "ldasvm/lda.hpp"
#include "ldasvm/mfcc.hpp"
#include "ldasvm/svm.hpp"

namespace ldasvm {

inline constexpr int kModelFormatVersion = 1;

/// MFCC front end, optional LDA projection and one-vs-one SVM, persisted as
/// one artifact.
struct PipelineModel {
  FrontendConfig frontend;
  std::optional<LdaModel> lda;
  SvmModel svm;
  std::vector<std::string> class_names;  // class_names[label - 1]
  int format_version = kModelFormatVersion;

  /// Throws Errc::DimensionMismatch when the stages do not chain, and
  /// Errc::ModelVersionMismatch for a foreign format version.
  void validate() const;
};

struct PipelineOptions {
  FrontendConfig frontend;
  KernelSpec kernel;  // rbf, gamma 2
  double cost_c = 10.0;
  bool use_lda = true;
  int lda_dim = 0;  // 0: C - 1
  std::optional<double> ridge;  // unset: 1e-6 trace(S_W) / d
  SmoOptions smo;
};

/// MFCC features of every corpus file, in index order.
struct FeatureSet {
  LabeledDataset data;
  std::vector<std::string> class_names;
  std::vector<std::filesystem::path> files;
};

FeatureSet extract_corpus(const CorpusIndex& index, const FrontendConfig& frontend);

PipelineModel train_pipeline(const LabeledDataset& features,
                             const std::vector<std::string>& class_names,
                             const PipelineOptions& options);

/// Maps an MFCC vector into the SVM input space (LDA-projected if present).
Eigen::VectorXd to_svm_space(const PipelineModel& model, const Eigen::VectorXd& mfcc);
Prediction predict_features(const PipelineModel& model, const Eigen::VectorXd& mfcc);
Prediction predict_clip(const PipelineModel& model, const AudioClip& clip);

enum class CvProtocol {
  Raw,             // SVM on MFCC vectors
  LdaPerFold,      // LDA refit on each training fold only
  LdaPreProjected  // LDA fit once on all data, then CV on the projections
};

std::string_view protocol_name(CvProtocol protocol);

/// Called with the exact dataset every LDA fit sees.
using LdaFitObserver = std::function<void(const LabeledDataset& lda_training_set)>;

CvResult crossval_pipeline(const LabeledDataset& features, const PipelineOptions& options,
                           CvProtocol protocol, int folds, std::uint64_t seed,
                           const LdaFitObserver& observer = {});

}  // namespace ldasvm

#endif  // LDASVM_PIPELINE_HPP
