#include "ldasvm/pipeline.hpp"

#include <algorithm>
#include <string>

#include "ldasvm/error.hpp"
#include "ldasvm/folds.hpp"

namespace ldasvm {

namespace {

LdaModel fit_projection(const LabeledDataset& ds, const PipelineOptions& options, bool clamp_dim) {
  const int max_rank = std::min<int>(ds.num_present_classes() - 1, static_cast<int>(ds.dim()));
  int dim = options.lda_dim > 0 ? options.lda_dim : max_rank;
  if (clamp_dim) dim = std::min(dim, max_rank);
  return options.ridge ? fit_lda(ds, dim, *options.ridge) : fit_lda(ds, dim);
}

LabeledDataset projected(const LdaModel& lda, const LabeledDataset& ds) {
  return {project_rows(lda, ds.vectors), ds.labels};
}

}  // namespace

void PipelineModel::validate() const {
  if (format_version != kModelFormatVersion) {
    throw Error(Errc::ModelVersionMismatch, "model format version " +
                                                std::to_string(format_version) + ", expected " +
                                                std::to_string(kModelFormatVersion));
  }
  frontend.validate();
  const Eigen::Index mfcc_dim = frontend.feature_dim();
  if (lda) {
    if (lda->input_dim() != mfcc_dim) {
      throw Error(Errc::DimensionMismatch, "LDA expects " + std::to_string(lda->input_dim()) +
                                               "-dim input, front end yields " +
                                               std::to_string(mfcc_dim));
    }
    if (svm.dim != lda->output_dim()) {
      throw Error(Errc::DimensionMismatch, "SVM expects " + std::to_string(svm.dim) +
                                               "-dim input, LDA yields " +
                                               std::to_string(lda->output_dim()));
    }
  } else if (svm.dim != mfcc_dim) {
    throw Error(Errc::DimensionMismatch, "SVM expects " + std::to_string(svm.dim) +
                                             "-dim input, front end yields " +
                                             std::to_string(mfcc_dim));
  }
  if (static_cast<int>(class_names.size()) != svm.nr_class()) {
    throw Error(Errc::DimensionMismatch, std::to_string(class_names.size()) +
                                             " class names for " +
                                             std::to_string(svm.nr_class()) + " SVM classes");
  }
}

FeatureSet extract_corpus(const CorpusIndex& index, const FrontendConfig& frontend) {
  const MfccFrontend fe(frontend);
  FeatureSet fs;
  fs.class_names = index.class_names;
  fs.data.vectors.resize(static_cast<Eigen::Index>(index.entries.size()), frontend.feature_dim());
  for (std::size_t i = 0; i < index.entries.size(); ++i) {
    const auto& e = index.entries[i];
    try {
      fs.data.vectors.row(static_cast<Eigen::Index>(i)) = fe.extract(load_wav(e.file)).transpose();
    } catch (const Error& err) {
      throw Error(err.code(), e.file.string() + ": " + err.message());
    }
    fs.data.labels.push_back(e.label);
    fs.files.push_back(e.file);
  }
  return fs;
}

PipelineModel train_pipeline(const LabeledDataset& features,
                             const std::vector<std::string>& class_names,
                             const PipelineOptions& options) {
  features.validate(2);
  if (static_cast<int>(class_names.size()) != features.num_present_classes() ||
      features.max_label() != static_cast<int>(class_names.size())) {
    throw Error(Errc::InvalidDataset, "every class 1.." + std::to_string(class_names.size()) +
                                          " must have training vectors");
  }
  PipelineModel model;
  model.frontend = options.frontend;
  model.class_names = class_names;
  if (options.use_lda) {
    model.lda = fit_projection(features, options, false);
    model.svm = train_multiclass(projected(*model.lda, features), options.cost_c, options.kernel,
                                 options.smo);
  } else {
    model.svm = train_multiclass(features, options.cost_c, options.kernel, options.smo);
  }
  model.validate();
  return model;
}

Eigen::VectorXd to_svm_space(const PipelineModel& model, const Eigen::VectorXd& mfcc) {
  return model.lda ? project(*model.lda, mfcc) : mfcc;
}

Prediction predict_features(const PipelineModel& model, const Eigen::VectorXd& mfcc) {
  return predict(model.svm, to_svm_space(model, mfcc));
}

Prediction predict_clip(const PipelineModel& model, const AudioClip& clip) {
  return predict_features(model, extract_features(clip, model.frontend));
}

std::string_view protocol_name(CvProtocol protocol) {
  switch (protocol) {
    case CvProtocol::Raw: return "raw MFCC";
    case CvProtocol::LdaPerFold: return "LDA refit per fold";
    case CvProtocol::LdaPreProjected: return "LDA fit on all data before CV";
  }
  return "unknown";
}

CvResult crossval_pipeline(const LabeledDataset& features, const PipelineOptions& options,
                           CvProtocol protocol, int folds, std::uint64_t seed,
                           const LdaFitObserver& observer) {
  features.validate(2);
  const FoldPlan plan = stratified_folds(features.labels, folds, seed);

  LabeledDataset cv_data = features;
  if (protocol == CvProtocol::LdaPreProjected) {
    if (observer) observer(features);
    cv_data = projected(fit_projection(features, options, false), features);
  }

  FoldTrainer trainer;
  if (protocol == CvProtocol::LdaPerFold) {
    trainer = [&](const LabeledDataset& train, const Eigen::MatrixXd& test) {
      if (observer) observer(train);
      const LdaModel lda = fit_projection(train, options, true);
      const SvmModel svm =
          train_multiclass(projected(lda, train), options.cost_c, options.kernel, options.smo);
      return predict_rows(svm, project_rows(lda, test));
    };
  } else {
    trainer = [&](const LabeledDataset& train, const Eigen::MatrixXd& test) {
      return predict_rows(train_multiclass(train, options.cost_c, options.kernel, options.smo), test);
    };
  }

  CvResult r;
  r.fold_of = plan.fold_of;
  r.starved_labels = plan.starved_labels;
  r.predictions = run_folds(cv_data, plan, trainer);
  r.total = static_cast<int>(features.labels.size());
  for (std::size_t i = 0; i < features.labels.size(); ++i) {
    r.correct += r.predictions[i] == features.labels[i];
  }
  r.accuracy_percent = 100.0 * r.correct / r.total;
  return r;
}

}  // namespace ldasvm
