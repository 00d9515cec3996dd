#ifndef LDASVM_SVM_HPP
#define LDASVM_SVM_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "ldasvm/dataset.hpp"
#include "ldasvm/kernel.hpp"
#include "ldasvm/smo.hpp"

namespace ldasvm {

/// Trained two-class machine. Only points with nonzero dual weight are kept.
struct BinarySvm {
  Eigen::MatrixXd support_vectors;  // s x d
  Eigen::VectorXd alpha_y;          // a_i y_i, 0 < |a_i| <= C
  double bias = 0.0;                // f(x) = sum alpha_y_i K(sv_i, x) + bias
  KernelSpec kernel;

  template <class V>
  double decision(const Eigen::MatrixBase<V>& x) const {
    double f = bias;
    for (Eigen::Index s = 0; s < support_vectors.rows(); ++s) {
      f += alpha_y(s) * kernel_eval(kernel, support_vectors.row(s), x);
    }
    return f;
  }
};

/// Decision value > 0 votes for `first_label`.
struct PairMachine {
  int first_label = 0;
  int second_label = 0;
  BinarySvm machine;
};

/// One-vs-one ensemble; machines are ordered (1,2), (1,3), ..., (C-1,C)
/// over the sorted label table.
struct SvmModel {
  KernelSpec kernel;
  double cost_c = 10.0;
  Eigen::Index dim = 0;
  std::vector<int> labels;
  std::vector<PairMachine> pairwise;

  int nr_class() const { return static_cast<int>(labels.size()); }
};

struct Prediction {
  int label = 0;
  int votes = 0;
};

BinarySvm train_binary(const Eigen::MatrixXd& pos, const Eigen::MatrixXd& neg, double cost_c,
                       const KernelSpec& kernel, const SmoOptions& options = {});

SvmModel train_multiclass(const LabeledDataset& ds, double cost_c, const KernelSpec& kernel,
                          const SmoOptions& options = {});

std::vector<double> decision_values(const SvmModel& model, const Eigen::VectorXd& x);

/// Majority vote over the pairwise machines; ties go to the smallest label.
Prediction predict(const SvmModel& model, const Eigen::VectorXd& x);

std::vector<int> predict_rows(const SvmModel& model, const Eigen::MatrixXd& rows);

struct CvResult {
  double accuracy_percent = 0.0;
  int correct = 0;
  int total = 0;
  std::vector<int> fold_of;       // fold index of every sample
  std::vector<int> predictions;   // held-out prediction of every sample
  std::vector<int> starved_labels;  // classes with too few members to appear in every training fold
};

/// Stratified k-fold cross-validation of the one-vs-one SVM on raw features.
CvResult cross_validate(const LabeledDataset& ds, int folds, double cost_c,
                        const KernelSpec& kernel, std::uint64_t seed,
                        const SmoOptions& options = {});

}  // namespace ldasvm

#endif  // LDASVM_SVM_HPP
