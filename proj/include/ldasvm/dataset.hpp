#ifndef LDASVM_DATASET_HPP
#define LDASVM_DATASET_HPP

#include <Eigen/Core>
#include <vector>

namespace ldasvm {

/// n x d feature rows with 1-based class labels.
struct LabeledDataset {
  Eigen::MatrixXd vectors;
  std::vector<int> labels;

  Eigen::Index size() const { return vectors.rows(); }
  Eigen::Index dim() const { return vectors.cols(); }

  /// Largest label, i.e. C for a dataset labeled 1..C.
  int max_label() const;
  /// Number of distinct labels actually present.
  int num_present_classes() const;

  /// Row selection, preserving order.
  LabeledDataset subset(const std::vector<Eigen::Index>& rows) const;

  /// Throws Errc::InvalidDataset unless rows and labels agree, labels are
  /// positive and at least `min_classes` distinct labels are present.
  void validate(int min_classes = 2) const;
};

}  // namespace ldasvm

#endif  // LDASVM_DATASET_HPP
