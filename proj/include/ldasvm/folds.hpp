#ifndef LDASVM_FOLDS_HPP
#define LDASVM_FOLDS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ldasvm/dataset.hpp"

namespace ldasvm {

struct FoldPlan {
  int folds = 0;
  std::vector<int> fold_of;         // per sample, in [0, folds)
  std::vector<int> starved_labels;  // labels whose members all land in one fold
};

/// Seeded stratified assignment: samples are shuffled (Fisher-Yates over a
/// 64-bit LCG), grouped by label in ascending label order, and dealt to
/// folds round-robin across the concatenated groups. Requires 2 <= folds <= n.
FoldPlan stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed);

/// Trains on `train` and returns one predicted label per row of `test`.
using FoldTrainer = std::function<std::vector<int>(const LabeledDataset& train,
                                                   const Eigen::MatrixXd& test)>;

/// Runs every fold of `plan`, each held-out sample predicted exactly once by
/// a model that never saw it. Returns the per-sample predictions.
std::vector<int> run_folds(const LabeledDataset& ds, const FoldPlan& plan,
                           const FoldTrainer& trainer);

}  // namespace ldasvm

#endif  // LDASVM_FOLDS_HPP
