#include "ldasvm/folds.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "ldasvm/error.hpp"
#include "ldasvm/rng.hpp"

namespace ldasvm {

FoldPlan stratified_folds(std::span<const int> labels, int folds, std::uint64_t seed) {
  const auto n = static_cast<int>(labels.size());
  if (folds < 2 || folds > n) {
    throw Error(Errc::InvalidArgument, "fold count " + std::to_string(folds) +
                                           " outside [2, " + std::to_string(n) + "]");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Lcg64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return labels[static_cast<std::size_t>(a)] < labels[static_cast<std::size_t>(b)];
  });

  FoldPlan plan;
  plan.folds = folds;
  plan.fold_of.assign(static_cast<std::size_t>(n), 0);
  for (int pos = 0; pos < n; ++pos) plan.fold_of[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = pos % folds;

  std::map<int, std::vector<int>> folds_per_label;
  for (int i = 0; i < n; ++i) {
    auto& v = folds_per_label[labels[static_cast<std::size_t>(i)]];
    const int f = plan.fold_of[static_cast<std::size_t>(i)];
    if (std::find(v.begin(), v.end(), f) == v.end()) v.push_back(f);
  }
  for (const auto& [label, used] : folds_per_label) {
    if (used.size() < 2) plan.starved_labels.push_back(label);
  }
  return plan;
}

std::vector<int> run_folds(const LabeledDataset& ds, const FoldPlan& plan,
                           const FoldTrainer& trainer) {
  if (plan.fold_of.size() != ds.labels.size()) {
    throw Error(Errc::DimensionMismatch, "fold plan does not match dataset size");
  }
  std::vector<int> predictions(ds.labels.size(), 0);
  for (int f = 0; f < plan.folds; ++f) {
    std::vector<Eigen::Index> train_rows;
    std::vector<Eigen::Index> test_rows;
    for (std::size_t i = 0; i < plan.fold_of.size(); ++i) {
      (plan.fold_of[i] == f ? test_rows : train_rows).push_back(static_cast<Eigen::Index>(i));
    }
    if (test_rows.empty()) continue;
    const LabeledDataset train = ds.subset(train_rows);
    const LabeledDataset test = ds.subset(test_rows);

    std::vector<int> fold_pred;
    if (train.num_present_classes() < 2) {
      // Only one class left to learn from; it wins by default.
      fold_pred.assign(test_rows.size(), train.labels.empty() ? 0 : train.labels.front());
    } else {
      fold_pred = trainer(train, test.vectors);
    }
    if (fold_pred.size() != test_rows.size()) {
      throw Error(Errc::DimensionMismatch, "fold trainer returned the wrong prediction count");
    }
    for (std::size_t k = 0; k < test_rows.size(); ++k) {
      predictions[static_cast<std::size_t>(test_rows[k])] = fold_pred[k];
    }
  }
  return predictions;
}

}  // namespace ldasvm
