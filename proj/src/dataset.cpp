#include "ldasvm/dataset.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ldasvm/error.hpp"

namespace ldasvm {

int LabeledDataset::max_label() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

int LabeledDataset::num_present_classes() const {
  return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

LabeledDataset LabeledDataset::subset(const std::vector<Eigen::Index>& rows) const {
  LabeledDataset out;
  out.vectors.resize(static_cast<Eigen::Index>(rows.size()), vectors.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.vectors.row(static_cast<Eigen::Index>(i)) = vectors.row(rows[i]);
    out.labels.push_back(labels[static_cast<std::size_t>(rows[i])]);
  }
  return out;
}

void LabeledDataset::validate(int min_classes) const {
  if (static_cast<std::size_t>(vectors.rows()) != labels.size()) {
    throw Error(Errc::InvalidDataset, std::to_string(vectors.rows()) + " rows but " +
                                          std::to_string(labels.size()) + " labels");
  }
  if (vectors.cols() == 0) throw Error(Errc::InvalidDataset, "zero-dimensional vectors");
  if (std::any_of(labels.begin(), labels.end(), [](int l) { return l < 1; })) {
    throw Error(Errc::InvalidDataset, "labels must be positive");
  }
  if (num_present_classes() < min_classes) {
    throw Error(Errc::InvalidDataset, "need at least " + std::to_string(min_classes) +
                                          " distinct classes, found " +
                                          std::to_string(num_present_classes()));
  }
  if (!vectors.allFinite()) throw Error(Errc::InvalidDataset, "non-finite feature values");
}

}  // namespace ldasvm
