#include "ldasvm/svm.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ldasvm/error.hpp"
#include "ldasvm/folds.hpp"

namespace ldasvm {

BinarySvm train_binary(const Eigen::MatrixXd& pos, const Eigen::MatrixXd& neg, double cost_c,
                       const KernelSpec& kernel, const SmoOptions& options) {
  if (pos.rows() == 0 || neg.rows() == 0) {
    throw Error(Errc::InvalidArgument, "both classes need at least one training vector");
  }
  if (pos.cols() != neg.cols()) {
    throw Error(Errc::DimensionMismatch, "positive and negative vectors differ in dimension");
  }

  const Eigen::Index n = pos.rows() + neg.rows();
  Eigen::MatrixXd x(n, pos.cols());
  x << pos, neg;
  std::vector<int> y(static_cast<std::size_t>(n), -1);
  std::fill_n(y.begin(), pos.rows(), 1);

  const DualSolution sol = solve_dual(x, y, cost_c, kernel, options);

  BinarySvm out;
  out.kernel = kernel;
  out.bias = sol.bias;
  const auto s = static_cast<Eigen::Index>((sol.alpha.array() > 0.0).count());
  out.support_vectors.resize(s, x.cols());
  out.alpha_y.resize(s);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (sol.alpha(i) <= 0.0) continue;
    out.support_vectors.row(k) = x.row(i);
    out.alpha_y(k) = sol.alpha(i) * y[static_cast<std::size_t>(i)];
    ++k;
  }
  return out;
}

SvmModel train_multiclass(const LabeledDataset& ds, double cost_c, const KernelSpec& kernel,
                          const SmoOptions& options) {
  ds.validate(2);
  kernel.validate();

  SvmModel model;
  model.kernel = kernel;
  model.cost_c = cost_c;
  model.dim = ds.dim();
  const std::set<int> distinct(ds.labels.begin(), ds.labels.end());
  model.labels.assign(distinct.begin(), distinct.end());

  std::map<int, std::vector<Eigen::Index>> rows_of;
  for (std::size_t i = 0; i < ds.labels.size(); ++i) rows_of[ds.labels[i]].push_back(static_cast<Eigen::Index>(i));

  const auto gather = [&](int label) {
    const auto& rows = rows_of[label];
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), ds.dim());
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = ds.vectors.row(rows[r]);
    return m;
  };

  for (std::size_t a = 0; a < model.labels.size(); ++a) {
    for (std::size_t b = a + 1; b < model.labels.size(); ++b) {
      PairMachine pm;
      pm.first_label = model.labels[a];
      pm.second_label = model.labels[b];
      try {
        pm.machine = train_binary(gather(pm.first_label), gather(pm.second_label), cost_c, kernel,
                                  options);
      } catch (const Error& e) {
        throw Error(e.code(), "pair (" + std::to_string(pm.first_label) + "," +
                                  std::to_string(pm.second_label) + "): " + e.message());
      }
      model.pairwise.push_back(std::move(pm));
    }
  }
  return model;
}

std::vector<double> decision_values(const SvmModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.dim) {
    throw Error(Errc::DimensionMismatch, "input has dimension " + std::to_string(x.size()) +
                                             ", model expects " + std::to_string(model.dim));
  }
  std::vector<double> out;
  out.reserve(model.pairwise.size());
  for (const auto& pm : model.pairwise) out.push_back(pm.machine.decision(x));
  return out;
}

Prediction predict(const SvmModel& model, const Eigen::VectorXd& x) {
  const auto values = decision_values(model, x);
  std::map<int, int> votes;
  for (int label : model.labels) votes[label] = 0;
  for (std::size_t p = 0; p < values.size(); ++p) {
    const auto& pm = model.pairwise[p];
    ++votes[values[p] > 0.0 ? pm.first_label : pm.second_label];
  }
  Prediction best;
  best.votes = -1;
  for (const auto& [label, count] : votes) {  // ascending label order
    if (count > best.votes) best = {label, count};
  }
  return best;
}

std::vector<int> predict_rows(const SvmModel& model, const Eigen::MatrixXd& rows) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(rows.rows()));
  for (Eigen::Index i = 0; i < rows.rows(); ++i) out.push_back(predict(model, rows.row(i).transpose()).label);
  return out;
}

CvResult cross_validate(const LabeledDataset& ds, int folds, double cost_c,
                        const KernelSpec& kernel, std::uint64_t seed,
                        const SmoOptions& options) {
  ds.validate(2);
  const FoldPlan plan = stratified_folds(ds.labels, folds, seed);
  CvResult r;
  r.fold_of = plan.fold_of;
  r.starved_labels = plan.starved_labels;
  r.predictions = run_folds(ds, plan, [&](const LabeledDataset& train, const Eigen::MatrixXd& test) {
    return predict_rows(train_multiclass(train, cost_c, kernel, options), test);
  });
  r.total = static_cast<int>(ds.labels.size());
  for (std::size_t i = 0; i < ds.labels.size(); ++i) r.correct += r.predictions[i] == ds.labels[i];
  r.accuracy_percent = 100.0 * r.correct / r.total;
  return r;
}

}  // namespace ldasvm
