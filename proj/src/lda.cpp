#include "ldasvm/lda.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <string>

#include "ldasvm/error.hpp"

namespace ldasvm {

namespace {

// Flip so the largest-magnitude entry is positive; first index wins ties.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0.0) v = -v;
}

}  // namespace

ClassStats class_stats(const LabeledDataset& ds) {
  ds.validate(1);
  const int c = ds.max_label();
  ClassStats s;
  s.global_mean = Eigen::VectorXd::Zero(ds.dim());
  s.class_means = Eigen::MatrixXd::Zero(c, ds.dim());
  s.counts.assign(static_cast<std::size_t>(c), 0);
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    const int row = ds.labels[static_cast<std::size_t>(i)] - 1;
    s.class_means.row(row) += ds.vectors.row(i);
    s.global_mean += ds.vectors.row(i).transpose();
    ++s.counts[static_cast<std::size_t>(row)];
  }
  for (int k = 0; k < c; ++k) {
    if (s.counts[static_cast<std::size_t>(k)] > 0) s.class_means.row(k) /= s.counts[static_cast<std::size_t>(k)];
  }
  s.global_mean /= static_cast<double>(ds.size());
  return s;
}

ScatterMatrices scatter_matrices(const LabeledDataset& ds) {
  const ClassStats s = class_stats(ds);
  const Eigen::Index d = ds.dim();
  ScatterMatrices out;
  out.within = Eigen::MatrixXd::Zero(d, d);
  out.between = Eigen::MatrixXd::Zero(d, d);
  for (Eigen::Index i = 0; i < ds.size(); ++i) {
    const Eigen::VectorXd dev =
        ds.vectors.row(i).transpose() - s.class_means.row(ds.labels[static_cast<std::size_t>(i)] - 1).transpose();
    out.within.noalias() += dev * dev.transpose();
  }
  for (std::size_t k = 0; k < s.counts.size(); ++k) {
    if (s.counts[k] == 0) continue;
    const Eigen::VectorXd dev = s.class_means.row(static_cast<Eigen::Index>(k)).transpose() - s.global_mean;
    out.between.noalias() += s.counts[k] * (dev * dev.transpose());
  }
  // Accumulation order can leave the two halves a few ulps apart.
  out.within = 0.5 * (out.within + out.within.transpose()).eval();
  out.between = 0.5 * (out.between + out.between.transpose()).eval();
  return out;
}

double default_ridge(const Eigen::MatrixXd& within) {
  return 1e-6 * within.trace() / static_cast<double>(within.rows());
}

LdaModel fit_lda(const LabeledDataset& ds, int target_dim) {
  ds.validate(2);
  return fit_lda(ds, target_dim, default_ridge(scatter_matrices(ds).within));
}

LdaModel fit_lda(const LabeledDataset& ds, int target_dim, double ridge) {
  ds.validate(2);
  if (!(ridge >= 0.0)) throw Error(Errc::InvalidArgument, "ridge must be nonnegative");
  const auto d = ds.dim();
  const int max_rank = std::min<int>(ds.num_present_classes() - 1, static_cast<int>(d));
  if (target_dim < 1 || target_dim > max_rank) {
    throw Error(Errc::BadTargetDim, "target_dim " + std::to_string(target_dim) +
                                        " outside [1, " + std::to_string(max_rank) + "]");
  }

  const ScatterMatrices sm = scatter_matrices(ds);
  const Eigen::MatrixXd regularized = sm.within + ridge * Eigen::MatrixXd::Identity(d, d);

  // (S_W + rI)^{-1} S_B is not symmetric, but with S_W + rI = L L^T it is
  // similar to L^{-1} S_B L^{-T}, which is; eigenvectors map back via L^{-T}.
  const Eigen::LLT<Eigen::MatrixXd> llt(regularized);
  if (llt.info() != Eigen::Success || !(llt.rcond() > 1e-14)) {
    throw Error(Errc::SingularScatter,
                "within-class scatter is singular with ridge " + std::to_string(ridge) +
                    "; raise the ridge or supply more samples per class");
  }
  const auto lower = llt.matrixL();
  const Eigen::MatrixXd half = lower.solve(sm.between);
  Eigen::MatrixXd whitened = lower.solve(half.transpose());
  whitened = 0.5 * (whitened + whitened.transpose()).eval();

  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(whitened);
  if (eig.info() != Eigen::Success) {
    throw Error(Errc::SingularScatter, "eigen decomposition did not converge");
  }

  const ClassStats stats = class_stats(ds);
  LdaModel model;
  model.global_mean = stats.global_mean;
  model.class_means = stats.class_means;
  model.eigenvalues.resize(target_dim);
  model.basis.resize(d, target_dim);

  for (int j = 0; j < target_dim; ++j) {
    const Eigen::Index src = d - 1 - j;  // ascending order from the solver
    model.eigenvalues(j) = eig.eigenvalues()(src);
    Eigen::VectorXd v = lower.transpose().solve(eig.eigenvectors().col(src));
    v.normalize();
    model.basis.col(j) = v;
  }

  for (int j = 0; j < target_dim; ++j) {
    auto col = model.basis.col(j);
    for (int prev = 0; prev < j; ++prev) {
      col -= model.basis.col(prev).dot(col) * model.basis.col(prev);
    }
    const double norm = col.norm();
    if (!(norm > 1e-12)) {
      throw Error(Errc::SingularScatter, "discriminant directions are linearly dependent");
    }
    col /= norm;
    fix_sign(col);
  }
  return model;
}

Eigen::VectorXd project(const LdaModel& model, const Eigen::VectorXd& x) {
  if (x.size() != model.input_dim()) {
    throw Error(Errc::DimensionMismatch, "vector has dimension " + std::to_string(x.size()) +
                                             ", LDA expects " + std::to_string(model.input_dim()));
  }
  return model.basis.transpose() * (x - model.global_mean);
}

Eigen::MatrixXd project_rows(const LdaModel& model, const Eigen::MatrixXd& rows) {
  if (rows.cols() != model.input_dim()) {
    throw Error(Errc::DimensionMismatch, "rows have dimension " + std::to_string(rows.cols()) +
                                             ", LDA expects " + std::to_string(model.input_dim()));
  }
  Eigen::MatrixXd out(rows.rows(), model.output_dim());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    out.row(i) = project(model, rows.row(i).transpose()).transpose();
  }
  return out;
}

}  // namespace ldasvm
