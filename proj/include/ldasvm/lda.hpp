#ifndef LDASVM_LDA_HPP
#define LDASVM_LDA_HPP

#include <Eigen/Core>
#include <vector>

#include "ldasvm/dataset.hpp"

namespace ldasvm {

struct ClassStats {
  Eigen::VectorXd global_mean;  // d
  Eigen::MatrixXd class_means;  // C x d, row c holds label c + 1 (zero if absent)
  std::vector<int> counts;      // C
};

struct ScatterMatrices {
  Eigen::MatrixXd within;   // S_W = sum_i sum_{x in X_i} (x - m_i)(x - m_i)^T
  Eigen::MatrixXd between;  // S_B = sum_i n_i (m_i - m)(m_i - m)^T
};

/// Fisher discriminant projection.
///
/// Basis columns are unit length, mutually orthogonal (ordered Gram-Schmidt
/// over the generalized eigenvectors, largest eigenvalue first) and carry a
/// positive largest-magnitude entry.
struct LdaModel {
  Eigen::MatrixXd basis;        // d x r
  Eigen::VectorXd eigenvalues;  // r, nonincreasing
  Eigen::VectorXd global_mean;  // d
  Eigen::MatrixXd class_means;  // C x d

  Eigen::Index input_dim() const { return basis.rows(); }
  Eigen::Index output_dim() const { return basis.cols(); }
};

ClassStats class_stats(const LabeledDataset& ds);
ScatterMatrices scatter_matrices(const LabeledDataset& ds);

/// 1e-6 * trace(S_W) / d.
double default_ridge(const Eigen::MatrixXd& within);

/// Solves (S_W + ridge I)^{-1} S_B v = lambda v and keeps the `target_dim`
/// leading eigenvectors. target_dim must lie in [1, min(C - 1, d)] where C
/// counts the classes present.
LdaModel fit_lda(const LabeledDataset& ds, int target_dim, double ridge);
/// Same, with `default_ridge(S_W)`.
LdaModel fit_lda(const LabeledDataset& ds, int target_dim);

/// basis^T (x - global_mean).
Eigen::VectorXd project(const LdaModel& model, const Eigen::VectorXd& x);
/// Row-wise projection of an n x d matrix.
Eigen::MatrixXd project_rows(const LdaModel& model, const Eigen::MatrixXd& rows);

}  // namespace ldasvm

#endif  // LDASVM_LDA_HPP
