#ifndef LDASVM_SMO_HPP
#define LDASVM_SMO_HPP

#include <Eigen/Core>
#include <span>

#include "ldasvm/kernel.hpp"

namespace ldasvm {

struct SmoOptions {
  /// Stop once the maximal KKT violation m(a) - M(a) drops to this value.
  double tol = 1e-3;
  /// Budget of max_passes * n pair updates; 0 selects 10 * n passes with at
  /// least kMinDefaultBudget updates.
  long max_passes = 0;
};

inline constexpr long kMinDefaultBudget = 100000;

/// Raw dual solution over all training points.
struct DualSolution {
  Eigen::VectorXd alpha;  // 0 <= alpha_i <= C
  double bias = 0.0;      // f(x) = sum alpha_i y_i K(x_i, x) + bias
  long iterations = 0;
  double max_violation = 0.0;
};

/// Gram matrices up to this many points are cached in full; larger problems
/// recompute kernel rows on demand.
inline constexpr Eigen::Index kFullGramLimit = 4096;

/// Sequential minimal optimization with maximal-violating-pair working-set
/// selection for
///   max  sum a_i - 1/2 sum_ij a_i a_j y_i y_j K(x_i, x_j)
///   s.t. 0 <= a_i <= C,  sum a_i y_i = 0.
/// `y` holds +1/-1. Throws Errc::NoConvergence when the update budget runs
/// out with the violation still above tol.
DualSolution solve_dual(const Eigen::MatrixXd& x, std::span<const int> y, double cost,
                        const KernelSpec& kernel, const SmoOptions& options = {});

/// sum a_i - 1/2 a^T Q a with Q_ij = y_i y_j K_ij.
double dual_objective(const Eigen::VectorXd& alpha, std::span<const int> y,
                      const Eigen::MatrixXd& gram);

}  // namespace ldasvm

#endif  // LDASVM_SMO_HPP
