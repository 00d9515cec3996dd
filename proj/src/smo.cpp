#include "ldasvm/smo.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ldasvm/error.hpp"

namespace ldasvm {

namespace {

constexpr double kTau = 1e-12;

// Rows of Q_ij = y_i y_j K(x_i, x_j), cached in full for small problems.
class QMatrix {
 public:
  QMatrix(const Eigen::MatrixXd& x, std::span<const int> y, const KernelSpec& kernel)
      : x_(x), y_(y), kernel_(kernel), n_(x.rows()) {
    diag_.resize(n_);
    for (Eigen::Index i = 0; i < n_; ++i) diag_(i) = kernel_eval(kernel_, x_.row(i), x_.row(i));
    if (n_ <= kFullGramLimit) {
      full_ = gram_matrix(kernel_, x_);
      for (Eigen::Index i = 0; i < n_; ++i) {
        for (Eigen::Index j = 0; j < n_; ++j) full_(i, j) *= y_[static_cast<std::size_t>(i)] * y_[static_cast<std::size_t>(j)];
      }
    }
    row_.resize(n_);
  }

  double diag(Eigen::Index i) const { return diag_(i); }

  // Column i of Q (equal to row i by symmetry). The reference stays valid
  // until the next call.
  const Eigen::VectorXd& column(Eigen::Index i) {
    if (full_.size() > 0) {
      row_ = full_.col(i);
    } else {
      const int yi = y_[static_cast<std::size_t>(i)];
      for (Eigen::Index t = 0; t < n_; ++t) {
        row_(t) = yi * y_[static_cast<std::size_t>(t)] * kernel_eval(kernel_, x_.row(i), x_.row(t));
      }
    }
    return row_;
  }

 private:
  const Eigen::MatrixXd& x_;
  std::span<const int> y_;
  KernelSpec kernel_;
  Eigen::Index n_;
  Eigen::VectorXd diag_;
  Eigen::MatrixXd full_;
  Eigen::VectorXd row_;
};

}  // namespace

DualSolution solve_dual(const Eigen::MatrixXd& x, std::span<const int> y, double cost,
                        const KernelSpec& kernel, const SmoOptions& options) {
  const Eigen::Index n = x.rows();
  if (static_cast<std::size_t>(n) != y.size()) {
    throw Error(Errc::DimensionMismatch, "point and label counts differ");
  }
  if (!(cost > 0.0)) throw Error(Errc::InvalidArgument, "cost C must be positive");
  if (!(options.tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  kernel.validate();
  bool has_pos = false;
  bool has_neg = false;
  for (int label : y) {
    if (label == 1) has_pos = true;
    else if (label == -1) has_neg = true;
    else throw Error(Errc::InvalidArgument, "binary labels must be +1 or -1");
  }
  if (!has_pos || !has_neg) throw Error(Errc::InvalidArgument, "both classes must be present");
  if (x.cols() == 0 || !x.allFinite()) {
    throw Error(Errc::DegenerateData, "training vectors are empty or non-finite");
  }

  QMatrix q(x, y, kernel);
  const long passes = options.max_passes > 0 ? options.max_passes : 10L * n;
  // The default budget gets a floor: tiny problems with near-duplicate points
  // zigzag for longer than 10 n sweeps.
  const long budget = options.max_passes > 0 ? passes * n : std::max(passes * n, kMinDefaultBudget);

  DualSolution sol;
  sol.alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);
  auto& alpha = sol.alpha;
  const auto yv = [&](Eigen::Index t) { return y[static_cast<std::size_t>(t)]; };

  for (;;) {
    // I_up: points whose a_t y_t can still grow; I_low: can still shrink.
    double gmax = -std::numeric_limits<double>::infinity();
    double gmin = std::numeric_limits<double>::infinity();
    Eigen::Index i = -1;
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      const double v = -yv(t) * grad(t);
      const bool up = yv(t) == 1 ? alpha(t) < cost : alpha(t) > 0.0;
      const bool low = yv(t) == 1 ? alpha(t) > 0.0 : alpha(t) < cost;
      if (up && v > gmax) {
        gmax = v;
        i = t;
      }
      if (low && v < gmin) {
        gmin = v;
        j = t;
      }
    }
    sol.max_violation = (i < 0 || j < 0) ? 0.0 : gmax - gmin;
    if (sol.max_violation <= options.tol) break;
    if (sol.iterations >= budget) {
      throw Error(Errc::NoConvergence,
                  "SMO stopped after " + std::to_string(sol.iterations) +
                      " updates with KKT violation " + std::to_string(sol.max_violation) +
                      " (pair " + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    ++sol.iterations;

    const Eigen::VectorXd qi = q.column(i);
    const Eigen::VectorXd& qj = q.column(j);
    const double old_i = alpha(i);
    const double old_j = alpha(j);

    if (yv(i) != yv(j)) {
      double quad = q.diag(i) + q.diag(j) + 2.0 * qi(j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad(i) - grad(j)) / quad;
      const double diff = old_i - old_j;
      alpha(i) += delta;
      alpha(j) += delta;
      if (diff > 0.0) {
        if (alpha(j) < 0.0) {
          alpha(j) = 0.0;
          alpha(i) = diff;
        }
      } else if (alpha(i) < 0.0) {
        alpha(i) = 0.0;
        alpha(j) = -diff;
      }
      if (diff > 0.0) {
        if (alpha(i) > cost) {
          alpha(i) = cost;
          alpha(j) = cost - diff;
        }
      } else if (alpha(j) > cost) {
        alpha(j) = cost;
        alpha(i) = cost + diff;
      }
    } else {
      double quad = q.diag(i) + q.diag(j) - 2.0 * qi(j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad(i) - grad(j)) / quad;
      const double sum = old_i + old_j;
      alpha(i) -= delta;
      alpha(j) += delta;
      if (sum > cost) {
        if (alpha(i) > cost) {
          alpha(i) = cost;
          alpha(j) = sum - cost;
        }
        if (alpha(j) > cost) {
          alpha(j) = cost;
          alpha(i) = sum - cost;
        }
      } else {
        if (alpha(j) < 0.0) {
          alpha(j) = 0.0;
          alpha(i) = sum;
        }
        if (alpha(i) < 0.0) {
          alpha(i) = 0.0;
          alpha(j) = sum;
        }
      }
    }

    // Clipping arithmetic can leave a coefficient an ulp inside its bound,
    // which would then count as free in the bias estimate.
    const double snap = 1e-12 * cost;
    for (const Eigen::Index t : {i, j}) {
      if (alpha(t) < snap) alpha(t) = 0.0;
      else if (alpha(t) > cost - snap) alpha(t) = cost;
    }

    const double di = alpha(i) - old_i;
    const double dj = alpha(j) - old_j;
    grad += di * qi + dj * qj;
  }

  // Bias: mean of y_t G_t over free vectors, else the middle of the
  // feasible interval implied by the bounded ones.
  double ub = std::numeric_limits<double>::infinity();
  double lb = -std::numeric_limits<double>::infinity();
  double sum_free = 0.0;
  long free_count = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = yv(t) * grad(t);
    if (alpha(t) >= cost) {
      if (yv(t) == -1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else if (alpha(t) <= 0.0) {
      if (yv(t) == 1) ub = std::min(ub, yg);
      else lb = std::max(lb, yg);
    } else {
      ++free_count;
      sum_free += yg;
    }
  }
  double rho = 0.0;
  if (free_count > 0) {
    rho = sum_free / static_cast<double>(free_count);
  } else if (std::isfinite(ub) && std::isfinite(lb)) {
    rho = 0.5 * (ub + lb);
  } else if (std::isfinite(ub)) {
    rho = ub;
  } else if (std::isfinite(lb)) {
    rho = lb;
  }
  sol.bias = -rho;
  return sol;
}

double dual_objective(const Eigen::VectorXd& alpha, std::span<const int> y,
                      const Eigen::MatrixXd& gram) {
  Eigen::VectorXd ay(alpha.size());
  for (Eigen::Index i = 0; i < alpha.size(); ++i) ay(i) = alpha(i) * y[static_cast<std::size_t>(i)];
  return alpha.sum() - 0.5 * ay.dot(gram * ay);
}

}  // namespace ldasvm
