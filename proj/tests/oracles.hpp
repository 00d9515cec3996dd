#ifndef LDASVM_TEST_ORACLES_HPP
#define LDASVM_TEST_ORACLES_HPP

// Reference computations that share no code path with the library: naive
// DFT, brute-force total scatter, and a projected-gradient dual QP solver.

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace ldasvm::oracle {

/// O(N^2) |X_k|^2, k = 0..N/2, with the phase index reduced mod N.
inline std::vector<double> naive_power_spectrum(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> out(n / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    std::complex<long double> acc = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
      const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>((k * t) % n) / static_cast<long double>(n);
      acc += static_cast<long double>(x[t]) * std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    out[k] = static_cast<double>(std::norm(acc));
  }
  return out;
}

/// S_T = sum_x (x - m)(x - m)^T over the rows.
inline Eigen::MatrixXd total_scatter(const Eigen::MatrixXd& rows) {
  const Eigen::RowVectorXd mean = rows.colwise().sum() / static_cast<double>(rows.rows());
  Eigen::MatrixXd st = Eigen::MatrixXd::Zero(rows.cols(), rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    const Eigen::VectorXd d = (rows.row(i) - mean).transpose();
    st += d * d.transpose();
  }
  return st;
}

enum class OracleKernel { Linear, Rbf };

inline Eigen::MatrixXd oracle_gram(const Eigen::MatrixXd& x, OracleKernel kind, double gamma) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      double v = 0.0;
      if (kind == OracleKernel::Linear) {
        for (Eigen::Index c = 0; c < x.cols(); ++c) v += x(i, c) * x(j, c);
      } else {
        double d2 = 0.0;
        for (Eigen::Index c = 0; c < x.cols(); ++c) d2 += (x(i, c) - x(j, c)) * (x(i, c) - x(j, c));
        v = std::exp(-gamma * d2);
      }
      k(i, j) = v;
    }
  }
  return k;
}

struct QpSolution {
  Eigen::VectorXd alpha;
  double bias = 0.0;
  double objective = 0.0;
  long iterations = 0;
};

/// Euclidean projection onto {0 <= a <= C, y^T a = 0} by bisection on the
/// equality multiplier.
inline Eigen::VectorXd project_feasible(const Eigen::VectorXd& z, const std::vector<int>& y, double c) {
  const auto at = [&](double mu) {
    Eigen::VectorXd a(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) a(i) = std::clamp(z(i) - mu * y[static_cast<std::size_t>(i)], 0.0, c);
    return a;
  };
  const auto g = [&](double mu) {
    const Eigen::VectorXd a = at(mu);
    double s = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) s += y[static_cast<std::size_t>(i)] * a(i);
    return s;
  };
  double lo = -(z.cwiseAbs().maxCoeff() + c + 1.0);
  double hi = -lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) > 0.0 ? lo : hi) = mid;
  }
  return at(0.5 * (lo + hi));
}

/// Accelerated projected gradient on min 1/2 a^T Q a - sum a, run until the
/// iterate moves less than `step_tol` (max norm).
inline QpSolution solve_dual_qp(const Eigen::MatrixXd& gram, const std::vector<int>& y, double c,
                                double step_tol = 1e-13, long max_iter = 2000000) {
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd q(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) q(i, j) = y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * gram(i, j);
  const double lip = std::max(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues().maxCoeff(), 1e-12);

  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = a;
  double t = 1.0;
  QpSolution sol;
  const auto obj = [&](const Eigen::VectorXd& x) { return 0.5 * x.dot(q * x) - x.sum(); };
  for (; sol.iterations < max_iter; ++sol.iterations) {
    const Eigen::VectorXd grad = q * v - Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd next = project_feasible(v - grad / lip, y, c);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    // Restart momentum whenever the objective goes up.
    if (obj(next) > obj(a)) {
      if (t == 1.0) break;  // plain projected step no longer descends
      v = a;
      t = 1.0;
      continue;
    }
    v = next + ((t - 1.0) / t_next) * (next - a);
    const double moved = (next - a).cwiseAbs().maxCoeff();
    a = next;
    t = t_next;
    if (moved < step_tol) {
      // Momentum can pin the iterate to a vertex; stop only if a plain
      // projected step from a stays put too.
      const Eigen::VectorXd plain = project_feasible(a - (q * a - Eigen::VectorXd::Ones(n)) / lip, y, c);
      if ((plain - a).cwiseAbs().maxCoeff() < step_tol) break;
      v = a;
      t = 1.0;
    }
  }
  sol.alpha = a;
  sol.objective = -obj(a);

  // Bias from the free coefficients, else the middle of the feasible interval.
  const Eigen::VectorXd grad = q * a - Eigen::VectorXd::Ones(n);
  const double eps = 1e-7 * c;
  double sum = 0.0;
  int free_count = 0;
  double ub = INFINITY;
  double lb = -INFINITY;
  for (Eigen::Index i = 0; i < n; ++i) {
    const int yi = y[static_cast<std::size_t>(i)];
    const double yg = yi * grad(i);
    if (a(i) > eps && a(i) < c - eps) {
      sum += yg;
      ++free_count;
    } else if (a(i) >= c - eps) {
      (yi == -1 ? ub : lb) = yi == -1 ? std::min(ub, yg) : std::max(lb, yg);
    } else {
      (yi == 1 ? ub : lb) = yi == 1 ? std::min(ub, yg) : std::max(lb, yg);
    }
  }
  const double rho = free_count > 0 ? sum / free_count : 0.5 * (ub + lb);
  sol.bias = -rho;
  return sol;
}

}  // namespace ldasvm::oracle

#endif  // LDASVM_TEST_ORACLES_HPP
