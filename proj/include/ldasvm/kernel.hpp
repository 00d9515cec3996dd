#ifndef LDASVM_KERNEL_HPP
#define LDASVM_KERNEL_HPP

#include <Eigen/Core>
#include <cmath>
#include <string>
#include <string_view>

#include "ldasvm/error.hpp"

namespace ldasvm {

enum class KernelKind { Linear, Rbf, Polynomial };

std::string_view kernel_name(KernelKind kind);
/// Accepts "linear", "rbf", "polynomial"; throws Errc::InvalidArgument otherwise.
KernelKind parse_kernel_kind(std::string_view name);

struct KernelSpec {
  KernelKind kind = KernelKind::Rbf;
  double gamma = 2.0;
  int degree = 3;
  double coef0 = 0.0;

  void validate() const;
  bool operator==(const KernelSpec&) const = default;
};

/// linear: x.y   rbf: exp(-gamma |x - y|^2)   polynomial: (gamma x.y + coef0)^degree
template <class A, class B>
double kernel_eval(const KernelSpec& spec, const Eigen::MatrixBase<A>& x,
                   const Eigen::MatrixBase<B>& y) {
  if (x.size() != y.size()) {
    throw Error(Errc::DimensionMismatch, "kernel arguments of dimension " +
                                             std::to_string(x.size()) + " and " +
                                             std::to_string(y.size()));
  }
  switch (spec.kind) {
    case KernelKind::Linear:
      return x.reshaped().dot(y.reshaped());
    case KernelKind::Rbf:
      return std::exp(-spec.gamma * (x.reshaped() - y.reshaped()).squaredNorm());
    case KernelKind::Polynomial:
      return std::pow(spec.gamma * x.reshaped().dot(y.reshaped()) + spec.coef0, spec.degree);
  }
  return 0.0;
}

/// n x n kernel matrix over the rows of `rows`.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& rows);

}  // namespace ldasvm

#endif  // LDASVM_KERNEL_HPP
