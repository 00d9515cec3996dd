#include "ldasvm/kernel.hpp"

namespace ldasvm {

std::string_view kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Rbf: return "rbf";
    case KernelKind::Polynomial: return "polynomial";
  }
  return "unknown";
}

KernelKind parse_kernel_kind(std::string_view name) {
  if (name == "linear") return KernelKind::Linear;
  if (name == "rbf") return KernelKind::Rbf;
  if (name == "polynomial") return KernelKind::Polynomial;
  throw Error(Errc::InvalidArgument, "unknown kernel '" + std::string(name) + "'");
}

void KernelSpec::validate() const {
  if (kind != KernelKind::Linear && !(gamma > 0.0 && std::isfinite(gamma))) {
    throw Error(Errc::InvalidArgument, "gamma must be positive for rbf/polynomial kernels");
  }
  if (kind == KernelKind::Polynomial && degree < 1) {
    throw Error(Errc::InvalidArgument, "polynomial degree must be positive");
  }
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& rows) {
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      k(i, j) = kernel_eval(spec, rows.row(i), rows.row(j));
      k(j, i) = k(i, j);
    }
  }
  return k;
}

}  // namespace ldasvm
