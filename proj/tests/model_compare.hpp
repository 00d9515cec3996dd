#ifndef LDASVM_TEST_MODEL_COMPARE_HPP
#define LDASVM_TEST_MODEL_COMPARE_HPP

#include "ldasvm/pipeline.hpp"

namespace ldasvm::test {

/// Bitwise equality of every numeric field.
inline bool same_model(const PipelineModel& a, const PipelineModel& b) {
  if (!(a.frontend == b.frontend) || a.class_names != b.class_names || a.format_version != b.format_version)
    return false;
  if (a.lda.has_value() != b.lda.has_value()) return false;
  if (a.lda) {
    const LdaModel& x = *a.lda;
    const LdaModel& y = *b.lda;
    if (x.basis.rows() != y.basis.rows() || x.basis.cols() != y.basis.cols() || x.basis != y.basis ||
        x.eigenvalues.size() != y.eigenvalues.size() || x.eigenvalues != y.eigenvalues ||
        x.global_mean.size() != y.global_mean.size() || x.global_mean != y.global_mean ||
        x.class_means.rows() != y.class_means.rows() || x.class_means.cols() != y.class_means.cols() ||
        x.class_means != y.class_means)
      return false;
  }
  const SvmModel& s = a.svm;
  const SvmModel& t = b.svm;
  if (!(s.kernel == t.kernel) || s.cost_c != t.cost_c || s.dim != t.dim || s.labels != t.labels ||
      s.pairwise.size() != t.pairwise.size())
    return false;
  for (std::size_t i = 0; i < s.pairwise.size(); ++i) {
    const PairMachine& p = s.pairwise[i];
    const PairMachine& q = t.pairwise[i];
    if (p.first_label != q.first_label || p.second_label != q.second_label) return false;
    const BinarySvm& m = p.machine;
    const BinarySvm& n = q.machine;
    if (!(m.kernel == n.kernel) || m.bias != n.bias || m.alpha_y.size() != n.alpha_y.size() ||
        m.alpha_y != n.alpha_y || m.support_vectors.rows() != n.support_vectors.rows() ||
        m.support_vectors.cols() != n.support_vectors.cols() || m.support_vectors != n.support_vectors)
      return false;
  }
  return true;
}

}  // namespace ldasvm::test

#endif  // LDASVM_TEST_MODEL_COMPARE_HPP
