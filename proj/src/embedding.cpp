#include "qdl/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qdl/bayes_learn.hpp"

namespace qdl {

EmbeddingOperator::EmbeddingOperator(FunctionBasis basis, std::vector<int> active_set, std::vector<double> weights)
    : basis_(std::move(basis)), active_(std::move(active_set)), weights_(std::move(weights)) {
  if (active_.empty()) throw std::invalid_argument("EmbeddingOperator: empty active set");
  if (active_.size() != weights_.size()) {
    throw std::invalid_argument("EmbeddingOperator: " + std::to_string(weights_.size()) + " weights for " +
                                std::to_string(active_.size()) + " active translates");
  }
  const BasisSpec& spec = basis_.spec();
  squared_by_offset_.assign(spec.size(), 0.0);
  bool any_nonzero = false;
  for (std::size_t r = 0; r < active_.size(); ++r) {
    const int k = active_[r];
    if (k < spec.k_min || k > spec.k_max) {
      throw std::invalid_argument("EmbeddingOperator: translate " + std::to_string(k) + " outside basis range");
    }
    if (r > 0 && k <= active_[r - 1]) throw std::invalid_argument("EmbeddingOperator: active set must be strictly increasing");
    const double alpha = weights_[r];
    if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("EmbeddingOperator: weights must be finite and >= 0");
    any_nonzero = any_nonzero || alpha > 0.0;
    squared_by_offset_[static_cast<std::size_t>(k - spec.k_min)] = alpha * alpha;
  }
  if (!any_nonzero) throw std::invalid_argument("EmbeddingOperator: all weights are zero");
}

EmbeddingOperator EmbeddingOperator::projection(const FunctionBasis& basis) {
  auto active = basis.interior_translates();
  std::vector<double> ones(active.size(), 1.0);
  return EmbeddingOperator(basis, std::move(active), std::move(ones));
}

EmbeddingOperator EmbeddingOperator::weighted(const FunctionBasis& basis, std::vector<double> weights) {
  return EmbeddingOperator(basis, basis.interior_translates(), std::move(weights));
}

bool EmbeddingOperator::is_projection() const {
  return std::all_of(weights_.begin(), weights_.end(), [](double a) { return a == 1.0; });
}

double EmbeddingOperator::squared_weight(int k) const {
  const BasisSpec& spec = basis_.spec();
  if (k < spec.k_min || k > spec.k_max) return 0.0;
  return squared_by_offset_[static_cast<std::size_t>(k - spec.k_min)];
}

EmbeddingOperator::Section EmbeddingOperator::section(double s) const {
  Section sec;
  sec.basis_ = &basis_;
  const auto [first, last] = basis_.translates_at(s);
  double lo = s, hi = s;
  for (int k = first; k <= last; ++k) {
    const double w2 = squared_weight(k);
    if (w2 == 0.0) continue;
    const double v = basis_.father(k, s);
    if (v == 0.0) continue;
    sec.translates_.push_back(k);
    sec.factors_.push_back(w2 * v);
    const auto [a, b] = basis_.support(k);
    if (sec.translates_.size() == 1) {
      lo = a;
      hi = b;
    } else {
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
  sec.support_ = {lo, hi};
  return sec;
}

double EmbeddingOperator::Section::operator()(double t) const {
  double acc = 0.0;
  for (std::size_t r = 0; r < translates_.size(); ++r) acc += factors_[r] * basis_->father(translates_[r], t);
  return acc;
}

double kernel_eval(const EmbeddingOperator& a, double s, double t) {
  const FunctionBasis& basis = a.basis();
  const auto [first, last] = basis.translates_at(s);
  double acc = 0.0;
  for (int k = first; k <= last; ++k) {
    const double w2 = a.squared_weight(k);
    if (w2 == 0.0) continue;
    acc += w2 * basis.father(k, s) * basis.father(k, t);
  }
  return acc;
}

double kernel_diag(const EmbeddingOperator& a, double s) {
  const FunctionBasis& basis = a.basis();
  const auto [first, last] = basis.translates_at(s);
  double acc = 0.0;
  for (int k = first; k <= last; ++k) {
    const double w2 = a.squared_weight(k);
    if (w2 == 0.0) continue;
    const double v = basis.father(k, s);
    acc += w2 * v * v;
  }
  return acc;
}

std::vector<double> kernel_diag_on(const EmbeddingOperator& a, const Grid& grid) {
  return sample_on(grid, [&](double s) { return kernel_diag(a, s); });
}

double trace_k_rho(const EmbeddingOperator& a, std::span<const double> zeta, const Grid& grid) {
  if (zeta.size() != grid.size()) throw std::invalid_argument("trace_k_rho: density values do not match grid");
  for (double z : zeta)
    if (!(z >= 0.0) || !std::isfinite(z)) throw std::invalid_argument("trace_k_rho: density must be finite and >= 0");
  const double mass = trapezoid(zeta, grid);
  if (std::abs(mass - 1.0) > 1e-6) {
    throw std::invalid_argument("trace_k_rho: density integrates to " + std::to_string(mass) + ", expected 1");
  }
  std::vector<double> integrand(grid.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    integrand[i] = zeta[i] == 0.0 ? 0.0 : zeta[i] * kernel_diag(a, grid.point(i));
  }
  const double trace = trapezoid(integrand, grid);
  if (trace <= kMinTrace) throw KernelNullError("trace_k_rho: density lies in the kernel of A (tr(A rho A*) = 0)");
  return trace;
}

double trace_k_map(const EmbeddingOperator& a, const SampleSet& samples) {
  const auto& pts = samples.points();
  if (pts.empty()) throw std::invalid_argument("trace_k_map: empty sample set");
  double acc = 0.0;
  for (double s : pts) acc += kernel_diag(a, s);
  return acc / static_cast<double>(pts.size());
}

}  // namespace qdl
