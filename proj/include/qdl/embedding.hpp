#pragma once

// Diagonal operator A = sum_{j in L} alpha_j |phi_j><phi_j| and its kernel
// K = A*A, evaluated pointwise as <s|K|t> = sum_j alpha_j^2 phi_j(s) phi_j(t).

#include <span>
#include <stdexcept>
#include <vector>

#include "qdl/function_basis.hpp"
#include "qdl/grid.hpp"

namespace qdl {

class SampleSet;

// Raised when tr(A rho A*) vanishes, i.e. rho lies in the kernel of A.
class KernelNullError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinTrace = 1e-14;

class EmbeddingOperator {
public:
  EmbeddingOperator(FunctionBasis basis, std::vector<int> active_set, std::vector<double> weights);

  // Orthogonal projection onto the translates lying inside the interval.
  static EmbeddingOperator projection(const FunctionBasis& basis);

  // Explicit weights aligned with the interior translates.
  static EmbeddingOperator weighted(const FunctionBasis& basis, std::vector<double> weights);

  const FunctionBasis& basis() const { return basis_; }
  const std::vector<int>& active_set() const { return active_; }
  const std::vector<double>& weights() const { return weights_; }
  bool is_projection() const;

  // alpha_k^2 for a translate, zero when k is not active.
  double squared_weight(int k) const;

  // Kernel section t -> <s|K|t> with the s side evaluated once.
  class Section {
  public:
    double operator()(double t) const;
    // Interval outside which the section vanishes.
    std::pair<double, double> support() const { return support_; }

  private:
    friend class EmbeddingOperator;
    const FunctionBasis* basis_ = nullptr;
    std::vector<int> translates_;
    std::vector<double> factors_;
    std::pair<double, double> support_{0.0, 0.0};
  };

  Section section(double s) const;

private:
  FunctionBasis basis_;
  std::vector<int> active_;
  std::vector<double> weights_;
  std::vector<double> squared_by_offset_;
};

double kernel_eval(const EmbeddingOperator& a, double s, double t);

// <s|K|s>
double kernel_diag(const EmbeddingOperator& a, double s);

std::vector<double> kernel_diag_on(const EmbeddingOperator& a, const Grid& grid);

// tr(A rho A*) = integral of zeta(s) <s|K|s> for rho in the ensemble set.
double trace_k_rho(const EmbeddingOperator& a, std::span<const double> zeta, const Grid& grid);

// (1/N) sum_i <S_i|K|S_i>, the trace under the empirical MAP density.
double trace_k_map(const EmbeddingOperator& a, const SampleSet& samples);

}  // namespace qdl
