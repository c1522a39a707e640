#pragma once

// Finite-dimensional wave functions, density matrices and Born-rule
// measurement over a discrete sample space {s_0, ..., s_{d-1}}.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qdl {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

namespace tol {
inline constexpr double kNorm = 1e-12;
inline constexpr double kHermitian = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kPsd = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kDistribution = 1e-12;
}  // namespace tol

// Unit vector of amplitudes <s_j|z>.
class WaveFunction {
public:
  explicit WaveFunction(CVector amplitudes);

  // Canonical wave function of a distribution: nonnegative real amplitudes sqrt(Z_j).
  static WaveFunction canonical(std::span<const double> probabilities);

  const CVector& amplitudes() const { return amplitudes_; }
  std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }

private:
  CVector amplitudes_;
};

class DiscreteDistribution {
public:
  explicit DiscreteDistribution(std::vector<double> probabilities);

  const std::vector<double>& probabilities() const { return probabilities_; }
  std::size_t dim() const { return probabilities_.size(); }
  double operator[](std::size_t j) const { return probabilities_[j]; }

private:
  std::vector<double> probabilities_;
};

// Hermitian, positive semi-definite, trace-one matrix w(s_j, s_l). Also used for
// the coefficient matrix w(psi_j, psi_l) of the same operator in another basis.
class DensityMatrix {
public:
  // Validates the invariants. Eigenvalues in [-1e-10, 0) are clipped to zero
  // and the trace renormalized; the input is otherwise kept bit-for-bit
  // (after exact Hermitian symmetrization of round-off).
  explicit DensityMatrix(CMatrix entries);

  // Pure state |z><z|.
  static DensityMatrix pure(const WaveFunction& z);

  const CMatrix& entries() const { return entries_; }
  std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
  Complex operator()(std::size_t j, std::size_t l) const {
    return entries_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l));
  }

  Eigen::VectorXd eigenvalues() const;

  // True when every off-diagonal entry is exactly zero (member of the ensemble set).
  bool is_ensemble() const;

private:
  CMatrix entries_;
};

// Column j holds psi_j expressed in the position basis, i.e. U(k, j) = <s_k|psi_j>.
class UnitaryBasis {
public:
  explicit UnitaryBasis(CMatrix columns);

  static UnitaryBasis identity(std::size_t d);

  const CMatrix& columns() const { return columns_; }
  std::size_t dim() const { return static_cast<std::size_t>(columns_.rows()); }
  UnitaryBasis inverse() const;

private:
  CMatrix columns_;
};

// rho = sum_j Z(s_j) |s_j><s_j|
DensityMatrix ensemble_from_distribution(const DiscreteDistribution& z);

// Diagonal readout; inverse of ensemble_from_distribution on the ensemble set.
DiscreteDistribution distribution_from_ensemble(const DensityMatrix& rho);

// P(s_j | rho) = w(s_j, s_j)
double born_probability(const DensityMatrix& rho, std::size_t j);

std::vector<double> born_probabilities(const DensityMatrix& rho);

// Coefficients U* rho U of rho in the basis {psi_j}.
DensityMatrix change_basis(const DensityMatrix& rho, const UnitaryBasis& u);

// P(s_j | rho) from coefficients w(psi_k, psi_l):
// sum_{k,l} w(psi_k, psi_l) <s_j|psi_k> <psi_l|s_j>.
double probability_from_coefficients(const DensityMatrix& w, const UnitaryBasis& u, std::size_t j);

}  // namespace qdl
