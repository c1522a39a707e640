#pragma once

// Bayesian learning of density operators: posterior functionals in the
// position basis and in an arbitrary orthonormal basis, the closed-form MAP
// coefficients for a homogeneous prior with noiseless samples, and the
// embedded (projected) densities built from the squared kernel.
//
// The 1/omega normalization of continuous ensembles never appears; every
// quantity below is already expressed as a density.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdl/discrete_hilbert.hpp"
#include "qdl/embedding.hpp"
#include "qdl/function_basis.hpp"
#include "qdl/grid.hpp"

namespace qdl {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// P(S_i | s). The Gaussian variant is truncated to the interval and
// renormalized so that it integrates to one over s for each fixed S_i.
class NoiseKernel {
public:
  enum class Kind { None, Gaussian };

  static NoiseKernel none() { return NoiseKernel(); }
  static NoiseKernel gaussian(double sigma, Interval interval);

  Kind kind() const { return kind_; }
  double sigma() const { return sigma_; }
  double density(double observed, double s) const;

private:
  Kind kind_ = Kind::None;
  double sigma_ = 0.0;
  Interval interval_;
};

class SampleSet {
public:
  SampleSet(std::vector<double> points, Interval interval, std::uint64_t seed = 0,
            NoiseKernel noise = NoiseKernel::none());

  const std::vector<double>& points() const { return points_; }
  const Interval& interval() const { return interval_; }
  std::uint64_t seed() const { return seed_; }
  const NoiseKernel& noise() const { return noise_; }
  std::size_t size() const { return points_.size(); }
  bool noisy() const { return noise_.kind() != NoiseKernel::Kind::None; }

private:
  std::vector<double> points_;
  Interval interval_;
  std::uint64_t seed_;
  NoiseKernel noise_;
};

struct DensityCurve {
  Grid grid;
  std::vector<double> values;

  DensityCurve(Grid g, std::vector<double> v);

  double mass() const { return trapezoid(values, grid); }
  // Linear interpolation; zero outside the grid interval.
  double at(double s) const;
};

// Log-prior over density curves (position basis).
using CurvePrior = std::function<double(const DensityCurve&)>;
// Log-prior over density operators, given in whichever basis the caller holds.
// Basis-invariant functionals give coordinate-free posteriors.
using OperatorPrior = std::function<double(const CMatrix&)>;

CurvePrior homogeneous_curve_prior();
OperatorPrior homogeneous_prior();
// -lambda * tr(rho^2), invariant under unitary change of basis.
OperatorPrior quadratic_penalty_prior(double lambda);

// prior(zeta) + sum_i log integral P(S_i|s) zeta(s) ds (evidence dropped).
// Without noise the integral is zeta(S_i) by linear interpolation. Returns
// -infinity when some sample has zero likelihood.
double log_posterior_position(const CurvePrior& prior, const DensityCurve& zeta, const SampleSet& samples);

// Discrete position-basis posterior for rho = diag(Z). observed[i] indexes the
// outcome of sample i; noise(j, o) = P(o | s_j), rows summing to one.
double log_posterior_discrete(const OperatorPrior& prior, const DiscreteDistribution& z,
                              std::span<const std::size_t> observed, const Eigen::MatrixXd& noise);

// Same posterior expressed through coefficients w(psi_j, psi_l) in basis U.
double log_posterior_coefficients(const OperatorPrior& prior, const DensityMatrix& w, const UnitaryBasis& u,
                                  std::span<const std::size_t> observed, const Eigen::MatrixXd& noise);

// Posterior of the embedded density p(A|s>|rho_A) for noisy or noiseless samples.
double log_posterior_embedded(const CurvePrior& prior, const EmbeddingOperator& a, const DensityCurve& zeta,
                              const SampleSet& samples);

struct MapCoefficients {
  BasisSpec basis;
  std::vector<int> translates;
  Eigen::MatrixXd matrix;
};

// w~(psi_j, psi_l) = (1/N) sum_i psi_j(S_i) psi_l(S_i). Noiseless samples only.
MapCoefficients map_coefficients(const SampleSet& samples, const FunctionBasis& basis, std::span<const int> translates);
MapCoefficients map_coefficients(const SampleSet& samples, const FunctionBasis& basis);

// w(psi_j, psi_l) = integral zeta psi_j psi_l over the grid.
MapCoefficients population_coefficients(const DensityCurve& zeta, const FunctionBasis& basis,
                                        std::span<const int> translates);

// p(A|s> | rho_A) = (1 / tr(A rho A*)) integral zeta(s') <s|K|s'>^2 ds'.
// Evaluated through the coefficient matrix of zeta on the active set, which is
// the same grid sum regrouped.
DensityCurve embedded_density_exact(const EmbeddingOperator& a, const DensityCurve& zeta);

// p(A|s> | rho~_A) = (1 / (N tr(A rho~ A*))) sum_i <S_i|K|s>^2, by the kernel trick.
DensityCurve embedded_density_map(const EmbeddingOperator& a, const SampleSet& samples, const Grid& grid);

// curve / <s|K|s> where <s|K|s> > 1e-8 max <s|K|s>, zero elsewhere, rescaled to unit mass.
DensityCurve normalized_ratio(const DensityCurve& curve, const EmbeddingOperator& a);

inline constexpr double kRatioMaskFraction = 1e-8;

}  // namespace qdl
