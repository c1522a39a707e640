#include "qdl/discrete_hilbert.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdl {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                std::to_string(b) + ")");
  }
}

}  // namespace

WaveFunction::WaveFunction(CVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw std::invalid_argument("WaveFunction: empty amplitude vector");
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > tol::kNorm) {
    throw std::invalid_argument("WaveFunction: squared norm must equal 1");
  }
}

WaveFunction WaveFunction::canonical(std::span<const double> probabilities) {
  const DiscreteDistribution z({probabilities.begin(), probabilities.end()});
  CVector amps(static_cast<Eigen::Index>(z.dim()));
  for (std::size_t j = 0; j < z.dim(); ++j) amps[static_cast<Eigen::Index>(j)] = std::sqrt(z[j]);
  return WaveFunction(std::move(amps));
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> probabilities)
    : probabilities_(std::move(probabilities)) {
  if (probabilities_.empty()) throw std::invalid_argument("DiscreteDistribution: empty");
  double total = 0.0;
  for (double p : probabilities_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("DiscreteDistribution: negative or non-finite entry");
    total += p;
  }
  if (std::abs(total - 1.0) > tol::kDistribution) throw std::invalid_argument("DiscreteDistribution: entries must sum to 1");
}

DensityMatrix::DensityMatrix(CMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  const double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::kHermitian) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (asym > 0.0) entries_ = (0.5 * (entries_ + entries_.adjoint())).eval();
  if (std::abs(entries_.trace().real() - 1.0) > tol::kTrace) {
    throw std::invalid_argument("DensityMatrix: trace must equal 1");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(entries_);
  const double min_eig = eig.eigenvalues().minCoeff();
  if (min_eig < -tol::kPsd) throw std::invalid_argument("DensityMatrix: not positive semi-definite");
  if (min_eig < 0.0) {
    Eigen::VectorXd lambda = eig.eigenvalues().cwiseMax(0.0);
    lambda /= lambda.sum();
    entries_ = eig.eigenvectors() * lambda.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  }
}

DensityMatrix DensityMatrix::pure(const WaveFunction& z) {
  return DensityMatrix(z.amplitudes() * z.amplitudes().adjoint());
}

Eigen::VectorXd DensityMatrix::eigenvalues() const {
  return Eigen::SelfAdjointEigenSolver<CMatrix>(entries_, Eigen::EigenvaluesOnly).eigenvalues();
}

bool DensityMatrix::is_ensemble() const {
  for (Eigen::Index j = 0; j < entries_.rows(); ++j)
    for (Eigen::Index l = 0; l < entries_.cols(); ++l)
      if (j != l && entries_(j, l) != Complex(0.0, 0.0)) return false;
  return true;
}

UnitaryBasis::UnitaryBasis(CMatrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() == 0 || columns_.rows() != columns_.cols()) {
    throw std::invalid_argument("UnitaryBasis: matrix must be square and non-empty");
  }
  const CMatrix gram = columns_.adjoint() * columns_;
  const double err = (gram - CMatrix::Identity(columns_.rows(), columns_.cols())).cwiseAbs().maxCoeff();
  if (err > tol::kUnitary) throw std::invalid_argument("UnitaryBasis: columns are not orthonormal");
}

UnitaryBasis UnitaryBasis::identity(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  return UnitaryBasis(CMatrix::Identity(n, n));
}

UnitaryBasis UnitaryBasis::inverse() const { return UnitaryBasis(columns_.adjoint()); }

DensityMatrix ensemble_from_distribution(const DiscreteDistribution& z) {
  const auto d = static_cast<Eigen::Index>(z.dim());
  CMatrix rho = CMatrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) rho(j, j) = z[static_cast<std::size_t>(j)];
  return DensityMatrix(std::move(rho));
}

DiscreteDistribution distribution_from_ensemble(const DensityMatrix& rho) {
  if (!rho.is_ensemble()) throw std::invalid_argument("distribution_from_ensemble: density matrix is not diagonal");
  return DiscreteDistribution(born_probabilities(rho));
}

double born_probability(const DensityMatrix& rho, std::size_t j) {
  if (j >= rho.dim()) throw std::out_of_range("born_probability: outcome index out of range");
  return rho(j, j).real();
}

std::vector<double> born_probabilities(const DensityMatrix& rho) {
  std::vector<double> out(rho.dim());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = rho(j, j).real();
  return out;
}

DensityMatrix change_basis(const DensityMatrix& rho, const UnitaryBasis& u) {
  require_same_dim(rho.dim(), u.dim(), "change_basis");
  CMatrix w = u.columns().adjoint() * rho.entries() * u.columns();
  w = (0.5 * (w + w.adjoint())).eval();
  return DensityMatrix(std::move(w));
}

double probability_from_coefficients(const DensityMatrix& w, const UnitaryBasis& u, std::size_t j) {
  require_same_dim(w.dim(), u.dim(), "probability_from_coefficients");
  if (j >= w.dim()) throw std::out_of_range("probability_from_coefficients: outcome index out of range");
  const auto row = static_cast<Eigen::Index>(j);
  // <s_j|psi_k> = U(j, k); <psi_l|s_j> = conj(U(j, l))
  const auto amps = u.columns().row(row);
  Complex acc(0.0, 0.0);
  for (Eigen::Index k = 0; k < amps.size(); ++k) {
    Complex inner(0.0, 0.0);
    for (Eigen::Index l = 0; l < amps.size(); ++l) inner += w.entries()(k, l) * std::conj(amps[l]);
    acc += amps[k] * inner;
  }
  return acc.real();
}

}  // namespace qdl
