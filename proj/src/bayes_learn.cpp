#include "qdl/bayes_learn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qdl {

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double safe_log(double likelihood) { return likelihood > 0.0 ? std::log(likelihood) : kNegInf; }

void validate_noise_matrix(const Eigen::MatrixXd& noise, std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  if (noise.rows() != n || noise.cols() != n) {
    throw std::invalid_argument("noise matrix must be " + std::to_string(d) + " x " + std::to_string(d));
  }
  for (Eigen::Index j = 0; j < n; ++j) {
    if ((noise.row(j).array() < 0.0).any()) throw std::invalid_argument("noise matrix has negative entries");
    if (std::abs(noise.row(j).sum() - 1.0) > 1e-12) {
      throw std::invalid_argument("noise matrix row " + std::to_string(j) + " does not sum to 1");
    }
  }
}

double discrete_likelihood_sum(std::span<const double> probs, std::span<const std::size_t> observed,
                               const Eigen::MatrixXd& noise) {
  double total = 0.0;
  for (std::size_t o : observed) {
    if (o >= probs.size()) throw std::out_of_range("observed outcome index out of range");
    double lik = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j)
      lik += noise(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(o)) * probs[j];
    total += safe_log(lik);
  }
  return total;
}

void require_noiseless(const SampleSet& samples, const char* what) {
  if (samples.size() == 0) throw std::invalid_argument(std::string(what) + ": empty sample set");
  if (samples.noisy()) {
    throw std::invalid_argument(std::string(what) +
                                ": the closed-form MAP requires noiseless samples; use log_posterior_position for "
                                "noisy samples");
  }
}

}  // namespace

NoiseKernel NoiseKernel::gaussian(double sigma, Interval interval) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("NoiseKernel: sigma must be > 0");
  NoiseKernel k;
  k.kind_ = Kind::Gaussian;
  k.sigma_ = sigma;
  k.interval_ = interval;
  return k;
}

double NoiseKernel::density(double observed, double s) const {
  if (kind_ == Kind::None) return observed == s ? std::numeric_limits<double>::infinity() : 0.0;
  if (!interval_.contains(s)) return 0.0;
  const double mass = std_normal_cdf((interval_.hi - observed) / sigma_) - std_normal_cdf((interval_.lo - observed) / sigma_);
  const double z = (observed - s) / sigma_;
  return std::exp(-0.5 * z * z) / (sigma_ * std::sqrt(2.0 * std::numbers::pi) * mass);
}

SampleSet::SampleSet(std::vector<double> points, Interval interval, std::uint64_t seed, NoiseKernel noise)
    : points_(std::move(points)), interval_(interval), seed_(seed), noise_(noise) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (!std::isfinite(points_[i]) || !interval_.contains(points_[i])) {
      throw std::invalid_argument("SampleSet: sample " + std::to_string(i) + " lies outside the interval");
    }
  }
}

DensityCurve::DensityCurve(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw std::invalid_argument("DensityCurve: values do not match grid");
  for (double x : values)
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("DensityCurve: values must be finite and >= 0");
}

double DensityCurve::at(double s) const {
  const Interval& iv = grid.interval();
  if (!iv.contains(s)) return 0.0;
  const double u = (s - iv.lo) / grid.step();
  const double cell = std::floor(u);
  auto i = static_cast<std::size_t>(cell);
  if (i >= grid.cells()) return values.back();
  const double frac = u - cell;
  if (frac == 0.0) return values[i];
  return (1.0 - frac) * values[i] + frac * values[i + 1];
}

CurvePrior homogeneous_curve_prior() {
  return [](const DensityCurve&) { return 0.0; };
}

OperatorPrior homogeneous_prior() {
  return [](const CMatrix&) { return 0.0; };
}

OperatorPrior quadratic_penalty_prior(double lambda) {
  return [lambda](const CMatrix& rho) { return -lambda * rho.squaredNorm(); };
}

double log_posterior_position(const CurvePrior& prior, const DensityCurve& zeta, const SampleSet& samples) {
  const double log_prior = prior(zeta);
  double total = 0.0;
  if (!samples.noisy()) {
    for (double s : samples.points()) total += safe_log(zeta.at(s));
    return log_prior + total;
  }
  const Grid& grid = zeta.grid;
  std::vector<double> integrand(grid.size());
  for (double observed : samples.points()) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      integrand[g] = zeta.values[g] == 0.0 ? 0.0 : samples.noise().density(observed, grid.point(g)) * zeta.values[g];
    }
    total += safe_log(trapezoid(integrand, grid));
  }
  return log_prior + total;
}

double log_posterior_discrete(const OperatorPrior& prior, const DiscreteDistribution& z,
                              std::span<const std::size_t> observed, const Eigen::MatrixXd& noise) {
  validate_noise_matrix(noise, z.dim());
  const DensityMatrix rho = ensemble_from_distribution(z);
  return prior(rho.entries()) + discrete_likelihood_sum(z.probabilities(), observed, noise);
}

double log_posterior_coefficients(const OperatorPrior& prior, const DensityMatrix& w, const UnitaryBasis& u,
                                  std::span<const std::size_t> observed, const Eigen::MatrixXd& noise) {
  if (w.dim() != u.dim()) throw std::invalid_argument("log_posterior_coefficients: dimension mismatch");
  validate_noise_matrix(noise, w.dim());
  std::vector<double> probs(w.dim());
  for (std::size_t j = 0; j < probs.size(); ++j) probs[j] = probability_from_coefficients(w, u, j);
  return prior(w.entries()) + discrete_likelihood_sum(probs, observed, noise);
}

double log_posterior_embedded(const CurvePrior& prior, const EmbeddingOperator& a, const DensityCurve& zeta,
                              const SampleSet& samples) {
  return log_posterior_position(prior, embedded_density_exact(a, zeta), samples);
}

MapCoefficients map_coefficients(const SampleSet& samples, const FunctionBasis& basis, std::span<const int> translates) {
  require_noiseless(samples, "map_coefficients");
  const BasisSpec& spec = basis.spec();
  for (int k : translates)
    if (k < spec.k_min || k > spec.k_max) throw std::invalid_argument("map_coefficients: translate outside basis range");

  const auto m = static_cast<Eigen::Index>(translates.size());
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd values(m);
  for (double s : samples.points()) {
    for (Eigen::Index r = 0; r < m; ++r) values[r] = basis.father(translates[static_cast<std::size_t>(r)], s);
    for (Eigen::Index j = 0; j < m; ++j) {
      if (values[j] == 0.0) continue;
      for (Eigen::Index l = j; l < m; ++l) acc(j, l) += values[j] * values[l];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(samples.size());
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = j; l < m; ++l) {
      acc(j, l) *= inv_n;
      acc(l, j) = acc(j, l);
    }
  return {spec, {translates.begin(), translates.end()}, std::move(acc)};
}

MapCoefficients map_coefficients(const SampleSet& samples, const FunctionBasis& basis) {
  const auto ks = basis.translates();
  return map_coefficients(samples, basis, ks);
}

MapCoefficients population_coefficients(const DensityCurve& zeta, const FunctionBasis& basis,
                                        std::span<const int> translates) {
  const Grid& grid = zeta.grid;
  const Eigen::MatrixXd psi = basis_on_grid(basis, translates, grid);
  const auto m = psi.rows();
  Eigen::VectorXd weighted(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t g = 0; g < grid.size(); ++g) weighted[static_cast<Eigen::Index>(g)] = zeta.values[g];
  weighted *= grid.step();
  weighted[0] *= 0.5;
  weighted[weighted.size() - 1] *= 0.5;
  Eigen::MatrixXd w(m, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = j; l < m; ++l) {
      const double v = psi.row(j).cwiseProduct(psi.row(l)).dot(weighted.transpose());
      w(j, l) = v;
      w(l, j) = v;
    }
  return {basis.spec(), {translates.begin(), translates.end()}, std::move(w)};
}

DensityCurve embedded_density_exact(const EmbeddingOperator& a, const DensityCurve& zeta) {
  const Grid& grid = zeta.grid;
  const double trace = trace_k_rho(a, zeta.values, grid);
  const FunctionBasis& basis = a.basis();
  const auto& active = a.active_set();
  const MapCoefficients pop = population_coefficients(zeta, basis, active);

  // B = D W D with D = diag(alpha^2), indexed by active position.
  const auto m = static_cast<Eigen::Index>(active.size());
  Eigen::MatrixXd b = pop.matrix;
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index l = 0; l < m; ++l) {
      const double aj = a.weights()[static_cast<std::size_t>(j)];
      const double al = a.weights()[static_cast<std::size_t>(l)];
      b(j, l) *= aj * aj * al * al;
    }

  std::vector<double> values(grid.size(), 0.0);
  std::vector<Eigen::Index> idx;
  std::vector<double> phi;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double s = grid.point(g);
    const auto [first, last] = basis.translates_at(s);
    idx.clear();
    phi.clear();
    for (int k = first; k <= last; ++k) {
      const auto it = std::lower_bound(active.begin(), active.end(), k);
      if (it == active.end() || *it != k) continue;
      const double v = basis.father(k, s);
      if (v == 0.0) continue;
      idx.push_back(it - active.begin());
      phi.push_back(v);
    }
    double acc = 0.0;
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = 0; q < idx.size(); ++q) acc += phi[p] * phi[q] * b(idx[p], idx[q]);
    values[g] = std::max(0.0, acc / trace);
  }
  return DensityCurve(grid, std::move(values));
}

DensityCurve embedded_density_map(const EmbeddingOperator& a, const SampleSet& samples, const Grid& grid) {
  require_noiseless(samples, "embedded_density_map");
  const double trace = trace_k_map(a, samples);
  if (trace <= kMinTrace) throw KernelNullError("embedded_density_map: samples lie in the kernel of A");

  // Each active father sampled once on its grid window; a sample's kernel
  // section is then a short weighted sum of those rows.
  const FunctionBasis& basis = a.basis();
  const std::vector<int>& active = a.active_set();
  std::vector<std::vector<double>> rows(active.size());
  std::vector<std::size_t> row_first(active.size());
  for (std::size_t r = 0; r < active.size(); ++r) {
    const auto [lo, hi] = basis.support(active[r]);
    const auto [first, last] = grid.index_range(lo, hi);
    row_first[r] = first;
    for (std::size_t g = first; g <= last && first <= last; ++g) rows[r].push_back(basis.father(active[r], grid.point(g)));
  }

  std::vector<double> acc(grid.size(), 0.0);
  std::vector<double> k;
  for (double si : samples.points()) {
    std::size_t first = grid.size(), last = 0;
    std::vector<std::pair<std::size_t, double>> terms;
    for (std::size_t r = 0; r < active.size(); ++r) {
      const double w2 = a.squared_weight(active[r]);
      const double v = w2 == 0.0 || rows[r].empty() ? 0.0 : basis.father(active[r], si);
      if (v == 0.0) continue;
      terms.emplace_back(r, w2 * v);
      first = std::min(first, row_first[r]);
      last = std::max(last, row_first[r] + rows[r].size() - 1);
    }
    if (terms.empty()) continue;
    k.assign(last - first + 1, 0.0);
    for (const auto& [r, f] : terms) {
      const std::size_t off = row_first[r] - first;
      for (std::size_t i = 0; i < rows[r].size(); ++i) k[off + i] += f * rows[r][i];
    }
    for (std::size_t i = 0; i < k.size(); ++i) acc[first + i] += k[i] * k[i];
  }
  const double scale = 1.0 / (static_cast<double>(samples.size()) * trace);
  for (double& v : acc) v *= scale;
  return DensityCurve(grid, std::move(acc));
}

DensityCurve normalized_ratio(const DensityCurve& curve, const EmbeddingOperator& a) {
  const Grid& grid = curve.grid;
  const std::vector<double> diag = kernel_diag_on(a, grid);
  const double peak = *std::max_element(diag.begin(), diag.end());
  if (!(peak > 0.0)) throw std::invalid_argument("normalized_ratio: <s|K|s> vanishes on the whole grid");
  const double eps = kRatioMaskFraction * peak;
  std::vector<double> ratio(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g)
    if (diag[g] > eps) ratio[g] = curve.values[g] / diag[g];
  const double mass = trapezoid(ratio, grid);
  if (!(mass > 0.0)) throw std::invalid_argument("normalized_ratio: ratio has zero mass");
  for (double& v : ratio) v /= mass;
  return DensityCurve(grid, std::move(ratio));
}

}  // namespace qdl
