#include "qdl/oracle_suites.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qdl/bayes_learn.hpp"
#include "qdl/discrete_hilbert.hpp"
#include "qdl/embedding.hpp"
#include "qdl/function_basis.hpp"
#include "qdl/random_instances.hpp"
#include "qdl/rng.hpp"
#include "qdl/target_sampling.hpp"

namespace qdl {

namespace {

CheckResult check(const std::string& suite, const std::string& name, double residual, double tolerance) {
  return {suite, name, residual, tolerance, std::isfinite(residual) && residual <= tolerance};
}

const Interval kUnitInterval{0.0, 3.0};

// 2^12 cells per unit of the mother coordinate.
Grid dyadic_grid(int scale_n) {
  const auto cells = static_cast<std::size_t>(std::ldexp(kUnitInterval.length(), scale_n + kDefaultCascadeLevel));
  return Grid(kUnitInterval, cells);
}

std::vector<CheckResult> discrete_suite() {
  constexpr int kInstances = 1000;
  UniformStream rng(20240601);
  double born_sum = 0.0, invariance = 0.0, roundtrip = 0.0, spectrum = 0.0, trace = 0.0, ensemble = 0.0;
  for (int n = 0; n < kInstances; ++n) {
    const std::size_t d = 1 + static_cast<std::size_t>(n % 8);
    const DensityMatrix rho = random_density_matrix(d, rng);
    const UnitaryBasis u = random_unitary(d, rng);
    const DensityMatrix w = change_basis(rho, u);

    double total = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double p = born_probability(rho, j);
      total += p;
      invariance = std::max(invariance, std::abs(p - probability_from_coefficients(w, u, j)));
    }
    born_sum = std::max(born_sum, std::abs(total - 1.0));

    const DensityMatrix back = change_basis(w, u.inverse());
    roundtrip = std::max(roundtrip, (back.entries() - rho.entries()).cwiseAbs().maxCoeff());
    spectrum = std::max(spectrum, (w.eigenvalues() - rho.eigenvalues()).cwiseAbs().maxCoeff());
    trace = std::max(trace, std::abs(w.entries().trace().real() - 1.0));

    const DiscreteDistribution z = random_distribution(d, rng);
    const auto diag = born_probabilities(ensemble_from_distribution(z));
    for (std::size_t j = 0; j < d; ++j) ensemble = std::max(ensemble, std::abs(diag[j] - z[j]));
  }
  return {
      check("discrete", "born probabilities sum to one", born_sum, 1e-10),
      check("discrete", "born rule basis invariance", invariance, 1e-10),
      check("discrete", "ensemble round-trip is exact", ensemble, 0.0),
      check("discrete", "change of basis round-trip", roundtrip, 1e-10),
      check("discrete", "change of basis preserves spectrum", spectrum, 1e-9),
      check("discrete", "change of basis preserves trace", trace, 1e-12),
  };
}

std::vector<CheckResult> basis_suite() {
  const ScalingTable table(kDefaultCascadeLevel);
  const auto c = daub4_refinement_coefficients();
  const std::size_t unit = table.per_unit();
  const std::size_t last = 3 * unit;

  double refine = 0.0, unity = 0.0, riemann = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    double rhs = 0.0;
    for (int t = 0; t < kDaub4Taps; ++t) {
      const auto j = static_cast<std::ptrdiff_t>(2 * i) - static_cast<std::ptrdiff_t>(t * unit);
      if (j >= 0 && j <= static_cast<std::ptrdiff_t>(last)) rhs += c[t] * table.at(static_cast<std::size_t>(j));
    }
    refine = std::max(refine, std::abs(table.at(i) - rhs));
    riemann += table.at(i);
  }
  riemann = std::abs(riemann / static_cast<double>(unit) - 1.0);
  for (std::size_t i = 0; i < unit; ++i) {
    unity = std::max(unity, std::abs(table.at(i) + table.at(i + unit) + table.at(i + 2 * unit) - 1.0));
  }

  const FunctionBasis daub = FunctionBasis::covering(Family::Daubechies4, 2, kUnitInterval);
  const Grid grid = dyadic_grid(2);
  const auto interior = daub.interior_translates();
  const Eigen::MatrixXd g = gram_check(daub, interior, grid);
  const double gram = (g - Eigen::MatrixXd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();

  const FunctionBasis haar = FunctionBasis::covering(Family::Haar, 2, kUnitInterval);
  const Eigen::MatrixXd gh = gram_check(haar, Grid(kUnitInterval, 4096 * 3));
  const double gram_haar = (gh - Eigen::MatrixXd::Identity(gh.rows(), gh.cols())).cwiseAbs().maxCoeff();

  const BetaTarget target(2.0, 5.0, kUnitInterval);
  const auto zeta = target.on(grid).values;
  const auto once = wavelet_approximation(zeta, daub, grid);
  const auto twice = wavelet_approximation(once, daub, grid);
  double idem = 0.0;
  for (std::size_t i = 0; i < once.size(); ++i) idem = std::max(idem, std::abs(once[i] - twice[i]));

  return {
      check("basis", "daubechies4 refinement residual", refine, 1e-10),
      check("basis", "daubechies4 partition of unity", unity, 1e-8),
      check("basis", "daubechies4 unit integral", riemann, 1e-4),
      check("basis", "daubechies4 n=2 interior gram", gram, 1e-6),
      check("basis", "haar n=2 gram", gram_haar, 1e-12),
      check("basis", "wavelet projection idempotence", idem, 1e-8),
  };
}

std::vector<CheckResult> embedding_suite() {
  UniformStream rng(77);
  const FunctionBasis daub = FunctionBasis::covering(Family::Daubechies4, 2, kUnitInterval);
  const EmbeddingOperator a = EmbeddingOperator::projection(daub);

  double mercer = 0.0, symmetry = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    constexpr int m = 30;
    std::vector<double> x(m);
    for (auto& v : x) v = 3.0 * rng.uniform();
    Eigen::MatrixXd k(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        k(i, j) = kernel_eval(a, x[i], x[j]);
        symmetry = std::max(symmetry, std::abs(k(i, j) - kernel_eval(a, x[j], x[i])));
      }
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    mercer = std::max(mercer, -min_eig);
  }

  // K^2 = K for a projection: integral K(s, u) K(u, t) du = K(s, t).
  const Grid grid = dyadic_grid(2);
  double reproduce = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const double s = 3.0 * rng.uniform();
    const double t = std::clamp(s + 0.8 * (rng.uniform() - 0.5), 0.0, 3.0);
    const auto ks = a.section(s);
    const auto kt = a.section(t);
    const auto prod = sample_on(grid, [&](double u) { return ks(u) * kt(u); });
    reproduce = std::max(reproduce, std::abs(trapezoid(prod, grid) - kernel_eval(a, s, t)));
  }

  const FunctionBasis haar = FunctionBasis::covering(Family::Haar, 2, kUnitInterval);
  const EmbeddingOperator ah = EmbeddingOperator::projection(haar);
  double haar_diag = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const double s = 3.0 * rng.uniform();
    haar_diag = std::max(haar_diag, std::abs(kernel_diag(ah, s) - 4.0));
  }

  return {
      check("embedding", "kernel matrix positive semi-definite", mercer, 1e-8),
      check("embedding", "kernel symmetry", symmetry, 0.0),
      check("embedding", "projection reproducing property", reproduce, 1e-5),
      check("embedding", "haar n=2 diagonal equals 2^n", haar_diag, 0.0),
  };
}

std::vector<CheckResult> learn_suite() {
  UniformStream rng(31337);
  double invariance = 0.0;
  for (int n = 0; n < 500; ++n) {
    const std::size_t d = 1 + static_cast<std::size_t>(n % 8);
    const DiscreteDistribution z = random_distribution(d, rng);
    const DensityMatrix rho = ensemble_from_distribution(z);
    const UnitaryBasis u = random_unitary(d, rng);
    const Eigen::MatrixXd noise = random_stochastic(d, rng);
    const std::size_t count = 1 + static_cast<std::size_t>(rng.uniform() * 20.0);
    std::vector<std::size_t> observed(count);
    for (auto& o : observed) o = std::min(d - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(d)));
    const DensityMatrix w = change_basis(rho, u);
    const OperatorPrior prior = (n % 2 == 0) ? homogeneous_prior() : quadratic_penalty_prior(0.7);
    const double pos = log_posterior_discrete(prior, z, observed, noise);
    const double coef = log_posterior_coefficients(prior, w, u, observed, noise);
    invariance = std::max(invariance, std::abs(pos - coef));
  }

  const Grid grid = dyadic_grid(2);
  const BetaTarget target(2.0, 5.0, kUnitInterval);
  double histogram = 0.0;
  for (int n = 0; n <= 3; ++n) {
    const FunctionBasis haar = FunctionBasis::covering(Family::Haar, n, kUnitInterval);
    const EmbeddingOperator a = EmbeddingOperator::projection(haar);
    const SampleSet samples = sample(target, 200, 100 + static_cast<std::uint64_t>(n));
    const DensityCurve map = embedded_density_map(a, samples, grid);
    const double width = std::ldexp(1.0, -n);
    const std::size_t bins = static_cast<std::size_t>(3.0 / width);
    std::vector<double> counts(bins, 0.0);
    for (double s : samples.points()) counts[std::min(bins - 1, static_cast<std::size_t>(s / width))] += 1.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const auto bin = std::min(bins - 1, static_cast<std::size_t>(grid.point(g) / width));
      const double expect = counts[bin] / (200.0 * width);
      histogram = std::max(histogram, std::abs(map.values[g] - expect));
    }
  }

  const FunctionBasis daub = FunctionBasis::covering(Family::Daubechies4, 2, kUnitInterval);
  const EmbeddingOperator a = EmbeddingOperator::projection(daub);
  const DensityCurve zeta = target.on(grid);
  const SampleSet samples = sample(target, 300, 1);
  const double norm_exact = std::abs(embedded_density_exact(a, zeta).mass() - 1.0);
  const double norm_map = std::abs(embedded_density_map(a, samples, grid).mass() - 1.0);

  const MapCoefficients w = map_coefficients(samples, daub, a.active_set());
  const double asym = (w.matrix - w.matrix.transpose()).cwiseAbs().maxCoeff();
  const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(w.matrix, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  const double diag_sum = std::abs(w.matrix.trace() - trace_k_map(a, samples));

  return {
      check("learn", "coordinate invariance of the posterior", invariance, 1e-8),
      check("learn", "haar MAP equals histogram", histogram, 1e-12),
      check("learn", "exact embedded density normalization", norm_exact, 1e-5),
      check("learn", "MAP embedded density normalization", norm_map, 1e-5),
      check("learn", "MAP coefficients symmetric", asym, 1e-12),
      check("learn", "MAP coefficients positive semi-definite", std::max(0.0, -min_eig), 1e-10),
      check("learn", "MAP trace equals tr(A rho~ A*)", diag_sum, 1e-10),
  };
}

}  // namespace

Suite suite_from_string(const std::string& name) {
  if (name == "discrete") return Suite::Discrete;
  if (name == "basis") return Suite::Basis;
  if (name == "embedding") return Suite::Embedding;
  if (name == "learn") return Suite::Learn;
  if (name == "all") return Suite::All;
  throw std::invalid_argument("unknown suite '" + name + "' (expected discrete, basis, embedding, learn or all)");
}

std::vector<CheckResult> run_suite(Suite suite) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> more) { out.insert(out.end(), more.begin(), more.end()); };
  if (suite == Suite::Discrete || suite == Suite::All) append(discrete_suite());
  if (suite == Suite::Basis || suite == Suite::All) append(basis_suite());
  if (suite == Suite::Embedding || suite == Suite::All) append(embedding_suite());
  if (suite == Suite::Learn || suite == Suite::All) append(learn_suite());
  return out;
}

}  // namespace qdl
