#include "qdl/function_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qdl {

std::string to_string(Family family) {
  switch (family) {
    case Family::Haar: return "haar";
    case Family::Daubechies4: return "daubechies4";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  if (name == "haar") return Family::Haar;
  if (name == "daubechies4" || name == "daub4") return Family::Daubechies4;
  throw std::invalid_argument("unknown basis family '" + name + "' (expected haar or daubechies4)");
}

std::array<double, kDaub4Taps> daub4_refinement_coefficients() {
  const double r3 = std::numbers::sqrt3;
  return {(1.0 + r3) / 4.0, (3.0 + r3) / 4.0, (3.0 - r3) / 4.0, (1.0 - r3) / 4.0};
}

double support_width(Family family) { return family == Family::Haar ? 1.0 : 3.0; }

ScalingTable::ScalingTable(int level) : level_(level) {
  if (level < 0) throw std::invalid_argument("ScalingTable: level must be >= 0");
  if (level > kMaxCascadeLevel) {
    throw std::length_error("ScalingTable: level " + std::to_string(level) + " exceeds the cap of " +
                            std::to_string(kMaxCascadeLevel));
  }
  const auto c = daub4_refinement_coefficients();
  const std::size_t unit = per_unit();
  const std::size_t last = 3 * unit;
  values_.assign(last + 1, 0.0);

  // Integer samples: phi(1) = c1 phi(1) + c0 phi(2), phi(2) = c3 phi(1) + c2 phi(2),
  // the eigenvalue-1 eigenvector normalized to phi(1) + phi(2) = 1.
  Eigen::Matrix2d refine;
  refine << c[1], c[0], c[3], c[2];
  Eigen::EigenSolver<Eigen::Matrix2d> eig(refine);
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < 2; ++i)
    if (std::abs(eig.eigenvalues()[i] - 1.0) < std::abs(eig.eigenvalues()[best] - 1.0)) best = i;
  Eigen::Vector2d v = eig.eigenvectors().col(best).real();
  v /= v.sum();
  values_[unit] = v[0];
  values_[2 * unit] = v[1];

  // Cascade: level l fills odd multiples of 2^-l from level l-1 values.
  for (int l = 1; l <= level; ++l) {
    const std::size_t stride = std::size_t{1} << (level - l);
    for (std::size_t i = stride; i < last; i += 2 * stride) {
      double acc = 0.0;
      for (int t = 0; t < kDaub4Taps; ++t) {
        const auto j = static_cast<std::ptrdiff_t>(2 * i) - static_cast<std::ptrdiff_t>(t * unit);
        if (j >= 0 && j <= static_cast<std::ptrdiff_t>(last)) acc += c[t] * values_[static_cast<std::size_t>(j)];
      }
      values_[i] = acc;
    }
  }
}

double ScalingTable::operator()(double x) const {
  if (!(x >= 0.0) || x > 3.0) return 0.0;
  const double u = std::ldexp(x, level_);
  const double cell = std::floor(u);
  const auto i = static_cast<std::size_t>(cell);
  if (i + 1 >= values_.size()) return values_.back();
  const double frac = u - cell;
  if (frac == 0.0) return values_[i];
  return (1.0 - frac) * values_[i] + frac * values_[i + 1];
}

BasisSpec BasisSpec::covering(Family family, int scale_n, const Interval& interval) {
  if (scale_n < 0) throw std::invalid_argument("BasisSpec: scale_n must be >= 0");
  const double dil = std::ldexp(1.0, scale_n);
  const double width = support_width(family);
  BasisSpec spec;
  spec.family = family;
  spec.scale_n = scale_n;
  spec.k_min = static_cast<int>(std::floor(dil * interval.lo - width)) + 1;
  spec.k_max = static_cast<int>(std::ceil(dil * interval.hi)) - 1;
  return spec;
}

FunctionBasis::FunctionBasis(BasisSpec spec, Interval interval, int cascade_level)
    : spec_(spec),
      interval_(interval),
      dilation_(std::ldexp(1.0, spec.scale_n)),
      amplitude_(std::sqrt(std::ldexp(1.0, spec.scale_n))) {
  if (spec_.scale_n < 0) throw std::invalid_argument("FunctionBasis: scale_n must be >= 0");
  if (spec_.k_min > spec_.k_max) throw std::invalid_argument("FunctionBasis: empty translate range");
  const BasisSpec needed = BasisSpec::covering(spec_.family, spec_.scale_n, interval_);
  if (spec_.k_min > needed.k_min || spec_.k_max < needed.k_max) {
    throw std::invalid_argument("FunctionBasis: translate range must cover every father meeting the interval (k in [" +
                                std::to_string(needed.k_min) + ", " + std::to_string(needed.k_max) + "])");
  }
  if (spec_.family == Family::Daubechies4) table_ = std::make_shared<const ScalingTable>(cascade_level);
}

double FunctionBasis::father(int k, double s) const {
  const double x = dilation_ * s - static_cast<double>(k);
  if (spec_.family == Family::Haar) {
    if (x >= 0.0 && x < 1.0) return amplitude_;
    // the bin ending at the interval's upper bound is closed
    return (x == 1.0 && s == interval_.hi) ? amplitude_ : 0.0;
  }
  return amplitude_ * (*table_)(x);
}

double FunctionBasis::father_left(int k, double s) const {
  if (spec_.family != Family::Haar) return father(k, s);
  const double x = dilation_ * s - static_cast<double>(k);
  return (x > 0.0 && x <= 1.0) ? amplitude_ : 0.0;
}

std::pair<double, double> FunctionBasis::support(int k) const {
  return {static_cast<double>(k) / dilation_, (static_cast<double>(k) + support_width(spec_.family)) / dilation_};
}

std::pair<int, int> FunctionBasis::translates_at(double s) const {
  const double x = dilation_ * s;
  const int first = std::max(spec_.k_min, static_cast<int>(std::ceil(x - support_width(spec_.family))));
  const int last = std::min(spec_.k_max, static_cast<int>(std::floor(x)));
  return {first, last};
}

std::vector<int> FunctionBasis::translates() const {
  std::vector<int> out;
  for (int k = spec_.k_min; k <= spec_.k_max; ++k) out.push_back(k);
  return out;
}

std::vector<int> FunctionBasis::interior_translates() const {
  std::vector<int> out;
  for (int k = spec_.k_min; k <= spec_.k_max; ++k) {
    const auto [a, b] = support(k);
    if (a >= interval_.lo && b <= interval_.hi) out.push_back(k);
  }
  return out;
}

double eval_father(const BasisSpec& spec, int k, double s) {
  static const ScalingTable table(kDefaultCascadeLevel);
  const double dil = std::ldexp(1.0, spec.scale_n);
  const double x = dil * s - static_cast<double>(k);
  if (spec.family == Family::Haar) return (x >= 0.0 && x < 1.0) ? std::sqrt(dil) : 0.0;
  return std::sqrt(dil) * table(x);
}

Eigen::MatrixXd basis_on_grid(const FunctionBasis& basis, std::span<const int> translates, const Grid& grid) {
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(translates.size()),
                                              static_cast<Eigen::Index>(grid.size()));
  for (std::size_t r = 0; r < translates.size(); ++r) {
    const auto [a, b] = basis.support(translates[r]);
    const auto [first, last] = grid.index_range(a, b);
    for (std::size_t i = first; i <= last && first <= last; ++i)
      psi(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = basis.father(translates[r], grid.point(i));
  }
  return psi;
}

namespace {

Eigen::VectorXd trapezoid_weights(const Grid& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(grid.size()), grid.step());
  w[0] *= 0.5;
  w[w.size() - 1] *= 0.5;
  return w;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& psi, const Eigen::VectorXd& w) {
  const Eigen::Index m = psi.rows();
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a; b < m; ++b) {
      const double v = (psi.row(a).transpose().cwiseProduct(psi.row(b).transpose())).dot(w);
      gram(a, b) = v;
      gram(b, a) = v;
    }
  return gram;
}

}  // namespace

Eigen::MatrixXd gram_check(const FunctionBasis& basis, std::span<const int> translates, const Grid& grid) {
  const auto m = static_cast<Eigen::Index>(translates.size());
  const auto n = static_cast<Eigen::Index>(grid.size());
  // Right limits at cell starts, left limits at cell ends.
  const Eigen::MatrixXd right = basis_on_grid(basis, translates, grid);
  Eigen::MatrixXd left = Eigen::MatrixXd::Zero(m, n);
  for (Eigen::Index r = 0; r < m; ++r) {
    const int k = translates[static_cast<std::size_t>(r)];
    const auto [a, b] = basis.support(k);
    const auto [first, last] = grid.index_range(a, b);
    for (std::size_t i = first; i <= last && first <= last; ++i)
      left(r, static_cast<Eigen::Index>(i)) = basis.father_left(k, grid.point(i));
  }
  Eigen::VectorXd w_right = Eigen::VectorXd::Constant(n, 0.5 * grid.step());
  Eigen::VectorXd w_left = w_right;
  w_right[n - 1] = 0.0;
  w_left[0] = 0.0;
  return weighted_gram(right, w_right) + weighted_gram(left, w_left);
}

Eigen::MatrixXd gram_check(const FunctionBasis& basis, const Grid& grid) {
  const auto ks = basis.translates();
  return gram_check(basis, ks, grid);
}

WaveletProjection wavelet_projection(std::span<const double> f, const FunctionBasis& basis, const Grid& grid) {
  if (f.size() != grid.size()) throw std::invalid_argument("wavelet_projection: function values do not match grid");
  WaveletProjection out;
  out.translates = basis.translates();
  const Eigen::MatrixXd psi = basis_on_grid(basis, out.translates, grid);
  const Eigen::VectorXd w = trapezoid_weights(grid);
  const Eigen::Map<const Eigen::VectorXd> fv(f.data(), static_cast<Eigen::Index>(f.size()));
  const Eigen::VectorXd rhs = psi * fv.cwiseProduct(w);
  // Plain trapezoid inner product on both sides keeps the projection exactly idempotent.
  const Eigen::MatrixXd gram = weighted_gram(psi, w);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success) throw std::runtime_error("wavelet_projection: Gram matrix factorization failed");
  out.coefficients = ldlt.solve(rhs);
  const Eigen::VectorXd values = psi.transpose() * out.coefficients;
  out.values.assign(values.data(), values.data() + values.size());
  return out;
}

std::vector<double> wavelet_approximation(std::span<const double> f, const FunctionBasis& basis, const Grid& grid) {
  return wavelet_projection(f, basis, grid).values;
}

}  // namespace qdl
