#pragma once

// Orthonormal real function families phi_nk(s) = 2^{n/2} phi(2^n s - k) on an
// interval: closed-form Haar and the Daubechies tap-4 father wavelet, the
// latter tabulated at dyadic points by the cascade algorithm.

#include <array>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qdl/grid.hpp"

namespace qdl {

enum class Family { Haar, Daubechies4 };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

// Two-scale coefficients c_t with sum c_t = 2, so phi(x) = sum_t c_t phi(2x - t).
inline constexpr int kDaub4Taps = 4;
std::array<double, kDaub4Taps> daub4_refinement_coefficients();

inline constexpr int kDefaultCascadeLevel = 12;
inline constexpr int kMaxCascadeLevel = 22;

// Daubechies tap-4 father wavelet tabulated at x = i / 2^level, i = 0 .. 3 * 2^level.
class ScalingTable {
public:
  explicit ScalingTable(int level = kDefaultCascadeLevel);

  int level() const { return level_; }
  std::size_t per_unit() const { return std::size_t{1} << level_; }
  std::span<const double> values() const { return values_; }
  double at(std::size_t i) const { return values_[i]; }

  // Linear interpolation between table points; zero outside [0, 3].
  double operator()(double x) const;

private:
  int level_;
  std::vector<double> values_;
};

struct BasisSpec {
  Family family = Family::Daubechies4;
  int scale_n = 2;
  int k_min = 0;
  int k_max = 0;

  // Every translate whose support meets the open interval (lo, hi).
  static BasisSpec covering(Family family, int scale_n, const Interval& interval);

  std::size_t size() const { return static_cast<std::size_t>(k_max - k_min + 1); }
};

// Support width of the father wavelet in mother coordinates.
double support_width(Family family);

class FunctionBasis {
public:
  FunctionBasis(BasisSpec spec, Interval interval, int cascade_level = kDefaultCascadeLevel);

  static FunctionBasis covering(Family family, int scale_n, const Interval& interval,
                                int cascade_level = kDefaultCascadeLevel) {
    return FunctionBasis(BasisSpec::covering(family, scale_n, interval), interval, cascade_level);
  }

  const BasisSpec& spec() const { return spec_; }
  const Interval& interval() const { return interval_; }
  Family family() const { return spec_.family; }
  int scale_n() const { return spec_.scale_n; }
  double dilation() const { return dilation_; }

  // phi_nk(s) on the real line (the interval does not truncate evaluation).
  // Haar bins are half-open [k, k+1) / 2^n except the one ending at the
  // interval's upper bound, which is closed.
  double father(int k, double s) const;
  // Left limit phi_nk(s-); differs from father() only at Haar jumps.
  double father_left(int k, double s) const;

  // Support [k / 2^n, (k + width) / 2^n].
  std::pair<double, double> support(int k) const;

  // Translates of the spec whose support may contain s, ascending.
  std::pair<int, int> translates_at(double s) const;

  std::vector<int> translates() const;

  // Translates whose support lies entirely inside the interval; these are
  // exactly orthonormal on the interval.
  std::vector<int> interior_translates() const;

  const ScalingTable* table() const { return table_.get(); }

private:
  BasisSpec spec_;
  Interval interval_;
  double dilation_;
  double amplitude_;
  std::shared_ptr<const ScalingTable> table_;
};

// phi_nk(s) from the spec alone; Haar bins are all half-open here.
double eval_father(const BasisSpec& spec, int k, double s);

// Basis values on the grid: row r is phi_{n, translates[r]} at every grid point.
Eigen::MatrixXd basis_on_grid(const FunctionBasis& basis, std::span<const int> translates, const Grid& grid);

// Gram matrix G(a, b) = <phi_a, phi_b> by the composite trapezoid rule applied
// cell by cell with one-sided limits at the cell ends, so step functions with
// jumps on grid points integrate exactly. Diagnostic.
Eigen::MatrixXd gram_check(const FunctionBasis& basis, std::span<const int> translates, const Grid& grid);
Eigen::MatrixXd gram_check(const FunctionBasis& basis, const Grid& grid);

// Orthogonal projection of f onto span{phi_nk} under the grid inner product.
// Coefficients solve G c = b with b_k = <phi_nk, f>; when the family is
// orthonormal on the grid G is the identity and c_k = <phi_nk, f>.
struct WaveletProjection {
  std::vector<int> translates;
  Eigen::VectorXd coefficients;
  std::vector<double> values;
};

WaveletProjection wavelet_projection(std::span<const double> f, const FunctionBasis& basis, const Grid& grid);

std::vector<double> wavelet_approximation(std::span<const double> f, const FunctionBasis& basis, const Grid& grid);

}  // namespace qdl
