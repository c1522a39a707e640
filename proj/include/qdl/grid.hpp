#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qdl {

// Closed interval [lo, hi] carrying Lebesgue measure.
struct Interval {
  double lo = 0.0;
  double hi = 3.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi)) throw std::invalid_argument("Interval: lo must be < hi");
  }

  double length() const { return hi - lo; }
  bool contains(double s) const { return s >= lo && s <= hi; }
  bool operator==(const Interval&) const = default;
};

// Uniform grid with `cells` cells; both endpoints are grid points.
class Grid {
public:
  Grid(Interval interval, std::size_t cells);

  const Interval& interval() const { return interval_; }
  std::size_t cells() const { return cells_; }
  std::size_t size() const { return cells_ + 1; }
  double step() const { return step_; }
  double point(std::size_t i) const;
  std::vector<double> points() const;

  // Index range [first, last] of grid points inside [a, b] (clamped);
  // returns first > last when empty.
  std::pair<std::size_t, std::size_t> index_range(double a, double b) const;

  bool operator==(const Grid& other) const {
    return interval_ == other.interval_ && cells_ == other.cells_;
  }

private:
  Interval interval_;
  std::size_t cells_;
  double step_;
};

// Composite trapezoid rule over grid samples.
double trapezoid(std::span<const double> values, const Grid& grid);

// Evaluate a callable at every grid point.
template <typename F>
std::vector<double> sample_on(const Grid& grid, F&& f) {
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f(grid.point(i));
  return out;
}

}  // namespace qdl
