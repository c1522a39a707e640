#include "qdl/grid.hpp"

#include <algorithm>
#include <cmath>

namespace qdl {

Grid::Grid(Interval interval, std::size_t cells)
    : interval_(interval), cells_(cells), step_(interval.length() / static_cast<double>(cells)) {
  if (cells == 0) throw std::invalid_argument("Grid: need at least one cell");
}

double Grid::point(std::size_t i) const {
  if (i == cells_) return interval_.hi;
  if (i > cells_) throw std::out_of_range("Grid::point: index past the last grid point");
  return interval_.lo + static_cast<double>(i) * step_;
}

std::vector<double> Grid::points() const {
  std::vector<double> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
  return out;
}

std::pair<std::size_t, std::size_t> Grid::index_range(double a, double b) const {
  const double lo = std::max(a, interval_.lo);
  const double hi = std::min(b, interval_.hi);
  if (lo > hi) return {1, 0};
  auto first = static_cast<std::ptrdiff_t>(std::floor((lo - interval_.lo) / step_));
  auto last = static_cast<std::ptrdiff_t>(std::ceil((hi - interval_.lo) / step_));
  first = std::clamp<std::ptrdiff_t>(first, 0, static_cast<std::ptrdiff_t>(cells_));
  last = std::clamp<std::ptrdiff_t>(last, 0, static_cast<std::ptrdiff_t>(cells_));
  return {static_cast<std::size_t>(first), static_cast<std::size_t>(last)};
}

double trapezoid(std::span<const double> values, const Grid& grid) {
  if (values.size() != grid.size()) throw std::invalid_argument("trapezoid: size mismatch with grid");
  double acc = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) acc += values[i];
  return acc * grid.step();
}

}  // namespace qdl
