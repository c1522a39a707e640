#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "qdl/bayes_learn.hpp"
#include "qdl/grid.hpp"

namespace qdl {

// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// Beta(a, b) density rescaled from [0, 1] onto the interval.
class BetaTarget {
public:
  BetaTarget(double a, double b, Interval interval);

  double a() const { return a_; }
  double b() const { return b_; }
  const Interval& interval() const { return interval_; }

  // Zero outside the interval.
  double density(double s) const;
  double cdf(double s) const;
  // Bisection on the CDF to an absolute tolerance of 1e-12 in [0, 1] units.
  double quantile(double u) const;

  DensityCurve on(const Grid& grid) const;

private:
  double a_;
  double b_;
  Interval interval_;
  double log_norm_;
};

// n inverse-CDF draws from a UniformStream seeded with `seed`; noiseless.
SampleSet sample(const BetaTarget& target, std::size_t n, std::uint64_t seed);

// One sample per line, 17 significant digits.
void write_samples(std::ostream& out, const SampleSet& samples);

// Blank lines and lines starting with '#' are skipped. Malformed lines and
// out-of-interval values raise std::invalid_argument naming the line number.
SampleSet read_samples(std::istream& in, const Interval& interval);
SampleSet read_samples_file(const std::string& path, const Interval& interval);

}  // namespace qdl
