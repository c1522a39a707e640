#include "qdl/target_sampling.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "qdl/rng.hpp"

namespace qdl {

namespace {

// Continued fraction for I_x(a, b), valid for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("regularized_incomplete_beta: continued fraction did not converge");
}

double log_beta_function(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("regularized_incomplete_beta: a, b must be > 0");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front =
      std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta_function(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

BetaTarget::BetaTarget(double a, double b, Interval interval)
    : a_(a), b_(b), interval_(interval), log_norm_(0.0) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("BetaTarget: shape parameters must be finite and > 0");
  }
  log_norm_ = -log_beta_function(a, b) - std::log(interval.length());
}

double BetaTarget::density(double s) const {
  if (!interval_.contains(s)) return 0.0;
  const double x = (s - interval_.lo) / interval_.length();
  if (x <= 0.0) return a_ < 1.0 ? std::numeric_limits<double>::infinity() : (a_ == 1.0 ? std::exp(log_norm_) : 0.0);
  if (x >= 1.0) return b_ < 1.0 ? std::numeric_limits<double>::infinity() : (b_ == 1.0 ? std::exp(log_norm_) : 0.0);
  return std::exp(log_norm_ + (a_ - 1.0) * std::log(x) + (b_ - 1.0) * std::log1p(-x));
}

double BetaTarget::cdf(double s) const {
  if (s <= interval_.lo) return 0.0;
  if (s >= interval_.hi) return 1.0;
  return regularized_incomplete_beta(a_, b_, (s - interval_.lo) / interval_.length());
}

double BetaTarget::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("BetaTarget::quantile: u must lie in [0, 1]");
  if (u == 0.0) return interval_.lo;
  if (u == 1.0) return interval_.hi;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(a_, b_, mid) < u) lo = mid;
    else hi = mid;
  }
  return interval_.lo + 0.5 * (lo + hi) * interval_.length();
}

DensityCurve BetaTarget::on(const Grid& grid) const {
  return DensityCurve(grid, sample_on(grid, [this](double s) { return density(s); }));
}

SampleSet sample(const BetaTarget& target, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample: n must be >= 1");
  UniformStream rng(seed);
  std::vector<double> pts(n);
  for (auto& p : pts) p = target.quantile(rng.uniform());
  return SampleSet(std::move(pts), target.interval(), seed);
}

void write_samples(std::ostream& out, const SampleSet& samples) {
  char buf[64];
  for (double s : samples.points()) {
    std::snprintf(buf, sizeof buf, "%.17g\n", s);
    out << buf;
  }
}

SampleSet read_samples(std::istream& in, const Interval& interval) {
  std::vector<double> pts;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    const auto end = line.find_last_not_of(" \t\r") + 1;
    double v = 0.0;
    const char* first = line.data() + begin;
    const char* last = line.data() + end;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": not a decimal number: '" +
                                  line.substr(begin, end - begin) + "'");
    }
    if (!interval.contains(v)) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": sample " + line.substr(begin, end - begin) +
                                  " lies outside the interval");
    }
    pts.push_back(v);
  }
  if (pts.empty()) throw std::invalid_argument("sample file contains no samples");
  return SampleSet(std::move(pts), interval);
}

SampleSet read_samples_file(const std::string& path, const Interval& interval) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sample file '" + path + "'");
  return read_samples(in, interval);
}

}  // namespace qdl
