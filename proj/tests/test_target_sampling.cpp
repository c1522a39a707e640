#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>

#include "qdl/rng.hpp"
#include "qdl/target_sampling.hpp"

using namespace qdl;

namespace {

const Interval kDomain{0.0, 3.0};

std::string contents(const SampleSet& s) {
  std::ostringstream out;
  write_samples(out, s);
  return out.str();
}

std::string error_of(const std::string& text) {
  std::istringstream in(text);
  try {
    read_samples(in, kDomain);
  } catch (const std::invalid_argument& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("BetaTarget density") {
  const BetaTarget t(2, 5, kDomain);
  SUBCASE("closed form 30 x (1-x)^4 / 3") {
    for (double s : {0.3, 1.0, 1.5, 2.7}) {
      const double x = s / 3.0;
      CHECK(t.density(s) == doctest::Approx(30.0 * x * std::pow(1.0 - x, 4) / 3.0).epsilon(1e-13));
    }
  }
  SUBCASE("mode at (a-1)/(a+b-2) of the interval") {
    CHECK(t.density(0.6) > t.density(0.59));
    CHECK(t.density(0.6) > t.density(0.61));
  }
  SUBCASE("endpoints and outside") {
    CHECK(t.density(0.0) == 0.0);
    CHECK(t.density(3.0) == 0.0);
    CHECK(t.density(-0.1) == 0.0);
    CHECK(t.density(3.1) == 0.0);
    CHECK(BetaTarget(1, 1, kDomain).density(0.0) == doctest::Approx(1.0 / 3.0));
    CHECK(std::isinf(BetaTarget(0.5, 2, kDomain).density(0.0)));
  }
  SUBCASE("unit mass for random shapes, tanh-sinh oracle") {
    UniformStream rng(5);
    boost::math::quadrature::tanh_sinh<double> integrator;
    for (int rep = 0; rep < 40; ++rep) {
      const double a = 0.5 + 7.5 * rng.uniform();
      const double b = 0.5 + 7.5 * rng.uniform();
      const BetaTarget target(a, b, kDomain);
      const double mass = integrator.integrate([&](double s) { return target.density(s); }, 0.0, 3.0);
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  SUBCASE("invalid shapes") {
    CHECK_THROWS_AS(BetaTarget(0, 1, kDomain), std::invalid_argument);
    CHECK_THROWS_AS(BetaTarget(1, -2, kDomain), std::invalid_argument);
    CHECK_THROWS_AS(BetaTarget(std::nan(""), 1, kDomain), std::invalid_argument);
  }
}

TEST_CASE("regularized incomplete beta against boost") {
  UniformStream rng(6);
  double worst = 0.0;
  for (int rep = 0; rep < 2000; ++rep) {
    const double a = 0.5 + 7.5 * rng.uniform();
    const double b = 0.5 + 7.5 * rng.uniform();
    const double x = rng.uniform();
    worst = std::max(worst, std::abs(regularized_incomplete_beta(a, b, x) - boost::math::ibeta(a, b, x)));
  }
  CHECK(worst < 1e-13);
  CHECK(regularized_incomplete_beta(2, 5, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2, 5, 1.0) == 1.0);
  CHECK_THROWS_AS(regularized_incomplete_beta(0, 5, 0.5), std::invalid_argument);
}

TEST_CASE("BetaTarget cdf and quantile") {
  const BetaTarget t(2, 5, kDomain);
  CHECK(t.cdf(-1.0) == 0.0);
  CHECK(t.cdf(3.0) == 1.0);
  CHECK(t.cdf(1.2) == doctest::Approx(boost::math::ibeta(2.0, 5.0, 0.4)).epsilon(1e-13));
  UniformStream rng(7);
  for (int rep = 0; rep < 500; ++rep) {
    const double u = rng.uniform();
    CHECK(std::abs(t.cdf(t.quantile(u)) - u) < 1e-8);
  }
  CHECK(t.quantile(0.0) == 0.0);
  CHECK(t.quantile(1.0) == 3.0);
  CHECK_THROWS_AS(t.quantile(1.5), std::invalid_argument);
}

TEST_CASE("sample") {
  const BetaTarget t(2, 5, kDomain);
  SUBCASE("same seed, same points") {
    CHECK(sample(t, 100, 3).points() == sample(t, 100, 3).points());
    CHECK(sample(t, 100, 3).points() != sample(t, 100, 4).points());
  }
  SUBCASE("records the seed and stays inside the open interval") {
    const auto s = sample(t, 10000, 8);
    CHECK(s.seed() == 8);
    CHECK_FALSE(s.noisy());
    for (double x : s.points()) {
      CHECK(x > 0.0);
      CHECK(x < 3.0);
    }
  }
  SUBCASE("mean within 4 standard errors at n = 1e5") {
    const std::size_t n = 100000;
    const auto s = sample(t, n, 9);
    double sum = 0.0;
    for (double x : s.points()) sum += x;
    const double mean = 3.0 * 2.0 / 7.0;
    const double var = 9.0 * (2.0 * 5.0) / (49.0 * 8.0);
    CHECK(std::abs(sum / static_cast<double>(n) - mean) < 4.0 * std::sqrt(var / static_cast<double>(n)));
  }
  SUBCASE("Kolmogorov-Smirnov at n = 1e4 below the 1% critical value") {
    const std::size_t n = 10000;
    auto pts = sample(t, n, 10).points();
    std::sort(pts.begin(), pts.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f = boost::math::ibeta(2.0, 5.0, pts[i] / 3.0);
      d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
  }
  SUBCASE("n = 0 rejected") { CHECK_THROWS_AS(sample(t, 0, 1), std::invalid_argument); }
}

TEST_CASE("sample file I/O") {
  SUBCASE("write then read round-trips exactly") {
    const auto s = sample(BetaTarget(0.7, 3.1, kDomain), 500, 11);
    std::istringstream in(contents(s));
    CHECK(read_samples(in, kDomain).points() == s.points());
  }
  SUBCASE("one decimal per line, 17 significant digits") {
    const SampleSet s({0.1, 2.0}, kDomain);
    CHECK(contents(s) == "0.10000000000000001\n2\n");
  }
  SUBCASE("comments, blanks and surrounding whitespace are skipped") {
    std::istringstream in("# header\n\n  1.5 \n0.25\r\n");
    CHECK(read_samples(in, kDomain).points() == std::vector<double>{1.5, 0.25});
  }
  SUBCASE("errors name the offending line") {
    CHECK(error_of("0.5\n1.0\nabc\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("0.5\n1.0x\n").rfind("line 2:", 0) == 0);
    CHECK(error_of("nan\n").rfind("line 1:", 0) == 0);
    CHECK(error_of("0.5\n\n3.5\n").rfind("line 3:", 0) == 0);
    CHECK(error_of("0.5\n\n3.5\n").find("outside the interval") != std::string::npos);
    CHECK(error_of("").find("no samples") != std::string::npos);
    CHECK(error_of("# only a comment\n").find("no samples") != std::string::npos);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(read_samples_file("/nonexistent/samples.txt", kDomain), std::invalid_argument);
  }
}
