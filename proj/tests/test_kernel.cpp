#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <catch_amalgamated.hpp>

#include "oracle/alb_oracle.hpp"
#include "support.hpp"

using namespace albscreen;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

// Closed-form values evaluated at 50 digits: K0(0) = 0.14379998546958920...,
// K0(1) = 0.11309145608820521...
constexpr double k0_at_0 = 0.1437999854695892;
constexpr double k0_at_1 = 0.1130914560882052;

TEST_CASE("hall kernel closed-form values", "[kernel]")
{
  CHECK_THAT(hall_kernel(0.0), WithinAbs(k0_at_0, 1e-6));
  CHECK_THAT(hall_kernel(1.0), WithinAbs(k0_at_1, 1e-6));
  CHECK(hall_kernel(-1.0) == hall_kernel(1.0));
  CHECK_THAT(hall_kernel(0.0), WithinRel(oracle::hall(0).convert_to<double>(), 1e-14));
  CHECK_THAT(hall_kernel(1.0), WithinRel(oracle::hall(1).convert_to<double>(), 1e-14));
}

TEST_CASE("hall kernel matches the oracle away from zero", "[kernel]")
{
  for (double z : {0.25, 2.0, 17.5, 1e3, 1e6})
    CHECK_THAT(hall_kernel(z), WithinRel(oracle::hall(z).convert_to<double>(), 1e-12));
}

TEST_CASE("hall kernel rejects non-finite input", "[kernel]")
{
  CHECK_THROWS_AS(hall_kernel(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  CHECK_THROWS_AS(hall_kernel(std::numeric_limits<double>::infinity()), std::domain_error);
  CHECK_THROWS_AS(gaussian_kernel(-std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("hall kernel integrates to one", "[kernel]")
{
  // z = expm1(u) maps the heavy tail onto a Gaussian-like integrand in u.
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double upper = std::log1p(1e6);
  const double half = integrator.integrate(
      [](double u) { return hall_kernel(std::expm1(u)) * std::exp(u); }, 0.0, upper);
  CHECK_THAT(2.0 * half, WithinAbs(1.0, 1e-4));

  const double gauss = integrator.integrate([](double z) { return gaussian_kernel(z); }, -40.0, 40.0);
  CHECK_THAT(gauss, WithinAbs(1.0, 1e-10));
}

TEST_CASE("hall kernel is symmetric, positive and peaked at zero", "[kernel]")
{
  Rng rng(101);
  for (int k = 0; k < 10000; ++k) {
    const double z = rng.normal(0.0, 50.0);
    REQUIRE(hall_kernel(z) == hall_kernel(-z));
    REQUIRE(hall_kernel(z) > 0.0);
  }
  double prev = hall_kernel(0.0);
  for (int k = 1; k <= 10000; ++k) {
    const double v = hall_kernel(k * 0.01);
    REQUIRE(v <= prev);
    prev = v;
  }
}

TEST_CASE("kde_eval examples", "[kernel]")
{
  const std::vector<double> one{0.0};
  CHECK_THAT(kde_eval(0.0, one, 1.0), WithinAbs(k0_at_0, 1e-6));
  const std::vector<double> fives{5.0, 5.0};
  CHECK_THAT(kde_eval(5.0, fives, 2.0), WithinAbs(k0_at_0 / 2.0, 1e-6));
  CHECK_THAT(kde_eval(5.0, fives, 2.0), WithinAbs(0.0718999927347946, 1e-12));

  CHECK_THROWS_AS(kde_eval(0.0, std::vector<double>{}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kde_eval(0.0, one, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(kde_eval(0.0, one, -1.0), std::invalid_argument);
}

TEST_CASE("kde_eval affine covariance and permutation invariance", "[kernel]")
{
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> pts(1 + rng.below(30));
    for (auto& p : pts)
      p = rng.normal(0.0, 3.0);
    const double x = rng.normal(0.0, 3.0);
    const double b = 0.05 + rng.uniform();
    double a = rng.normal(0.0, 4.0);
    if (a == 0.0)
      a = 1.0;
    const double c = rng.normal(0.0, 10.0);
    std::vector<double> moved(pts);
    for (auto& p : moved)
      p = a * p + c;
    const double base = kde_eval(x, pts, b);
    REQUIRE_THAT(kde_eval(a * x + c, moved, std::abs(a) * b) * std::abs(a), WithinRel(base, 1e-12));

    std::vector<double> shuffled(pts);
    rng.shuffle(std::span<double>(shuffled));
    REQUIRE_THAT(kde_eval(x, shuffled, b), WithinRel(base, 1e-13));
  }
}

TEST_CASE("loo_density examples", "[kernel]")
{
  const std::vector<double> zeros{0.0, 0.0};
  CHECK_THAT(loo_density(0, zeros, 1.0), WithinAbs(k0_at_0, 1e-6));
  const std::vector<double> three{0.0, 1.0, 2.0};
  CHECK_THAT(loo_density(1, three, 1.0), WithinAbs(k0_at_1, 1e-6));

  CHECK_THROWS_AS(loo_density(0, std::vector<double>{1.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(loo_density(3, three, 1.0), std::out_of_range);
}

TEST_CASE("loo_density equals kde_eval without the held-out point", "[kernel]")
{
  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> pts(2 + rng.below(20));
    for (auto& p : pts)
      p = rng.normal();
    const double b = 0.1 + rng.uniform();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<double> rest;
      for (std::size_t r = 0; r < pts.size(); ++r)
        if (r != i)
          rest.push_back(pts[r]);
      REQUIRE(loo_density(i, pts, b) == kde_eval(pts[i], rest, b));
    }
  }
}

TEST_CASE("gaussian kernel is available for diagnostics", "[kernel]")
{
  CHECK_THAT(gaussian_kernel(0.0), WithinRel(1.0 / std::sqrt(2.0 * std::numbers::pi), 1e-15));
  CHECK(kernel_value(KernelId::Gaussian, 1.5) == gaussian_kernel(1.5));
  CHECK(kernel_value(KernelId::Hall, 1.5) == hall_kernel(1.5));
}
