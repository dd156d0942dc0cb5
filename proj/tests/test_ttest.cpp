#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace albscreen;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double reference_two_sided(double t, double df)
{
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
}

}  // namespace

TEST_CASE("welch_t examples", "[ttest]")
{
  const std::vector<double> same{0, 1, 2};
  const auto r0 = welch_t(same, same);
  CHECK(r0.t == 0.0);
  CHECK(r0.p_value == 1.0);

  const auto r = welch_t(std::vector<double>{1, 2, 3, 4}, std::vector<double>{2, 3, 4, 5});
  CHECK_THAT(r.t, WithinAbs(-1.095445, 1e-5));
  CHECK_THAT(r.df, WithinAbs(6.0, 1e-9));
  CHECK_THAT(r.p_value, WithinRel(reference_two_sided(r.t, r.df), 1e-12));
  CHECK_THAT(r.p_value, WithinAbs(0.3153, 1e-4));
}

TEST_CASE("welch_t constant samples and errors", "[ttest]")
{
  const auto eq = welch_t(std::vector<double>{3, 3}, std::vector<double>{3, 3, 3});
  CHECK(eq.t == 0.0);
  CHECK(eq.p_value == 1.0);
  const auto ne = welch_t(std::vector<double>{3, 3}, std::vector<double>{4, 4});
  CHECK(ne.p_value == 0.0);
  CHECK(std::isinf(ne.t));
  CHECK(ne.t < 0.0);
  CHECK_THROWS_AS(welch_t(std::vector<double>{1}, std::vector<double>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(welch_t(std::vector<double>{1, 2}, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("scale shift with equal means gives t = 0", "[ttest]")
{
  const std::vector<double> x0{-2, -1, 0, 1, 2};
  std::vector<double> x1(x0);
  for (auto& v : x1)
    v *= 3.0;
  const auto r = welch_t(x0, x1);
  CHECK_THAT(r.t, WithinAbs(0.0, 1e-12));
  CHECK_THAT(r.p_value, WithinAbs(1.0, 1e-12));
}

TEST_CASE("incomplete beta matches Boost.Math", "[ttest]")
{
  Rng rng(21);
  for (int k = 0; k < 2000; ++k) {
    const double a = 0.05 + 60.0 * rng.uniform();
    const double b = 0.05 + 60.0 * rng.uniform();
    const double x = rng.uniform();
    REQUIRE_THAT(incomplete_beta(a, b, x), WithinAbs(boost::math::ibeta(a, b, x), 1e-12));
  }
  CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
  CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
  CHECK_THROWS_AS(incomplete_beta(0.0, 1.0, 0.5), std::domain_error);
}

TEST_CASE("two-sided t tail matches Boost.Math", "[ttest]")
{
  Rng rng(22);
  for (int k = 0; k < 2000; ++k) {
    const double df = 1.0 + 200.0 * rng.uniform();
    const double t = rng.normal(0.0, 4.0);
    const double want = reference_two_sided(t, df);
    REQUIRE_THAT(student_t_two_sided(t, df), WithinAbs(want, 1e-12) || WithinRel(want, 1e-10));
  }
}

TEST_CASE("welch_t symmetry and affine invariance", "[ttest][property]")
{
  Rng rng(23);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x0(2 + rng.below(30)), x1(2 + rng.below(30));
    for (auto& v : x0)
      v = rng.normal();
    for (auto& v : x1)
      v = rng.normal(0.5, 2.0);
    const auto r = welch_t(x0, x1);
    const auto s = welch_t(x1, x0);
    REQUIRE(s.t == -r.t);
    REQUIRE(s.p_value == r.p_value);

    double a = rng.normal(0.0, 3.0);
    if (a == 0.0)
      a = 1.0;
    const double c = rng.normal(0.0, 20.0);
    auto y0 = x0, y1 = x1;
    for (auto& v : y0)
      v = a * v + c;
    for (auto& v : y1)
      v = a * v + c;
    const auto q = welch_t(y0, y1);
    REQUIRE_THAT(q.t, WithinRel(a > 0.0 ? r.t : -r.t, 1e-8) || WithinAbs(0.0, 1e-10));
    REQUIRE_THAT(q.p_value, WithinAbs(r.p_value, 1e-9));
  }
}

TEST_CASE("ttest_screen modes", "[ttest]")
{
  const auto sim = generate({Scenario::Location, 20, 20, 50, 0.3, 31});
  const auto top = ttest_screen(sim.dataset, TopK{7});
  CHECK(top.selected.size() == 7);
  CHECK(std::is_sorted(top.selected.begin(), top.selected.end()));
  CHECK(describe(top.rule) == "top-k=7");
  double weakest_kept = 1e300;
  for (auto j : top.selected)
    weakest_kept = std::min(weakest_kept, std::fabs(top.ttest_results[j].t));
  for (std::size_t j = 0; j < 50; ++j)
    if (!std::binary_search(top.selected.begin(), top.selected.end(), j))
      CHECK(std::fabs(top.ttest_results[j].t) <= weakest_kept);

  const auto pv = ttest_screen(sim.dataset, PValueBelow{0.05});
  for (std::size_t j = 0; j < 50; ++j)
    CHECK(std::binary_search(pv.selected.begin(), pv.selected.end(), j) == (pv.ttest_results[j].p_value < 0.05));
  CHECK_FALSE(pv.threshold.has_value());
  for (unsigned w : {2u, 8u})
    CHECK(ttest_screen(sim.dataset, PValueBelow{0.05}, w).selected == pv.selected);

  CHECK_THROWS_AS(ttest_screen(sim.dataset, TopK{0}), std::invalid_argument);
  CHECK_THROWS_AS(ttest_screen(sim.dataset, TopK{51}), std::invalid_argument);
  CHECK_THROWS_AS(ttest_screen(sim.dataset, PValueBelow{1.5}), std::invalid_argument);
}

TEST_CASE("ttest_screen under the null selects about alpha", "[ttest][property]")
{
  const auto sim = generate({Scenario::Location, 20, 20, 4000, 0.0, 32});
  const auto rep = ttest_screen(sim.dataset, PValueBelow{0.05});
  const double rate = static_cast<double>(rep.selected.size()) / 4000.0;
  // Binomial sd is about 0.0034.
  CHECK(std::abs(rate - 0.05) < 0.015);
}
