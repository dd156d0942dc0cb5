#include <algorithm>
#include <cmath>
#include <vector>

#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace albscreen;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<AlbResult> results_from(const std::vector<double>& albs)
{
  std::vector<AlbResult> out(albs.size());
  for (std::size_t j = 0; j < albs.size(); ++j) {
    out[j].alb = albs[j];
    out[j].bandwidth = {1.0, ScaleSource::RobustIQR};
    out[j].feature_index = j;
  }
  return out;
}

using Sel = std::vector<std::size_t>;

// Null 95th percentile for the global-null run below (m = n = 20, p = 200,
// B = 100, d = 3, seed 5), frozen from the first run.
constexpr double golden_null_q95 = 0.05197023561495404;

}  // namespace

TEST_CASE("top_d_select examples", "[cutoff]")
{
  CHECK(top_d_select(results_from({0.5, 0.1, -0.2, 0.3}), 2).selected == Sel{0, 3});
  CHECK(top_d_select(results_from({0.5, 0.5, 0.1}), 1).selected == Sel{0});
  CHECK(top_d_select(results_from({0.1, 0.5, 0.5}), 1).selected == Sel{1});
  CHECK(top_d_select(results_from({0.5, -0.1, 0.3}), 3).selected == Sel{0, 1, 2});
  CHECK_FALSE(top_d_select(results_from({0.5, 0.1}), 1).threshold.has_value());
  CHECK(describe(top_d_select(results_from({0.5, 0.1}), 1).rule) == "top-d=1");

  CHECK_THROWS_AS(top_d_select(results_from({0.5, 0.1}), 0), std::invalid_argument);
  CHECK_THROWS_AS(top_d_select(results_from({0.5, 0.1}), 3), std::invalid_argument);
}

TEST_CASE("top_d_select skips degenerate features", "[cutoff]")
{
  auto r = results_from({0.0, 0.2, -0.4, 0.1});
  r[0].degenerate = true;
  r[0].bandwidth = {0.0, ScaleSource::Degenerate};
  CHECK(top_d_select(r, 4).selected == Sel{1, 2, 3});
  CHECK(top_d_select(r, 1).selected == Sel{1});
}

TEST_CASE("top_d_select is invariant to the order of tied features", "[cutoff][property]")
{
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> albs(2 + rng.below(30));
    for (auto& a : albs)
      a = static_cast<double>(rng.below(5)) * 0.1;  // many ties
    const std::size_t d = 1 + rng.below(albs.size());
    const auto sel = top_d_select(results_from(albs), d).selected;
    REQUIRE(sel.size() == d);
    // Every kept feature beats or ties every dropped feature, and ties favor lower indices.
    for (std::size_t j = 0; j < albs.size(); ++j) {
      const bool kept = std::binary_search(sel.begin(), sel.end(), j);
      if (kept)
        continue;
      for (auto k : sel)
        REQUIRE((albs[k] > albs[j] || (albs[k] == albs[j] && k < j)));
    }
  }
}

TEST_CASE("zero_select examples", "[cutoff]")
{
  const auto rep = zero_select(results_from({0.2, -0.1, 0.0}));
  CHECK(rep.selected == Sel{0});
  CHECK(rep.threshold == 0.0);
  CHECK(describe(rep.rule) == "zero");
  CHECK(zero_select(results_from({-0.2, -0.1})).selected.empty());

  auto r = results_from({0.3, 0.4});
  r[1].degenerate = true;
  CHECK(zero_select(r).selected == Sel{0});
}

TEST_CASE("threshold_select is strict", "[cutoff]")
{
  const auto rep = threshold_select(results_from({0.1, 0.2, 0.3}), 0.2);
  CHECK(rep.selected == Sel{2});
  CHECK(describe(rep.rule) == "fixed=0.2");
}

TEST_CASE("percentile_select examples", "[cutoff]")
{
  NullSample null;
  null.values = {-0.1, 0.0, 0.1, 0.2};
  null.covariates = 4;
  null.permutations = 1;
  const auto rep = percentile_select(results_from({0.18, 0.1}), null, 0.25);
  // Type-7 interpolation: 0.1 + 0.25 * (0.2 - 0.1).
  CHECK_THAT(*rep.threshold, WithinAbs(0.125, 1e-15));
  CHECK(rep.selected == Sel{0});
  REQUIRE(rep.null_summary);
  CHECK(rep.null_summary->count == 4);
  CHECK(rep.null_summary->max == 0.2);

  NullSample flat;
  flat.values = {0.05, 0.05, 0.05};
  const auto f = percentile_select(results_from({0.05, 0.051, 0.04}), flat, 0.1);
  CHECK(*f.threshold == 0.05);
  CHECK(f.selected == Sel{1});

  CHECK_THROWS_AS(percentile_select(results_from({0.1}), null, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile_select(results_from({0.1}), null, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(percentile_select(results_from({0.1}), NullSample{}, 0.5), std::invalid_argument);
}

TEST_CASE("percentile_select is monotone in alpha", "[cutoff][property]")
{
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    NullSample null;
    null.values.resize(10 + rng.below(100));
    for (auto& v : null.values)
      v = rng.normal(-0.05, 0.05);
    std::vector<double> albs(50);
    for (auto& a : albs)
      a = rng.normal(0.0, 0.1);
    const double a1 = 0.01 + 0.4 * rng.uniform();
    const double a2 = a1 + (0.98 - a1) * rng.uniform();
    const auto small = percentile_select(results_from(albs), null, a1).selected;
    const auto large = percentile_select(results_from(albs), null, a2).selected;
    REQUIRE(std::includes(large.begin(), large.end(), small.begin(), small.end()));
  }
}

TEST_CASE("permutation_null is deterministic and uses the pooled bandwidth", "[cutoff]")
{
  const auto sim = generate({Scenario::Location, 15, 12, 40, 0.3, 99});
  const auto& ds = sim.dataset;
  const auto a = permutation_null(ds, 40, 1, 17);
  const auto b = permutation_null(ds, 40, 1, 17);
  CHECK(a == b);
  CHECK(a.values.size() == 40);
  for (unsigned workers : {2u, 5u, 8u})
    CHECK(permutation_null(ds, 40, 1, 17, workers) == a);
  CHECK_FALSE(permutation_null(ds, 40, 1, 18) == a);

  // Every covariate appears once when B = p.
  auto ids = a.covariate_ids;
  std::sort(ids.begin(), ids.end());
  for (std::size_t j = 0; j < ids.size(); ++j)
    CHECK(ids[j] == j);

  // Recomputing each value with the unpermuted column's bandwidth reproduces it.
  const auto c = permutation_null(ds, 5, 3, 4);
  REQUIRE(c.values.size() == 15);
  for (std::size_t k = 0; k < c.values.size(); ++k) {
    const std::size_t j = c.covariate_ids[k / 3];
    const auto bw = plugin_bandwidth(ds.column(j), ds.rows());
    std::vector<int> labels(ds.labels().begin(), ds.labels().end());
    Rng rng(derive_seed(4, {stream::permutation, j, k % 3}));
    rng.shuffle(std::span<int>(labels));
    CHECK(c.values[k] == alb_statistic({ds.column(j), labels}, bw).alb);
  }
}

TEST_CASE("permutation_null argument checks", "[cutoff]")
{
  const auto sim = generate({Scenario::Location, 5, 5, 4, 0.5, 1});
  CHECK_THROWS_AS(permutation_null(sim.dataset, 5, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(permutation_null(sim.dataset, 0, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(permutation_null(sim.dataset, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("global-null permutation 95th percentile", "[cutoff][golden]")
{
  const auto sim = generate({Scenario::Location, 20, 20, 200, 0.0, 5});
  const auto null = permutation_null(sim.dataset, 100, 3, 5);
  const auto d = digest(null);
  INFO("q95 = " << detail::format_real(d.q95));
  CHECK(d.count == 300);
  CHECK(d.q95 > 0.0);
  CHECK(d.q95 < alb_upper_bound(20, 20));
  CHECK_THAT(d.q95, Catch::Matchers::WithinRel(golden_null_q95, 1e-12));
}

TEST_CASE("percentile selection rate under the global null is about alpha", "[cutoff][property]")
{
  // 50 seeded runs; the selected fraction should sit near alpha = 0.1.
  const double alpha = 0.1;
  std::size_t kept = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sim = generate({Scenario::Location, 12, 12, 60, 0.0, 1000 + seed});
    auto results = alb_all(sim.dataset);
    const auto null = permutation_null(sim.dataset, 60, 2, seed);
    kept += percentile_select(std::move(results), null, alpha).selected.size();
    total += 60;
  }
  const double rate = static_cast<double>(kept) / static_cast<double>(total);
  INFO("null selection rate " << rate);
  // Permuted and observed statistics share a distribution; features within a
  // run are independent, so the binomial spread is about 0.0055.
  CHECK(std::abs(rate - alpha) < 0.03);
}

TEST_CASE("cv_select picks the largest maximizing cutoff", "[cutoff]")
{
  const auto sim = generate({Scenario::Shape, 30, 30, 60, 0.5, 77});
  auto [a, b] = stratified_split(sim.dataset, 0.5, 3);

  // A single candidate degenerates to zero_select on the pooled data.
  const auto single = cv_select(a, b, {0.0});
  const auto pooled = concat_rows(a, b);
  CHECK(single.selected == zero_select(alb_all(pooled)).selected);
  CHECK(*single.threshold == 0.0);
  REQUIRE(single.cv_scores.size() == 1);

  const auto candidates = default_cv_candidates(alb_all(a));
  REQUIRE(candidates.size() >= 2);
  CHECK(candidates.front() == 0.0);
  CHECK(std::is_sorted(candidates.begin(), candidates.end()));
  const auto rep = cv_select(a, b, candidates);
  double best = -1.0;
  for (const auto& s : rep.cv_scores)
    if (!std::isnan(s.rand_index))
      best = std::max(best, s.rand_index);
  double chosen = -1.0;
  for (const auto& s : rep.cv_scores)
    if (s.rand_index == best)
      chosen = std::max(chosen, s.cutoff);
  CHECK(*rep.threshold == chosen);
  for (auto j : rep.selected)
    CHECK(rep.alb_results[j].alb > chosen);
}

TEST_CASE("cv_select with equal scores chooses the largest candidate", "[cutoff]")
{
  // One perfectly separating feature: every viable cutoff scores Rand = 1.
  std::vector<double> col;
  std::vector<int> labels;
  for (int i = 0; i < 10; ++i) {
    col.push_back(i * 0.1);
    labels.push_back(0);
  }
  for (int i = 0; i < 10; ++i) {
    col.push_back(100.0 + i * 0.1);
    labels.push_back(1);
  }
  const auto ds = testsupport::make_dataset({col}, labels);
  auto [a, b] = stratified_split(ds, 0.5, 1);
  const auto rep = cv_select(a, b, {0.0, 0.1, 0.2});
  for (const auto& s : rep.cv_scores)
    CHECK(s.rand_index == 1.0);
  CHECK(*rep.threshold == 0.2);
  CHECK(describe(rep.rule) == "cv=0;0.1;0.2");
}

TEST_CASE("cv_select errors", "[cutoff]")
{
  const auto sim = generate({Scenario::Shape, 20, 20, 10, 0.5, 4});
  auto [a, b] = stratified_split(sim.dataset, 0.5, 0);
  CHECK_THROWS_AS(cv_select(a, b, {10.0, 20.0}), NoViableCutoff);
  CHECK_THROWS_AS(cv_select(a, b, {}), std::invalid_argument);
  CHECK_THROWS_AS(cv_select(a, b, std::vector<double>(11, 0.0)), std::invalid_argument);
}
