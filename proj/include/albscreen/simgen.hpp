#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace albscreen {

/// How important features differ between classes (class 0 listed first):
///   Location: N(0,1)  vs N(1,1)
///   Scale:    N(0,1)  vs N(0,3^2)
///   Shape:    t(4)    vs 1/2 N(-2.5,1) + 1/2 N(2.5,1)
/// Unimportant features are N(0,1) in both classes.
enum class Scenario { Location, Scale, Shape };

inline const char* to_string(Scenario s)
{
  switch (s) {
    case Scenario::Location: return "location";
    case Scenario::Scale: return "scale";
    case Scenario::Shape: return "shape";
  }
  return "?";
}

inline Scenario parse_scenario(const std::string& s)
{
  if (s == "location")
    return Scenario::Location;
  if (s == "scale")
    return Scenario::Scale;
  if (s == "shape")
    return Scenario::Shape;
  throw std::invalid_argument("unknown scenario '" + s + "'");
}

struct ScenarioConfig {
  Scenario scenario = Scenario::Shape;
  std::size_t m = 20;  // class-1 rows
  std::size_t n = 20;  // class-0 rows
  std::size_t p = 100;
  double r = 0.5;  // probability that a feature is important
  std::uint64_t seed = 0;
};

struct SimulatedDataset {
  Dataset dataset;
  std::vector<bool> important_mask;
};

namespace detail {
inline double draw_important(Rng& rng, Scenario s, int label)
{
  switch (s) {
    case Scenario::Location: return label == 0 ? rng.normal() : rng.normal(1.0, 1.0);
    case Scenario::Scale: return label == 0 ? rng.normal() : rng.normal(0.0, 3.0);
    case Scenario::Shape:
      if (label == 0)
        return rng.student_t(4);
      return rng.bernoulli(0.5) ? rng.normal(-2.5, 1.0) : rng.normal(2.5, 1.0);
  }
  return 0.0;
}
}  // namespace detail

/// Rows 0..n-1 are class 0, rows n..n+m-1 class 1. The importance mask is
/// drawn from one substream; every column from its own, so the dataset does
/// not depend on `workers`.
inline SimulatedDataset generate(const ScenarioConfig& cfg, unsigned workers = 1)
{
  if (cfg.m < 2 || cfg.n < 2)
    throw std::invalid_argument("generate: m and n must be at least 2");
  if (cfg.p < 1)
    throw std::invalid_argument("generate: p must be at least 1");
  if (!(cfg.r >= 0.0 && cfg.r <= 1.0))
    throw std::invalid_argument("generate: r must be in [0, 1]");

  SimulatedDataset out{Dataset(cfg.n + cfg.m, cfg.p), std::vector<bool>(cfg.p)};
  auto& ds = out.dataset;
  for (std::size_t i = 0; i < ds.rows(); ++i)
    ds.labels()[i] = i < cfg.n ? 0 : 1;
  Rng mask_rng(derive_seed(cfg.seed, {stream::mask}));
  for (std::size_t j = 0; j < cfg.p; ++j)
    out.important_mask[j] = mask_rng.bernoulli(cfg.r);

  parallel_for(cfg.p, workers, [&](std::size_t j) {
    Rng rng(derive_seed(cfg.seed, {stream::column, j}));
    auto col = ds.column(j);
    const bool important = out.important_mask[j];
    for (std::size_t i = 0; i < ds.rows(); ++i)
      col[i] = important ? detail::draw_important(rng, cfg.scenario, ds.labels()[i]) : rng.normal();
  });
  return out;
}

}  // namespace albscreen
