#pragma once

#include <cstdint>
#include <vector>

#include <albscreen/albscreen.hpp>

namespace testsupport {

/// A random continuous feature: n values labeled 0 followed by m labeled 1.
struct RandomFeature {
  std::vector<double> values;
  std::vector<int> labels;
};

inline RandomFeature random_feature(albscreen::Rng& rng, std::size_t n, std::size_t m)
{
  RandomFeature f;
  // Mix of shapes so the properties are not tested on Gaussian data only.
  const auto kind = rng.below(3);
  const double shift = rng.normal(0.0, 2.0);
  const double scale = 0.1 + 5.0 * rng.uniform();
  for (std::size_t i = 0; i < n + m; ++i) {
    const int label = i < n ? 0 : 1;
    double v = 0.0;
    switch (kind) {
      case 0: v = rng.normal(); break;
      case 1: v = rng.student_t(3); break;
      default: v = rng.uniform() * 4.0 - 2.0; break;
    }
    if (label == 1 && rng.bernoulli(0.5))
      v = v * scale + shift;
    f.values.push_back(v);
    f.labels.push_back(label);
  }
  return f;
}

/// Dataset built from explicit columns and labels.
inline albscreen::Dataset make_dataset(const std::vector<std::vector<double>>& columns, const std::vector<int>& labels)
{
  albscreen::Dataset ds(labels.size(), columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (std::size_t i = 0; i < labels.size(); ++i)
      ds.at(i, j) = columns[j][i];
  for (std::size_t i = 0; i < labels.size(); ++i)
    ds.labels()[i] = labels[i];
  return ds;
}

}  // namespace testsupport
