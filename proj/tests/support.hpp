#pragma once

// Shared fixtures and seeded generators for the test binaries.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "logschro/energy.hpp"
#include "logschro/io.hpp"

namespace logschro::testing {

inline std::filesystem::path fixture_path(const std::string& name) {
  return std::filesystem::path(LOGSCHRO_FIXTURE_DIR) / name;
}

inline std::shared_ptr<const WeightedGraph> fixture(const std::string& name) {
  return std::make_shared<const WeightedGraph>(load_graph(fixture_path(name)));
}

inline ProblemInstance dirichlet_on_well(std::shared_ptr<const WeightedGraph> g) {
  const auto report = validate_potential(*g);
  return ProblemInstance::dirichlet(std::move(g), report.omega.interior);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Connected graph on n vertices: a random spanning tree plus extra edges.
/// Roughly a third of the vertices get a = 0.
inline std::shared_ptr<const WeightedGraph> random_graph(std::mt19937_64& rng,
                                                         std::size_t n) {
  std::vector<VertexSpec> vertices;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_well = uniform(rng, 0.0, 1.0) < 0.35;
    vertices.push_back({"v" + std::to_string(i), uniform(rng, 0.5, 2.0),
                        in_well ? 0.0 : uniform(rng, 0.2, 3.0)});
  }
  std::vector<EdgeSpec> edges;
  std::vector<std::vector<bool>> used(n, std::vector<bool>(n, false));
  auto link = [&](std::size_t u, std::size_t v) {
    if (u == v || used[u][v]) return;
    used[u][v] = used[v][u] = true;
    edges.push_back({vertices[u].id, vertices[v].id, uniform(rng, 0.2, 3.0)});
  };
  for (std::size_t i = 1; i < n; ++i) {
    link(i, std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
  }
  const std::size_t extra = n / 2;
  for (std::size_t k = 0; k < extra; ++k) {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    link(pick(rng), pick(rng));
  }
  return std::make_shared<const WeightedGraph>(std::move(vertices),
                                               std::move(edges));
}

/// Entries in ±[lo, hi], with a sign change guaranteed when n ≥ 2.
inline VertexField random_field(std::mt19937_64& rng, std::size_t n,
                                double lo = 0.2, double hi = 3.0) {
  std::vector<double> v(n);
  for (auto& x : v) {
    x = uniform(rng, lo, hi) * (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0);
  }
  if (n >= 2) {
    v[0] = std::abs(v[0]);
    v[1] = -std::abs(v[1]);
  }
  return VertexField(std::move(v));
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace logschro::testing
