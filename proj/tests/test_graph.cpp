#include <gtest/gtest.h>

#include <cmath>

#include "logschro/graph.hpp"
#include "expect_error.hpp"
#include "support.hpp"

namespace logschro {
namespace {

using testing::expect_error;

WeightedGraph path3() {
  // v1 -(2)- v2 -(1)- v3, with μ = (1, 2, 1).
  return WeightedGraph({{"v1", 1.0, 0.0}, {"v2", 2.0, 0.0}, {"v3", 1.0, 1.0}},
                       {{"v1", "v2", 2.0}, {"v2", "v3", 1.0}});
}

TEST(WeightedGraph, RejectsInvalidConstruction) {
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 0.0, 0.0}, {"b", 1.0, 0.0}}, {{"a", "b", 1.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, -1.0}, {"b", 1.0, 0.0}}, {{"a", "b", 1.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"b", 1.0, 0.0}}, {{"a", "b", 0.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"a", 1.0, 0.0}}, {});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"b", 1.0, 0.0}},
                    {{"a", "b", 1.0}, {"b", "a", 2.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"b", 1.0, 0.0}}, {{"a", "a", 1.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"b", 1.0, 0.0}, {"c", 1.0, 0.0}},
                    {{"a", "b", 1.0}});
  });
  expect_error(ErrorKind::InvalidGraph, [] {
    WeightedGraph g({{"a", 1.0, 0.0}, {"b", 1.0, 0.0}}, {{"a", "z", 1.0}});
  });
}

TEST(WeightedGraph, Accessors) {
  const auto g = path3();
  EXPECT_EQ(g.size(), 3U);
  EXPECT_EQ(g.index_of("v2"), 1U);
  EXPECT_FALSE(g.find("nope").has_value());
  EXPECT_DOUBLE_EQ(g.degree(1), 3.0);
  EXPECT_DOUBLE_EQ(g.mu_min(), 1.0);
  EXPECT_EQ(g.neighbors(1).size(), 2U);
  expect_error(ErrorKind::UnknownVertex, [&] { (void)g.index_of("nope"); });
}

TEST(Calculus, LaplacianAndGammaByHand) {
  const auto g = path3();
  const VertexField u(std::vector<double>{1.0, 3.0, -1.0});
  const VertexField lap = laplacian(g, u);
  EXPECT_DOUBLE_EQ(lap[0], 2.0 * (3.0 - 1.0) / 1.0);
  EXPECT_DOUBLE_EQ(lap[1], (2.0 * (1.0 - 3.0) + 1.0 * (-1.0 - 3.0)) / 2.0);
  EXPECT_DOUBLE_EQ(lap[2], (3.0 - (-1.0)) / 1.0);

  const VertexField gam = gamma(g, u, u);
  EXPECT_DOUBLE_EQ(gam[0], 2.0 * 4.0 / 2.0);
  EXPECT_DOUBLE_EQ(gam[1], (2.0 * 4.0 + 16.0) / 4.0);
  EXPECT_DOUBLE_EQ(gam[2], 16.0 / 2.0);

  const VertexField len = gradient_length(g, u);
  for (VertexIndex x = 0; x < 3; ++x) EXPECT_DOUBLE_EQ(len[x], std::sqrt(gam[x]));

  // Σ_edges ω (du)² = 2·4 + 16.
  EXPECT_DOUBLE_EQ(dirichlet_form(g, u, u), 24.0);
  EXPECT_DOUBLE_EQ(integrate(g, gam), 24.0);
}

TEST(Calculus, DimensionMismatch) {
  const auto g = path3();
  expect_error(ErrorKind::DimensionMismatch,
               [&] { (void)laplacian(g, VertexField(2)); });
  expect_error(ErrorKind::DimensionMismatch,
               [&] { (void)dirichlet_form(g, VertexField(3), VertexField(4)); });
}

TEST(Calculus, IntegrationByPartsOnIndicators) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 9);
    const auto u = testing::random_field(rng, g->size());
    const VertexField lap = laplacian(*g, u);
    for (VertexIndex x = 0; x < g->size(); ++x) {
      VertexField e(g->size());
      e[x] = 1.0;
      EXPECT_NEAR(dirichlet_form(*g, u, e), -g->mu(x) * lap[x],
                  1e-12 * std::max(1.0, std::abs(g->mu(x) * lap[x])));
    }
  }
}

TEST(Norms, Bundle) {
  const auto g = path3();
  const VertexField u(std::vector<double>{1.0, 3.0, -1.0});
  const NormBundle n = norms(g, u, 2.0);
  EXPECT_DOUBLE_EQ(n.l2_sq, 1.0 + 18.0 + 1.0);
  EXPECT_DOUBLE_EQ(n.h1_sq, 24.0 + 20.0);
  EXPECT_DOUBLE_EQ(n.h_lambda_sq, 44.0 + 2.0 * 1.0 * 1.0);
  EXPECT_DOUBLE_EQ(n.linf, 3.0);
  expect_error(ErrorKind::InvalidArgument, [&] { (void)norms(g, u, -1.0); });
}

TEST(SubDomains, BoundaryDistanceConnectivity) {
  const auto p6 = testing::fixture("p6.json");
  const std::vector<std::string> well{"v3", "v4"};
  const SubDomain d = boundary(*p6, well);
  EXPECT_EQ(d.interior, (std::vector<VertexIndex>{2, 3}));
  EXPECT_EQ(d.boundary, (std::vector<VertexIndex>{1, 4}));
  EXPECT_EQ(d.closure, (std::vector<VertexIndex>{1, 2, 3, 4}));
  EXPECT_TRUE(d.contains(2));
  EXPECT_FALSE(d.contains(1));
  EXPECT_TRUE(d.in_closure(1));
  EXPECT_FALSE(d.in_closure(0));

  EXPECT_EQ(distance(*p6, "v1", "v6"), 5U);
  EXPECT_EQ(distance(*p6, 2, 2), 0U);

  const std::vector<VertexIndex> split{1, 3};
  EXPECT_FALSE(is_connected(*p6, split));
  EXPECT_FALSE(is_connected(*p6, std::vector<VertexIndex>{}));
  EXPECT_TRUE(is_connected(*p6, d.closure));
}

TEST(ValidatePotential, Fixtures) {
  const auto p6 = testing::fixture("p6.json");
  const auto report = validate_potential(*p6);
  EXPECT_TRUE(report.passes());
  EXPECT_FALSE(report.small_well);
  EXPECT_EQ(report.omega.interior, (std::vector<VertexIndex>{2, 3}));
  EXPECT_DOUBLE_EQ(report.level_m, 2.0);
  EXPECT_DOUBLE_EQ(report.volume_d_m, 6.0);

  // No zero of a: the well is empty.
  const WeightedGraph lifted({{"a", 1.0, 1.0}, {"b", 1.0, 2.0}},
                             {{"a", "b", 1.0}});
  const auto empty = validate_potential(lifted);
  EXPECT_FALSE(empty.nonempty);
  EXPECT_FALSE(empty.passes());
  EXPECT_FALSE(empty.messages.empty());

  // Two separate zeros of a.
  const WeightedGraph split({{"a", 1.0, 0.0}, {"b", 1.0, 1.0}, {"c", 1.0, 0.0}},
                            {{"a", "b", 1.0}, {"b", "c", 1.0}});
  EXPECT_FALSE(validate_potential(split).connected);
}

TEST(VertexField, PartsAndFiniteness) {
  const VertexField u(std::vector<double>{2.0, -1.5, 0.0});
  EXPECT_EQ(u.positive_part(), VertexField(std::vector<double>{2.0, 0.0, 0.0}));
  EXPECT_EQ(u.negative_part(), VertexField(std::vector<double>{0.0, -1.5, 0.0}));
  EXPECT_EQ(u.positive_part() + u.negative_part(), u);
  EXPECT_DOUBLE_EQ(u.max_abs(), 2.0);
  EXPECT_TRUE(u.has_positive());
  EXPECT_TRUE(u.has_negative());
  expect_error(ErrorKind::InvalidArgument,
               [] { VertexField bad(std::vector<double>{1.0, NAN}); });
}

}  // namespace
}  // namespace logschro
