#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "expect_error.hpp"
#include "logschro/energy.hpp"
#include "support.hpp"

namespace logschro {
namespace {

using testing::expect_error;
using testing::fixture;
constexpr double e = std::numbers::e;

TEST(ProblemInstance, Construction) {
  const auto p6 = fixture("p6.json");
  expect_error(ErrorKind::InvalidArgument,
               [&] { (void)ProblemInstance::full(p6, 0.0); });
  expect_error(ErrorKind::InvalidArgument, [&] {
    (void)ProblemInstance::dirichlet(p6, std::vector<VertexIndex>{});
  });
  expect_error(ErrorKind::InvalidArgument, [&] {
    (void)ProblemInstance::dirichlet(p6, std::vector<VertexIndex>{1, 3});
  });

  const auto full = ProblemInstance::full(p6, 10.0);
  EXPECT_FALSE(full.is_dirichlet());
  EXPECT_EQ(full.free_vertices().size(), 6U);
  EXPECT_DOUBLE_EQ(full.potential(0), 10.0);
  EXPECT_DOUBLE_EQ(full.potential(2), 0.0);

  const auto dir = testing::dirichlet_on_well(p6);
  EXPECT_TRUE(dir.is_dirichlet());
  EXPECT_EQ(dir.free_vertices().size(), 2U);
  EXPECT_TRUE(dir.is_free(2));
  EXPECT_FALSE(dir.is_free(1));
  EXPECT_EQ(dir.project(VertexField(6, 1.0)),
            VertexField(std::vector<double>{0, 0, 1, 1, 0, 0}));
}

TEST(Energy, TwoVertexClosedForms) {
  const auto k2 = fixture("k2.json");
  const auto inst = ProblemInstance::full(k2, 1.0);
  const VertexField nodal(std::vector<double>{e, -e});
  EXPECT_NEAR(energy(inst, nodal), e * e, 1e-13);
  EXPECT_NEAR(energy(inst, VertexField(2, 1.0)), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(energy(inst, VertexField(2)), 0.0);

  const VertexField r = residual(inst, nodal);
  EXPECT_NEAR(r[0], 0.0, 1e-14);
  EXPECT_NEAR(r[1], 0.0, 1e-14);
  EXPECT_NEAR(coupling_k(inst, nodal), -2.0 * e * e, 1e-13);
  EXPECT_NEAR(mass(inst, nodal), 2.0 * e * e, 1e-13);
  EXPECT_NEAR(entropy(inst, nodal), 4.0 * e * e, 1e-12);
  EXPECT_NEAR(energy_norm_sq(inst, nodal), 6.0 * e * e, 1e-12);
}

TEST(Energy, DirichletAdmissibility) {
  const auto p6 = fixture("p6.json");
  const auto dir = testing::dirichlet_on_well(p6);
  expect_error(ErrorKind::NotAdmissible, [&] {
    (void)energy(dir, VertexField(std::vector<double>{1, 0, 1, 1, 0, 0}));
  });
  expect_error(ErrorKind::DimensionMismatch,
               [&] { (void)energy(dir, VertexField(5)); });

  // J_Ω at (α, −α) on Ω = {v3, v4}: the gradient includes the two
  // boundary edges, the local terms only Ω.
  const double alpha = std::exp(1.5);
  const VertexField u(std::vector<double>{0, 0, alpha, -alpha, 0, 0});
  EXPECT_NEAR(energy(dir, u), std::exp(3.0), 1e-12);
  const VertexField r = residual(dir, u);
  for (VertexIndex x = 0; x < 6; ++x) EXPECT_NEAR(r[x], 0.0, 1e-12);
}

TEST(Energy, ZeroEntriesUseZeroLogConvention) {
  EXPECT_DOUBLE_EQ(entropy_density(0.0), 0.0);
  EXPECT_DOUBLE_EQ(log_source(0.0), 0.0);
  EXPECT_DOUBLE_EQ(entropy_density(1.0), 0.0);
  EXPECT_NEAR(entropy_density(e), 2.0 * e * e, 1e-14);
}

TEST(Energy, ResidualMatchesDirectionalDerivative) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 8);
    const auto inst = ProblemInstance::full(g, testing::uniform(rng, 0.5, 20.0));
    const auto u = testing::random_field(rng, g->size());
    const auto v = testing::random_field(rng, g->size(), -1.0, 1.0);
    const VertexField r = residual(inst, u);
    double pairing = 0.0;
    for (VertexIndex x = 0; x < g->size(); ++x) pairing += g->mu(x) * r[x] * v[x];
    EXPECT_LE(testing::rel_diff(pairing, dir_deriv(inst, u, v)), 1e-12);
  }
}

TEST(Energy, CouplingIsNonPositive) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = testing::random_graph(rng, 7);
    const auto inst = ProblemInstance::full(g, 1.0);
    EXPECT_LE(coupling_k(inst, testing::random_field(rng, g->size())), 0.0);
    EXPECT_EQ(coupling_k(inst, VertexField(g->size(), 2.0)), 0.0);
  }
}

TEST(IdentitySuite, ReportsAllChecks) {
  const auto p6 = fixture("p6.json");
  const auto inst = ProblemInstance::full(p6, 3.0);
  const VertexField u(std::vector<double>{0.3, -1.2, 2.0, 0.0, -0.7, 1.1});
  const IdentityReport report = identity_suite(inst, u);
  EXPECT_EQ(report.checks.size(), 5U + 6U);
  EXPECT_EQ(report.checks.front().name, "gamma_split");
  EXPECT_EQ(report.checks.back().name, "ibp:v6");
  EXPECT_LE(report.max_relative(), 1e-12);
}

TEST(ResidualScale, FlooredAtOne) {
  const auto k2 = fixture("k2.json");
  const auto inst = ProblemInstance::full(k2, 1.0);
  EXPECT_DOUBLE_EQ(residual_scale(inst, VertexField(2)), 1.0);
  EXPECT_GT(residual_scale(inst, VertexField(std::vector<double>{e, -e})), 1.0);
}

}  // namespace
}  // namespace logschro
