#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "expect_error.hpp"
#include "logschro/oracle.hpp"
#include "logschro/solver.hpp"
#include "support.hpp"

namespace logschro {
namespace {

using testing::expect_error;
using testing::fixture;
constexpr double e = std::numbers::e;

bool contains_point(const OracleResult& r, std::vector<double> expected,
                    double tol) {
  return std::any_of(r.points.begin(), r.points.end(), [&](const auto& p) {
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (std::abs(p.u[i] - expected[i]) > tol) return false;
    }
    return true;
  });
}

TEST(Oracle, TwoVertexCriticalSet) {
  const auto inst = ProblemInstance::full(fixture("k2.json"), 1.0);
  const OracleResult r = oracle_enumerate(inst);
  ASSERT_TRUE(r.min_ground.has_value());
  ASSERT_TRUE(r.min_nodal.has_value());
  EXPECT_NEAR(*r.min_ground, 1.0, 1e-10);
  EXPECT_NEAR(*r.min_nodal, e * e, 1e-10 * e * e);
  EXPECT_TRUE(contains_point(r, {0, 0}, 1e-12));
  EXPECT_TRUE(contains_point(r, {1, 1}, 1e-9));
  EXPECT_TRUE(contains_point(r, {-1, -1}, 1e-9));
  // The only sign-changing critical points are ±(e, −e).
  std::size_t nodal = 0;
  for (const auto& p : r.points) {
    if (!p.sign_changing) continue;
    ++nodal;
    EXPECT_NEAR(std::abs(p.u[0]), e, 1e-9);
    EXPECT_NEAR(p.u[0] + p.u[1], 0.0, 1e-9);
  }
  EXPECT_EQ(nodal, 2U);
  // (0, √e) is not critical on K₂.
  EXPECT_FALSE(contains_point(r, {0, std::sqrt(e)}, 1e-6));
}

TEST(Oracle, DirichletWell) {
  const auto dir = testing::dirichlet_on_well(fixture("p6.json"));
  const OracleResult r = oracle_enumerate(dir);
  ASSERT_TRUE(r.min_nodal.has_value());
  EXPECT_NEAR(*r.min_nodal, std::exp(3.0), 1e-9);
  EXPECT_NEAR(*r.min_ground, e, 1e-9);
  const double a = std::exp(1.5);
  EXPECT_TRUE(contains_point(r, {0, 0, a, -a, 0, 0}, 1e-9));
  EXPECT_TRUE(contains_point(r, {0, 0, std::sqrt(e), std::sqrt(e), 0, 0}, 1e-9));
}

TEST(Oracle, PathWithZeroVertexCriticalPoint) {
  const auto inst = ProblemInstance::full(fixture("p3.json"), 1.0);
  const OracleResult r = oracle_enumerate(inst);
  const double s = std::sqrt(e);
  EXPECT_TRUE(contains_point(r, {s, 0, -s}, 1e-9));
  ASSERT_TRUE(r.min_nodal.has_value());
  const SolveReport nodal = solve_nodal(inst);
  EXPECT_LE(testing::rel_diff(nodal.level, *r.min_nodal), 1e-8);
  const SolveReport ground = solve_ground(inst);
  EXPECT_LE(testing::rel_diff(ground.level, *r.min_ground), 1e-8);
}

TEST(Oracle, RejectsLargeInstances) {
  const auto inst = ProblemInstance::full(fixture("p6.json"), 1.0);
  expect_error(ErrorKind::DofLimitExceeded, [&] { (void)oracle_enumerate(inst); });
  OracleOptions opts;
  opts.resolution = 0;
  const auto k2 = ProblemInstance::full(fixture("k2.json"), 1.0);
  expect_error(ErrorKind::InvalidArgument, [&] { (void)oracle_enumerate(k2, opts); });
}

TEST(Oracle, EveryPointSolvesTheEquation) {
  const auto inst = ProblemInstance::full(fixture("k2.json"), 3.0);
  const OracleResult r = oracle_enumerate(inst);
  EXPECT_GE(r.points.size(), 5U);
  for (const auto& p : r.points) {
    EXPECT_LE(verify(inst, p.u).residual_inf,
              1e-11 * residual_scale(inst, p.u));
    EXPECT_LE(p.u.max_abs(), r.box);
  }
}

}  // namespace
}  // namespace logschro
