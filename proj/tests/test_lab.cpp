#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "expect_error.hpp"
#include "logschro/io.hpp"
#include "logschro/lab.hpp"
#include "support.hpp"

namespace logschro {
namespace {

using testing::expect_error;
using testing::fixture;

GeneratorSpec spec(Topology topology, std::size_t n, std::string well) {
  GeneratorSpec s;
  s.topology = topology;
  s.n = n;
  s.well = std::move(well);
  return s;
}

TEST(ParseTopology, Names) {
  EXPECT_EQ(parse_topology("grid"), Topology::Grid);
  EXPECT_EQ(parse_topology("star"), Topology::Star);
  expect_error(ErrorKind::InvalidArgument, [] { (void)parse_topology("tree"); });
}

TEST(GenerateGraph, PathFixtureRoundTrips) {
  const GeneratedGraph p6 = generate_graph(spec(Topology::Path, 6, "v3..v4"));
  EXPECT_EQ(p6.graph.size(), 6U);
  EXPECT_EQ(p6.validation.omega.interior, (std::vector<VertexIndex>{2, 3}));
  const std::string text = graph_to_json(p6.graph);
  EXPECT_EQ(text, read_text(testing::fixture_path("p6.json")));
  EXPECT_EQ(graph_to_json(graph_from_json(text)), text);
}

TEST(GenerateGraph, Topologies) {
  const auto grid = generate_graph(spec(Topology::Grid, 4, "v2_2..v3_3"));
  EXPECT_EQ(grid.graph.size(), 16U);
  EXPECT_EQ(grid.graph.edges().size(), 24U);
  EXPECT_EQ(grid.validation.omega.interior.size(), 4U);
  EXPECT_TRUE(grid.validation.passes());

  const auto cycle = generate_graph(spec(Topology::Cycle, 5, "v5,v1"));
  EXPECT_EQ(cycle.graph.edges().size(), 5U);
  EXPECT_TRUE(cycle.validation.connected);

  const auto star = generate_graph(spec(Topology::Star, 5, "c,l1..l2"));
  EXPECT_EQ(star.graph.size(), 5U);
  EXPECT_DOUBLE_EQ(star.graph.degree(star.graph.index_of("c")), 4.0);
  EXPECT_EQ(star.validation.omega.interior.size(), 3U);
}

TEST(GenerateGraph, RejectsBadSpecs) {
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Path, 6, "v2,v4")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Path, 1, "v1")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Cycle, 2, "v1")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Path, 6, "v7")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Path, 6, "v4..v3")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Path, 6, "v3,,v4")); });
  expect_error(ErrorKind::InvalidArgument,
               [] { (void)generate_graph(spec(Topology::Grid, 3, "v1..v2")); });
  auto no_out = spec(Topology::Path, 6, "v3");
  no_out.a_out = 0.0;
  expect_error(ErrorKind::InvalidArgument, [&] { (void)generate_graph(no_out); });
}

TEST(Sweep, SingleLambdaHasNoTrendVerdict) {
  const std::vector<double> lambdas{1.0};
  const SweepResult r = sweep(fixture("p6.json"), lambdas, {});
  ASSERT_EQ(r.rows.size(), 1U);
  EXPECT_FALSE(r.summary.trend_met.has_value());
  EXPECT_NEAR(r.summary.m_omega, std::exp(3.0), 1e-8 * std::exp(3.0));
  EXPECT_TRUE(r.summary.levels_bounded);
  EXPECT_TRUE(r.summary.margins_positive);
  EXPECT_FALSE(r.summary.failure.has_value());
}

TEST(Sweep, CsvFormatAndDeterminism) {
  const std::vector<double> lambdas{1.0, 10.0, 100.0};
  SolveOptions opts;
  opts.seed = 3;
  const SweepResult a = sweep(fixture("p6.json"), lambdas, opts);
  const SweepResult b = sweep(fixture("p6.json"), lambdas, opts);
  const std::string csv = sweep_csv(a);
  EXPECT_EQ(csv, sweep_csv(b));
  EXPECT_EQ(sweep_summary_json(a), sweep_summary_json(b));

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, kSweepCsvHeader);
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 3U);

  for (const auto& row : a.rows) {
    EXPECT_GE(row.gap_to_m_omega, -1e-8);
    EXPECT_LE(row.h_lambda_norm, a.summary.sup_h_lambda_norm);
  }
}

TEST(Sweep, RejectsBadInput) {
  const auto p6 = fixture("p6.json");
  const std::vector<double> decreasing{10.0, 1.0};
  expect_error(ErrorKind::InvalidArgument, [&] { (void)sweep(p6, decreasing, {}); });
  const std::vector<double> empty;
  expect_error(ErrorKind::InvalidArgument, [&] { (void)sweep(p6, empty, {}); });

  auto one = std::make_shared<const WeightedGraph>(
      generate_graph(spec(Topology::Path, 4, "v2")).graph);
  const std::vector<double> lambdas{1.0};
  expect_error(ErrorKind::InfeasibleWell, [&] { (void)sweep(one, lambdas, {}); });
}

TEST(SweepCsv, FailureMarker) {
  SweepResult r;
  r.summary.failure = "lambda=5: no start converged";
  EXPECT_EQ(sweep_csv(r),
            std::string(kSweepCsvHeader) + "\n# failed lambda=5: no start converged\n");
}

}  // namespace
}  // namespace logschro
