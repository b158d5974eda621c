#pragma once

// Fixture generation and the λ → ∞ convergence sweep.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "logschro/solver.hpp"

namespace logschro {

enum class Topology { Path, Cycle, Grid, Star };

/// "path" | "cycle" | "grid" | "star"; throws InvalidArgument.
[[nodiscard]] Topology parse_topology(std::string_view name);

/// Vertex ids: path/cycle v1..vn; grid n×n as v<row>_<col> (1-based);
/// star center c with leaves l1..l(n-1).
///
/// Well specs are comma-separated ids or ranges: "v3..v4" (path, cycle,
/// star leaves) or "v2_2..v3_3" (grid rectangle).
struct GeneratorSpec {
  Topology topology = Topology::Path;
  std::size_t n = 2;
  std::string well;
  double mu = 1.0;
  double w = 1.0;
  double a_out = 1.0;
};

struct GeneratedGraph {
  WeightedGraph graph;
  ValidationReport validation;
};

/// a = 0 on the well and a_out elsewhere. Throws InvalidArgument for bad
/// sizes, unknown ids in the well, a_out <= 0 or a disconnected well.
[[nodiscard]] GeneratedGraph generate_graph(const GeneratorSpec& spec);

struct SweepRow {
  double lambda = 0.0;
  double m_lambda = 0.0;
  double c_lambda = 0.0;
  double margin_m_minus_2c = 0.0;
  double gap_to_m_omega = 0.0;    // m_Ω − m_λ
  double potential_mass = 0.0;    // λ∫a u_λ² dμ
  double h1_dist_to_limit = 0.0;  // ‖u_λ − u₀‖_{H¹(V)}, after sign alignment
  double tail_mass = 0.0;         // ∫_{V∖Ω} u_λ² dμ
  double h_lambda_norm = 0.0;     // ‖u_λ‖_{H_λ}
  bool sign_pattern_matches_limit = true;
};

/// Final-row thresholds, relative to m_Ω, m_Ω, ‖u₀‖₂² and ‖u₀‖_{H¹}.
struct SweepThresholds {
  double gap_rel = 0.02;
  double potential_rel = 0.05;
  double tail_rel = 0.01;
  double h1_rel = 0.1;
};

struct SweepSummary {
  double m_omega = 0.0;
  double c_omega = 0.0;
  double limit_l2_sq = 0.0;  // ‖u₀‖₂²
  double limit_h1 = 0.0;     // ‖u₀‖_{H¹}
  double sup_h_lambda_norm = 0.0;
  bool thresholds_met = false;
  /// Only meaningful with at least two rows.
  std::optional<bool> trend_met;
  bool levels_bounded = false;  // every m_λ ≤ m_Ω + 1e-8
  bool margins_positive = false;
  std::vector<std::string> notes;
  std::optional<std::string> failure;

  [[nodiscard]] bool passed() const noexcept {
    return !failure && thresholds_met && trend_met.value_or(true) &&
           levels_bounded && margins_positive;
  }
};

struct SweepResult {
  VertexField limit;  // u₀, sign-normalized
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

/// Solves the Dirichlet problem on the well once, then the full problem
/// for each λ. Requires a valid well with at least two vertices
/// (InfeasibleWell / InvalidArgument) and strictly increasing positive λ.
/// Solver failures at some λ stop the sweep and are recorded in
/// summary.failure.
[[nodiscard]] SweepResult sweep(std::shared_ptr<const WeightedGraph> graph,
                                std::span<const double> lambdas,
                                const SolveOptions& opts,
                                const SweepThresholds& thresholds = {});

inline constexpr std::string_view kSweepCsvHeader =
    "lambda,m_lambda,c_lambda,margin_m_minus_2c,gap_to_m_omega,"
    "potential_mass,h1_dist_to_limit,tail_mass";

/// Header plus one row per λ; a failed sweep ends with a "# failed" line.
[[nodiscard]] std::string sweep_csv(const SweepResult& result);
[[nodiscard]] std::string sweep_summary_json(const SweepResult& result);

}  // namespace logschro
