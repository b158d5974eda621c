#pragma once

// Least-energy levels c = inf_N J (ground) and m = inf_M J (nodal) by
// multi-start projected descent followed by a Newton polish on the
// Euler–Lagrange residual.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "logschro/energy.hpp"

namespace logschro {

struct SolveOptions {
  std::size_t starts = 64;
  std::uint64_t seed = 0;
  double tol_residual = 1e-10;
  std::size_t max_outer_iters = 5000;
  double initial_step = 1.0;
  double armijo = 1e-4;
  double shrink = 0.5;
  /// Worker threads for independent starts; results do not depend on it.
  std::size_t threads = 1;

  /// Throws InvalidArgument.
  void validate() const;
};

enum class SolveKind { Ground, Nodal };

struct SignPattern {
  std::vector<VertexIndex> positive;
  std::vector<VertexIndex> negative;
  std::vector<VertexIndex> zero;

  bool operator==(const SignPattern&) const = default;
};

struct SolveReport {
  SolveKind kind = SolveKind::Nodal;
  Mode mode = Mode::Full;
  double lambda = 0.0;
  VertexField minimizer;
  double level = 0.0;
  double residual_inf = 0.0;
  double residual_scale = 1.0;
  std::pair<double, double> membership_residuals{0.0, 0.0};
  std::size_t starts = 0;
  std::size_t starts_converged = 0;
  /// Final level per start, nullopt for starts that did not converge.
  std::vector<std::optional<double>> level_histogram;
  SignPattern sign_pattern;
  bool degenerate_coupling = false;
};

[[nodiscard]] SignPattern sign_pattern(const VertexField& u);

/// Flips u so that its first nonzero entry (vertex construction order) is
/// positive.
[[nodiscard]] VertexField sign_normalized(VertexField u);

/// Throws NonConvergence if no start reaches the residual tolerance.
[[nodiscard]] SolveReport solve_ground(const ProblemInstance& inst,
                                       const SolveOptions& opts = {});

/// Throws InfeasibleWell for a Dirichlet domain with fewer than two
/// vertices, NonConvergence if no start reaches the residual tolerance.
[[nodiscard]] SolveReport solve_nodal(const ProblemInstance& inst,
                                      const SolveOptions& opts = {});

struct VerificationReport {
  double level = 0.0;
  double residual_inf = 0.0;
  double residual_scale = 1.0;
  double membership_plus = 0.0;   // J'(u)·u⁺
  double membership_minus = 0.0;  // J'(u)·u⁻
  double nehari_identity = 0.0;   // J(u) − ½‖u‖₂²
  std::optional<double> ground_level;
  std::optional<double> margin;  // level − 2·ground_level

  [[nodiscard]] bool is_solution(double tol) const noexcept {
    return residual_inf <= tol * residual_scale;
  }
  [[nodiscard]] bool exceeds_twice_ground() const noexcept {
    return margin.has_value() && *margin > 0.0;
  }
};

[[nodiscard]] VerificationReport verify(
    const ProblemInstance& inst, const VertexField& u,
    std::optional<double> companion_ground = std::nullopt);

}  // namespace logschro
