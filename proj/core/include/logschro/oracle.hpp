#pragma once

// Brute-force enumeration of critical points on instances with very few
// free vertices. Shares nothing with the solver beyond the residual itself:
// grid scan for sign-change cells, then finite-difference Newton per cell.

#include <cstddef>
#include <optional>
#include <vector>

#include "logschro/energy.hpp"

namespace logschro {

struct OracleOptions {
  std::size_t dof_limit = 3;
  /// Cells per axis of the scan grid.
  std::size_t resolution = 160;
};

struct CriticalPoint {
  VertexField u;
  double level = 0.0;
  bool sign_changing = false;
};

struct OracleResult {
  /// Every critical point found in the box, including u = 0.
  std::vector<CriticalPoint> points;
  /// Half-width of the scanned box [−B, B]^dof.
  double box = 0.0;
  /// Least level among nonzero critical points (all of which lie on N).
  std::optional<double> min_ground;
  /// Least level among sign-changing critical points (all of which lie on M).
  std::optional<double> min_nodal;
};

/// The box half-width B = 1.25·exp(max_x(deg(x)/μ(x) + λa(x)/2)) over free
/// vertices contains every critical point: at a vertex of maximal |u|,
/// |log u²| ≤ 2deg/μ + λa.
/// Throws DofLimitExceeded, InvalidArgument for resolution 0.
[[nodiscard]] OracleResult oracle_enumerate(const ProblemInstance& inst,
                                            const OracleOptions& opts = {});

}  // namespace logschro
