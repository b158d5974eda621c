#pragma once

// Energy functionals of -Δu + λa(x)u = u log u² and its Dirichlet
// counterpart -Δu = u log u² on a well Ω with u = 0 on ∂Ω.

#include <cmath>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "logschro/graph.hpp"

namespace logschro {

/// u log u², extended by 0 at u = 0.
[[nodiscard]] inline double log_source(double u) noexcept {
  return u == 0.0 ? 0.0 : u * std::log(u * u);
}

/// u² log u², extended by 0 at u = 0.
[[nodiscard]] inline double entropy_density(double u) noexcept {
  return u == 0.0 ? 0.0 : u * u * std::log(u * u);
}

enum class Mode { Full, Dirichlet };

/// Either the full problem on V with parameter λ, or the Dirichlet problem
/// on a connected vertex set Ω. Dirichlet-admissible fields vanish outside Ω.
class ProblemInstance {
 public:
  /// Throws InvalidArgument unless lambda > 0.
  static ProblemInstance full(std::shared_ptr<const WeightedGraph> graph,
                              double lambda);
  /// Throws InvalidArgument if `interior` is empty or not connected.
  static ProblemInstance dirichlet(std::shared_ptr<const WeightedGraph> graph,
                                   std::span<const VertexIndex> interior);

  [[nodiscard]] const WeightedGraph& graph() const noexcept { return *graph_; }
  [[nodiscard]] const std::shared_ptr<const WeightedGraph>& graph_ptr()
      const noexcept {
    return graph_;
  }
  [[nodiscard]] Mode mode() const noexcept { return mode_; }
  [[nodiscard]] bool is_dirichlet() const noexcept {
    return mode_ == Mode::Dirichlet;
  }
  /// λ in Full mode, 0 in Dirichlet mode.
  [[nodiscard]] double lambda() const noexcept { return lambda_; }
  [[nodiscard]] const SubDomain& omega() const noexcept { return omega_; }

  /// λa(x) in Full mode; 0 in Dirichlet mode.
  [[nodiscard]] double potential(VertexIndex x) const;
  [[nodiscard]] bool is_free(VertexIndex x) const;
  [[nodiscard]] std::span<const VertexIndex> free_vertices() const noexcept {
    return free_;
  }

  /// Zeroes every entry outside Ω (identity in Full mode).
  [[nodiscard]] VertexField project(VertexField u) const;
  /// Throws DimensionMismatch, or NotAdmissible if u is nonzero outside Ω.
  void check_admissible(const VertexField& u) const;

 private:
  ProblemInstance() = default;

  std::shared_ptr<const WeightedGraph> graph_;
  Mode mode_ = Mode::Full;
  double lambda_ = 0.0;
  SubDomain omega_;
  std::vector<VertexIndex> free_;
  std::vector<char> free_mask_;
};

// All functionals below check admissibility first.

/// J_λ(u) in Full mode, J_Ω(u) in Dirichlet mode.
[[nodiscard]] double energy(const ProblemInstance& inst, const VertexField& u);

/// J'(u)·v, with the convention uv log u² = 0 where u = 0.
[[nodiscard]] double dir_deriv(const ProblemInstance& inst,
                               const VertexField& u, const VertexField& v);

/// Pointwise Euler–Lagrange residual, zero outside Ω in Dirichlet mode.
/// dir_deriv(u, v) = ∫ r v dμ for admissible v.
[[nodiscard]] VertexField residual(const ProblemInstance& inst,
                                   const VertexField& u);

/// Magnitude of the largest individual term of the residual, floored at 1.
[[nodiscard]] double residual_scale(const ProblemInstance& inst,
                                    const VertexField& u);

/// K(u) = Σ_x Σ_{y∼x} ω_xy [u⁺(x)u⁻(y) + u⁻(x)u⁺(y)]; x ranges over Ω∪∂Ω
/// in Dirichlet mode. Always ≤ 0.
[[nodiscard]] double coupling_k(const ProblemInstance& inst,
                                const VertexField& u);

/// Squared norm in force: ‖u‖²_{H_λ} (Full) or ‖u‖²_{H¹₀(Ω)} (Dirichlet).
[[nodiscard]] double energy_norm_sq(const ProblemInstance& inst,
                                    const VertexField& u);
/// ∫ u² dμ over V (Full) or Ω (Dirichlet).
[[nodiscard]] double mass(const ProblemInstance& inst, const VertexField& u);
/// ∫ u² log u² dμ over V (Full) or Ω (Dirichlet).
[[nodiscard]] double entropy(const ProblemInstance& inst,
                             const VertexField& u);

struct IdentityCheck {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;  // relative to max(|left|, |right|, 1)
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  [[nodiscard]] double max_relative() const noexcept;
};

/// Evaluates the positive/negative-part decomposition identities, the
/// Nehari mass identity and integration by parts on the indicator basis.
[[nodiscard]] IdentityReport identity_suite(const ProblemInstance& inst,
                                            const VertexField& u);

}  // namespace logschro
