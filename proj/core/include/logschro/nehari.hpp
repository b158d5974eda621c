#pragma once

// Projections onto the Nehari manifold N = {u ≠ 0 : J'(u)·u = 0} and the
// sign-changing set M = {u⁺, u⁻ ≠ 0 : J'(u)·u⁺ = J'(u)·u⁻ = 0}.

#include <array>
#include <cstddef>
#include <optional>
#include <utility>

#include "logschro/energy.hpp"

namespace logschro {

/// Scalars that determine J along the fiber (s,t) ↦ s u⁺ + t u⁻.
struct SplitMoments {
  double norm_plus = 0.0;  // energy_norm_sq(u⁺)
  double norm_minus = 0.0;
  double mass_plus = 0.0;  // ‖u⁺‖₂²
  double mass_minus = 0.0;
  double entropy_plus = 0.0;  // ∫ |u⁺|² log |u⁺|²
  double entropy_minus = 0.0;
  double coupling = 0.0;  // K(u)

  /// J'(u⁺)·u⁺
  [[nodiscard]] double self_plus() const noexcept {
    return norm_plus - mass_plus - entropy_plus;
  }
  [[nodiscard]] double self_minus() const noexcept {
    return norm_minus - mass_minus - entropy_minus;
  }
  /// max(‖u⁺‖², ‖u⁻‖², 1) in the energy norm.
  [[nodiscard]] double scale() const noexcept;
};

[[nodiscard]] SplitMoments split_moments(const ProblemInstance& inst,
                                         const VertexField& u);

/// The unique s > 0 with s·w ∈ N, from the closed form
/// log s² = (‖w‖² − ‖w‖₂² − ∫w² log w²) / ‖w‖₂².
/// Throws InvalidArgument for w ≡ 0, NoBracket if s overflows.
[[nodiscard]] double project_ray(const ProblemInstance& inst,
                                 const VertexField& w);

/// f(τ) = τ² − τ² log τ² − 1, with f(0) = −1.
[[nodiscard]] double fiber_profile(double tau) noexcept;

struct FiberValue {
  double s = 0.0;
  double t = 0.0;
  double value = 0.0;
};

/// J(s u⁺ + t u⁻) for u ∈ M through
/// J(u) + ½f(s)‖u⁺‖₂² + ½f(t)‖u⁻‖₂² + (s−t)²K(u)/4.
/// Throws NotInNehariSet when the pair residuals at (1,1) exceed tol·scale.
[[nodiscard]] FiberValue fiber_energy(const ProblemInstance& inst,
                                      const VertexField& u, double s,
                                      double t, double tol = 1e-10);

/// (g₁, g₂) = (J'(su⁺+tu⁻)·su⁺, J'(su⁺+tu⁻)·tu⁻) via closed forms.
/// Throws SingleSigned unless both parts are nontrivial.
[[nodiscard]] std::pair<double, double> pair_residuals(
    const ProblemInstance& inst, const VertexField& u, double s, double t);
[[nodiscard]] std::pair<double, double> pair_residuals(
    const SplitMoments& m, double s, double t) noexcept;

/// ∂(g₁,g₂)/∂(s,t), row-major.
[[nodiscard]] std::array<double, 4> pair_jacobian(const SplitMoments& m,
                                                  double s, double t) noexcept;

struct Bracket {
  double r = 0.0;
  double big_r = 0.0;
};

/// Box [r,R]² on whose faces g₁, g₂ carry the Miranda signs:
/// g₁(r,·) > 0, g₁(R,·) < 0, g₂(·,r) > 0, g₂(·,R) < 0.
/// Throws SingleSigned, DegenerateCoupling (K = 0) or NoBracket (no box
/// within [2⁻⁴⁰, 2⁴⁰]).
[[nodiscard]] Bracket miranda_bracket(const ProblemInstance& inst,
                                      const VertexField& u);
[[nodiscard]] Bracket miranda_bracket(const SplitMoments& m);

struct PairOptions {
  /// Residual tolerance relative to max(‖su⁺‖², ‖tu⁻‖², 1), energy norm.
  double tol = 1e-10;
  std::size_t max_iterations = 200;
  /// Starting point inside the bracket; (1,1) clamped into it by default.
  std::optional<std::pair<double, double>> initial;
  /// Skip Newton and use alternating one-dimensional bisection only.
  bool bisection_only = false;
};

struct PairProjection {
  double s = 1.0;
  double t = 1.0;
  VertexField projected;
  double g1_residual = 0.0;
  double g2_residual = 0.0;
  std::size_t iterations = 0;
  Bracket bracket;
  bool degenerate_coupling = false;
  bool used_bisection = false;
};

/// Unique (s,t) with s u⁺ + t u⁻ ∈ M. Degenerate coupling (K = 0) decouples
/// into two ray projections and is flagged instead of failing.
/// Throws SingleSigned, NoBracket or NonConvergence.
[[nodiscard]] PairProjection project_pair(const ProblemInstance& inst,
                                          const VertexField& u,
                                          const PairOptions& opts = {});

}  // namespace logschro
