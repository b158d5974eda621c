#include "logschro/nehari.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>

namespace logschro {

double SplitMoments::scale() const noexcept {
  return std::max({norm_plus, norm_minus, 1.0});
}

SplitMoments split_moments(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const VertexField up = u.positive_part();
  const VertexField um = u.negative_part();
  SplitMoments m;
  m.norm_plus = energy_norm_sq(inst, up);
  m.norm_minus = energy_norm_sq(inst, um);
  m.mass_plus = mass(inst, up);
  m.mass_minus = mass(inst, um);
  m.entropy_plus = entropy(inst, up);
  m.entropy_minus = entropy(inst, um);
  m.coupling = coupling_k(inst, u);
  return m;
}

double project_ray(const ProblemInstance& inst, const VertexField& w) {
  const double l2 = mass(inst, w);
  if (!(l2 > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "cannot project the zero field");
  }
  const double log_s2 = (energy_norm_sq(inst, w) - l2 - entropy(inst, w)) / l2;
  const double s = std::exp(0.5 * log_s2);
  if (!std::isfinite(s) || s == 0.0) {
    throw Error(ErrorKind::NoBracket, "ray scaling is not representable");
  }
  return s;
}

double fiber_profile(double tau) noexcept {
  return tau * tau - entropy_density(tau) - 1.0;
}

std::pair<double, double> pair_residuals(const SplitMoments& m, double s,
                                         double t) noexcept {
  const double s2 = s * s;
  const double t2 = t * t;
  const double g1 = s2 * m.norm_plus - s2 * m.entropy_plus -
                    entropy_density(s) * m.mass_plus - s2 * m.mass_plus -
                    0.5 * s * t * m.coupling;
  const double g2 = t2 * m.norm_minus - t2 * m.entropy_minus -
                    entropy_density(t) * m.mass_minus - t2 * m.mass_minus -
                    0.5 * s * t * m.coupling;
  return {g1, g2};
}

namespace {

void require_split(const VertexField& u) {
  if (!u.has_positive() || !u.has_negative()) {
    throw Error(ErrorKind::SingleSigned,
                "field needs nontrivial positive and negative parts");
  }
}

double log_sq(double s) { return s > 0.0 ? std::log(s * s) : 0.0; }

}  // namespace

std::pair<double, double> pair_residuals(const ProblemInstance& inst,
                                         const VertexField& u, double s,
                                         double t) {
  require_split(u);
  return pair_residuals(split_moments(inst, u), s, t);
}

std::array<double, 4> pair_jacobian(const SplitMoments& m, double s,
                                    double t) noexcept {
  const double k = m.coupling;
  return {
      2.0 * s * m.norm_plus - 2.0 * s * m.entropy_plus -
          (2.0 * s * log_sq(s) + 2.0 * s) * m.mass_plus -
          2.0 * s * m.mass_plus - 0.5 * t * k,
      -0.5 * s * k,
      -0.5 * t * k,
      2.0 * t * m.norm_minus - 2.0 * t * m.entropy_minus -
          (2.0 * t * log_sq(t) + 2.0 * t) * m.mass_minus -
          2.0 * t * m.mass_minus - 0.5 * s * k,
  };
}

FiberValue fiber_energy(const ProblemInstance& inst, const VertexField& u,
                        double s, double t, double tol) {
  if (!(s >= 0.0 && t >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "fiber parameters must be >= 0");
  }
  require_split(u);
  const SplitMoments m = split_moments(inst, u);
  const auto [g1, g2] = pair_residuals(m, 1.0, 1.0);
  if (std::abs(g1) > tol * m.scale() || std::abs(g2) > tol * m.scale()) {
    throw Error(ErrorKind::NotInNehariSet,
                "field is not on the sign-changing Nehari set");
  }
  const double value = energy(inst, u) + 0.5 * fiber_profile(s) * m.mass_plus +
                       0.5 * fiber_profile(t) * m.mass_minus +
                       0.25 * (s - t) * (s - t) * m.coupling;
  return {s, t, value};
}

Bracket miranda_bracket(const SplitMoments& m) {
  if (!(m.mass_plus > 0.0 && m.mass_minus > 0.0)) {
    throw Error(ErrorKind::SingleSigned,
                "field needs nontrivial positive and negative parts");
  }
  if (m.coupling == 0.0) {
    throw Error(ErrorKind::DegenerateCoupling,
                "positive and negative supports share no edge");
  }
  // g₁(s,·) is increasing in t and g₂(·,t) in s, so the face conditions
  // reduce to the diagonal corners (r,r) and (R,R).
  constexpr int kMaxDoublings = 40;
  double r = 1.0;
  for (int k = 0;; ++k) {
    const auto [g1, g2] = pair_residuals(m, r, r);
    if (g1 > 0.0 && g2 > 0.0) break;
    if (k == kMaxDoublings) {
      throw Error(ErrorKind::NoBracket, "no lower bracket above 2^-40");
    }
    r *= 0.5;
  }
  double big_r = 1.0;
  for (int k = 0;; ++k) {
    const auto [g1, g2] = pair_residuals(m, big_r, big_r);
    if (g1 < 0.0 && g2 < 0.0) break;
    if (k == kMaxDoublings) {
      throw Error(ErrorKind::NoBracket, "no upper bracket below 2^40");
    }
    big_r *= 2.0;
  }
  return {r, big_r};
}

Bracket miranda_bracket(const ProblemInstance& inst, const VertexField& u) {
  require_split(u);
  return miranda_bracket(split_moments(inst, u));
}

namespace {

// The pair system divided by (s², t²) in log-coordinates σ = log s,
// τ = log t: φ₁ = J'(u⁺)·u⁺ − 2‖u⁺‖₂²σ + κe^{τ−σ}, κ = −K/2. Each φᵢ is
// strictly decreasing in its own variable.
struct ScaledPairSystem {
  const SplitMoments& m;
  double kappa;

  std::array<double, 2> value(double sigma, double tau) const {
    return {m.self_plus() - 2.0 * m.mass_plus * sigma +
                kappa * std::exp(tau - sigma),
            m.self_minus() - 2.0 * m.mass_minus * tau +
                kappa * std::exp(sigma - tau)};
  }

  std::array<double, 4> jacobian(double sigma, double tau) const {
    const double e1 = kappa * std::exp(tau - sigma);
    const double e2 = kappa * std::exp(sigma - tau);
    return {-2.0 * m.mass_plus - e1, e1, e2, -2.0 * m.mass_minus - e2};
  }
};

double norm_sq(const std::array<double, 2>& v) {
  return v[0] * v[0] + v[1] * v[1];
}

// Root of a strictly decreasing function on [lo, hi] with f(lo) > 0 > f(hi).
template <class F>
double bisect_decreasing(F&& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo));
       ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PairProjection finish(const VertexField& u, const SplitMoments& m, double s,
                      double t) {
  PairProjection p;
  p.s = s;
  p.t = t;
  p.projected = s * u.positive_part() + t * u.negative_part();
  std::tie(p.g1_residual, p.g2_residual) = pair_residuals(m, s, t);
  return p;
}

}  // namespace

PairProjection project_pair(const ProblemInstance& inst, const VertexField& u,
                            const PairOptions& opts) {
  require_split(u);
  const SplitMoments m = split_moments(inst, u);

  if (m.coupling == 0.0) {
    const double s = project_ray(inst, u.positive_part());
    const double t = project_ray(inst, u.negative_part());
    PairProjection p = finish(u, m, s, t);
    p.bracket = {std::min(s, t), std::max(s, t)};
    p.degenerate_coupling = true;
    return p;
  }

  const Bracket box = miranda_bracket(m);
  const double lo = std::log(box.r);
  const double hi = std::log(box.big_r);
  const ScaledPairSystem sys{m, -0.5 * m.coupling};
  auto clamp = [&](double x) { return std::clamp(x, lo, hi); };

  const auto start = opts.initial.value_or(std::pair{1.0, 1.0});
  if (!(start.first > 0.0 && start.second > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "initial (s,t) must be positive");
  }
  double sigma = clamp(std::log(start.first));
  double tau = clamp(std::log(start.second));

  // Tolerance relative to the parts of the projected field s u⁺ + t u⁻.
  auto converged = [&](double sg, double ta) {
    const double s = std::exp(sg);
    const double t = std::exp(ta);
    const auto [g1, g2] = pair_residuals(m, s, t);
    const double tol =
        opts.tol * std::max({s * s * m.norm_plus, t * t * m.norm_minus, 1.0});
    return std::abs(g1) <= tol && std::abs(g2) <= tol;
  };
  auto bisection_sweep = [&] {
    sigma = bisect_decreasing(
        [&](double x) { return sys.value(x, tau)[0]; }, lo, hi);
    tau = bisect_decreasing(
        [&](double x) { return sys.value(sigma, x)[1]; }, lo, hi);
  };

  bool used_bisection = false;
  std::size_t it = 0;
  for (; it < opts.max_iterations && !converged(sigma, tau); ++it) {
    if (opts.bisection_only) {
      bisection_sweep();
      used_bisection = true;
      continue;
    }
    const auto f = sys.value(sigma, tau);
    const auto j = sys.jacobian(sigma, tau);
    const double det = j[0] * j[3] - j[1] * j[2];
    const double d_sigma = -(j[3] * f[0] - j[1] * f[1]) / det;
    const double d_tau = -(-j[2] * f[0] + j[0] * f[1]) / det;

    const double merit = norm_sq(f);
    bool accepted = false;
    for (double step = 1.0; step > 1e-12; step *= 0.5) {
      const double ns = clamp(sigma + step * d_sigma);
      const double nt = clamp(tau + step * d_tau);
      if (norm_sq(sys.value(ns, nt)) <= (1.0 - 1e-4 * step) * merit) {
        sigma = ns;
        tau = nt;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      bisection_sweep();
      used_bisection = true;
    }
  }
  if (!converged(sigma, tau)) {
    throw Error(ErrorKind::NonConvergence,
                "pair projection did not converge in " +
                    std::to_string(opts.max_iterations) + " iterations");
  }
  // One more Newton step when it still helps; this lands at roundoff level.
  if (!opts.bisection_only && it > 0) {
    const auto f = sys.value(sigma, tau);
    const auto j = sys.jacobian(sigma, tau);
    const double det = j[0] * j[3] - j[1] * j[2];
    const double ns = clamp(sigma - (j[3] * f[0] - j[1] * f[1]) / det);
    const double nt = clamp(tau - (-j[2] * f[0] + j[0] * f[1]) / det);
    if (norm_sq(sys.value(ns, nt)) < norm_sq(f)) {
      sigma = ns;
      tau = nt;
    }
  }

  const bool at_identity = sigma == 0.0 && tau == 0.0;
  PairProjection p = at_identity ? finish(u, m, 1.0, 1.0)
                                 : finish(u, m, std::exp(sigma), std::exp(tau));
  p.iterations = it;
  p.bracket = box;
  p.used_bisection = used_bisection;
  return p;
}

}  // namespace logschro
