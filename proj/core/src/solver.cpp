#include "logschro/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <random>
#include <thread>

#include "logschro/nehari.hpp"

namespace logschro {

void SolveOptions::validate() const {
  auto bad = [](const char* what) {
    throw Error(ErrorKind::InvalidArgument, what);
  };
  if (starts < 1) bad("starts must be >= 1");
  if (!(tol_residual > 0.0)) bad("tol_residual must be positive");
  if (max_outer_iters < 1) bad("max_outer_iters must be >= 1");
  if (!(initial_step > 0.0)) bad("initial_step must be positive");
  if (!(armijo > 0.0 && armijo < 1.0)) bad("armijo must lie in (0,1)");
  if (!(shrink > 0.0 && shrink < 1.0)) bad("shrink must lie in (0,1)");
}

SignPattern sign_pattern(const VertexField& u) {
  SignPattern p;
  for (VertexIndex i = 0; i < u.size(); ++i) {
    if (u[i] > 0.0) {
      p.positive.push_back(i);
    } else if (u[i] < 0.0) {
      p.negative.push_back(i);
    } else {
      p.zero.push_back(i);
    }
  }
  return p;
}

VertexField sign_normalized(VertexField u) {
  for (double v : u.values()) {
    if (v != 0.0) {
      if (v < 0.0) u *= -1.0;
      break;
    }
  }
  return u;
}

namespace {

constexpr double kCollapseNorm = 1e-14;
constexpr std::size_t kMaxRerandomize = 3;
constexpr std::size_t kPolishIterations = 100;
// Descent hands over to the Newton polish once the residual is this small
// relative to its scale.
constexpr double kHandoverResidual = 1e-8;

double residual_inf(const ProblemInstance& inst, const VertexField& r) {
  double m = 0.0;
  for (VertexIndex x : inst.free_vertices()) m = std::max(m, std::abs(r[x]));
  return m;
}

double weighted_sq(const ProblemInstance& inst, const VertexField& r) {
  double sum = 0.0;
  for (VertexIndex x : inst.free_vertices()) {
    sum += inst.graph().mu(x) * r[x] * r[x];
  }
  return sum;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Projected {
  VertexField u;
  double level = 0.0;
};

struct Outcome {
  bool converged = false;
  double level = 0.0;
  VertexField u;
};

// Shared read-only state for all starts of one solve.
class Workspace {
 public:
  Workspace(const ProblemInstance& inst, SolveKind kind)
      : inst_(inst), kind_(kind) {
    const auto& g = inst.graph();
    const auto free = inst.free_vertices();
    slot_.assign(g.size(), -1);
    for (std::size_t k = 0; k < free.size(); ++k) {
      slot_[free[k]] = static_cast<std::ptrdiff_t>(k);
    }
    // Gram matrix of ⟨·,·⟩ in the energy norm restricted to free vertices.
    const auto n = static_cast<Eigen::Index>(free.size());
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      const VertexIndex x = free[static_cast<std::size_t>(k)];
      gram(k, k) = g.mu(x) * (inst.potential(x) + 1.0) + g.degree(x);
      for (const auto& nb : g.neighbors(x)) {
        if (slot_[nb.vertex] >= 0) gram(k, slot_[nb.vertex]) -= nb.weight;
      }
    }
    riesz_.compute(gram);
  }

  const ProblemInstance& inst() const { return inst_; }
  SolveKind kind() const { return kind_; }

  // Gradient of J in the energy-norm inner product.
  Eigen::VectorXd sobolev_gradient(const VertexField& r) const {
    const auto free = inst_.free_vertices();
    Eigen::VectorXd b(static_cast<Eigen::Index>(free.size()));
    for (std::size_t k = 0; k < free.size(); ++k) {
      b(static_cast<Eigen::Index>(k)) = inst_.graph().mu(free[k]) * r[free[k]];
    }
    return riesz_.solve(b);
  }

  std::optional<Projected> project(const VertexField& w) const {
    try {
      VertexField p;
      if (kind_ == SolveKind::Nodal) {
        if (!w.has_positive() || !w.has_negative()) return std::nullopt;
        p = project_pair(inst_, w).projected;
      } else {
        if (!(mass(inst_, w) > 0.0)) return std::nullopt;
        p = project_ray(inst_, w) * w;
      }
      const double e = energy(inst_, p);
      if (!std::isfinite(e) || !p.all_finite()) return std::nullopt;
      return Projected{std::move(p), e};
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  bool collapsed(const VertexField& u) const {
    if (kind_ != SolveKind::Nodal) return false;
    const auto& g = inst_.graph();
    return std::sqrt(norms(g, u.positive_part(), 0.0).h1_sq) < kCollapseNorm ||
           std::sqrt(norms(g, u.negative_part(), 0.0).h1_sq) < kCollapseNorm;
  }

  // Newton on r(u) = 0 over free vertices, damped on ∫ r² dμ.
  VertexField polish(VertexField u, double tol) const {
    const auto& g = inst_.graph();
    const auto free = inst_.free_vertices();
    const auto n = static_cast<Eigen::Index>(free.size());
    for (std::size_t it = 0; it < kPolishIterations; ++it) {
      const VertexField r = residual(inst_, u);
      if (residual_inf(inst_, r) <= 1e-3 * tol * residual_scale(inst_, u)) {
        break;
      }
      const double merit = weighted_sq(inst_, r);
      Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
      Eigen::VectorXd rhs(n);
      for (Eigen::Index k = 0; k < n; ++k) {
        const VertexIndex x = free[static_cast<std::size_t>(k)];
        const double u2 = std::max(u[x] * u[x], 1e-300);
        jac(k, k) = g.degree(x) / g.mu(x) + inst_.potential(x) -
                    std::log(u2) - 2.0;
        for (const auto& nb : g.neighbors(x)) {
          if (slot_[nb.vertex] >= 0) {
            jac(k, slot_[nb.vertex]) -= nb.weight / g.mu(x);
          }
        }
        rhs(k) = -r[x];
      }
      const Eigen::VectorXd dx = jac.partialPivLu().solve(rhs);
      if (!dx.allFinite()) break;
      bool accepted = false;
      for (double step = 1.0; step > 1e-10; step *= 0.5) {
        VertexField trial = u;
        for (Eigen::Index k = 0; k < n; ++k) {
          trial[free[static_cast<std::size_t>(k)]] += step * dx(k);
        }
        if (weighted_sq(inst_, residual(inst_, trial)) < merit) {
          u = std::move(trial);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    return u;
  }

  Projected descend(Projected start, const SolveOptions& opts,
                    bool& collapsed_out) const {
    const auto free = inst_.free_vertices();
    VertexField u = std::move(start.u);
    double level = start.level;
    double step = opts.initial_step;
    std::size_t stalls = 0;
    collapsed_out = false;
    for (std::size_t it = 0; it < opts.max_outer_iters; ++it) {
      const VertexField r = residual(inst_, u);
      if (residual_inf(inst_, r) <= kHandoverResidual * residual_scale(inst_, u)) {
        break;
      }
      const Eigen::VectorXd grad = sobolev_gradient(r);
      double slope = 0.0;
      for (std::size_t k = 0; k < free.size(); ++k) {
        slope += inst_.graph().mu(free[k]) * r[free[k]] *
                 grad(static_cast<Eigen::Index>(k));
      }
      if (!(slope > 0.0)) break;

      std::optional<Projected> next;
      double trial = std::min(opts.initial_step, step / opts.shrink);
      for (; trial > 1e-14; trial *= opts.shrink) {
        VertexField w = u;
        for (std::size_t k = 0; k < free.size(); ++k) {
          w[free[k]] -= trial * grad(static_cast<Eigen::Index>(k));
        }
        auto p = project(w);
        if (p && p->level <= level - opts.armijo * trial * slope) {
          next = std::move(p);
          break;
        }
      }
      if (!next) break;
      const double decrease = level - next->level;
      u = std::move(next->u);
      level = next->level;
      step = trial;
      if (collapsed(u)) {
        collapsed_out = true;
        break;
      }
      if (decrease <= 1e-15 * std::max(1.0, std::abs(level))) {
        if (++stalls >= 5) break;
      } else {
        stalls = 0;
      }
    }
    return {std::move(u), level};
  }

  VertexField initial_field(std::size_t index, std::size_t attempt,
                            std::mt19937_64& rng) const {
    const auto& g = inst_.graph();
    const auto free = inst_.free_vertices();
    VertexField w(g.size());
    auto damp = [&](VertexIndex x) { return 1.0 / (1.0 + inst_.potential(x)); };
    const bool nodal = kind_ == SolveKind::Nodal;

    if (attempt == 0 && index == 0) {
      if (!nodal) {
        for (VertexIndex x : free) w[x] = damp(x);
        return w;
      }
      const auto order = bfs_order(peripheral_vertex());
      const std::size_t half = (order.size() + 1) / 2;
      for (std::size_t k = 0; k < order.size(); ++k) {
        w[order[k]] = (k < half ? 1.0 : -1.0) * damp(order[k]);
      }
      return w;
    }
    if (attempt == 0 && index == 1 && nodal) {
      const auto depth = bfs_depth(free.front());
      for (VertexIndex x : free) {
        w[x] = (depth[x] % 2 == 0 ? 1.0 : -1.0) * damp(x);
      }
      return w;
    }

    std::uniform_real_distribution<double> magnitude(0.5, 2.5);
    const bool random_signs = nodal || index % 2 == 1;
    for (VertexIndex x : free) {
      const double sign = random_signs && (rng() & 1U) ? -1.0 : 1.0;
      w[x] = sign * magnitude(rng) * damp(x);
    }
    if (nodal && (!w.has_positive() || !w.has_negative())) {
      const VertexIndex flip =
          free[static_cast<std::size_t>(rng() % free.size())];
      w[flip] = -w[flip];
    }
    return w;
  }

  Outcome run_start(std::size_t index, const SolveOptions& opts) const {
    std::mt19937_64 rng(splitmix64(opts.seed ^ splitmix64(index + 1)));
    for (std::size_t attempt = 0; attempt <= kMaxRerandomize; ++attempt) {
      auto start = project(initial_field(index, attempt, rng));
      if (!start) continue;
      bool collapsed_start = false;
      Projected descended = descend(std::move(*start), opts, collapsed_start);
      if (collapsed_start) continue;

      VertexField u = polish(descended.u, opts.tol_residual);
      const double level = energy(inst_, u);
      const bool solved =
          std::isfinite(level) &&
          residual_inf(inst_, residual(inst_, u)) <=
              opts.tol_residual * residual_scale(inst_, u) &&
          level <= descended.level +
                       1e-8 * std::max(1.0, std::abs(descended.level)) &&
          (kind_ != SolveKind::Nodal || (u.has_positive() && u.has_negative())) &&
          (kind_ != SolveKind::Ground || mass(inst_, u) > 0.0);
      if (solved) return {true, level, std::move(u)};
    }
    return {};
  }

 private:
  std::vector<std::size_t> bfs_depth(VertexIndex root) const {
    const auto& g = inst_.graph();
    std::vector<std::size_t> depth(g.size(), static_cast<std::size_t>(-1));
    std::deque<VertexIndex> queue{root};
    depth[root] = 0;
    while (!queue.empty()) {
      const VertexIndex x = queue.front();
      queue.pop_front();
      for (const auto& nb : g.neighbors(x)) {
        if (slot_[nb.vertex] >= 0 && depth[nb.vertex] == static_cast<std::size_t>(-1)) {
          depth[nb.vertex] = depth[x] + 1;
          queue.push_back(nb.vertex);
        }
      }
    }
    return depth;
  }

  std::vector<VertexIndex> bfs_order(VertexIndex root) const {
    const auto depth = bfs_depth(root);
    std::vector<VertexIndex> order(inst_.free_vertices().begin(),
                                   inst_.free_vertices().end());
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexIndex a, VertexIndex b) {
                       return depth[a] < depth[b];
                     });
    return order;
  }

  VertexIndex peripheral_vertex() const {
    const auto free = inst_.free_vertices();
    const auto depth = bfs_depth(free.front());
    VertexIndex best = free.front();
    for (VertexIndex x : free) {
      if (depth[x] > depth[best]) best = x;
    }
    return best;
  }

  const ProblemInstance& inst_;
  SolveKind kind_;
  std::vector<std::ptrdiff_t> slot_;
  Eigen::LLT<Eigen::MatrixXd> riesz_;
};

bool lexicographically_less(const VertexField& a, const VertexField& b) {
  return std::lexicographical_compare(a.values().begin(), a.values().end(),
                                      b.values().begin(), b.values().end());
}

SolveReport solve(const ProblemInstance& inst, const SolveOptions& opts,
                  SolveKind kind) {
  opts.validate();
  const Workspace ws(inst, kind);

  std::vector<Outcome> outcomes(opts.starts);
  const std::size_t workers = std::clamp<std::size_t>(opts.threads, 1, opts.starts);
  if (workers == 1) {
    for (std::size_t i = 0; i < opts.starts; ++i) outcomes[i] = ws.run_start(i, opts);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < opts.starts; i = next++) {
          outcomes[i] = ws.run_start(i, opts);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  SolveReport report;
  report.kind = kind;
  report.mode = inst.mode();
  report.lambda = inst.lambda();
  report.starts = opts.starts;
  report.level_histogram.reserve(opts.starts);

  std::optional<std::size_t> best;
  VertexField best_normalized;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (!o.converged) {
      report.level_histogram.emplace_back(std::nullopt);
      continue;
    }
    report.level_histogram.emplace_back(o.level);
    ++report.starts_converged;
    VertexField normalized = sign_normalized(o.u);
    if (!best) {
      best = i;
      best_normalized = std::move(normalized);
      continue;
    }
    const double ref = outcomes[*best].level;
    const bool tie =
        std::abs(o.level - ref) <= 1e-12 * std::max(1.0, std::abs(ref));
    if ((tie && lexicographically_less(normalized, best_normalized)) ||
        (!tie && o.level < ref)) {
      best = i;
      best_normalized = std::move(normalized);
    }
  }
  if (!best) {
    throw Error(ErrorKind::NonConvergence,
                "no start reached the residual tolerance");
  }

  report.minimizer = std::move(best_normalized);
  report.level = energy(inst, report.minimizer);
  const VertexField r = residual(inst, report.minimizer);
  report.residual_inf = residual_inf(inst, r);
  report.residual_scale = residual_scale(inst, report.minimizer);
  report.membership_residuals = {
      dir_deriv(inst, report.minimizer, report.minimizer.positive_part()),
      dir_deriv(inst, report.minimizer, report.minimizer.negative_part())};
  report.sign_pattern = sign_pattern(report.minimizer);
  report.degenerate_coupling = kind == SolveKind::Nodal &&
                               coupling_k(inst, report.minimizer) == 0.0;
  return report;
}

}  // namespace

SolveReport solve_ground(const ProblemInstance& inst, const SolveOptions& opts) {
  return solve(inst, opts, SolveKind::Ground);
}

SolveReport solve_nodal(const ProblemInstance& inst, const SolveOptions& opts) {
  if (inst.free_vertices().size() < 2) {
    throw Error(ErrorKind::InfeasibleWell,
                "a sign-changing field needs at least two free vertices");
  }
  return solve(inst, opts, SolveKind::Nodal);
}

VerificationReport verify(const ProblemInstance& inst, const VertexField& u,
                          std::optional<double> companion_ground) {
  VerificationReport v;
  v.level = energy(inst, u);
  v.residual_inf = residual_inf(inst, residual(inst, u));
  v.residual_scale = residual_scale(inst, u);
  v.membership_plus = dir_deriv(inst, u, u.positive_part());
  v.membership_minus = dir_deriv(inst, u, u.negative_part());
  v.nehari_identity = v.level - 0.5 * mass(inst, u);
  if (companion_ground) {
    v.ground_level = companion_ground;
    v.margin = v.level - 2.0 * *companion_ground;
  }
  return v;
}

}  // namespace logschro
