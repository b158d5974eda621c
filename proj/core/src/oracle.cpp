#include "logschro/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>

namespace logschro {

namespace {

constexpr std::size_t kNewtonIterations = 200;
constexpr double kAcceptResidual = 1e-11;
constexpr double kDuplicateDistance = 1e-8;

class ResidualMap {
 public:
  explicit ResidualMap(const ProblemInstance& inst)
      : inst_(inst), free_(inst.free_vertices()) {}

  std::size_t dof() const { return free_.size(); }

  VertexField field(const Eigen::VectorXd& x) const {
    VertexField u(inst_.graph().size());
    for (std::size_t k = 0; k < free_.size(); ++k) {
      u[free_[k]] = x(static_cast<Eigen::Index>(k));
    }
    return u;
  }

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const {
    const VertexField r = residual(inst_, field(x));
    Eigen::VectorXd out(static_cast<Eigen::Index>(free_.size()));
    for (std::size_t k = 0; k < free_.size(); ++k) {
      out(static_cast<Eigen::Index>(k)) = r[free_[k]];
    }
    return out;
  }

  double scale(const Eigen::VectorXd& x) const {
    return residual_scale(inst_, field(x));
  }

 private:
  const ProblemInstance& inst_;
  std::span<const VertexIndex> free_;
};

std::optional<Eigen::VectorXd> newton_fd(const ResidualMap& f,
                                         Eigen::VectorXd x) {
  const auto n = x.size();
  auto converged = [&](const Eigen::VectorXd& point, const Eigen::VectorXd& r) {
    return r.lpNorm<Eigen::Infinity>() <= kAcceptResidual * f.scale(point);
  };
  Eigen::VectorXd r = f(x);
  for (std::size_t it = 0; it < kNewtonIterations; ++it) {
    if (converged(x, r)) break;
    Eigen::MatrixXd jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = 1e-7 * std::max(std::abs(x(j)), 1e-30);
      Eigen::VectorXd xp = x;
      Eigen::VectorXd xm = x;
      xp(j) += h;
      xm(j) -= h;
      jac.col(j) = (f(xp) - f(xm)) / (2.0 * h);
    }
    const Eigen::VectorXd dx = jac.fullPivLu().solve(-r);
    if (!dx.allFinite()) return std::nullopt;
    const double merit = r.squaredNorm();
    bool accepted = false;
    for (double step = 1.0; step > 1e-12; step *= 0.5) {
      Eigen::VectorXd trial = x + step * dx;
      Eigen::VectorXd rt = f(trial);
      if (rt.squaredNorm() < merit) {
        x = std::move(trial);
        r = std::move(rt);
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (!converged(x, r)) return std::nullopt;

  // A nonzero critical point has |u| >= 1 at its extremal vertex (there
  // -Δu and λau share the sign of u, so log u² >= 0). Smaller limits are
  // Newton runs creeping toward the zero solution.
  if (x.lpNorm<Eigen::Infinity>() < 0.5) return Eigen::VectorXd::Zero(n);

  // Entries driven toward zero by the logarithm converge slowly; snap them.
  Eigen::VectorXd snapped = x;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (std::abs(snapped(j)) <= 1e-13) snapped(j) = 0.0;
  }
  if (converged(snapped, f(snapped))) x = snapped;
  return x;
}

}  // namespace

OracleResult oracle_enumerate(const ProblemInstance& inst,
                              const OracleOptions& opts) {
  if (opts.resolution == 0) {
    throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
  }
  const ResidualMap f(inst);
  const std::size_t dof = f.dof();
  if (dof > opts.dof_limit) {
    throw Error(ErrorKind::DofLimitExceeded,
                std::to_string(dof) + " free vertices exceed the limit of " +
                    std::to_string(opts.dof_limit));
  }

  const auto& g = inst.graph();
  double exponent = 0.0;
  for (VertexIndex x : inst.free_vertices()) {
    exponent = std::max(exponent, g.degree(x) / g.mu(x) + 0.5 * inst.potential(x));
  }
  OracleResult result;
  result.box = 1.25 * std::exp(exponent);

  const std::size_t cells = opts.resolution;
  const std::size_t nodes = cells + 1;
  std::size_t total_nodes = 1;
  std::size_t total_cells = 1;
  for (std::size_t d = 0; d < dof; ++d) {
    total_nodes *= nodes;
    total_cells *= cells;
  }
  auto coordinate = [&](std::size_t i) {
    return -result.box + 2.0 * result.box * static_cast<double>(i) /
                             static_cast<double>(cells);
  };
  auto decode = [&](std::size_t flat, std::size_t base) {
    std::vector<std::size_t> idx(dof);
    for (std::size_t d = 0; d < dof; ++d) {
      idx[d] = flat % base;
      flat /= base;
    }
    return idx;
  };

  // Sign of each residual component at each grid node.
  std::vector<std::int8_t> signs(total_nodes * dof);
  Eigen::VectorXd x(static_cast<Eigen::Index>(dof));
  for (std::size_t node = 0; node < total_nodes; ++node) {
    const auto idx = decode(node, nodes);
    for (std::size_t d = 0; d < dof; ++d) {
      x(static_cast<Eigen::Index>(d)) = coordinate(idx[d]);
    }
    const Eigen::VectorXd r = f(x);
    for (std::size_t d = 0; d < dof; ++d) {
      const double v = r(static_cast<Eigen::Index>(d));
      signs[node * dof + d] = static_cast<std::int8_t>((v > 0.0) - (v < 0.0));
    }
  }

  std::vector<Eigen::VectorXd> found;
  const std::size_t corners = std::size_t{1} << dof;
  for (std::size_t cell = 0; cell < total_cells; ++cell) {
    const auto idx = decode(cell, cells);
    bool candidate = true;
    for (std::size_t comp = 0; comp < dof && candidate; ++comp) {
      bool has_nonneg = false;
      bool has_nonpos = false;
      for (std::size_t c = 0; c < corners; ++c) {
        std::size_t node = 0;
        std::size_t stride = 1;
        for (std::size_t d = 0; d < dof; ++d) {
          node += (idx[d] + ((c >> d) & 1U)) * stride;
          stride *= nodes;
        }
        const auto s = signs[node * dof + comp];
        has_nonneg |= s >= 0;
        has_nonpos |= s <= 0;
      }
      candidate = has_nonneg && has_nonpos;
    }
    if (!candidate) continue;

    for (std::size_t d = 0; d < dof; ++d) {
      x(static_cast<Eigen::Index>(d)) =
          0.5 * (coordinate(idx[d]) + coordinate(idx[d] + 1));
    }
    auto root = newton_fd(f, x);
    if (!root) continue;
    const double tol =
        kDuplicateDistance * std::max(1.0, root->lpNorm<Eigen::Infinity>());
    const bool duplicate = std::any_of(
        found.begin(), found.end(), [&](const Eigen::VectorXd& other) {
          return (other - *root).lpNorm<Eigen::Infinity>() <= tol;
        });
    if (!duplicate) found.push_back(*root);
  }

  for (const auto& root : found) {
    CriticalPoint p;
    p.u = f.field(root);
    p.level = energy(inst, p.u);
    p.sign_changing = p.u.has_positive() && p.u.has_negative();
    const bool nonzero = p.u.has_positive() || p.u.has_negative();
    if (nonzero && (!result.min_ground || p.level < *result.min_ground)) {
      result.min_ground = p.level;
    }
    if (p.sign_changing && (!result.min_nodal || p.level < *result.min_nodal)) {
      result.min_nodal = p.level;
    }
    result.points.push_back(std::move(p));
  }
  std::sort(result.points.begin(), result.points.end(),
            [](const CriticalPoint& a, const CriticalPoint& b) {
              if (a.level != b.level) return a.level < b.level;
              return std::lexicographical_compare(
                  a.u.values().begin(), a.u.values().end(),
                  b.u.values().begin(), b.u.values().end());
            });
  return result;
}

}  // namespace logschro
