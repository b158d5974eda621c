#include "logschro/energy.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace logschro {

ProblemInstance ProblemInstance::full(std::shared_ptr<const WeightedGraph> graph,
                                      double lambda) {
  if (!graph) throw Error(ErrorKind::InvalidArgument, "null graph");
  if (!(std::isfinite(lambda) && lambda > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
  }
  ProblemInstance inst;
  inst.graph_ = std::move(graph);
  inst.mode_ = Mode::Full;
  inst.lambda_ = lambda;
  inst.free_.resize(inst.graph_->size());
  for (VertexIndex i = 0; i < inst.free_.size(); ++i) inst.free_[i] = i;
  inst.free_mask_.assign(inst.graph_->size(), 1);
  return inst;
}

ProblemInstance ProblemInstance::dirichlet(
    std::shared_ptr<const WeightedGraph> graph,
    std::span<const VertexIndex> interior) {
  if (!graph) throw Error(ErrorKind::InvalidArgument, "null graph");
  ProblemInstance inst;
  inst.omega_ = boundary(*graph, interior);
  if (inst.omega_.interior.empty()) {
    throw Error(ErrorKind::InvalidArgument, "Dirichlet domain is empty");
  }
  if (!is_connected(*graph, inst.omega_.interior)) {
    throw Error(ErrorKind::InvalidArgument,
                "Dirichlet domain is not connected");
  }
  inst.graph_ = std::move(graph);
  inst.mode_ = Mode::Dirichlet;
  inst.free_ = inst.omega_.interior;
  inst.free_mask_.assign(inst.graph_->size(), 0);
  for (VertexIndex i : inst.free_) inst.free_mask_[i] = 1;
  return inst;
}

double ProblemInstance::potential(VertexIndex x) const {
  return mode_ == Mode::Full ? lambda_ * graph_->a(x) : 0.0;
}

bool ProblemInstance::is_free(VertexIndex x) const {
  return free_mask_[x] != 0;
}

VertexField ProblemInstance::project(VertexField u) const {
  if (u.size() != graph_->size()) {
    throw Error(ErrorKind::DimensionMismatch, "field size differs from graph");
  }
  for (VertexIndex i = 0; i < u.size(); ++i) {
    if (!free_mask_[i]) u[i] = 0.0;
  }
  return u;
}

void ProblemInstance::check_admissible(const VertexField& u) const {
  if (u.size() != graph_->size()) {
    throw Error(ErrorKind::DimensionMismatch, "field size differs from graph");
  }
  if (mode_ == Mode::Full) return;
  for (VertexIndex i = 0; i < u.size(); ++i) {
    if (!free_mask_[i] && u[i] != 0.0) {
      throw Error(ErrorKind::NotAdmissible,
                  "field is nonzero at '" + graph_->id(i) +
                      "' outside the Dirichlet domain");
    }
  }
}

namespace {

// Σ_{x ∈ X} μ(x) Γ(u,v)(x), X = V or Ω∪∂Ω.
double gradient_pairing(const ProblemInstance& inst, const VertexField& u,
                        const VertexField& v) {
  const auto& g = inst.graph();
  if (!inst.is_dirichlet()) return dirichlet_form(g, u, v);
  double sum = 0.0;
  for (VertexIndex x : inst.omega().closure) {
    for (const auto& nb : g.neighbors(x)) {
      sum += nb.weight * (u[nb.vertex] - u[x]) * (v[nb.vertex] - v[x]);
    }
  }
  return 0.5 * sum;
}

}  // namespace

double mass(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  double sum = 0.0;
  for (VertexIndex x : inst.free_vertices()) sum += g.mu(x) * u[x] * u[x];
  return sum;
}

double entropy(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  double sum = 0.0;
  for (VertexIndex x : inst.free_vertices()) {
    sum += g.mu(x) * entropy_density(u[x]);
  }
  return sum;
}

double energy_norm_sq(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  double local = 0.0;
  for (VertexIndex x : inst.free_vertices()) {
    local += g.mu(x) * (inst.potential(x) + 1.0) * u[x] * u[x];
  }
  return gradient_pairing(inst, u, u) + local;
}

double energy(const ProblemInstance& inst, const VertexField& u) {
  return 0.5 * energy_norm_sq(inst, u) - 0.5 * entropy(inst, u);
}

double dir_deriv(const ProblemInstance& inst, const VertexField& u,
                 const VertexField& v) {
  inst.check_admissible(u);
  inst.check_admissible(v);
  const auto& g = inst.graph();
  double local = 0.0;
  for (VertexIndex x : inst.free_vertices()) {
    local += g.mu(x) * (inst.potential(x) * u[x] * v[x] - log_source(u[x]) * v[x]);
  }
  return gradient_pairing(inst, u, v) + local;
}

VertexField residual(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  VertexField r(g.size());
  for (VertexIndex x : inst.free_vertices()) {
    double lap = 0.0;
    for (const auto& nb : g.neighbors(x)) lap += nb.weight * (u[nb.vertex] - u[x]);
    lap /= g.mu(x);
    r[x] = -lap + inst.potential(x) * u[x] - log_source(u[x]);
  }
  return r;
}

double residual_scale(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  double scale = 1.0;
  for (VertexIndex x : inst.free_vertices()) {
    double terms = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      terms += nb.weight * (std::abs(u[nb.vertex]) + std::abs(u[x]));
    }
    terms /= g.mu(x);
    terms += inst.potential(x) * std::abs(u[x]) + std::abs(log_source(u[x]));
    scale = std::max(scale, terms);
  }
  return scale;
}

double coupling_k(const ProblemInstance& inst, const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  auto pos = [](double v) { return v > 0.0 ? v : 0.0; };
  auto neg = [](double v) { return v < 0.0 ? v : 0.0; };
  auto term = [&](VertexIndex x) {
    double sum = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      const double uy = u[nb.vertex];
      sum += nb.weight * (pos(u[x]) * neg(uy) + neg(u[x]) * pos(uy));
    }
    return sum;
  };
  double k = 0.0;
  if (inst.is_dirichlet()) {
    for (VertexIndex x : inst.omega().closure) k += term(x);
  } else {
    for (VertexIndex x = 0; x < g.size(); ++x) k += term(x);
  }
  return k;
}

double IdentityReport::max_relative() const noexcept {
  double m = 0.0;
  for (const auto& c : checks) m = std::max(m, c.rel_discrepancy);
  return m;
}

namespace {

IdentityCheck make_check(std::string name, double left, double right) {
  IdentityCheck c{std::move(name), left, right, std::abs(left - right), 0.0};
  c.rel_discrepancy =
      c.abs_discrepancy / std::max({std::abs(left), std::abs(right), 1.0});
  return c;
}

}  // namespace

IdentityReport identity_suite(const ProblemInstance& inst,
                              const VertexField& u) {
  inst.check_admissible(u);
  const auto& g = inst.graph();
  const VertexField up = u.positive_part();
  const VertexField um = u.negative_part();
  const double k = coupling_k(inst, u);

  IdentityReport report;
  report.checks.push_back(make_check(
      "gamma_split", gradient_pairing(inst, u, u),
      gradient_pairing(inst, up, up) + gradient_pairing(inst, um, um) - k));
  report.checks.push_back(make_check(
      "energy_split", energy(inst, u),
      energy(inst, up) + energy(inst, um) - 0.5 * k));
  report.checks.push_back(make_check("derivative_split_plus",
                                     dir_deriv(inst, u, up),
                                     dir_deriv(inst, up, up) - 0.5 * k));
  report.checks.push_back(make_check("derivative_split_minus",
                                     dir_deriv(inst, u, um),
                                     dir_deriv(inst, um, um) - 0.5 * k));
  report.checks.push_back(make_check(
      "nehari_mass", energy(inst, u) - 0.5 * dir_deriv(inst, u, u),
      0.5 * mass(inst, u)));

  // Integration by parts against each indicator δ_x.
  const VertexField lap = laplacian(g, u);
  for (VertexIndex x = 0; x < g.size(); ++x) {
    VertexField indicator(g.size());
    indicator[x] = 1.0;
    report.checks.push_back(make_check("ibp:" + g.id(x),
                                       dirichlet_form(g, u, indicator),
                                       -g.mu(x) * lap[x]));
  }
  return report;
}

}  // namespace logschro
