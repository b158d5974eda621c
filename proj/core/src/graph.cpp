#include "logschro/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>
#include <utility>

namespace logschro {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::UnknownVertex: return "UnknownVertex";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::NotInNehariSet: return "NotInNehariSet";
    case ErrorKind::SingleSigned: return "SingleSigned";
    case ErrorKind::DegenerateCoupling: return "DegenerateCoupling";
    case ErrorKind::NoBracket: return "NoBracket";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::InfeasibleWell: return "InfeasibleWell";
    case ErrorKind::DofLimitExceeded: return "DofLimitExceeded";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// VertexField

VertexField::VertexField(std::size_t size, double value)
    : values_(size, value) {}

VertexField::VertexField(std::vector<double> values)
    : values_(std::move(values)) {
  if (!all_finite()) {
    throw Error(ErrorKind::InvalidArgument, "field has non-finite entries");
  }
}

VertexField VertexField::positive_part() const {
  VertexField out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.values_[i] = values_[i] > 0.0 ? values_[i] : 0.0;
  }
  return out;
}

VertexField VertexField::negative_part() const {
  VertexField out(size());
  for (std::size_t i = 0; i < size(); ++i) {
    out.values_[i] = values_[i] < 0.0 ? values_[i] : 0.0;
  }
  return out;
}

double VertexField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool VertexField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

bool VertexField::has_positive() const noexcept {
  return std::any_of(values_.begin(), values_.end(),
                     [](double v) { return v > 0.0; });
}

bool VertexField::has_negative() const noexcept {
  return std::any_of(values_.begin(), values_.end(),
                     [](double v) { return v < 0.0; });
}

VertexField& VertexField::operator+=(const VertexField& other) {
  if (other.size() != size()) {
    throw Error(ErrorKind::DimensionMismatch, "field sizes differ");
  }
  for (std::size_t i = 0; i < size(); ++i) values_[i] += other.values_[i];
  return *this;
}

VertexField& VertexField::operator-=(const VertexField& other) {
  if (other.size() != size()) {
    throw Error(ErrorKind::DimensionMismatch, "field sizes differ");
  }
  for (std::size_t i = 0; i < size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

VertexField& VertexField::operator*=(double factor) noexcept {
  for (double& v : values_) v *= factor;
  return *this;
}

// ---------------------------------------------------------------------------
// WeightedGraph

namespace {

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidGraph, message);
}

bool bfs_connected(std::size_t n, const std::vector<std::size_t>& offsets,
                   const std::vector<Neighbor>& adjacency,
                   const std::vector<char>& allowed, VertexIndex start) {
  std::vector<char> seen(n, 0);
  std::deque<VertexIndex> queue{start};
  seen[start] = 1;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const VertexIndex x = queue.front();
    queue.pop_front();
    for (std::size_t k = offsets[x]; k < offsets[x + 1]; ++k) {
      const VertexIndex y = adjacency[k].vertex;
      if (allowed[y] && !seen[y]) {
        seen[y] = 1;
        ++visited;
        queue.push_back(y);
      }
    }
  }
  const auto total =
      static_cast<std::size_t>(std::count(allowed.begin(), allowed.end(), 1));
  return visited == total;
}

}  // namespace

WeightedGraph::WeightedGraph(std::vector<VertexSpec> vertices,
                             std::vector<EdgeSpec> edges) {
  if (vertices.empty()) invalid("graph has no vertices");
  ids_.reserve(vertices.size());
  mu_.reserve(vertices.size());
  a_.reserve(vertices.size());
  mu_min_ = std::numeric_limits<double>::infinity();
  for (auto& vertex : vertices) {
    if (!(std::isfinite(vertex.mu) && vertex.mu > 0.0)) {
      invalid("vertex '" + vertex.id + "' has nonpositive measure");
    }
    if (!(std::isfinite(vertex.a) && vertex.a >= 0.0)) {
      invalid("vertex '" + vertex.id + "' has negative potential");
    }
    if (!index_.emplace(vertex.id, ids_.size()).second) {
      invalid("duplicate vertex id '" + vertex.id + "'");
    }
    ids_.push_back(std::move(vertex.id));
    mu_.push_back(vertex.mu);
    a_.push_back(vertex.a);
    mu_min_ = std::min(mu_min_, vertex.mu);
  }

  std::set<std::pair<VertexIndex, VertexIndex>> seen;
  std::vector<std::size_t> counts(size(), 0);
  edges_.reserve(edges.size());
  for (const auto& edge : edges) {
    const auto u = find(edge.u);
    const auto v = find(edge.v);
    if (!u || !v) {
      invalid("edge references unknown vertex '" + (u ? edge.v : edge.u) +
              "'");
    }
    if (*u == *v) invalid("self-loop at '" + edge.u + "'");
    if (!(std::isfinite(edge.w) && edge.w > 0.0)) {
      invalid("edge " + edge.u + "-" + edge.v + " has nonpositive weight");
    }
    if (!seen.emplace(std::min(*u, *v), std::max(*u, *v)).second) {
      invalid("duplicate edge " + edge.u + "-" + edge.v);
    }
    edges_.push_back({*u, *v, edge.w});
    ++counts[*u];
    ++counts[*v];
  }

  offsets_.assign(size() + 1, 0);
  for (std::size_t i = 0; i < size(); ++i) {
    offsets_[i + 1] = offsets_[i] + counts[i];
  }
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = {e.v, e.weight};
    adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }

  const std::vector<char> all(size(), 1);
  if (!bfs_connected(size(), offsets_, adjacency_, all, 0)) {
    invalid("graph is not connected");
  }
}

VertexIndex WeightedGraph::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::UnknownVertex, "unknown vertex '" +
                                            std::string(id) + "'");
}

std::optional<VertexIndex> WeightedGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const Neighbor> WeightedGraph::neighbors(VertexIndex i) const {
  return std::span<const Neighbor>(adjacency_).subspan(
      offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double WeightedGraph::degree(VertexIndex i) const {
  double d = 0.0;
  for (const auto& nb : neighbors(i)) d += nb.weight;
  return d;
}

// ---------------------------------------------------------------------------
// SubDomain

bool SubDomain::contains(VertexIndex i) const {
  return std::binary_search(interior.begin(), interior.end(), i);
}

bool SubDomain::in_closure(VertexIndex i) const {
  return std::binary_search(closure.begin(), closure.end(), i);
}

// ---------------------------------------------------------------------------
// Calculus

namespace {

void require_size(const WeightedGraph& g, const VertexField& u) {
  if (u.size() != g.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "field has " + std::to_string(u.size()) +
                    " entries, graph has " + std::to_string(g.size()));
  }
}

}  // namespace

VertexField laplacian(const WeightedGraph& g, const VertexField& u) {
  require_size(g, u);
  VertexField out(g.size());
  for (VertexIndex x = 0; x < g.size(); ++x) {
    double sum = 0.0;
    for (const auto& nb : g.neighbors(x)) sum += nb.weight * (u[nb.vertex] - u[x]);
    out[x] = sum / g.mu(x);
  }
  return out;
}

VertexField gamma(const WeightedGraph& g, const VertexField& u,
                  const VertexField& v) {
  require_size(g, u);
  require_size(g, v);
  VertexField out(g.size());
  for (VertexIndex x = 0; x < g.size(); ++x) {
    double sum = 0.0;
    for (const auto& nb : g.neighbors(x)) {
      sum += nb.weight * (u[nb.vertex] - u[x]) * (v[nb.vertex] - v[x]);
    }
    out[x] = sum / (2.0 * g.mu(x));
  }
  return out;
}

VertexField gradient_length(const WeightedGraph& g, const VertexField& u) {
  VertexField out = gamma(g, u, u);
  for (double& value : out.values()) value = std::sqrt(value);
  return out;
}

double integrate(const WeightedGraph& g, const VertexField& f) {
  require_size(g, f);
  double sum = 0.0;
  for (VertexIndex x = 0; x < g.size(); ++x) sum += g.mu(x) * f[x];
  return sum;
}

double dirichlet_form(const WeightedGraph& g, const VertexField& u,
                      const VertexField& v) {
  require_size(g, u);
  require_size(g, v);
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    sum += e.weight * (u[e.v] - u[e.u]) * (v[e.v] - v[e.u]);
  }
  return sum;
}

NormBundle norms(const WeightedGraph& g, const VertexField& u, double lambda) {
  require_size(g, u);
  if (!(lambda >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "lambda must be nonnegative");
  }
  NormBundle out;
  const double grad = dirichlet_form(g, u, u);
  double potential = 0.0;
  for (VertexIndex x = 0; x < g.size(); ++x) {
    out.l2_sq += g.mu(x) * u[x] * u[x];
    potential += g.mu(x) * lambda * g.a(x) * u[x] * u[x];
    out.linf = std::max(out.linf, std::abs(u[x]));
  }
  out.h1_sq = grad + out.l2_sq;
  out.h_lambda_sq = out.h1_sq + potential;
  return out;
}

// ---------------------------------------------------------------------------
// Subsets

namespace {

std::vector<VertexIndex> normalized(const WeightedGraph& g,
                                    std::span<const VertexIndex> subset) {
  std::vector<VertexIndex> out(subset.begin(), subset.end());
  for (VertexIndex i : out) {
    if (i >= g.size()) {
      throw Error(ErrorKind::UnknownVertex,
                  "vertex index " + std::to_string(i) + " out of range");
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

SubDomain boundary(const WeightedGraph& g,
                   std::span<const VertexIndex> interior) {
  SubDomain d;
  d.interior = normalized(g, interior);
  std::vector<char> inside(g.size(), 0);
  for (VertexIndex i : d.interior) inside[i] = 1;
  std::vector<char> edge(g.size(), 0);
  for (VertexIndex x : d.interior) {
    for (const auto& nb : g.neighbors(x)) {
      if (!inside[nb.vertex]) edge[nb.vertex] = 1;
    }
  }
  for (VertexIndex i = 0; i < g.size(); ++i) {
    if (edge[i]) d.boundary.push_back(i);
    if (edge[i] || inside[i]) d.closure.push_back(i);
  }
  return d;
}

SubDomain boundary(const WeightedGraph& g,
                   std::span<const std::string> interior_ids) {
  std::vector<VertexIndex> interior;
  interior.reserve(interior_ids.size());
  for (const auto& id : interior_ids) interior.push_back(g.index_of(id));
  return boundary(g, interior);
}

std::optional<std::size_t> distance(const WeightedGraph& g, VertexIndex x,
                                    VertexIndex y) {
  if (x >= g.size() || y >= g.size()) {
    throw Error(ErrorKind::UnknownVertex, "vertex index out of range");
  }
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.size(), kUnseen);
  std::deque<VertexIndex> queue{x};
  dist[x] = 0;
  while (!queue.empty()) {
    const VertexIndex p = queue.front();
    queue.pop_front();
    if (p == y) return dist[p];
    for (const auto& nb : g.neighbors(p)) {
      if (dist[nb.vertex] == kUnseen) {
        dist[nb.vertex] = dist[p] + 1;
        queue.push_back(nb.vertex);
      }
    }
  }
  return std::nullopt;
}

std::optional<std::size_t> distance(const WeightedGraph& g, std::string_view x,
                                    std::string_view y) {
  return distance(g, g.index_of(x), g.index_of(y));
}

bool is_connected(const WeightedGraph& g, std::span<const VertexIndex> subset) {
  const auto members = normalized(g, subset);
  if (members.empty()) return false;
  std::vector<char> allowed(g.size(), 0);
  for (VertexIndex i : members) allowed[i] = 1;
  std::vector<char> seen(g.size(), 0);
  std::deque<VertexIndex> queue{members.front()};
  seen[members.front()] = 1;
  std::size_t visited = 1;
  while (!queue.empty()) {
    const VertexIndex p = queue.front();
    queue.pop_front();
    for (const auto& nb : g.neighbors(p)) {
      if (allowed[nb.vertex] && !seen[nb.vertex]) {
        seen[nb.vertex] = 1;
        ++visited;
        queue.push_back(nb.vertex);
      }
    }
  }
  return visited == members.size();
}

ValidationReport validate_potential(const WeightedGraph& g,
                                    std::optional<double> level_m) {
  ValidationReport report;
  std::vector<VertexIndex> well;
  double a_max = 0.0;
  for (VertexIndex i = 0; i < g.size(); ++i) {
    if (g.a(i) == 0.0) well.push_back(i);
    a_max = std::max(a_max, g.a(i));
  }
  report.omega = boundary(g, well);
  report.nonempty = !well.empty();
  report.connected = report.nonempty && is_connected(g, well);
  report.small_well = well.size() < 2;
  report.level_m = level_m.value_or(a_max + 1.0);
  for (VertexIndex i = 0; i < g.size(); ++i) {
    if (g.a(i) < report.level_m) report.volume_d_m += g.mu(i);
  }
  if (!report.nonempty) {
    report.messages.emplace_back("potential well {a = 0} is empty");
  } else if (!report.connected) {
    report.messages.emplace_back("potential well {a = 0} is not connected");
  }
  if (report.small_well) {
    report.messages.emplace_back(
        "potential well has fewer than 2 vertices; no sign-changing "
        "Dirichlet solution exists");
  }
  return report;
}

}  // namespace logschro
