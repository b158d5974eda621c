#pragma once

// Finite weighted graphs and the discrete calculus on them.
//
// A graph carries a vertex measure mu, symmetric positive edge weights omega
// and a nonnegative potential a. Fields are dense vectors indexed by vertex
// construction order; file IO is keyed by vertex id.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logschro/error.hpp"

namespace logschro {

using VertexIndex = std::size_t;

/// A real value per vertex. u = u⁺ + u⁻ with u⁺ = max(u,0), u⁻ = min(u,0).
class VertexField {
 public:
  VertexField() = default;
  explicit VertexField(std::size_t size, double value = 0.0);
  /// Throws InvalidArgument if any entry is not finite.
  explicit VertexField(std::vector<double> values);

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](VertexIndex i) const { return values_[i]; }
  [[nodiscard]] double& operator[](VertexIndex i) { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept {
    return values_;
  }
  [[nodiscard]] std::span<double> values() noexcept { return values_; }

  [[nodiscard]] VertexField positive_part() const;
  [[nodiscard]] VertexField negative_part() const;
  [[nodiscard]] double max_abs() const noexcept;
  [[nodiscard]] bool all_finite() const noexcept;
  [[nodiscard]] bool has_positive() const noexcept;
  [[nodiscard]] bool has_negative() const noexcept;

  VertexField& operator+=(const VertexField& other);
  VertexField& operator-=(const VertexField& other);
  VertexField& operator*=(double factor) noexcept;

  friend VertexField operator+(VertexField lhs, const VertexField& rhs) {
    return lhs += rhs;
  }
  friend VertexField operator-(VertexField lhs, const VertexField& rhs) {
    return lhs -= rhs;
  }
  friend VertexField operator*(double factor, VertexField field) {
    return field *= factor;
  }
  friend VertexField operator-(VertexField field) { return field *= -1.0; }

  bool operator==(const VertexField&) const = default;

 private:
  std::vector<double> values_;
};

struct Neighbor {
  VertexIndex vertex;
  double weight;
};

struct Edge {
  VertexIndex u;
  VertexIndex v;
  double weight;
};

struct VertexSpec {
  std::string id;
  double mu = 1.0;
  double a = 0.0;
};

struct EdgeSpec {
  std::string u;
  std::string v;
  double w = 1.0;
};

/// Immutable connected graph with measure, symmetric weights and potential.
///
/// Construction rejects nonpositive mu or w, negative a, duplicate ids,
/// duplicate edges in either orientation, self-loops and disconnected graphs
/// (ErrorKind::InvalidGraph).
class WeightedGraph {
 public:
  WeightedGraph(std::vector<VertexSpec> vertices, std::vector<EdgeSpec> edges);

  [[nodiscard]] std::size_t size() const noexcept { return ids_.size(); }
  [[nodiscard]] const std::string& id(VertexIndex i) const { return ids_[i]; }
  [[nodiscard]] std::span<const std::string> ids() const noexcept {
    return ids_;
  }
  /// Throws UnknownVertex.
  [[nodiscard]] VertexIndex index_of(std::string_view id) const;
  [[nodiscard]] std::optional<VertexIndex> find(std::string_view id) const;

  [[nodiscard]] double mu(VertexIndex i) const { return mu_[i]; }
  [[nodiscard]] double a(VertexIndex i) const { return a_[i]; }
  [[nodiscard]] std::span<const double> mu() const noexcept { return mu_; }
  [[nodiscard]] std::span<const double> potential() const noexcept {
    return a_;
  }
  [[nodiscard]] double mu_min() const noexcept { return mu_min_; }

  [[nodiscard]] std::span<const Neighbor> neighbors(VertexIndex i) const;
  [[nodiscard]] std::span<const Edge> edges() const noexcept { return edges_; }
  /// deg(x) = sum of incident weights. Diagnostic only.
  [[nodiscard]] double degree(VertexIndex i) const;

 private:
  std::vector<std::string> ids_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<double> mu_;
  std::vector<double> a_;
  double mu_min_ = 0.0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
};

/// A vertex set together with its outer vertex boundary.
struct SubDomain {
  std::vector<VertexIndex> interior;  // sorted
  std::vector<VertexIndex> boundary;  // sorted
  std::vector<VertexIndex> closure;   // sorted, interior ∪ boundary

  [[nodiscard]] bool contains(VertexIndex i) const;
  [[nodiscard]] bool in_closure(VertexIndex i) const;
};

struct NormBundle {
  double h1_sq = 0.0;        // ∫(|∇u|² + u²) dμ
  double h_lambda_sq = 0.0;  // ∫(|∇u|² + (λa+1)u²) dμ
  double l2_sq = 0.0;
  double linf = 0.0;
};

struct ValidationReport {
  SubDomain omega;
  bool nonempty = false;
  bool connected = false;
  bool small_well = false;  // |Ω| < 2: no sign-changing Dirichlet solution
  double level_m = 0.0;     // threshold M for D_M = {a < M}
  double volume_d_m = 0.0;
  std::vector<std::string> messages;

  /// Non-empty connected well.
  [[nodiscard]] bool passes() const noexcept { return nonempty && connected; }
};

// Discrete calculus. All operations throw DimensionMismatch when a field
// length differs from the vertex count.

[[nodiscard]] VertexField laplacian(const WeightedGraph& g,
                                    const VertexField& u);
[[nodiscard]] VertexField gamma(const WeightedGraph& g, const VertexField& u,
                                const VertexField& v);
[[nodiscard]] VertexField gradient_length(const WeightedGraph& g,
                                          const VertexField& u);
[[nodiscard]] double integrate(const WeightedGraph& g, const VertexField& f);

/// Dirichlet form ∫Γ(u,v)dμ, summed edge-wise.
[[nodiscard]] double dirichlet_form(const WeightedGraph& g,
                                    const VertexField& u,
                                    const VertexField& v);

/// Throws InvalidArgument for negative lambda.
[[nodiscard]] NormBundle norms(const WeightedGraph& g, const VertexField& u,
                               double lambda);

/// Throws UnknownVertex for out-of-range indices.
[[nodiscard]] SubDomain boundary(const WeightedGraph& g,
                                 std::span<const VertexIndex> interior);
[[nodiscard]] SubDomain boundary(const WeightedGraph& g,
                                 std::span<const std::string> interior_ids);

/// Hop distance; nullopt when no path exists.
[[nodiscard]] std::optional<std::size_t> distance(const WeightedGraph& g,
                                                  VertexIndex x,
                                                  VertexIndex y);
[[nodiscard]] std::optional<std::size_t> distance(const WeightedGraph& g,
                                                  std::string_view x,
                                                  std::string_view y);

/// Connectivity of the induced subgraph on `subset`. The empty set is not
/// connected.
[[nodiscard]] bool is_connected(const WeightedGraph& g,
                                std::span<const VertexIndex> subset);

/// Checks the potential well Ω = {a = 0}. `level_m` defaults to max a + 1.
[[nodiscard]] ValidationReport validate_potential(
    const WeightedGraph& g, std::optional<double> level_m = std::nullopt);

}  // namespace logschro
