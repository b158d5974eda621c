#include "logschro/lab.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <set>
#include <sstream>

#include "logschro/io.hpp"

namespace logschro {

Topology parse_topology(std::string_view name) {
  if (name == "path") return Topology::Path;
  if (name == "cycle") return Topology::Cycle;
  if (name == "grid") return Topology::Grid;
  if (name == "star") return Topology::Star;
  throw Error(ErrorKind::InvalidArgument,
              "unknown topology '" + std::string(name) + "'");
}

namespace {

[[noreturn]] void bad_spec(const std::string& message) {
  throw Error(ErrorKind::InvalidArgument, message);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::size_t parse_count(std::string_view digits, const std::string& token) {
  std::size_t value = 0;
  const auto [end, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || end != digits.data() + digits.size() ||
      digits.empty()) {
    bad_spec("malformed well id '" + token + "'");
  }
  return value;
}

// "v12" -> ("v", 12)
std::pair<std::string, std::size_t> split_numbered(const std::string& id) {
  const auto pos = std::find_if(id.begin(), id.end(),
                                [](unsigned char c) { return std::isdigit(c); });
  if (pos == id.end()) bad_spec("well range endpoint '" + id + "' has no index");
  const auto at = static_cast<std::size_t>(pos - id.begin());
  return {id.substr(0, at), parse_count(std::string_view(id).substr(at), id)};
}

// "v2_3" -> (2, 3)
std::pair<std::size_t, std::size_t> split_grid(const std::string& id) {
  const auto underscore = id.find('_');
  if (id.size() < 4 || id.front() != 'v' || underscore == std::string::npos) {
    bad_spec("malformed grid id '" + id + "'");
  }
  const std::string_view view(id);
  return {parse_count(view.substr(1, underscore - 1), id),
          parse_count(view.substr(underscore + 1), id)};
}

std::string grid_id(std::size_t row, std::size_t col) {
  return "v" + std::to_string(row) + "_" + std::to_string(col);
}

std::vector<std::string> expand_well(const std::string& spec, Topology topology) {
  std::vector<std::string> ids;
  std::stringstream stream(spec);
  std::string raw;
  while (std::getline(stream, raw, ',')) {
    const std::string token = trim(raw);
    if (token.empty()) bad_spec("empty entry in well spec '" + spec + "'");
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      ids.push_back(token);
      continue;
    }
    const std::string lo = trim(std::string_view(token).substr(0, dots));
    const std::string hi = trim(std::string_view(token).substr(dots + 2));
    if (topology == Topology::Grid) {
      const auto [r1, c1] = split_grid(lo);
      const auto [r2, c2] = split_grid(hi);
      for (std::size_t r = std::min(r1, r2); r <= std::max(r1, r2); ++r) {
        for (std::size_t c = std::min(c1, c2); c <= std::max(c1, c2); ++c) {
          ids.push_back(grid_id(r, c));
        }
      }
      continue;
    }
    const auto [p1, k1] = split_numbered(lo);
    const auto [p2, k2] = split_numbered(hi);
    if (p1 != p2 || k1 > k2) bad_spec("malformed well range '" + token + "'");
    for (std::size_t k = k1; k <= k2; ++k) ids.push_back(p1 + std::to_string(k));
  }
  if (ids.empty()) bad_spec("well spec is empty");
  return ids;
}

}  // namespace

GeneratedGraph generate_graph(const GeneratorSpec& spec) {
  if (!(spec.a_out > 0.0)) bad_spec("a_out must be positive");
  if (!(spec.mu > 0.0) || !(spec.w > 0.0)) bad_spec("mu and w must be positive");
  const std::size_t n = spec.n;
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> links;
  switch (spec.topology) {
    case Topology::Path:
    case Topology::Cycle:
      if (n < 2 || (spec.topology == Topology::Cycle && n < 3)) {
        bad_spec("path needs n >= 2, cycle n >= 3");
      }
      for (std::size_t i = 1; i <= n; ++i) ids.push_back("v" + std::to_string(i));
      for (std::size_t i = 0; i + 1 < n; ++i) links.emplace_back(ids[i], ids[i + 1]);
      if (spec.topology == Topology::Cycle) links.emplace_back(ids.back(), ids.front());
      break;
    case Topology::Grid:
      if (n < 2) bad_spec("grid needs n >= 2");
      for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t c = 1; c <= n; ++c) {
          ids.push_back(grid_id(r, c));
          if (c < n) links.emplace_back(grid_id(r, c), grid_id(r, c + 1));
          if (r < n) links.emplace_back(grid_id(r, c), grid_id(r + 1, c));
        }
      }
      break;
    case Topology::Star:
      if (n < 2) bad_spec("star needs n >= 2");
      ids.push_back("c");
      for (std::size_t i = 1; i < n; ++i) {
        ids.push_back("l" + std::to_string(i));
        links.emplace_back("c", ids.back());
      }
      break;
  }

  const auto well_ids = expand_well(spec.well, spec.topology);
  const std::set<std::string> known(ids.begin(), ids.end());
  std::set<std::string> well;
  for (const auto& id : well_ids) {
    if (!known.contains(id)) bad_spec("well vertex '" + id + "' does not exist");
    well.insert(id);
  }

  std::vector<VertexSpec> vertices;
  for (const auto& id : ids) {
    vertices.push_back({id, spec.mu, well.contains(id) ? 0.0 : spec.a_out});
  }
  std::vector<EdgeSpec> edges;
  for (const auto& [u, v] : links) edges.push_back({u, v, spec.w});
  WeightedGraph graph(std::move(vertices), std::move(edges));
  ValidationReport validation = validate_potential(graph);
  if (!validation.connected) bad_spec("well is not connected");
  return {std::move(graph), std::move(validation)};
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

double h1_inner(const WeightedGraph& g, const VertexField& u,
                const VertexField& v) {
  double mass_term = 0.0;
  for (VertexIndex x = 0; x < g.size(); ++x) mass_term += g.mu(x) * u[x] * v[x];
  return dirichlet_form(g, u, v) + mass_term;
}

}  // namespace

SweepResult sweep(std::shared_ptr<const WeightedGraph> graph,
                  std::span<const double> lambdas, const SolveOptions& opts,
                  const SweepThresholds& thresholds) {
  if (!graph) throw Error(ErrorKind::InvalidArgument, "null graph");
  if (lambdas.empty()) throw Error(ErrorKind::InvalidArgument, "no lambdas");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] > 0.0) || (i > 0 && !(lambdas[i] > lambdas[i - 1]))) {
      throw Error(ErrorKind::InvalidArgument,
                  "lambdas must be positive and strictly increasing");
    }
  }
  const auto& g = *graph;
  const ValidationReport well = validate_potential(g);
  if (!well.passes()) {
    throw Error(ErrorKind::InvalidArgument,
                "potential well is empty or disconnected");
  }
  if (well.omega.interior.size() < 2) {
    throw Error(ErrorKind::InfeasibleWell, "potential well has one vertex");
  }

  const auto dirichlet = ProblemInstance::dirichlet(graph, well.omega.interior);
  const SolveReport limit = solve_nodal(dirichlet, opts);
  const SolveReport limit_ground = solve_ground(dirichlet, opts);

  SweepResult result;
  result.limit = limit.minimizer;
  auto& summary = result.summary;
  summary.m_omega = limit.level;
  summary.c_omega = limit_ground.level;
  const NormBundle limit_norms = norms(g, result.limit, 0.0);
  summary.limit_l2_sq = limit_norms.l2_sq;
  summary.limit_h1 = std::sqrt(limit_norms.h1_sq);

  for (double lambda : lambdas) {
    SweepRow row;
    row.lambda = lambda;
    try {
      const auto full = ProblemInstance::full(graph, lambda);
      const SolveReport nodal = solve_nodal(full, opts);
      const SolveReport ground = solve_ground(full, opts);
      VertexField u = nodal.minimizer;
      if (h1_inner(g, u, result.limit) < 0.0) u *= -1.0;

      row.m_lambda = nodal.level;
      row.c_lambda = ground.level;
      row.margin_m_minus_2c = nodal.level - 2.0 * ground.level;
      row.gap_to_m_omega = summary.m_omega - nodal.level;
      const NormBundle n = norms(g, u, lambda);
      row.potential_mass = n.h_lambda_sq - n.h1_sq;
      row.h1_dist_to_limit = std::sqrt(norms(g, u - result.limit, 0.0).h1_sq);
      for (VertexIndex x = 0; x < g.size(); ++x) {
        if (!well.omega.contains(x)) row.tail_mass += g.mu(x) * u[x] * u[x];
      }
      row.h_lambda_norm = std::sqrt(n.h_lambda_sq);

      for (VertexIndex x : well.omega.interior) {
        const bool same = (u[x] > 0.0) == (result.limit[x] > 0.0) &&
                          (u[x] < 0.0) == (result.limit[x] < 0.0);
        row.sign_pattern_matches_limit &= same;
      }
      if (!row.sign_pattern_matches_limit) {
        summary.notes.push_back("lambda=" + format_double(lambda) +
                                ": sign pattern on the well differs from the "
                                "Dirichlet limit");
      }
    } catch (const Error& e) {
      summary.failure = "lambda=" + format_double(lambda) + ": " + e.what();
      break;
    }
    summary.sup_h_lambda_norm = std::max(summary.sup_h_lambda_norm, row.h_lambda_norm);
    result.rows.push_back(row);
  }

  const auto& rows = result.rows;
  summary.levels_bounded = !rows.empty();
  summary.margins_positive = !rows.empty();
  for (const auto& row : rows) {
    summary.levels_bounded &= row.m_lambda <= summary.m_omega + 1e-8;
    summary.margins_positive &= row.margin_m_minus_2c > 0.0;
  }
  if (!rows.empty()) {
    const SweepRow& last = rows.back();
    summary.thresholds_met =
        last.gap_to_m_omega <= thresholds.gap_rel * summary.m_omega &&
        last.potential_mass <= thresholds.potential_rel * summary.m_omega &&
        last.tail_mass <= thresholds.tail_rel * summary.limit_l2_sq &&
        last.h1_dist_to_limit <= thresholds.h1_rel * summary.limit_h1;
  }
  if (rows.size() >= 2) {
    const SweepRow& first = rows.front();
    const SweepRow& last = rows.back();
    summary.trend_met = last.gap_to_m_omega < first.gap_to_m_omega &&
                        last.potential_mass < first.potential_mass &&
                        last.tail_mass < first.tail_mass &&
                        last.h1_dist_to_limit < first.h1_dist_to_limit;
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const auto& row : result.rows) {
    const double fields[] = {row.lambda,           row.m_lambda,
                             row.c_lambda,         row.margin_m_minus_2c,
                             row.gap_to_m_omega,   row.potential_mass,
                             row.h1_dist_to_limit, row.tail_mass};
    for (std::size_t i = 0; i < std::size(fields); ++i) {
      if (i > 0) out += ',';
      out += format_double(fields[i]);
    }
    out += '\n';
  }
  if (result.summary.failure) {
    out += "# failed " + *result.summary.failure + '\n';
  }
  return out;
}

std::string sweep_summary_json(const SweepResult& result) {
  using nlohmann::json;
  const auto& s = result.summary;
  json j = {
      {"m_omega", s.m_omega},
      {"c_omega", s.c_omega},
      {"limit_l2_sq", s.limit_l2_sq},
      {"limit_h1", s.limit_h1},
      {"sup_h_lambda_norm", s.sup_h_lambda_norm},
      {"rows", result.rows.size()},
      {"thresholds_met", s.thresholds_met},
      {"trend_met", s.trend_met ? json(*s.trend_met) : json(nullptr)},
      {"levels_bounded", s.levels_bounded},
      {"margins_positive", s.margins_positive},
      {"passed", s.passed()},
      {"notes", s.notes},
      {"failure", s.failure ? json(*s.failure) : json(nullptr)},
  };
  return j.dump(2) + "\n";
}

}  // namespace logschro
