#include "logschro/io.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace logschro {

using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, end);
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse(std::string_view text, ErrorKind kind) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(kind, std::string("malformed JSON: ") + e.what());
  }
}

json id_list(const WeightedGraph& g, const std::vector<VertexIndex>& set) {
  json out = json::array();
  for (VertexIndex i : set) out.push_back(g.id(i));
  return out;
}

json validation_json(const WeightedGraph& g, const ValidationReport& r) {
  return {
      {"omega", id_list(g, r.omega.interior)},
      {"omega_boundary", id_list(g, r.omega.boundary)},
      {"nonempty", r.nonempty},
      {"connected", r.connected},
      {"passes", r.passes()},
      {"small_well", r.small_well},
      {"level_m", r.level_m},
      {"volume_d_m", r.volume_d_m},
      {"messages", r.messages},
  };
}

json field_json(const WeightedGraph& g, const VertexField& u) {
  json values = json::object();
  for (VertexIndex i = 0; i < g.size(); ++i) values[g.id(i)] = u[i];
  return {{"values", values}};
}

std::string_view mode_name(Mode mode) {
  return mode == Mode::Full ? "full" : "dirichlet";
}

}  // namespace

WeightedGraph graph_from_json(std::string_view text) {
  const json j = parse(text, ErrorKind::InvalidGraph);
  try {
    std::vector<VertexSpec> vertices;
    for (const auto& v : j.at("vertices")) {
      vertices.push_back({v.at("id").get<std::string>(),
                          v.at("mu").get<double>(), v.at("a").get<double>()});
    }
    std::vector<EdgeSpec> edges;
    for (const auto& e : j.at("edges")) {
      edges.push_back({e.at("u").get<std::string>(),
                       e.at("v").get<std::string>(), e.at("w").get<double>()});
    }
    return WeightedGraph(std::move(vertices), std::move(edges));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::InvalidGraph, std::string("graph schema: ") + e.what());
  }
}

std::string graph_to_json(const WeightedGraph& g) {
  json vertices = json::array();
  for (VertexIndex i = 0; i < g.size(); ++i) {
    vertices.push_back({{"id", g.id(i)}, {"mu", g.mu(i)}, {"a", g.a(i)}});
  }
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"u", g.id(e.u)}, {"v", g.id(e.v)}, {"w", e.weight}});
  }
  return dump({{"vertices", vertices},
               {"edges", edges},
               {"validation", validation_json(g, validate_potential(g))}});
}

WeightedGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_text(path));
}

VertexField field_from_json(const WeightedGraph& g, std::string_view text) {
  const json j = parse(text, ErrorKind::InvalidArgument);
  const json* values = nullptr;
  if (j.is_object() && j.contains("values")) {
    values = &j["values"];
  } else if (j.is_object() && j.contains("minimizer") &&
             j["minimizer"].contains("values")) {
    values = &j["minimizer"]["values"];
  }
  if (!values || !values->is_object()) {
    throw Error(ErrorKind::InvalidArgument,
                "field JSON needs a \"values\" object");
  }
  std::vector<double> out(g.size(), 0.0);
  for (const auto& [id, value] : values->items()) {
    if (!value.is_number()) {
      throw Error(ErrorKind::InvalidArgument, "value for '" + id +
                                                  "' is not a number");
    }
    out[g.index_of(id)] = value.get<double>();
  }
  return VertexField(std::move(out));
}

std::string field_to_json(const WeightedGraph& g, const VertexField& u) {
  return dump(field_json(g, u));
}

std::string to_json(const WeightedGraph& g, const ValidationReport& report) {
  return dump(validation_json(g, report));
}

std::string to_json(const IdentityReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"name", c.name},
                      {"left", c.left},
                      {"right", c.right},
                      {"abs_discrepancy", c.abs_discrepancy},
                      {"rel_discrepancy", c.rel_discrepancy}});
  }
  return dump({{"checks", checks}, {"max_relative", report.max_relative()}});
}

std::string to_json(const WeightedGraph& g, const PairProjection& p) {
  return dump({{"s", p.s},
               {"t", p.t},
               {"projected", field_json(g, p.projected)},
               {"g1_residual", p.g1_residual},
               {"g2_residual", p.g2_residual},
               {"iterations", p.iterations},
               {"bracket", {{"r", p.bracket.r}, {"R", p.bracket.big_r}}},
               {"degenerate_coupling", p.degenerate_coupling},
               {"used_bisection", p.used_bisection}});
}

std::string to_json(const WeightedGraph& g, const SolveReport& r) {
  json histogram = json::array();
  for (const auto& level : r.level_histogram) {
    histogram.push_back(level ? json(*level) : json(nullptr));
  }
  return dump({
      {"kind", r.kind == SolveKind::Ground ? "ground" : "nodal"},
      {"mode", mode_name(r.mode)},
      {"lambda", r.lambda},
      {"level", r.level},
      {"minimizer", field_json(g, r.minimizer)},
      {"residual_inf", r.residual_inf},
      {"residual_scale", r.residual_scale},
      {"membership_residuals",
       {r.membership_residuals.first, r.membership_residuals.second}},
      {"starts", r.starts},
      {"starts_converged", r.starts_converged},
      {"level_histogram", histogram},
      {"sign_pattern",
       {{"positive", id_list(g, r.sign_pattern.positive)},
        {"negative", id_list(g, r.sign_pattern.negative)},
        {"zero", id_list(g, r.sign_pattern.zero)}}},
      {"degenerate_coupling", r.degenerate_coupling},
  });
}

std::string to_json(const VerificationReport& v) {
  json j = {{"level", v.level},
            {"residual_inf", v.residual_inf},
            {"residual_scale", v.residual_scale},
            {"membership_residuals", {v.membership_plus, v.membership_minus}},
            {"nehari_identity", v.nehari_identity}};
  if (v.ground_level) {
    j["ground_level"] = *v.ground_level;
    j["margin_m_minus_2c"] = *v.margin;
    j["exceeds_twice_ground"] = v.exceeds_twice_ground();
  }
  return dump(j);
}

}  // namespace logschro
