#pragma once

// JSON and CSV serialization. Graph files:
//   {"vertices":[{"id":..,"mu":..,"a":..}], "edges":[{"u":..,"v":..,"w":..}]}
// optionally carrying a "validation" block, which loaders ignore. Field
// files: {"values":{"<id>":number}}; ids not listed default to 0. A solve
// report is also accepted wherever a field is expected (its minimizer is
// read). All output uses sorted keys and shortest round-trip numbers.

#include <filesystem>
#include <string>
#include <string_view>

#include "logschro/energy.hpp"
#include "logschro/nehari.hpp"
#include "logschro/solver.hpp"

namespace logschro {

/// Shortest decimal string that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

[[nodiscard]] std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Throws InvalidGraph for schema or graph-invariant violations.
[[nodiscard]] WeightedGraph graph_from_json(std::string_view text);
/// Canonical form, including the validate_potential report.
[[nodiscard]] std::string graph_to_json(const WeightedGraph& g);
[[nodiscard]] WeightedGraph load_graph(const std::filesystem::path& path);

/// Throws UnknownVertex for ids not in the graph, InvalidArgument for
/// malformed values.
[[nodiscard]] VertexField field_from_json(const WeightedGraph& g,
                                          std::string_view text);
[[nodiscard]] std::string field_to_json(const WeightedGraph& g,
                                        const VertexField& u);

[[nodiscard]] std::string to_json(const WeightedGraph& g,
                                  const ValidationReport& report);
[[nodiscard]] std::string to_json(const IdentityReport& report);
[[nodiscard]] std::string to_json(const WeightedGraph& g,
                                  const PairProjection& projection);
[[nodiscard]] std::string to_json(const WeightedGraph& g,
                                  const SolveReport& report);
[[nodiscard]] std::string to_json(const VerificationReport& report);

}  // namespace logschro
