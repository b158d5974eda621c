#include "cli.hpp"

#include <CLI11.hpp>
#include <memory>
#include <optional>
#include <ostream>

#include "logschro/io.hpp"
#include "logschro/lab.hpp"
#include "logschro/nehari.hpp"
#include "logschro/solver.hpp"

namespace logschro::cli {

namespace {

struct Output {
  std::string path;

  void emit(std::ostream& out, const std::string& text) const {
    if (path.empty()) {
      out << text;
    } else {
      write_text(path, text);
    }
  }
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonConvergence:
    case ErrorKind::NoBracket:
      return kExitNonConvergence;
    case ErrorKind::Io:
      return kExitUsage;
    default:
      return kExitValidation;
  }
}

ProblemInstance make_instance(const std::string& graph_path,
                              const std::string& mode, double lambda) {
  auto graph = std::make_shared<const WeightedGraph>(load_graph(graph_path));
  if (mode == "full") return ProblemInstance::full(graph, lambda);
  const ValidationReport well = validate_potential(*graph);
  if (!well.passes()) {
    throw Error(ErrorKind::InvalidArgument,
                "graph has no connected potential well for dirichlet mode");
  }
  return ProblemInstance::dirichlet(graph, well.omega.interior);
}

void add_mode(CLI::App& cmd, std::string& mode, double& lambda) {
  cmd.add_option("--mode", mode, "full or dirichlet")
      ->check(CLI::IsMember({"full", "dirichlet"}));
  cmd.add_option("--lambda", lambda, "potential depth (full mode)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Logarithmic Schrödinger equation on weighted graphs"};
  app.require_subcommand(1);

  // generate
  GeneratorSpec gen;
  std::string topology = "path";
  Output gen_out;
  auto* generate = app.add_subcommand("generate", "write a fixture graph");
  generate->add_option("--topology", topology, "path, cycle, grid or star")
      ->check(CLI::IsMember({"path", "cycle", "grid", "star"}));
  generate->add_option("--n", gen.n, "size parameter")->required();
  generate->add_option("--well", gen.well, "well ids or ranges, e.g. v3..v4")
      ->required();
  generate->add_option("--mu", gen.mu, "vertex measure");
  generate->add_option("--w", gen.w, "edge weight");
  generate->add_option("--a-out", gen.a_out, "potential outside the well");
  generate->add_option("--out", gen_out.path, "output file");

  // solve
  std::string graph_path;
  std::string mode = "full";
  double lambda = 1.0;
  SolveOptions solve_opts;
  bool want_nodal = false;
  bool want_ground = false;
  Output solve_out;
  auto* solve = app.add_subcommand("solve", "least-energy nodal or ground state");
  solve->add_option("--graph", graph_path, "graph JSON")->required();
  add_mode(*solve, mode, lambda);
  auto* nodal_flag = solve->add_flag("--nodal", want_nodal, "sign-changing");
  auto* ground_flag = solve->add_flag("--ground", want_ground, "ground state");
  nodal_flag->excludes(ground_flag);
  solve->add_option("--starts", solve_opts.starts, "multi-start count");
  solve->add_option("--seed", solve_opts.seed, "random seed");
  solve->add_option("--tol", solve_opts.tol_residual, "relative residual");
  solve->add_option("--threads", solve_opts.threads, "worker threads");
  solve->add_option("--out", solve_out.path, "output file");

  // project
  std::string state_path;
  Output project_out;
  auto* project = app.add_subcommand("project", "project a field onto M");
  project->add_option("--graph", graph_path, "graph JSON")->required();
  project->add_option("--state", state_path, "field or solve JSON")->required();
  add_mode(*project, mode, lambda);
  project->add_option("--out", project_out.path, "output file");

  // check
  std::optional<double> ground_level;
  double check_tol = 1e-10;
  Output check_out;
  auto* check = app.add_subcommand("check", "verify a candidate solution");
  check->add_option("--graph", graph_path, "graph JSON")->required();
  check->add_option("--state", state_path, "field or solve JSON")->required();
  add_mode(*check, mode, lambda);
  check->add_option("--ground-level", ground_level, "companion ground level");
  check->add_option("--tol", check_tol, "relative residual tolerance");
  check->add_option("--out", check_out.path, "output file");

  // sweep
  std::vector<double> lambdas;
  std::string summary_path;
  Output sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "lambda convergence sweep");
  sweep_cmd->add_option("--graph", graph_path, "graph JSON")->required();
  sweep_cmd->add_option("--lambdas", lambdas, "comma-separated list")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--seed", solve_opts.seed, "random seed");
  sweep_cmd->add_option("--starts", solve_opts.starts, "multi-start count");
  sweep_cmd->add_option("--threads", solve_opts.threads, "worker threads");
  sweep_cmd->add_option("--out", sweep_out.path, "CSV output file");
  sweep_cmd->add_option("--summary", summary_path, "summary JSON file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) {
      gen.topology = parse_topology(topology);
      const GeneratedGraph result = generate_graph(gen);
      gen_out.emit(out, graph_to_json(result.graph));
      return kExitOk;
    }
    if (solve->parsed()) {
      if (!want_nodal && !want_ground) {
        err << "solve: one of --nodal or --ground is required\n";
        return kExitUsage;
      }
      solve_opts.validate();
      const ProblemInstance inst = make_instance(graph_path, mode, lambda);
      const SolveReport report = want_nodal ? solve_nodal(inst, solve_opts)
                                            : solve_ground(inst, solve_opts);
      solve_out.emit(out, to_json(inst.graph(), report));
      return kExitOk;
    }
    if (project->parsed()) {
      const ProblemInstance inst = make_instance(graph_path, mode, lambda);
      const VertexField u = field_from_json(inst.graph(), read_text(state_path));
      const PairProjection p = project_pair(inst, u);
      project_out.emit(out, to_json(inst.graph(), p));
      return kExitOk;
    }
    if (check->parsed()) {
      const ProblemInstance inst = make_instance(graph_path, mode, lambda);
      const VertexField u = field_from_json(inst.graph(), read_text(state_path));
      const VerificationReport v = verify(inst, u, ground_level);
      check_out.emit(out, to_json(v));
      if (!v.is_solution(check_tol)) {
        err << "check: residual " << format_double(v.residual_inf)
            << " exceeds tolerance\n";
        return kExitValidation;
      }
      if (ground_level && !v.exceeds_twice_ground()) {
        err << "check: level does not exceed twice the ground level\n";
        return kExitValidation;
      }
      return kExitOk;
    }
    if (sweep_cmd->parsed()) {
      solve_opts.validate();
      auto graph = std::make_shared<const WeightedGraph>(load_graph(graph_path));
      const SweepResult result = sweep(graph, lambdas, solve_opts);
      sweep_out.emit(out, sweep_csv(result));
      if (!summary_path.empty()) {
        write_text(summary_path, sweep_summary_json(result));
      }
      if (result.summary.failure) {
        err << "sweep: failed at " << *result.summary.failure << '\n';
        return kExitNonConvergence;
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  }
  return kExitUsage;
}

}  // namespace logschro::cli
