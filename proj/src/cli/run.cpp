#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cheeger_gap/cli.hpp"
#include "cheeger_gap/error.hpp"

namespace cheeger_gap::cli {

namespace {

constexpr const char* kSchemas = R"(CSV schemas (header row first, 17 significant digits):
  gap             model,size,coupling,N,lambda0,lambda1,gap,residual0,residual1,method,
                  iterations,near_degenerate
  bounds          model,size,coupling,N,lambda0,gap,phi,phi_method,cut_size,cut_capacity,
                  upper,classic_lower, then per domain and strategy
                  <domain>:<strategy>:{c,phi_tilde,bound,status}, then
                  generalized_lower,generalized_strategy,generalized_domain
  sweep           param,value,N,lambda0,gap,phi,phi_method,upper,classic_lower,
                  generalized_lower,generalized_strategy,generalized_domain
  verify          suite,instance,check,status,measured,tolerance,detail; the last row is
                  summary,all,<first failure>,<pass|fail>,<failed>,<checks>,evidence=<k>
  export-graph    "graph 1", "N m", edge lines "i j w", vertex lines "v i pi"
  export-network  "network 1", "nodes arcs", "node id layer label", "arc from to capacity flow"
Exit codes: 0 success, 1 verification failure, 2 input or validation error,
3 numerical non-convergence.)";

}  // namespace

int execute(Command cmd, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  cfg.validate();
  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out.empty()) {
    file.open(cfg.out);
    if (!file) throw Error(ErrorKind::validation, "cannot open output file " + cfg.out.string());
    os = &file;
  }
  int code = 0;
  switch (cmd) {
    case Command::gap: cmd_gap(cfg, *os); break;
    case Command::bounds: cmd_bounds(cfg, *os); break;
    case Command::sweep: cmd_sweep(cfg, *os); break;
    case Command::export_graph: cmd_export_graph(cfg, *os); break;
    case Command::export_network: cmd_export_network(cfg, *os); break;
    case Command::verify: {
      const auto s = cmd_verify(cfg, *os);
      if (!s.ok()) {
        err << "verification failed: " << s.failed << " of " << s.checks << " checks, first " << s.first_failure
            << '\n';
        code = 1;
      }
      break;
    }
  }
  os->flush();
  if (!*os) throw Error(ErrorKind::validation, "failed writing output");
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Spectral-gap bounds for stoquastic Hamiltonians", "cheeger-gap"};
  app.footer(kSchemas);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string model = "ring";
  std::size_t sites = 8;
  std::size_t spins = 3;
  double hopping = 1.0;
  double field = 1.0;
  std::string path;
  std::string strategies = "cut-only,cut-plus-paths,full";
  std::string domain = "auto";
  std::string unit = "literal";
  std::string out_path;
  std::string solver = "auto";
  std::string only;

  auto* model_opt = app.add_option("--model", model, "ring | transverse | ising | file")->capture_default_str();
  auto* n_sites = app.add_option("--N", sites, "ring sites")->capture_default_str();
  auto* n_spins = app.add_option("--n", spins, "spins (transverse, ising)")->capture_default_str();
  auto* t_opt = app.add_option("--t", hopping, "ring hopping t")->capture_default_str();
  auto* b_opt = app.add_option("--B", field, "transverse field B")->capture_default_str();
  auto* path_opt = app.add_option("--path", path, "matrix file for --model file");
  app.add_option("--tol", cfg.spectra.tol, "eigenpair residual tolerance")->capture_default_str();
  app.add_option("--degeneracy-tol", cfg.spectra.degeneracy_tol, "near-degeneracy threshold")->capture_default_str();
  app.add_option("--solver", solver, "auto | dense | iterative")->capture_default_str();
  app.add_option("--max-iterations", cfg.spectra.max_iterations, "power-iteration cap")->capture_default_str();
  app.add_option("--cap-tol", cfg.cap_tol, "slack on C_S <= 1/2")->capture_default_str();
  app.add_option("--tie-tol", cfg.tie_tol, "relative tolerance for equal ratios")->capture_default_str();
  app.add_option("--graph-tol", cfg.graph_tol, "stale ground-state threshold")->capture_default_str();
  app.add_option("--check-tol", cfg.check_tol, "tolerance for verify identities")->capture_default_str();
  app.add_option("--flow-tol", cfg.flow_tol, "relative tolerance on the min-cut value")->capture_default_str();
  app.add_option("--flow-abs-tol", cfg.flow_abs_tol, "absolute tolerance on flow constraints")->capture_default_str();
  app.add_option("--dense-limit", cfg.spectra.dense_limit, "largest N for the dense eigensolver")->capture_default_str();
  app.add_option("--gap-limit", cfg.gap_limit, "largest N for which the exact gap is computed")->capture_default_str();
  app.add_option("--enum-limit", cfg.enum_limit, "largest N for exhaustive cut enumeration")->capture_default_str();
  app.add_option("--subset-limit", cfg.subset_limit, "largest |S| for subsets-of-S enumeration")->capture_default_str();
  app.add_option("--max-spins", cfg.max_spins, "largest spin count accepted")->capture_default_str();
  app.add_option("--strategies", strategies, "comma list of cut-only, cut-plus-paths, full")->capture_default_str();
  app.add_option("--domain", domain, "auto | both | subsets-of-S | all-feasible")->capture_default_str();
  app.add_option("--energy-unit", unit, "Theorem-1 network units: literal | constriction")->capture_default_str();
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", cfg.seed, "seed for random instances and partitions")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)")->capture_default_str();

  auto* gap = app.add_subcommand("gap", "lambda0, lambda1, gap and residuals");
  auto* bounds = app.add_subcommand("bounds", "Cheeger constant, classic and generalised bounds");
  auto* sweep = app.add_subcommand("sweep", "bounds over a range of B, t, n or N");
  sweep->add_option("--param", cfg.param, "B | t | n | N")->required();
  sweep->add_option("--from", cfg.from, "first value")->required();
  sweep->add_option("--to", cfg.to, "last value")->required();
  sweep->add_option("--step", cfg.step, "increment")->capture_default_str();
  auto* verify = app.add_subcommand("verify", "invariant and Theorem-1 suites");
  verify->add_option("--only", only, "comma list of laplacian, cheeger, generalized, theorem1, rayleigh");
  verify->add_option("--instances", cfg.instances, "random instances")->capture_default_str();
  verify->add_option("--partitions", cfg.partitions, "random partitions per instance")->capture_default_str();
  verify->add_flag("--inject-inflated", cfg.inject_inflated, "use 1.5 Phi~ in the Theorem-1 checks");
  auto* export_graph = app.add_subcommand("export-graph", "dressed graph of the ground state");
  auto* export_network = app.add_subcommand("export-network", "Theorem-1 network with max-flow");
  export_network->add_option("--support", cfg.support, "cut | vplus")->capture_default_str();

  std::vector<const char*> argv{"cheeger-gap"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.model.kind = parse_model_kind(model);
    cfg.model_given = model_opt->count() + n_sites->count() + n_spins->count() + t_opt->count() + b_opt->count() +
                          path_opt->count() >
                      0;
    switch (cfg.model.kind) {
      case ModelKind::ring:
        cfg.model.size = sites;
        cfg.model.coupling = hopping;
        break;
      case ModelKind::transverse_field:
      case ModelKind::ising_chain:
        cfg.model.size = spins;
        cfg.model.coupling = field;
        break;
      case ModelKind::file:
        if (path.empty()) throw Error(ErrorKind::validation, "--model file needs --path");
        cfg.model.path = path;
        break;
    }
    if (solver == "auto") {
      cfg.spectra.path = SolverPath::automatic;
    } else if (solver == "dense") {
      cfg.spectra.path = SolverPath::dense;
    } else if (solver == "iterative") {
      cfg.spectra.path = SolverPath::iterative;
    } else {
      throw Error(ErrorKind::validation, "--solver must be auto, dense or iterative");
    }
    cfg.strategies.clear();
    std::stringstream ss(strategies);
    for (std::string item; std::getline(ss, item, ',');) {
      if (!item.empty()) cfg.strategies.push_back(parse_reduction_strategy(item));
    }
    if (domain == "auto") {
      cfg.domain = DomainChoice::automatic;
    } else if (domain == "both") {
      cfg.domain = DomainChoice::both;
    } else {
      cfg.domain = parse_domain(domain) == PhiTildeDomain::subsets_of_s ? DomainChoice::subsets_of_s
                                                                          : DomainChoice::all_feasible;
    }
    if (unit == "literal") {
      cfg.energy_unit = EnergyUnit::literal;
    } else if (unit == "constriction") {
      cfg.energy_unit = EnergyUnit::constriction;
    } else {
      throw Error(ErrorKind::validation, "--energy-unit must be literal or constriction");
    }
    std::stringstream os(only);
    for (std::string item; std::getline(os, item, ',');) {
      if (!item.empty()) cfg.only.push_back(item);
    }
    cfg.out = out_path;

    const std::map<CLI::App*, Command> commands{{gap, Command::gap},
                                                {bounds, Command::bounds},
                                                {sweep, Command::sweep},
                                                {verify, Command::verify},
                                                {export_graph, Command::export_graph},
                                                {export_network, Command::export_network}};
    return execute(commands.at(app.get_subcommands().front()), cfg, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace cheeger_gap::cli
