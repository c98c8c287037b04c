#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "cheeger_gap/cli.hpp"
#include "cheeger_gap/error.hpp"
#include "cheeger_gap/flownet.hpp"
#include "cheeger_gap/parallel.hpp"
#include "csv.hpp"

namespace cheeger_gap::cli {

const char* to_string(Command c) {
  switch (c) {
    case Command::gap: return "gap";
    case Command::bounds: return "bounds";
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
    case Command::export_graph: return "export-graph";
    case Command::export_network: return "export-network";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  return kind == ErrorKind::convergence ? 3 : 2;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::validation, what); };
  if (enum_limit == 0 || subset_limit == 0 || max_spins == 0 || spectra.dense_limit == 0 ||
      spectra.max_iterations == 0) {
    fail("limits must be positive");
  }
  if (enum_limit > 63) fail("enum-limit must be at most 63");
  if (subset_limit > 63) fail("subset-limit must be at most 63");
  if (!(spectra.tol > 0.0) || !(cap_tol >= 0.0) || !(tie_tol >= 0.0) || !(flow_tol > 0.0) ||
      !(check_tol > 0.0) || !(graph_tol > 0.0)) {
    fail("tolerances must be positive");
  }
  if (strategies.empty()) fail("at least one reduction strategy is required");
}

std::size_t RunConfig::worker_count() const { return worker_threads(threads); }

PipelineOptions RunConfig::pipeline(std::size_t dim, bool both_when_automatic) const {
  PipelineOptions p;
  p.spectra = spectra;
  p.cheeger.enum_limit = enum_limit;
  p.cheeger.cap_tol = cap_tol;
  p.cheeger.tie_tol = tie_tol;
  p.cheeger.threads = worker_count();
  p.reduced.subset_limit = subset_limit;
  p.reduced.enum_limit = enum_limit;
  p.reduced.cap_tol = cap_tol;
  p.reduced.tie_tol = tie_tol;
  p.reduced.threads = p.cheeger.threads;
  p.strategies = strategies;
  p.gap_limit = gap_limit;
  p.graph_tol = graph_tol;
  switch (domain) {
    case DomainChoice::automatic:
      if (both_when_automatic) {
        p.domains = {PhiTildeDomain::subsets_of_s, PhiTildeDomain::all_feasible};
      } else {
        p.domains = {default_domain(dim, p.reduced)};
      }
      break;
    case DomainChoice::both:
      p.domains = {PhiTildeDomain::subsets_of_s, PhiTildeDomain::all_feasible};
      break;
    case DomainChoice::subsets_of_s:
      p.domains = {PhiTildeDomain::subsets_of_s};
      break;
    case DomainChoice::all_feasible:
      p.domains = {PhiTildeDomain::all_feasible};
      break;
  }
  return p;
}

namespace {

std::string size_label(const ModelSpec& m, std::size_t dim) {
  return std::to_string(m.kind == ModelKind::file ? dim : m.size);
}

std::string coupling_label(const ModelSpec& m) {
  return m.kind == ModelKind::file ? std::string{} : shortest(m.coupling);
}

struct Generalized {
  std::string lower;
  std::string strategy;
  std::string domain;
};

// Summary bound for one analysis: the preferred domain's best strategy, or a
// zero bound when every usable strategy was degenerate.
Generalized summarize(const Analysis& a, PhiTildeDomain preferred) {
  const DomainOutcome* d = a.find(preferred);
  if (d == nullptr && !a.domains.empty()) d = &a.domains.front();
  if (d == nullptr) return {};
  Generalized g;
  g.domain = to_string(d->domain);
  if (d->reductions.found) {
    g.lower = num(d->reductions.bound);
    g.strategy = to_string(d->reductions.winner().strategy);
    return g;
  }
  const bool any_degenerate =
      std::any_of(d->reductions.outcomes.begin(), d->reductions.outcomes.end(),
                  [](const StrategyOutcome& o) { return o.status == StrategyOutcome::Status::degenerate; });
  g.lower = any_degenerate ? num(0.0) : std::string{};
  g.strategy = any_degenerate ? "degenerate" : "skipped";
  return g;
}

}  // namespace

void cmd_gap(const RunConfig& cfg, std::ostream& out) {
  const auto h = build_model(cfg.model, cfg.max_spins);
  const auto sp = low_spectrum(h, cfg.spectra);
  out << row({"model", "size", "coupling", "N", "lambda0", "lambda1", "gap", "residual0", "residual1", "method",
              "iterations", "near_degenerate"});
  out << row({to_string(cfg.model.kind), size_label(cfg.model, h.dim()), coupling_label(cfg.model),
              std::to_string(h.dim()), num(sp.lambda0), num(sp.lambda1), num(spectral_gap(sp)), num(sp.residual0),
              num(sp.residual1), to_string(sp.method), std::to_string(sp.iterations),
              sp.near_degenerate ? "true" : "false"});
}

void cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const auto h = build_model(cfg.model, cfg.max_spins);
  const auto opts = cfg.pipeline(h.dim(), true);
  const auto a = analyze(h, candidate_family(cfg.model), opts);

  std::vector<std::string> header{"model", "size", "coupling", "N", "lambda0", "gap", "phi", "phi_method",
                                  "cut_size", "cut_capacity", "upper", "classic_lower"};
  std::vector<std::string> values{to_string(cfg.model.kind),
                                  size_label(cfg.model, h.dim()),
                                  coupling_label(cfg.model),
                                  std::to_string(h.dim()),
                                  num(a.lambda0),
                                  num(a.gap),
                                  num(a.cheeger.phi),
                                  to_string(a.cheeger.method),
                                  std::to_string(a.cheeger.argmin.subset.count()),
                                  num(a.cheeger.argmin.capacity),
                                  num(a.classic.upper),
                                  num(a.classic.lower)};
  for (const auto& d : a.domains) {
    for (const auto& o : d.reductions.outcomes) {
      const std::string prefix = std::string(to_string(d.domain)) + ":" + to_string(o.strategy) + ":";
      for (const char* col : {"c", "phi_tilde", "bound", "status"}) header.push_back(prefix + col);
      const bool has_graph = o.graph.has_value();
      values.push_back(has_graph ? num(o.constriction) : "");
      values.push_back(o.cheeger ? num(o.cheeger->phi_tilde) : "");
      values.push_back(o.status == StrategyOutcome::Status::skipped ? "" : num(o.bound));
      values.push_back(to_string(o.status));
    }
  }
  const auto g = summarize(a, default_domain(h.dim(), opts.reduced));
  header.insert(header.end(), {"generalized_lower", "generalized_strategy", "generalized_domain"});
  values.insert(values.end(), {g.lower, g.strategy, g.domain});
  out << row(header) << row(values);
}

namespace {

struct SweepPoint {
  ModelSpec model;
  std::string label;
};

std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
  const bool size_param = cfg.param == "n" || cfg.param == "N";
  const bool coupling_param = cfg.param == "B" || cfg.param == "t";
  if (!size_param && !coupling_param) {
    throw Error(ErrorKind::validation, "sweep --param must be one of B, t, n, N (got '" + cfg.param + "')");
  }
  if (cfg.model.kind == ModelKind::file) throw Error(ErrorKind::validation, "cannot sweep a matrix file");
  if ((cfg.param == "t" || cfg.param == "N") != (cfg.model.kind == ModelKind::ring)) {
    throw Error(ErrorKind::validation, "sweep parameter '" + cfg.param + "' does not apply to model " +
                                           to_string(cfg.model.kind));
  }
  if (!(cfg.step > 0.0) || !(cfg.from <= cfg.to) || !std::isfinite(cfg.to)) {
    throw Error(ErrorKind::validation, "sweep range needs from <= to and step > 0");
  }
  std::vector<SweepPoint> pts;
  const double slack = 1e-9 * cfg.step;
  for (std::size_t k = 0;; ++k) {
    const double v = cfg.from + static_cast<double>(k) * cfg.step;
    if (v > cfg.to + slack) break;
    SweepPoint p{cfg.model, {}};
    if (size_param) {
      const double r = std::round(v);
      if (std::abs(r - v) > 1e-9 || r < 1.0) throw Error(ErrorKind::validation, "size sweep values must be positive integers");
      p.model.size = static_cast<std::size_t>(r);
      p.label = std::to_string(p.model.size);
    } else {
      // Snap to the shortest decimal so 0.2 + 2 * 0.2 prints and runs as 0.6.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", v);
      p.model.coupling = std::strtod(buf, nullptr);
      p.label = shortest(p.model.coupling);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

}  // namespace

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto pts = sweep_points(cfg);
  std::vector<std::string> rows(pts.size());
  auto point_cfg = cfg;
  point_cfg.threads = 1;  // parallelism is across points
  parallel_for(pts.size(), cfg.worker_count(), [&](std::size_t i) {
    const auto h = build_model(pts[i].model, cfg.max_spins);
    const auto opts = point_cfg.pipeline(h.dim());
    const auto a = analyze(h, candidate_family(pts[i].model), opts);
    const auto g = summarize(a, opts.domains.front());
    rows[i] = row({cfg.param, pts[i].label, std::to_string(h.dim()), num(a.lambda0), num(a.gap), num(a.cheeger.phi),
                   to_string(a.cheeger.method), num(a.classic.upper), num(a.classic.lower), g.lower, g.strategy,
                   g.domain});
  });
  out << row({"param", "value", "N", "lambda0", "gap", "phi", "phi_method", "upper", "classic_lower",
              "generalized_lower", "generalized_strategy", "generalized_domain"});
  for (const auto& r : rows) out << r;
}

void cmd_export_graph(const RunConfig& cfg, std::ostream& out) {
  const auto h = build_model(cfg.model, cfg.max_spins);
  const auto gs = ground_state(h, cfg.spectra);
  export_graph(out, graph_from(h, gs.lambda0, gs.psi0, cfg.graph_tol));
}

void cmd_export_network(const RunConfig& cfg, std::ostream& out) {
  const auto h = build_model(cfg.model, cfg.max_spins);
  const auto opts = cfg.pipeline(h.dim());
  const auto a = analyze(h, candidate_family(cfg.model), opts);
  const auto& d = a.domains.front();
  if (!d.reductions.found) {
    throw Error(ErrorKind::degenerate_reduction, "no reduction strategy gives a usable Phi~ for the network");
  }
  const auto& o = d.reductions.winner();
  const ReducedGraph& gt = *o.graph;
  VertexSet support = a.cheeger.argmin.subset;
  double phi = o.cheeger->phi_tilde;
  if (cfg.support == "vplus") {
    if (!a.pair) throw Error(ErrorKind::size_limit, "V+ needs the first excited state (N above gap-limit)");
    support = positive_support(*a.pair).vplus;
    phi = reduced_cheeger(gt, support, PhiTildeDomain::subsets_of_s, opts.reduced).phi_tilde;
  } else if (cfg.support != "cut") {
    throw Error(ErrorKind::validation, "--support must be 'cut' or 'vplus'");
  }
  NetworkOptions nopts;
  if (cfg.energy_unit == EnergyUnit::constriction) nopts.energy_unit = gt.constriction();
  const auto net = build_network(gt, support, phi, nopts);
  const auto flow = max_flow(net);
  export_network(out, net, &flow);
}

}  // namespace cheeger_gap::cli
