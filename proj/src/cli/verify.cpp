#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <random>

#include "cheeger_gap/cli.hpp"
#include "cheeger_gap/error.hpp"
#include "cheeger_gap/flownet.hpp"
#include "cheeger_gap/parallel.hpp"
#include "cheeger_gap/random_instance.hpp"
#include "csv.hpp"

namespace cheeger_gap::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

struct Instance {
  std::string name;
  std::uint64_t id = 0;
  ModelSpec spec;  // kind == file marks a random instance
  bool random = false;
};

std::vector<Instance> instances(const RunConfig& cfg) {
  std::vector<Instance> list;
  if (cfg.model_given) {
    list.push_back({std::string(to_string(cfg.model.kind)) + "-" + std::to_string(cfg.model.size) + "-" +
                        shortest(cfg.model.coupling),
                    0, cfg.model, false});
    if (cfg.model.kind == ModelKind::file) list.back().name = cfg.model.path.filename().string();
    return list;
  }
  std::uint64_t id = 0;
  for (std::size_t n : {2, 3}) {
    list.push_back({"transverse-n" + std::to_string(n) + "-B1", id++, {ModelKind::transverse_field, n, 1.0, {}}, false});
  }
  list.push_back({"ring-N8-t1", id++, {ModelKind::ring, 8, 1.0, {}}, false});
  for (std::size_t n = 3; n <= 6; ++n) {
    list.push_back({"ising-n" + std::to_string(n) + "-B2", id++, {ModelKind::ising_chain, n, 2.0, {}}, false});
  }
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    list.push_back({"random-" + std::to_string(cfg.seed) + "-" + std::to_string(k), k, {}, true});
  }
  return list;
}

struct Recorder {
  std::string instance;
  std::vector<std::string> rows;
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::size_t evidence = 0;
  std::string first_failure;

  void add(const std::string& suite, const std::string& check, const std::string& status, double measured,
           double tolerance, const std::string& detail = {}) {
    rows.push_back(row({suite, instance, check, status, num(measured), num(tolerance), detail}));
    if (status == "pass" || status == "fail") ++checks;
    if (status == "evidence") ++evidence;
    if (status == "fail") {
      if (failed++ == 0) first_failure = suite + "/" + instance + "/" + check;
    }
  }

  void check(const std::string& suite, const std::string& name, bool passed, double measured, double tolerance,
             const std::string& detail = {}) {
    add(suite, name, passed ? "pass" : "fail", measured, tolerance, detail);
  }
};

struct Context {
  const RunConfig& cfg;
  const Instance& inst;
  StoquasticMatrix h;
  std::optional<CutFamily> family;
  SpectralPair sp;
  double gap = 0.0;
  std::optional<Analysis> analysis;
  PipelineOptions opts;
};

void suite_laplacian(Context& c, Recorder& r) {
  const auto l = laplacian(c.h, c.sp.lambda0, c.sp.psi0, c.cfg.graph_tol);
  LaplacianCheckOptions lo;
  lo.tol = c.cfg.check_tol;
  lo.gap_tol = c.cfg.check_tol;
  const auto rep = verify_laplacian(l, c.sp, lo);
  for (const auto& ch : rep.checks) r.check("laplacian", ch.name, ch.passed, ch.measured, ch.tolerance, ch.detail);
}

void suite_cheeger(Context& c, Recorder& r) {
  const auto& a = *c.analysis;
  const double tol = c.cfg.check_tol;
  const bool exact = a.cheeger.method == CheegerMethod::exact;
  r.check("cheeger", "upper", a.classic.upper - c.gap >= -tol, a.classic.upper - c.gap, tol, "2 Phi - gap");
  const double lower_slack = c.gap - a.classic.lower;
  if (exact || lower_slack >= -tol) {
    r.check("cheeger", "lower", lower_slack >= -tol, lower_slack, tol, "gap - Phi^2/(2|lambda0|)");
  } else {
    r.add("cheeger", "lower", "evidence", lower_slack, tol, "candidate Phi is not a guaranteed lower-bound input");
  }

  std::seed_seq seq{static_cast<std::uint32_t>(c.cfg.seed), static_cast<std::uint32_t>(c.cfg.seed >> 32),
                    static_cast<std::uint32_t>(c.inst.id), 0x9a27u, c.inst.random ? 1u : 0u};
  std::mt19937_64 rng(seq);
  std::bernoulli_distribution coin(0.5);
  const auto n = c.h.dim();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p < c.cfg.partitions; ++p) {
    VertexSet s(n);
    do {
      s = VertexSet(n);
      for (std::uint32_t v = 0; v < n; ++v) {
        if (coin(rng)) s.insert(v);
      }
    } while (!s.proper());
    worst = std::min(worst, variational_upper(*a.graph, s) - c.gap);
  }
  if (c.cfg.partitions > 0) {
    r.check("cheeger", "variational", worst >= -tol, worst, tol,
            "min over " + std::to_string(c.cfg.partitions) + " random partitions of R(psi) - gap");
  }
}

void suite_generalized(Context& c, Recorder& r) {
  const double tol = c.cfg.check_tol;
  for (const auto& d : c.analysis->domains) {
    for (const auto& o : d.reductions.outcomes) {
      const std::string name = std::string(to_string(d.domain)) + "/" + to_string(o.strategy);
      if (o.status == StrategyOutcome::Status::skipped) {
        r.add("generalized", name, "skipped", nan, nan, o.note);
        continue;
      }
      const double slack = c.gap - o.bound;
      if (slack >= -tol || d.domain == PhiTildeDomain::all_feasible) {
        r.check("generalized", name, slack >= -tol, slack, tol, "gap - Phi~^2/(2c)");
      } else {
        r.add("generalized", name, "evidence", slack, tol, "subsets-of-S bound exceeds the gap");
      }
    }
  }
}

void suite_theorem1(Context& c, Recorder& r) {
  std::optional<std::vector<double>> ehat;
  if (!c.sp.near_degenerate) ehat = positive_support(c.sp).ehat;
  for (const auto& d : c.analysis->domains) {
    for (const auto& o : d.reductions.outcomes) {
      if (o.status != StrategyOutcome::Status::ok) continue;
      const std::string base = std::string(to_string(d.domain)) + "/" + to_string(o.strategy) + "/";
      Theorem1Options to;
      to.flow_rel_tol = c.cfg.flow_tol;
      to.abs_tol = c.cfg.flow_abs_tol;
      to.gap = c.gap;
      to.ehat = ehat;
      if (c.cfg.energy_unit == EnergyUnit::constriction) to.network.energy_unit = o.constriction;
      const double phi = o.cheeger->phi_tilde * (c.cfg.inject_inflated ? 1.5 : 1.0);
      const auto rep = verify_theorem1(*o.graph, c.analysis->cheeger.argmin.subset, phi, to);
      for (const auto& ch : rep.checks.checks) {
        r.check("theorem1", base + ch.name, ch.passed, ch.measured, ch.tolerance, ch.detail);
      }
      if (rep.chain_factor) r.add("theorem1", base + "chain_factor", "info", *rep.chain_factor, nan);
      // Only a subsets-of-S Phi~ is the largest value the network can carry,
      // so only there must 1.5 Phi~ break the cut.
      if (!c.cfg.inject_inflated && d.domain == PhiTildeDomain::subsets_of_s) {
        const auto neg = verify_theorem1(*o.graph, c.analysis->cheeger.argmin.subset, 1.5 * o.cheeger->phi_tilde, to);
        const auto* a = neg.checks.find("min_cut_value");
        r.check("theorem1", base + "inflated_control", a != nullptr && !a->passed, a ? a->measured : nan,
                c.cfg.flow_tol, "1.5 Phi~ must break the min-cut value");
      }
    }
  }
}

void suite_rayleigh(Context& c, Recorder& r) {
  if (c.sp.near_degenerate) {
    r.add("rayleigh", "support", "skipped", c.gap, c.cfg.spectra.degeneracy_tol, "near-degenerate pair");
    return;
  }
  const auto ps = positive_support(c.sp);
  const double tol = c.cfg.check_tol;
  r.check("rayleigh", "sum_e", std::abs(ps.sum_e) <= tol, std::abs(ps.sum_e), tol, "|sum_i e_i|");
  r.check("rayleigh", "capacity", ps.capacity <= 0.5 + tol, ps.capacity, 0.5, "C_{V+}");
  const double bound = rayleigh_chain_bound(*c.analysis->graph, ps);
  r.check("rayleigh", "bound", c.gap - bound >= -tol, c.gap - bound, tol, "gap - chain quotient");
}

using SuiteFn = void (*)(Context&, Recorder&);

Recorder run_instance(const RunConfig& cfg, const Instance& inst, const std::vector<std::string>& suites) {
  Recorder r;
  r.instance = inst.name;
  try {
    Context c{cfg, inst, {}, {}, {}, 0.0, {}, {}};
    c.h = inst.random ? random_stoquastic(cfg.seed, inst.id) : build_model(inst.spec, cfg.max_spins);
    if (!inst.random) c.family = candidate_family(inst.spec);
    auto one = cfg;
    one.threads = 1;
    c.opts = one.pipeline(c.h.dim());
    c.opts.domains = {PhiTildeDomain::subsets_of_s, PhiTildeDomain::all_feasible};
    if (cfg.domain == DomainChoice::subsets_of_s) c.opts.domains = {PhiTildeDomain::subsets_of_s};
    if (cfg.domain == DomainChoice::all_feasible) c.opts.domains = {PhiTildeDomain::all_feasible};
    c.opts.gap_limit = std::max(c.opts.gap_limit, c.h.dim());
    c.analysis = analyze(c.h, c.family, c.opts);
    c.sp = *c.analysis->pair;
    c.gap = *c.analysis->gap;

    const std::vector<std::pair<std::string, SuiteFn>> table{{"laplacian", suite_laplacian},
                                                             {"cheeger", suite_cheeger},
                                                             {"generalized", suite_generalized},
                                                             {"theorem1", suite_theorem1},
                                                             {"rayleigh", suite_rayleigh}};
    for (const auto& [name, fn] : table) {
      if (std::find(suites.begin(), suites.end(), name) == suites.end()) continue;
      try {
        fn(c, r);
      } catch (const Error& e) {
        r.check(name, "error", false, nan, nan, std::string(to_string(e.kind())) + ": " + e.what());
      }
    }
  } catch (const Error& e) {
    r.check("setup", "error", false, nan, nan, std::string(to_string(e.kind())) + ": " + e.what());
  }
  return r;
}

}  // namespace

VerifySummary cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> suites = cfg.only.empty() ? verify_suites() : cfg.only;
  for (const auto& s : suites) {
    if (std::find(verify_suites().begin(), verify_suites().end(), s) == verify_suites().end()) {
      throw Error(ErrorKind::validation, "unknown verify suite '" + s + "'");
    }
  }
  const auto list = instances(cfg);
  std::vector<Recorder> results(list.size());
  parallel_for(list.size(), cfg.worker_count(),
               [&](std::size_t i) { results[i] = run_instance(cfg, list[i], suites); });

  out << row({"suite", "instance", "check", "status", "measured", "tolerance", "detail"});
  VerifySummary s;
  for (const auto& r : results) {
    for (const auto& line : r.rows) out << line;
    s.checks += r.checks;
    s.evidence += r.evidence;
    if (r.failed > 0 && s.failed == 0) s.first_failure = r.first_failure;
    s.failed += r.failed;
  }
  out << row({"summary", "all", s.first_failure, s.ok() ? "pass" : "fail", std::to_string(s.failed),
              std::to_string(s.checks), "evidence=" + std::to_string(s.evidence)});
  return s;
}

}  // namespace cheeger_gap::cli
