// Acceptance run: one PASS/FAIL line per criterion.
//
// Exit status is 0 when the set of failing criteria equals --expect-fail
// (empty by default), 1 otherwise.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cheeger_gap/cheeger.hpp"
#include "cheeger_gap/cli.hpp"
#include "cheeger_gap/error.hpp"
#include "cheeger_gap/flownet.hpp"
#include "cheeger_gap/pipeline.hpp"
#include "cheeger_gap/random_instance.hpp"
#include "cheeger_gap/reduced.hpp"
#include "support/oracles.hpp"

using namespace cheeger_gap;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct Failures {
  std::size_t count = 0;
  std::string first;
  void add(const std::string& what) {
    if (count++ == 0) first = what;
  }
  bool none() const { return count == 0; }
  std::string text() const { return none() ? "none" : std::to_string(count) + " (first: " + first + ")"; }
};

WeightedGraph graph_of(const StoquasticMatrix& h, const SpectralPair& sp) {
  return graph_from(h, sp.lambda0, sp.psi0);
}

SpectralPair dense_pair(const StoquasticMatrix& h) {
  SpectraOptions opts;
  opts.path = SolverPath::dense;
  return low_spectrum(h, opts);
}

// 1. Ring: Phi = 4t/N, classic sandwich and gap against the oracle.
Outcome ring_reproduction() {
  Failures f;
  std::ostringstream notes;
  for (std::size_t n : {4u, 8u, 16u, 24u}) {
    const auto h = build_ring(n, 1.0);
    const double og = oracle::gap(h);
    const auto sp = dense_pair(h);
    const auto g = graph_of(h, sp);
    CheegerOptions copts;
    copts.threads = 0;
    const auto r = cheeger_exact(g, copts);
    const auto b = classic_bounds(r.phi, sp.lambda0);
    const std::string at = "N=" + std::to_string(n);
    if (std::abs(r.phi - 4.0 / static_cast<double>(n)) > 1e-9) f.add(at + " phi=" + fmt(r.phi));
    if (!(b.lower <= og + 1e-9 && og <= b.upper + 1e-9)) f.add(at + " sandwich");
    if (std::abs(og - spectral_gap(sp)) > 1e-9) f.add(at + " gap vs dense");
    notes << ' ' << at << ":phi=" << fmt(r.phi) << ",gap=" << fmt(og);
  }
  return {f.none(), "failures " + f.text() + ";" + notes.str()};
}

// 2. Hypercube: gap 2B, Phi = B, cut-only bound B/2.
Outcome hypercube_reproduction() {
  Failures f;
  for (std::size_t n : {2u, 3u, 4u}) {
    for (double b : {0.5, 1.0, 3.0}) {
      const auto h = build_transverse_field(n, b);
      const auto sp = dense_pair(h);
      const std::string at = "n=" + std::to_string(n) + ",B=" + fmt(b);
      if (std::abs(spectral_gap(sp) - 2.0 * b) > 1e-9) f.add(at + " gap");
      if (std::abs(oracle::gap(h) - 2.0 * b) > 1e-9) f.add(at + " oracle gap");
      const auto g = graph_of(h, sp);
      const auto r = cheeger_exact(g);
      if (std::abs(r.phi - b) > 1e-9) f.add(at + " phi=" + fmt(r.phi));
      const auto& s = r.argmin.subset;
      const auto gt = reduce_cut_only(g, s);
      const auto rc = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
      const double bound = generalized_bound(rc.phi_tilde, gt.constriction());
      if (std::abs(bound - b / 2.0) > 1e-9) f.add(at + " cut-only bound=" + fmt(bound));
      if (bound > spectral_gap(sp) + 1e-9) f.add(at + " bound above gap");
    }
  }
  return {f.none(), "9 (n,B) points, cut-only bound in subsets-of-S domain; failures " + f.text()};
}

struct PointSummary {
  double gap = 0.0;
  double phi = 0.0;
  double upper = 0.0;
  double classic = 0.0;
  double generalized = 0.0;
  bool generalized_found = false;
};

PointSummary ising_point(std::size_t n, double b) {
  ModelSpec spec{ModelKind::ising_chain, n, b, {}};
  const auto h = build_model(spec);
  PipelineOptions opts;
  opts.domains = {default_domain(h.dim(), opts.reduced)};
  opts.cheeger.threads = 0;
  const auto a = analyze(h, candidate_family(spec), opts);
  PointSummary p;
  p.gap = *a.gap;
  p.phi = a.cheeger.phi;
  p.upper = a.classic.upper;
  p.classic = a.classic.lower;
  const auto& red = a.domains.front().reductions;
  p.generalized_found = red.found;
  p.generalized = red.found ? red.bound : 0.0;
  return p;
}

// 3. Ising chain, B = 2 size scan and n = 10 field scan.
Outcome ising_shape() {
  Failures f;
  std::ostringstream notes;
  double prev_classic = std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = 0.0;
  for (std::size_t n = 4; n <= 12; ++n) {
    const auto p = ising_point(n, 2.0);
    const std::string at = "n=" + std::to_string(n);
    if (!(p.classic < prev_classic)) f.add(at + " classic not decreasing");
    prev_classic = p.classic;
    if (!p.generalized_found) {
      f.add(at + " no generalized bound");
    } else {
      gmin = std::min(gmin, p.generalized);
      gmax = std::max(gmax, p.generalized);
      if (p.generalized > p.gap + 1e-9) f.add(at + " generalized above gap");
    }
    if (n <= 8) {
      const double og = oracle::gap(build_ising_chain(n, 2.0));
      if (std::abs(og - p.gap) > 1e-8) f.add(at + " gap vs oracle");
    }
    notes << ' ' << at << ":classic=" << fmt(p.classic) << ",gen=" << fmt(p.generalized);
  }
  if (!(gmax < 2.0 * gmin)) f.add("generalized ratio " + fmt(gmax / gmin));
  std::size_t degenerate = 0;
  std::size_t points = 0;
  for (int k = 1; k <= 15; ++k) {
    const double b = 0.2 * k;
    const auto p = ising_point(10, b);
    ++points;
    const std::string at = "n=10,B=" + fmt(b);
    if (p.upper < p.gap - 1e-9) f.add(at + " 2phi < gap");
    if (p.classic > p.gap + 1e-9) f.add(at + " classic above gap");
    if (!p.generalized_found) ++degenerate;
    if (p.generalized > p.gap + 1e-9) f.add(at + " generalized above gap");
  }
  return {f.none(), "failures " + f.text() + "; generalized max/min=" + fmt(gmax / gmin) + "; B-scan " +
                        std::to_string(points) + " points, " + std::to_string(degenerate) +
                        " without a usable generalized bound;" + notes.str()};
}

// 4. Laplacian identities, classic sandwich and variational bound.
Outcome property_suite() {
  Failures f;
  std::mt19937_64 rng(kSeed);
  double worst_identity = 0.0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto h = random_stoquastic(kSeed, k);
    const std::string at = "random-" + std::to_string(k);
    const double og = oracle::gap(h);
    const auto sp = dense_pair(h);
    const auto l = laplacian(h, sp.lambda0, sp.psi0);
    const std::vector<double> ones(l.size(), 1.0);
    std::vector<double> y(l.size());
    l.apply(ones, y);
    double rows = 0.0;
    for (double v : y) rows = std::max(rows, std::abs(v));
    std::vector<double> pi(l.pi().begin(), l.pi().end());
    l.apply_left(pi, y);
    double left = 0.0;
    for (double v : y) left = std::max(left, std::abs(v));
    const auto [l0, l1] = laplacian_low_eigenvalues(l);
    const double lgap = std::abs((l1 - l0) - og);
    worst_identity = std::max({worst_identity, rows, left, lgap});
    if (rows > 1e-8) f.add(at + " row sums " + fmt(rows));
    if (left > 1e-8) f.add(at + " pi L " + fmt(left));
    if (lgap > 1e-8) f.add(at + " gap(L) " + fmt(lgap));

    const auto g = graph_of(h, sp);
    const auto r = cheeger_exact(g);
    const auto ref = oracle::cheeger(h);
    if (std::abs(r.phi - ref.phi) > 1e-9) f.add(at + " phi vs oracle");
    const auto b = classic_bounds(r.phi, sp.lambda0);
    if (!(b.lower <= og + 1e-9 && og <= b.upper + 1e-9)) f.add(at + " classic sandwich");

    int done = 0;
    while (done < 100) {
      VertexSet a(g.size());
      for (std::uint32_t i = 0; i < g.size(); ++i) {
        if (rng() & 1u) a.insert(i);
      }
      if (!a.proper()) continue;
      ++done;
      if (variational_upper(g, a) < og - 1e-9) f.add(at + " variational " + a.to_string());
    }
  }
  return {f.none(), "100 instances x 100 partitions; worst identity residual " + fmt(worst_identity) +
                        "; failures " + f.text()};
}

// 5. Generalized bound soundness in both domains.
Outcome generalized_soundness() {
  Failures f;
  std::size_t evidence = 0;
  std::map<std::string, std::size_t> evaluated;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto h = random_stoquastic(kSeed, k);
    const double og = oracle::gap(h);
    const auto a = analyze(h, std::nullopt);
    for (const auto& d : a.domains) {
      for (const auto& o : d.reductions.outcomes) {
        if (o.status != StrategyOutcome::Status::ok) continue;
        const std::string key = std::string(to_string(d.domain)) + ":" + to_string(o.strategy);
        ++evaluated[key];
        if (o.bound <= og + 1e-9) continue;
        const std::string at = "random-" + std::to_string(k) + " " + key;
        if (d.domain == PhiTildeDomain::subsets_of_s) {
          ++evidence;
        } else {
          f.add(at);
        }
      }
    }
  }
  std::ostringstream notes;
  for (const auto& [key, count] : evaluated) notes << ' ' << key << '=' << count;
  return {f.none(), "all-feasible violations " + f.text() + "; subsets-of-S violations (evidence) " +
                        std::to_string(evidence) + "; bounds evaluated:" + notes.str()};
}

struct FlowTally {
  std::size_t networks = 0;
  std::map<std::string, std::size_t> failed;
  std::map<std::string, double> worst;
  std::string first;
  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& [k, v] : failed) t += v;
    return t;
  }
  std::string text() const {
    std::ostringstream os;
    os << total() << " failed checks over " << networks << " networks";
    for (const auto& [k, v] : failed) os << ' ' << k << '=' << v << " (worst " << fmt(worst.at(k)) << ')';
    if (!first.empty()) os << " (first: " << first << ")";
    return os.str();
  }
};

// 6. Theorem-1 network checks, Rayleigh chain, negative control, oracle cut.
Outcome theorem1_suite() {
  struct Instance {
    std::string name;
    StoquasticMatrix h;
    std::optional<CutFamily> family;
  };
  std::vector<Instance> instances;
  auto add_model = [&](const std::string& name, const ModelSpec& spec) {
    instances.push_back({name, build_model(spec), candidate_family(spec)});
  };
  for (std::size_t n : {2u, 3u}) add_model("hypercube-n" + std::to_string(n), {ModelKind::transverse_field, n, 1.0, {}});
  add_model("ring-8", {ModelKind::ring, 8, 1.0, {}});
  for (std::size_t n = 3; n <= 6; ++n) add_model("ising-n" + std::to_string(n), {ModelKind::ising_chain, n, 2.0, {}});
  for (std::uint64_t k = 0; k < 25; ++k) {
    instances.push_back({"random-" + std::to_string(k), random_stoquastic(kSeed, k), std::nullopt});
  }

  FlowTally literal;
  FlowTally normalized;
  Failures other;
  std::size_t oracle_networks = 0;
  std::size_t controls = 0;
  for (const auto& [name, h, family] : instances) {
    const auto a = analyze(h, family);
    const auto& s = a.cheeger.argmin.subset;
    try {
      const auto ps = positive_support(*a.pair);
      if (rayleigh_chain_bound(*a.graph, ps) > *a.gap + 1e-9) other.add(name + " rayleigh above gap");
    } catch (const Error& e) {
      other.add(name + " rayleigh: " + e.what());
    }
    for (const auto& d : a.domains) {
      for (const auto& o : d.reductions.outcomes) {
        if (o.status != StrategyOutcome::Status::ok) continue;
        const auto& gt = *o.graph;
        const double phi = o.cheeger->phi_tilde;
        const std::string at = name + "/" + to_string(d.domain) + "/" + to_string(o.strategy);
        for (auto* tally : {&literal, &normalized}) {
          Theorem1Options opts;
          opts.gap = a.gap;
          opts.network.energy_unit = tally == &literal ? 1.0 : gt.constriction();
          const auto rep = verify_theorem1(gt, s, phi, opts);
          ++tally->networks;
          for (const auto& c : rep.checks.checks) {
            if (c.passed) continue;
            ++tally->failed[c.name];
            auto& w = tally->worst[c.name];
            if (std::isfinite(c.measured)) w = std::max(w, std::abs(c.measured));
            if (tally->first.empty()) tally->first = at + "/" + c.name;
          }
          const auto net = build_network(gt, s, phi, opts.network);
          if (net.node_count() <= 16) {
            ++oracle_networks;
            const auto flow = max_flow(net);
            if (flow.integer_value != oracle::min_cut(net, flow.scale)) other.add(at + " max-flow vs oracle");
          }
          if (d.domain == PhiTildeDomain::subsets_of_s) {
            ++controls;
            const auto bad = verify_theorem1(gt, s, 1.5 * phi, opts);
            if (bad.checks.find("min_cut_value")->passed) other.add(at + " inflated control passed");
          }
        }
      }
    }
  }
  const bool pass = literal.total() == 0 && other.none();
  return {pass, "literal units: " + literal.text() + "; constriction units: " + normalized.text() +
                    "; rayleigh/control/oracle failures " + other.text() + "; " + std::to_string(controls) +
                    " inflated controls, " + std::to_string(oracle_networks) + " oracle-checked networks"};
}

// 7. Byte-identical sweep and verify output across runs and thread counts.
Outcome determinism() {
  auto capture = [](std::vector<std::string> args, const std::string& threads) {
    args.insert(args.end(), {"--seed", "42", "--threads", threads});
    std::ostringstream out;
    std::ostringstream err;
    cli::run(args, out, err);
    return out.str();
  };
  const std::vector<std::string> sweep{"sweep", "--model", "ising", "--n", "6", "--param", "B",
                                       "--from", "0.2", "--to", "3", "--step", "0.2"};
  const std::vector<std::string> verify{"verify", "--instances", "25"};
  Failures f;
  for (const auto& [name, args] : {std::pair{"sweep", sweep}, std::pair{"verify", verify}}) {
    const auto a = capture(args, "1");
    const auto b = capture(args, "1");
    const auto c = capture(args, "4");
    if (a.empty()) f.add(std::string(name) + " empty output");
    if (a != b) f.add(std::string(name) + " differs between runs");
    if (a != c) f.add(std::string(name) + " differs between 1 and 4 threads");
  }
  return {f.none(), "sweep (ising n=6, 15 points) and verify (25 random instances), threads {1,4}; failures " +
                        f.text()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> expect_fail;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail; exit 0 when exactly these fail");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "ring", 10.0, ring_reproduction},
      {2, "hypercube", 30.0, hypercube_reproduction},
      {3, "ising-shape", 300.0, ising_shape},
      {4, "property-suite", 0.0, property_suite},
      {5, "generalized-soundness", 0.0, generalized_soundness},
      {6, "theorem1", 0.0, theorem1_suite},
      {7, "determinism", 0.0, determinism},
  };

  std::set<int> failed;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; runtime over budget " + fmt(c.budget_seconds) + " s";
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << "criterion " << c.id << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << c.name << " (" << fmt(secs)
              << " s): " << o.detail << std::endl;
  }
  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::set<int> considered;
  for (const auto& c : criteria) {
    if (only.empty() || std::find(only.begin(), only.end(), c.id) != only.end()) considered.insert(c.id);
  }
  std::set<int> expected_here;
  for (int id : expected) {
    if (considered.count(id)) expected_here.insert(id);
  }
  return failed == expected_here ? 0 : 1;
}
