#include <cmath>
#include <sstream>

#include "cheeger_gap/cheeger.hpp"
#include "cheeger_gap/error.hpp"
#include "cheeger_gap/flownet.hpp"
#include "cheeger_gap/random_instance.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace cheeger_gap;

TEST_CASE("series network carries the bottleneck") {
  const auto net = FlowNetwork::from_arcs(3, {{0, 2, 3.0, 0}, {2, 1, 2.0, 0}});
  const auto f = max_flow(net);
  CHECK(f.value == 2.0);
  CHECK(f.integer_value == oracle::min_cut(net, f.scale));
  CHECK(f.source_side[0]);
  CHECK(f.source_side[2]);
  CHECK_FALSE(f.source_side[1]);
}

TEST_CASE("parallel paths add up") {
  const auto net = FlowNetwork::from_arcs(
      4, {{0, 2, 1.0, 0}, {0, 3, 2.0, 0}, {2, 1, 5.0, 0}, {3, 1, 0.5, 0}, {3, 2, 1.0, 0}});
  const auto f = max_flow(net);
  CHECK(f.value == 2.5);
  CHECK(f.integer_value == oracle::min_cut(net, f.scale));
}

TEST_CASE("malformed networks are rejected") {
  CHECK_THROWS_AS(FlowNetwork::from_arcs(3, {{0, 3, 1.0, 0}}), Error);
  CHECK_THROWS_AS(FlowNetwork::from_arcs(3, {{0, 2, -1.0, 0}}), Error);
}

TEST_CASE("hypercube n=2 network") {
  const auto g = fixture::graph_of(build_transverse_field(2, 1.0));
  const VertexSet s(4, {0, 1});
  const auto gt = reduce_cut_only(g, s);
  const auto net = build_network(gt, s, 1.0);
  CHECK(net.node_count() == 8);
  CHECK(net.arcs_by_rule(1) == 2);
  CHECK(net.arcs_by_rule(2) == 2);
  CHECK(net.arcs_by_rule(3) == 2);
  CHECK(net.arcs_by_rule(4) == 4);
  for (const auto& a : net.arcs()) {
    if (a.rule == 1) CHECK(std::abs(a.capacity - 0.5) <= 1e-12);
    if (a.rule == 2) {
      CHECK(std::abs(a.capacity - 0.25) <= 1e-12);
      CHECK(a.to == net.y_node(a.from == net.x_node(0) ? 2 : 3));
    }
    if (a.rule == 3) CHECK(std::abs(a.capacity - 0.25) <= 1e-12);
    if (a.rule == 4) CHECK(std::abs(a.capacity - 0.25) <= 1e-12);
  }
  const auto f = max_flow(net);
  CHECK(std::abs(f.value - 1.0) <= 1e-9);
  CHECK(std::abs(net.source_capacity() - 1.0) <= 1e-12);

  const auto rep = verify_theorem1(gt, s, 1.0);
  CHECK(rep.checks.ok());
  CHECK(std::abs(rep.bound - 0.5) <= 1e-12);
}

TEST_CASE("arc count is |X| + reduced degree over X + |X| + N") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto g = fixture::graph_of(random_stoquastic(53, k));
    const auto s = cheeger_exact(g).argmin.subset;
    const auto gt = reduce_cut_plus_paths(g, s);
    const auto net = build_network(gt, s, 0.1);
    std::size_t deg = 0;
    for (auto i : s.indices()) deg += gt.neighbors(i).size();
    CHECK(net.arcs().size() == 2 * s.count() + deg + g.size());
    CHECK(net.node_count() == 2 + s.count() + g.size());
  }
}

TEST_CASE("max flow equals the enumerated minimum cut") {
  RandomInstanceOptions small;
  small.min_dim = 4;
  small.max_dim = 7;
  for (std::uint64_t k = 0; k < 15; ++k) {
    CAPTURE(k);
    const auto g = fixture::graph_of(random_stoquastic(59, k, small));
    const auto s = cheeger_exact(g).argmin.subset;
    const auto gt = reduce_cut_plus_paths(g, s);
    const auto r = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
    for (double unit : {1.0, gt.constriction()}) {
      NetworkOptions opts;
      opts.energy_unit = unit;
      const auto net = build_network(gt, s, r.phi_tilde, opts);
      REQUIRE(net.node_count() <= 16);
      const auto f = max_flow(net);
      CHECK(f.integer_value == oracle::min_cut(net, f.scale));
      // The residual-reachable set is a minimum cut.
      std::int64_t cut = 0;
      const auto caps = integer_capacities(net, f.scale);
      for (std::size_t a = 0; a < caps.size(); ++a) {
        const auto& arc = net.arcs()[a];
        if (f.source_side[arc.from] && !f.source_side[arc.to]) cut += caps[a];
      }
      CHECK(cut == f.integer_value);
    }
  }
}

TEST_CASE("constriction units make the source cut minimal") {
  const auto g = fixture::graph_of(build_transverse_field(3, 3.0));
  const auto s = cheeger_exact(g).argmin.subset;
  const auto gt = reduce_cut_only(g, s);
  const auto r = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
  CHECK(std::abs(r.phi_tilde - 3.0) <= 1e-12);

  // Literal units: the sink side holds total capacity 1, below (1 + 3) / 2.
  const auto literal = build_network(gt, s, r.phi_tilde);
  const auto fl = max_flow(literal);
  CHECK(fl.value < literal.source_capacity() - 0.5);
  CHECK(fl.integer_value == oracle::min_cut(literal, fl.scale));

  NetworkOptions unit;
  unit.energy_unit = gt.constriction();
  const auto normalized = build_network(gt, s, r.phi_tilde, unit);
  const auto fn = max_flow(normalized);
  CHECK(std::abs(fn.value - normalized.source_capacity()) <= 1e-8);
  CHECK(fn.integer_value == oracle::min_cut(normalized, fn.scale));
}

TEST_CASE("an inflated Phi~ breaks the source-cut claim") {
  const auto g = fixture::graph_of(build_transverse_field(2, 1.0));
  const VertexSet s(4, {0, 1});
  const auto gt = reduce_cut_only(g, s);
  const auto rep = verify_theorem1(gt, s, 1.5);
  CHECK_FALSE(rep.checks.find("min_cut_value")->passed);
}

TEST_CASE("positive support of a single spin") {
  const auto h = build_transverse_field(1, 0.8);
  const auto sp = low_spectrum(h);
  const auto ps = positive_support(sp);
  CHECK(ps.vplus.count() == 1);
  CHECK(std::abs(ps.capacity - 0.5) <= 1e-12);
  CHECK(std::abs(ps.sum_e) <= 1e-12);
  const auto g = graph_from(h, sp.lambda0, sp.psi0);
  CHECK(std::abs(rayleigh_chain_bound(g, ps) - 0.8) <= 1e-10);
}

TEST_CASE("Rayleigh chain bound stays below the gap") {
  for (std::uint64_t k = 0; k < 20; ++k) {
    const auto h = random_stoquastic(61, k);
    const auto sp = low_spectrum(h);
    const auto ps = positive_support(sp);
    CHECK(ps.capacity <= 0.5 + 1e-12);
    const auto g = graph_from(h, sp.lambda0, sp.psi0);
    CHECK(rayleigh_chain_bound(g, ps) <= spectral_gap(sp) + 1e-9);
  }
}

TEST_CASE("network export") {
  const auto net = FlowNetwork::from_arcs(3, {{0, 2, 3.0, 0}, {2, 1, 2.0, 0}});
  const auto f = max_flow(net);
  std::ostringstream os;
  export_network(os, net, &f);
  const auto text = os.str();
  CHECK(text.rfind("network 1\n3 2\n", 0) == 0);
  CHECK(text.find("arc 0 2 3 2\n") != std::string::npos);
  CHECK(text.find("arc 2 1 2 2\n") != std::string::npos);
}
