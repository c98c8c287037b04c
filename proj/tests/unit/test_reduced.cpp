#include <cmath>
#include <sstream>

#include "cheeger_gap/cheeger.hpp"
#include "cheeger_gap/error.hpp"
#include "cheeger_gap/random_instance.hpp"
#include "cheeger_gap/reduced.hpp"
#include "doctest.h"
#include "support/fixtures.hpp"

using namespace cheeger_gap;

namespace {

const std::vector<ReductionStrategy> kAll{ReductionStrategy::cut_only, ReductionStrategy::cut_plus_paths,
                                          ReductionStrategy::full_graph};

}  // namespace

TEST_CASE("hypercube n=2 cut-only reduction") {
  const double b = 1.7;
  const auto g = fixture::graph_of(build_transverse_field(2, b));
  const VertexSet s(4, {0, 1});
  const auto gt = reduce_cut_only(g, s);
  CHECK(gt.edges().size() == 2);
  CHECK(std::abs(gt.constriction() - b) <= 1e-12);
  const auto r = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
  CHECK(std::abs(r.phi_tilde - b) <= 1e-12);
  CHECK(std::abs(generalized_bound(r.phi_tilde, gt.constriction()) - b / 2.0) <= 1e-12);
}

TEST_CASE("ring 8: paths rescue a degenerate cut-only reduction") {
  const auto g = fixture::graph_of(build_ring(8, 1.0));
  const VertexSet s(8, {0, 1, 2, 3});
  const auto co = reduced_cheeger(reduce_cut_only(g, s), s, PhiTildeDomain::subsets_of_s);
  CHECK(co.degenerate);
  CHECK(co.phi_tilde == 0.0);

  const auto gt = reduce_cut_plus_paths(g, s);
  CHECK(gt.edges().size() == 4);
  const auto r = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
  CHECK_FALSE(r.degenerate);
  CHECK(r.phi_tilde > 0.0);

  const auto best = best_reduction(g, s, kAll, PhiTildeDomain::subsets_of_s);
  CHECK(best.found);
  CHECK(best.outcomes[0].status == StrategyOutcome::Status::degenerate);
  CHECK(best.winner().strategy != ReductionStrategy::cut_only);
}

TEST_CASE("full reduction over all feasible subsets recovers the Cheeger constant") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto h = random_stoquastic(41, k);
    const auto gs = ground_state(h);
    const auto g = graph_from(h, gs.lambda0, gs.psi0);
    const auto phi = cheeger_exact(g).phi;
    const auto gt = reduce_full(g);
    const auto r = reduced_cheeger(gt, VertexSet::full(g.size()), PhiTildeDomain::all_feasible);
    CHECK(std::abs(r.phi_tilde - phi) <= 1e-12);
    CHECK(gt.constriction() <= std::abs(gs.lambda0) + 1e-12);
  }
}

TEST_CASE("adding edges never lowers the reduced conductance") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto g = fixture::graph_of(random_stoquastic(43, k));
    const auto s = cheeger_exact(g).argmin.subset;
    for (auto domain : {PhiTildeDomain::subsets_of_s, PhiTildeDomain::all_feasible}) {
      const auto a = reduced_cheeger(reduce_cut_only(g, s), s, domain);
      const auto b = reduced_cheeger(reduce_cut_plus_paths(g, s), s, domain);
      const auto c = reduced_cheeger(reduce_full(g), s, domain);
      CHECK(a.phi_tilde <= b.phi_tilde + 1e-15);
      CHECK(b.phi_tilde <= c.phi_tilde + 1e-15);
    }
  }
}

TEST_CASE("closed form agrees with enumeration") {
  for (std::uint64_t k = 0; k < 10; ++k) {
    const auto g = fixture::graph_of(random_stoquastic(47, k));
    const auto s = cheeger_exact(g).argmin.subset;
    const auto gt = reduce_cut_only(g, s);
    ReducedOptions enumerate;
    enumerate.allow_closed_form = false;
    const auto a = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s);
    const auto b = reduced_cheeger(gt, s, PhiTildeDomain::subsets_of_s, enumerate);
    CHECK(a.closed_form);
    CHECK_FALSE(b.closed_form);
    CHECK(std::abs(a.phi_tilde - b.phi_tilde) <= 1e-12);
  }
}

TEST_CASE("reduced flow counts only reduced edges") {
  const auto g = fixture::graph_of(build_ring(6, 1.0));
  const VertexSet s(6, {0, 1, 2});
  const auto gt = reduce_cut_only(g, s);
  CHECK(reduced_flow(gt, VertexSet(6, {1})) == 0.0);
  CHECK(std::abs(reduced_flow(gt, VertexSet(6, {0})) - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(reduced_flow(gt, s) - 2.0 / 6.0) <= 1e-12);
}

TEST_CASE("degenerate and invalid reductions are reported") {
  const auto g = fixture::graph_of(build_ring(4, 1.0));
  CHECK_THROWS_AS(ReducedGraph::from_edges(g, {}, ReductionStrategy::custom), Error);
  CHECK_THROWS_AS(generalized_bound(1.0, 0.0), Error);
  CHECK(parse_domain("subsets-of-S") == PhiTildeDomain::subsets_of_s);
  CHECK(parse_reduction_strategy("full") == ReductionStrategy::full_graph);
  CHECK(default_domain(24) == PhiTildeDomain::all_feasible);
  CHECK(default_domain(25) == PhiTildeDomain::subsets_of_s);
}

TEST_CASE("reduction summary line") {
  const auto g = fixture::graph_of(build_transverse_field(2, 1.0));
  const auto best = best_reduction(g, VertexSet(4, {0, 1}), kAll, PhiTildeDomain::subsets_of_s);
  std::ostringstream os;
  write_reduction(os, best.outcomes[0]);
  CHECK(os.str().rfind("cut-only,2,", 0) == 0);
  CHECK(os.str().find(",false\n") != std::string::npos);
}
