#pragma once

// Reduced graphs G~ = (V, E~ subset of E) and the generalised lower bound
//   gap >= Phi~^2 / (2 c),
// with c = max_i c_i, c_i = (sum_{(i,j) in E~} w_ij) / pi_i (the constriction)
// and Phi~ the minimum of F~_{S_i} / C_{S_i}, where F~ counts only E~ edges
// leaving S_i.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cheeger_gap/graph.hpp"
#include "cheeger_gap/vertex_set.hpp"

namespace cheeger_gap {

enum class ReductionStrategy { cut_only, cut_plus_paths, full_graph, custom };

const char* to_string(ReductionStrategy s);
ReductionStrategy parse_reduction_strategy(const std::string& name);

/// Holds a non-owning pointer to its parent graph, which must outlive it.
/// Self-loops are never part of E~.
class ReducedGraph {
 public:
  /// `edges` must be off-diagonal parent edges (u < v). Throws
  /// degenerate-reduction error when empty.
  static ReducedGraph from_edges(const WeightedGraph& parent, std::vector<Edge> edges,
                                 ReductionStrategy strategy);

  const WeightedGraph& parent() const noexcept { return *parent_; }
  ReductionStrategy strategy() const noexcept { return strategy_; }
  std::size_t size() const noexcept { return reduced_degree_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  std::span<const double> reduced_degrees() const noexcept { return reduced_degree_; }
  double constriction() const noexcept { return constriction_; }

  std::span<const std::uint32_t> neighbors(std::uint32_t i) const;
  std::span<const double> neighbor_weights(std::uint32_t i) const;
  std::span<const std::uint32_t> offsets() const noexcept { return offsets_; }
  std::span<const std::uint32_t> adjacency() const noexcept { return adj_; }
  std::span<const double> adjacency_weights() const noexcept { return adj_weight_; }

 private:
  const WeightedGraph* parent_ = nullptr;
  ReductionStrategy strategy_ = ReductionStrategy::custom;
  std::vector<Edge> edges_;
  std::vector<double> reduced_degree_;
  double constriction_ = 0.0;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> adj_;
  std::vector<double> adj_weight_;
};

/// E~ = the edges crossing from S to its complement.
ReducedGraph reduce_cut_only(const WeightedGraph& g, const VertexSet& s);

/// Cut edges plus, for every S vertex without a cut edge, a shortest path
/// inside S to the nearest cut-incident vertex (multi-source BFS, ascending
/// neighbour order).
ReducedGraph reduce_cut_plus_paths(const WeightedGraph& g, const VertexSet& s);

/// E~ = E.
ReducedGraph reduce_full(const WeightedGraph& g);

ReducedGraph reduce(const WeightedGraph& g, const VertexSet& s, ReductionStrategy strategy);

enum class PhiTildeDomain { subsets_of_s, all_feasible };

const char* to_string(PhiTildeDomain d);
PhiTildeDomain parse_domain(const std::string& name);

struct ReducedOptions {
  std::size_t subset_limit = 22;
  std::size_t enum_limit = 24;
  double cap_tol = 1e-12;
  double tie_tol = 1e-12;
  std::size_t threads = 1;
  /// In subsets-of-S mode, when no E~ edge joins two S vertices the reduced
  /// flow is additive and Phi~ is attained on a singleton; use that instead of
  /// enumerating.
  bool allow_closed_form = true;
};

/// all-feasible when N <= enum_limit, subsets-of-S otherwise.
PhiTildeDomain default_domain(std::size_t n, const ReducedOptions& opts = {});

struct ReducedCheegerResult {
  double phi_tilde = 0.0;
  VertexSet argmin;
  double flow = 0.0;
  double capacity = 0.0;
  PhiTildeDomain domain = PhiTildeDomain::all_feasible;
  VertexSet reference;
  bool degenerate = false;  // some subset in the domain has zero reduced flow
  bool closed_form = false;
  std::uint64_t evaluated = 0;
};

/// F~_T: weight of E~ edges with exactly one endpoint in T.
double reduced_flow(const ReducedGraph& gt, const VertexSet& t);

/// subsets-of-S: every nonempty S_i of S (no capacity constraint), requires
/// |S| <= subset_limit unless the closed form applies.
/// all-feasible: every nonempty S_i of V with C <= 1/2 + cap_tol, requires
/// N <= enum_limit.
ReducedCheegerResult reduced_cheeger(const ReducedGraph& gt, const VertexSet& s, PhiTildeDomain domain,
                                     const ReducedOptions& opts = {});

/// Phi~^2 / (2 c); throws degenerate-reduction error when c <= 0.
double generalized_bound(double phi_tilde, double constriction);

struct StrategyOutcome {
  enum class Status { ok, degenerate, skipped };
  ReductionStrategy strategy = ReductionStrategy::cut_only;
  Status status = Status::ok;
  std::optional<ReducedGraph> graph;
  std::optional<ReducedCheegerResult> cheeger;
  double constriction = 0.0;
  double bound = 0.0;
  std::string note;
};

const char* to_string(StrategyOutcome::Status s);

struct BestReduction {
  std::vector<StrategyOutcome> outcomes;  // in the order the strategies were given
  std::size_t best = 0;
  double bound = 0.0;
  bool found = false;  // some strategy produced a positive bound
  const StrategyOutcome& winner() const { return outcomes[best]; }
};

/// Evaluates each strategy in order and keeps the largest bound (first wins
/// on ties). Strategies that exceed a size limit are skipped; those with an
/// empty E~ or zero Phi~ are degenerate. `found` is false when none is usable.
BestReduction evaluate_reductions(const WeightedGraph& g, const VertexSet& s,
                                  std::span<const ReductionStrategy> strategies, PhiTildeDomain domain,
                                  const ReducedOptions& opts = {});

/// evaluate_reductions, throwing degenerate-reduction error when no strategy
/// yields a positive bound.
BestReduction best_reduction(const WeightedGraph& g, const VertexSet& s,
                             std::span<const ReductionStrategy> strategies, PhiTildeDomain domain,
                             const ReducedOptions& opts = {});

/// Text line "strategy,|E~|,c,phi_tilde,bound,degenerate".
void write_reduction(std::ostream& os, const StrategyOutcome& o);

}  // namespace cheeger_gap
