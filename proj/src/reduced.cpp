#include "cheeger_gap/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>

#include "cheeger_gap/error.hpp"
#include "enumeration.hpp"

namespace cheeger_gap {

const char* to_string(ReductionStrategy s) {
  switch (s) {
    case ReductionStrategy::cut_only: return "cut-only";
    case ReductionStrategy::cut_plus_paths: return "cut-plus-paths";
    case ReductionStrategy::full_graph: return "full";
    case ReductionStrategy::custom: return "custom";
  }
  return "unknown";
}

ReductionStrategy parse_reduction_strategy(const std::string& name) {
  if (name == "cut-only" || name == "cut_only") return ReductionStrategy::cut_only;
  if (name == "cut-plus-paths" || name == "cut_plus_paths") return ReductionStrategy::cut_plus_paths;
  if (name == "full" || name == "full-graph" || name == "full_graph") return ReductionStrategy::full_graph;
  throw Error(ErrorKind::invalid_model, "unknown reduction strategy '" + name + "'");
}

const char* to_string(PhiTildeDomain d) {
  return d == PhiTildeDomain::subsets_of_s ? "subsets-of-S" : "all-feasible";
}

PhiTildeDomain parse_domain(const std::string& name) {
  if (name == "subsets-of-S" || name == "subsets-of-s" || name == "subsets") return PhiTildeDomain::subsets_of_s;
  if (name == "all-feasible" || name == "all") return PhiTildeDomain::all_feasible;
  throw Error(ErrorKind::invalid_model, "unknown Phi~ domain '" + name + "'");
}

const char* to_string(StrategyOutcome::Status s) {
  switch (s) {
    case StrategyOutcome::Status::ok: return "ok";
    case StrategyOutcome::Status::degenerate: return "degenerate";
    case StrategyOutcome::Status::skipped: return "skipped";
  }
  return "unknown";
}

ReducedGraph ReducedGraph::from_edges(const WeightedGraph& parent, std::vector<Edge> edges,
                                      ReductionStrategy strategy) {
  if (edges.empty()) {
    throw Error(ErrorKind::degenerate_reduction, std::string("reduction '") + to_string(strategy) +
                                                     "' keeps no edges");
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) { return a.u == b.u && a.v == b.v; }),
              edges.end());
  const auto n = parent.size();
  ReducedGraph r;
  r.parent_ = &parent;
  r.strategy_ = strategy;
  r.edges_ = std::move(edges);

  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows(n);
  for (const auto& e : r.edges_) {
    if (e.u >= e.v || e.v >= n) throw Error(ErrorKind::internal, "reduced edge must satisfy u < v < N");
    rows[e.u].emplace_back(e.v, e.weight);
    rows[e.v].emplace_back(e.u, e.weight);
  }
  r.offsets_.assign(n + 1, 0);
  r.reduced_degree_.assign(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::sort(rows[i].begin(), rows[i].end());
    double sum = 0.0;
    for (const auto& [j, w] : rows[i]) {
      r.adj_.push_back(j);
      r.adj_weight_.push_back(w);
      sum += w;
    }
    r.offsets_[i + 1] = static_cast<std::uint32_t>(r.adj_.size());
    r.reduced_degree_[i] = sum / parent.pi()[i];
  }
  r.constriction_ = *std::max_element(r.reduced_degree_.begin(), r.reduced_degree_.end());
  return r;
}

std::span<const std::uint32_t> ReducedGraph::neighbors(std::uint32_t i) const {
  return std::span(adj_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::span<const double> ReducedGraph::neighbor_weights(std::uint32_t i) const {
  return std::span(adj_weight_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

namespace {

void require_cut_side(const WeightedGraph& g, const VertexSet& s) {
  if (s.universe() != g.size() || !s.proper()) {
    throw Error(ErrorKind::degenerate_cut, "reduction needs a proper nonempty cut side S");
  }
}

std::vector<Edge> cut_edges(const WeightedGraph& g, const VertexSet& s) {
  std::vector<Edge> out;
  for (const auto& e : g.edges()) {
    if (s.contains(e.u) != s.contains(e.v)) out.push_back(e);
  }
  return out;
}

}  // namespace

ReducedGraph reduce_cut_only(const WeightedGraph& g, const VertexSet& s) {
  require_cut_side(g, s);
  return ReducedGraph::from_edges(g, cut_edges(g, s), ReductionStrategy::cut_only);
}

ReducedGraph reduce_cut_plus_paths(const WeightedGraph& g, const VertexSet& s) {
  require_cut_side(g, s);
  auto edges = cut_edges(g, s);
  const auto n = g.size();
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> parent(n, none);
  std::vector<char> seen(n, 0);
  std::queue<std::uint32_t> q;
  for (const auto v : s.indices()) {
    bool incident = false;
    for (const auto u : g.neighbors(v)) incident = incident || !s.contains(u);
    if (incident) {
      seen[v] = 1;
      q.push(v);
    }
  }
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (const auto u : g.neighbors(v)) {
      if (!s.contains(u) || seen[u]) continue;
      seen[u] = 1;
      parent[u] = v;
      q.push(u);
    }
  }
  for (const auto v : s.indices()) {
    if (!seen[v]) {
      throw Error(ErrorKind::internal, "vertex " + std::to_string(v) +
                                           " of S cannot reach the cut inside S");
    }
    if (parent[v] != none) {
      const auto a = std::min(v, parent[v]);
      const auto b = std::max(v, parent[v]);
      edges.push_back({a, b, g.weight(a, b)});
    }
  }
  return ReducedGraph::from_edges(g, std::move(edges), ReductionStrategy::cut_plus_paths);
}

ReducedGraph reduce_full(const WeightedGraph& g) {
  return ReducedGraph::from_edges(g, {g.edges().begin(), g.edges().end()}, ReductionStrategy::full_graph);
}

ReducedGraph reduce(const WeightedGraph& g, const VertexSet& s, ReductionStrategy strategy) {
  switch (strategy) {
    case ReductionStrategy::cut_only: return reduce_cut_only(g, s);
    case ReductionStrategy::cut_plus_paths: return reduce_cut_plus_paths(g, s);
    case ReductionStrategy::full_graph: return reduce_full(g);
    case ReductionStrategy::custom: break;
  }
  throw Error(ErrorKind::invalid_model, "custom reductions are built with ReducedGraph::from_edges");
}

PhiTildeDomain default_domain(std::size_t n, const ReducedOptions& opts) {
  return n <= opts.enum_limit ? PhiTildeDomain::all_feasible : PhiTildeDomain::subsets_of_s;
}

double reduced_flow(const ReducedGraph& gt, const VertexSet& t) {
  double f = 0.0;
  for (const auto v : t.indices()) {
    const auto nb = gt.neighbors(v);
    const auto wt = gt.neighbor_weights(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (!t.contains(nb[k])) f += wt[k];
    }
  }
  return f;
}

ReducedCheegerResult reduced_cheeger(const ReducedGraph& gt, const VertexSet& s, PhiTildeDomain domain,
                                     const ReducedOptions& opts) {
  const auto n = gt.size();
  const auto& g = gt.parent();
  if (s.universe() != n || s.empty()) {
    throw Error(ErrorKind::degenerate_cut, "reference set S must be a nonempty subset of V");
  }
  ReducedCheegerResult r;
  r.domain = domain;
  r.reference = s;

  auto capacity_of = [&](const VertexSet& t) {
    double c = 0.0;
    for (auto v : t.indices()) c += g.pi()[v];
    return c;
  };

  const auto members = s.indices();
  if (domain == PhiTildeDomain::subsets_of_s) {
    bool internal = false;
    for (const auto& e : gt.edges()) internal = internal || (s.contains(e.u) && s.contains(e.v));
    if (!internal && opts.allow_closed_form) {
      // Additive reduced flow: the minimum ratio is attained on a singleton.
      std::uint32_t best = members.front();
      for (auto v : members) {
        if (detail::compare_ratio(gt.reduced_degrees()[v], 1.0, gt.reduced_degrees()[best], 1.0,
                                  opts.tie_tol) < 0) {
          best = v;
        }
      }
      r.argmin = VertexSet(n, {best});
      r.closed_form = true;
      r.evaluated = members.size();
    } else {
      if (members.size() > opts.subset_limit || members.size() > 63) {
        throw Error(ErrorKind::size_limit, "subsets-of-S enumeration limited to |S| <= " +
                                               std::to_string(opts.subset_limit) + " (got " +
                                               std::to_string(members.size()) + ")");
      }
      detail::EnumerationOptions eo;
      eo.tie_tol = opts.tie_tol;
      eo.threads = opts.threads;
      const detail::AdjacencyView view{n, gt.offsets(), gt.adjacency(), gt.adjacency_weights(), g.pi()};
      const auto found = detail::min_ratio_subset(view, members, eo);
      std::vector<std::uint32_t> chosen;
      for (std::size_t k = 0; k < members.size(); ++k) {
        if ((found.mask >> k) & 1u) chosen.push_back(members[k]);
      }
      r.argmin = VertexSet::from_indices(n, chosen);
      r.evaluated = found.evaluated;
    }
  } else {
    if (n > opts.enum_limit || n > 63) {
      throw Error(ErrorKind::size_limit, "all-feasible Phi~ enumeration limited to N <= " +
                                             std::to_string(opts.enum_limit) + " (got " +
                                             std::to_string(n) + ")");
    }
    std::vector<std::uint32_t> universe(n);
    std::iota(universe.begin(), universe.end(), 0u);
    detail::EnumerationOptions eo;
    eo.cap_limit = 0.5 + opts.cap_tol;
    eo.with_complement = true;
    eo.tie_tol = opts.tie_tol;
    eo.threads = opts.threads;
    const detail::AdjacencyView view{n, gt.offsets(), gt.adjacency(), gt.adjacency_weights(), g.pi()};
    const auto found = detail::min_ratio_subset(view, universe, eo);
    if (!found.found) throw Error(ErrorKind::internal, "no feasible subset in all-feasible enumeration");
    r.argmin = VertexSet::from_mask(n, found.mask);
    r.evaluated = found.evaluated;
  }
  r.flow = reduced_flow(gt, r.argmin);
  r.capacity = capacity_of(r.argmin);
  r.phi_tilde = r.flow / r.capacity;
  r.degenerate = r.flow == 0.0;
  return r;
}

double generalized_bound(double phi_tilde, double constriction) {
  if (!(constriction > 0.0)) {
    throw Error(ErrorKind::degenerate_reduction, "constriction c must be positive");
  }
  return phi_tilde * phi_tilde / (2.0 * constriction);
}

BestReduction evaluate_reductions(const WeightedGraph& g, const VertexSet& s,
                                  std::span<const ReductionStrategy> strategies, PhiTildeDomain domain,
                                  const ReducedOptions& opts) {
  if (strategies.empty()) throw Error(ErrorKind::invalid_model, "no reduction strategies given");
  BestReduction out;
  bool any = false;
  for (const auto strategy : strategies) {
    StrategyOutcome o;
    o.strategy = strategy;
    try {
      o.graph = reduce(g, s, strategy);
      o.constriction = o.graph->constriction();
      o.cheeger = reduced_cheeger(*o.graph, s, domain, opts);
      o.bound = generalized_bound(o.cheeger->phi_tilde, o.constriction);
      if (o.cheeger->degenerate) {
        o.status = StrategyOutcome::Status::degenerate;
        o.note = "zero reduced flow on " + std::string(to_string(domain));
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::size_limit) {
        o.status = StrategyOutcome::Status::skipped;
      } else if (e.kind() == ErrorKind::degenerate_reduction) {
        o.status = StrategyOutcome::Status::degenerate;
      } else {
        throw;
      }
      o.note = e.what();
      o.bound = 0.0;
    }
    out.outcomes.push_back(std::move(o));
    const auto& last = out.outcomes.back();
    if (last.status == StrategyOutcome::Status::ok && (!any || last.bound > out.bound)) {
      out.best = out.outcomes.size() - 1;
      out.bound = last.bound;
      any = true;
    }
  }
  out.found = any;
  return out;
}

BestReduction best_reduction(const WeightedGraph& g, const VertexSet& s,
                             std::span<const ReductionStrategy> strategies, PhiTildeDomain domain,
                             const ReducedOptions& opts) {
  auto out = evaluate_reductions(g, s, strategies, domain, opts);
  if (!out.found) throw Error(ErrorKind::degenerate_reduction, "every reduction strategy was degenerate or skipped");
  return out;
}

void write_reduction(std::ostream& os, const StrategyOutcome& o) {
  char buf[160];
  const std::size_t edges = o.graph ? o.graph->edges().size() : 0;
  const double phi = o.cheeger ? o.cheeger->phi_tilde : 0.0;
  std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g,%.17g,%s\n", to_string(o.strategy), edges,
                o.constriction, phi, o.bound,
                o.status == StrategyOutcome::Status::ok ? "false" : "true");
  os << buf;
}

}  // namespace cheeger_gap
