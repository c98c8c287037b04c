#include "cheeger_gap/cheeger.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "cheeger_gap/error.hpp"
#include "enumeration.hpp"

namespace cheeger_gap {

const char* to_string(CheegerMethod method) {
  return method == CheegerMethod::exact ? "exact" : "candidate";
}

Cut flow_capacity(const WeightedGraph& g, const VertexSet& s) {
  if (s.universe() != g.size()) throw Error(ErrorKind::degenerate_cut, "subset universe does not match graph");
  if (!s.proper()) throw Error(ErrorKind::degenerate_cut, "cut side must be a proper nonempty subset");
  Cut cut;
  cut.subset = s;
  for (auto v : s.indices()) {
    cut.capacity += g.pi()[v];
    const auto nb = g.neighbors(v);
    const auto wt = g.neighbor_weights(v);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      if (!s.contains(nb[k])) cut.flow += wt[k];
    }
  }
  cut.ratio = cut.flow / cut.capacity;
  return cut;
}

namespace {

detail::AdjacencyView adjacency_of(const WeightedGraph& g, std::vector<std::uint32_t>& offsets,
                                   std::vector<std::uint32_t>& nbrs, std::vector<double>& wts) {
  const auto n = g.size();
  offsets.assign(n + 1, 0);
  nbrs.clear();
  wts.clear();
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto nb = g.neighbors(i);
    const auto wt = g.neighbor_weights(i);
    nbrs.insert(nbrs.end(), nb.begin(), nb.end());
    wts.insert(wts.end(), wt.begin(), wt.end());
    offsets[i + 1] = static_cast<std::uint32_t>(nbrs.size());
  }
  return {n, offsets, nbrs, wts, g.pi()};
}

}  // namespace

CheegerResult cheeger_exact(const WeightedGraph& g, const CheegerOptions& opts) {
  const auto n = g.size();
  if (n > opts.enum_limit || n > 63) {
    throw Error(ErrorKind::size_limit, "exact Cheeger enumeration limited to N <= " +
                                           std::to_string(opts.enum_limit) + " (got " +
                                           std::to_string(n) + "); use a candidate cut family");
  }
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> nbrs;
  std::vector<double> wts;
  const auto view = adjacency_of(g, offsets, nbrs, wts);
  std::vector<std::uint32_t> universe(n);
  std::iota(universe.begin(), universe.end(), 0u);

  detail::EnumerationOptions eo;
  eo.cap_limit = 0.5 + opts.cap_tol;
  eo.with_complement = true;
  eo.tie_tol = opts.tie_tol;
  eo.threads = opts.threads;
  const auto found = detail::min_ratio_subset(view, universe, eo);
  if (!found.found) throw Error(ErrorKind::internal, "no feasible cut in exact enumeration");

  CheegerResult r;
  r.method = CheegerMethod::exact;
  r.argmin = flow_capacity(g, VertexSet::from_mask(n, found.mask));
  r.phi = r.argmin.ratio;
  r.subsets_evaluated = found.evaluated;
  r.feasible_subsets = found.feasible;
  return r;
}

CutFamily hypercube_coordinate_cuts(std::size_t spins) {
  return {"coordinate", [spins](std::size_t n, const CutVisitor& visit) {
            if (n != (std::size_t{1} << spins)) {
              throw Error(ErrorKind::invalid_model, "coordinate cuts need N = 2^n");
            }
            for (std::size_t k = 0; k < spins; ++k) {
              VertexSet s(n);
              for (std::uint32_t x = 0; x < n; ++x) {
                if ((x >> k) & 1u) s.insert(x);
              }
              visit(s);
            }
          }};
}

CutFamily hamming_level_cuts(std::size_t spins) {
  return {"hamming", [spins](std::size_t n, const CutVisitor& visit) {
            if (n != (std::size_t{1} << spins)) {
              throw Error(ErrorKind::invalid_model, "Hamming level cuts need N = 2^n");
            }
            for (std::size_t level = 0; level < spins; ++level) {
              VertexSet s(n);
              for (std::uint32_t x = 0; x < n; ++x) {
                if (static_cast<std::size_t>(std::popcount(x)) <= level) s.insert(x);
              }
              visit(s);
            }
          }};
}

CutFamily ring_arc_cuts() {
  return {"arc", [](std::size_t n, const CutVisitor& visit) {
            for (std::size_t start = 0; start < n; ++start) {
              VertexSet s(n);
              for (std::size_t len = 1; len < n; ++len) {
                s.insert(static_cast<std::uint32_t>((start + len - 1) % n));
                visit(s);
              }
            }
          }};
}

CutFamily combine(std::string name, std::vector<CutFamily> parts) {
  return {std::move(name), [parts = std::move(parts)](std::size_t n, const CutVisitor& visit) {
            for (const auto& p : parts) p.generate(n, visit);
          }};
}

CheegerResult cheeger_candidate(const WeightedGraph& g, const CutFamily& family,
                                const CheegerOptions& opts) {
  CheegerResult r;
  r.method = CheegerMethod::candidate_family;
  r.family = family.name;
  bool found = false;
  auto consider = [&](const Cut& c) {
    ++r.subsets_evaluated;
    if (c.capacity > 0.5 + opts.cap_tol) return;
    ++r.feasible_subsets;
    if (!found) {
      r.argmin = c;
      found = true;
      return;
    }
    const int cmp = detail::compare_ratio(c.flow, c.capacity, r.argmin.flow, r.argmin.capacity, opts.tie_tol);
    if (cmp < 0 || (cmp == 0 && c.subset.lex_less(r.argmin.subset))) r.argmin = c;
  };
  family.generate(g.size(), [&](const VertexSet& s) {
    if (!s.proper()) return;
    const auto c = flow_capacity(g, s);
    consider(c);
    const auto comp = s.complement();
    Cut cc{comp, c.flow, 0.0, 0.0};
    for (auto v : comp.indices()) cc.capacity += g.pi()[v];
    cc.ratio = cc.flow / cc.capacity;
    consider(cc);
  });
  if (!found) throw Error(ErrorKind::empty_family, "cut family '" + family.name + "' produced no feasible cut");
  r.phi = r.argmin.ratio;
  return r;
}

ClassicBounds classic_bounds(double phi, double lambda0) {
  return {2.0 * phi, phi * phi / (2.0 * std::abs(lambda0))};
}

double variational_upper(const WeightedGraph& g, const VertexSet& a) {
  if (a.universe() != g.size() || !a.proper()) {
    throw Error(ErrorKind::degenerate_cut, "variational partition must be a proper nonempty subset");
  }
  double ca = 0.0;
  double cb = 0.0;
  for (std::uint32_t i = 0; i < g.size(); ++i) (a.contains(i) ? ca : cb) += g.pi()[i];
  const double pa = 1.0 / ca;
  const double pb = -1.0 / cb;
  double num = 0.0;
  for (const auto& e : g.edges()) {
    const double d = (a.contains(e.u) ? pa : pb) - (a.contains(e.v) ? pa : pb);
    num += e.weight * d * d;
  }
  double den = 0.0;
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    const double p = a.contains(i) ? pa : pb;
    den += g.pi()[i] * p * p;
  }
  return num / den;
}

void write_cut(std::ostream& os, const Cut& cut) {
  char buf[128];
  std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g", cut.flow, cut.capacity, cut.ratio);
  os << '"' << cut.subset.to_string() << '"' << buf << '\n';
}

}  // namespace cheeger_gap
