#pragma once

// Flows, capacities and the Cheeger constant
//   Phi = min_{S : C_S <= 1/2} F_S / C_S,  F_S = sum_{i in S, j notin S} w_ij,
//   C_S = sum_{i in S} pi_i,
// together with the classic bounds 2 Phi >= gap >= Phi^2 / (2 |lambda0|).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

#include "cheeger_gap/graph.hpp"
#include "cheeger_gap/vertex_set.hpp"

namespace cheeger_gap {

struct Cut {
  VertexSet subset;
  double flow = 0.0;
  double capacity = 0.0;
  double ratio = 0.0;
};

enum class CheegerMethod { exact, candidate_family };

const char* to_string(CheegerMethod method);

struct CheegerResult {
  double phi = 0.0;
  Cut argmin;
  CheegerMethod method = CheegerMethod::exact;
  std::string family;  // candidate family name; empty for exact
  std::uint64_t subsets_evaluated = 0;
  std::uint64_t feasible_subsets = 0;
};

struct CheegerOptions {
  std::size_t enum_limit = 24;
  double cap_tol = 1e-12;
  double tie_tol = 1e-12;
  std::size_t threads = 1;
};

/// Exact sums; self-loops never cross. Throws degenerate-cut error unless S is
/// a proper nonempty subset.
Cut flow_capacity(const WeightedGraph& g, const VertexSet& s);

/// Exhaustive minimum over every S with C_S <= 1/2 + cap_tol. Ties are broken
/// towards the lexicographically smallest subset. Throws size-limit error when
/// N > enum_limit.
CheegerResult cheeger_exact(const WeightedGraph& g, const CheegerOptions& opts = {});

/// A cut family calls `visit` once per candidate subset S; both S and its
/// complement are scored when feasible.
using CutVisitor = std::function<void(const VertexSet&)>;
struct CutFamily {
  std::string name;
  std::function<void(std::size_t n, const CutVisitor& visit)> generate;
};

/// Subsets with bit k fixed to 1, for each spin k.
CutFamily hypercube_coordinate_cuts(std::size_t spins);
/// {x : popcount(x) <= k} for k = 0 .. n-1.
CutFamily hamming_level_cuts(std::size_t spins);
/// Contiguous arcs {s, s+1, ..., s+len-1 mod N}.
CutFamily ring_arc_cuts();
/// Concatenation of several families.
CutFamily combine(std::string name, std::vector<CutFamily> parts);

/// Minimum ratio over the family; an upper estimate of Phi. Throws
/// empty-family error when no feasible cut is produced.
CheegerResult cheeger_candidate(const WeightedGraph& g, const CutFamily& family,
                                const CheegerOptions& opts = {});

struct ClassicBounds {
  double upper = 0.0;  // 2 Phi
  double lower = 0.0;  // Phi^2 / (2 |lambda0|)
};

ClassicBounds classic_bounds(double phi, double lambda0);

/// Rayleigh quotient of psi = 1/C_A on A, -1/C_B on the complement; equals
/// F (1/C_A + 1/C_B). Throws degenerate-cut error unless A is proper.
double variational_upper(const WeightedGraph& g, const VertexSet& a);

/// CSV cut report line: "subset,flow,capacity,ratio".
void write_cut(std::ostream& os, const Cut& cut);

}  // namespace cheeger_gap
