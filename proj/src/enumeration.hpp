#pragma once

// Exhaustive minimum of flow/capacity over vertex subsets, shared by the exact
// Cheeger constant and the reduced Cheeger value. Subsets of a universe of at
// most 63 vertices are visited in Gray-code order with O(degree) incremental
// flow updates. The universe is split into a fixed number of shards (fixed
// leading bits) independent of the thread count, and shard winners are
// reduced in shard order, so the result is deterministic.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace cheeger_gap::detail {

/// Off-diagonal adjacency (both directions) plus vertex capacities.
struct AdjacencyView {
  std::size_t n = 0;
  std::span<const std::uint32_t> offsets;  // n + 1
  std::span<const std::uint32_t> neighbors;
  std::span<const double> weights;
  std::span<const double> pi;
};

struct EnumerationOptions {
  /// Candidates with capacity above this are infeasible.
  double cap_limit = std::numeric_limits<double>::infinity();
  /// Fix universe[0] outside T and also consider the complement V \ T;
  /// requires the universe to be every vertex.
  bool with_complement = false;
  double tie_tol = 1e-12;
  std::size_t threads = 1;
};

struct EnumerationResult {
  bool found = false;
  std::uint64_t mask = 0;  // bit k selects universe[k]
  double flow = 0.0;       // incremental estimate; callers recompute exactly
  double capacity = 0.0;
  std::uint64_t evaluated = 0;
  std::uint64_t feasible = 0;
};

EnumerationResult min_ratio_subset(const AdjacencyView& g, std::span<const std::uint32_t> universe,
                                   const EnumerationOptions& opts);

/// -1, 0, 1 comparing F1/C1 with F2/C2 by cross multiplication, ties within
/// the relative tolerance.
int compare_ratio(double f1, double c1, double f2, double c2, double tie_tol);

/// Lexicographic order on the ascending position lists encoded by masks.
bool mask_lex_less(std::uint64_t a, std::uint64_t b);

}  // namespace cheeger_gap::detail
