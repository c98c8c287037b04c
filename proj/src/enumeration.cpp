#include "enumeration.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "cheeger_gap/error.hpp"
#include "cheeger_gap/parallel.hpp"

namespace cheeger_gap::detail {

int compare_ratio(double f1, double c1, double f2, double c2, double tie_tol) {
  const double a = f1 * c2;
  const double b = f2 * c1;
  const double scale = std::max(std::abs(a), std::abs(b));
  if (a < b - tie_tol * scale) return -1;
  if (a > b + tie_tol * scale) return 1;
  return 0;
}

bool mask_lex_less(std::uint64_t a, std::uint64_t b) {
  const auto diff = a ^ b;
  if (diff == 0) return false;
  const int bit = std::countr_zero(diff);
  const bool a_has = (a >> bit) & 1u;
  const auto above = bit == 63 ? std::uint64_t{0} : (~std::uint64_t{0} << (bit + 1));
  const auto without = a_has ? b : a;
  const bool tail = (without & above) != 0;
  return a_has ? tail : !tail;
}

namespace {

struct Candidate {
  bool found = false;
  std::uint64_t mask = 0;
  double flow = 0.0;
  double capacity = 0.0;
};

bool better(const Candidate& c, const Candidate& best, double tie_tol) {
  if (!best.found) return true;
  const int cmp = compare_ratio(c.flow, c.capacity, best.flow, best.capacity, tie_tol);
  if (cmp != 0) return cmp < 0;
  return mask_lex_less(c.mask, best.mask);
}

struct ShardOutcome {
  Candidate best;
  std::uint64_t evaluated = 0;
  std::uint64_t feasible = 0;
};

}  // namespace

EnumerationResult min_ratio_subset(const AdjacencyView& g, std::span<const std::uint32_t> universe,
                                   const EnumerationOptions& opts) {
  const std::size_t m = universe.size();
  if (m == 0 || m > 63) throw Error(ErrorKind::size_limit, "subset enumeration needs 1..63 vertices");
  if (opts.with_complement && m != g.n) {
    throw Error(ErrorKind::internal, "complement enumeration requires the full vertex set");
  }

  double total_pi = 0.0;
  for (double p : g.pi) total_pi += p;
  const std::uint64_t full = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);

  // Free positions: all, or all but position 0 when complements are folded in.
  const std::size_t first_free = opts.with_complement ? 1 : 0;
  const std::size_t free_bits = m - first_free;
  const std::size_t shard_bits = free_bits >= 12 ? 6 : 0;
  const std::size_t inner_bits = free_bits - shard_bits;
  const std::size_t shards = std::size_t{1} << shard_bits;

  std::vector<ShardOutcome> outcomes(shards);

  auto run_shard = [&](std::size_t shard) {
    ShardOutcome out;
    std::vector<char> in(g.n, 0);
    std::uint64_t mask = static_cast<std::uint64_t>(shard) << (first_free + inner_bits);
    double flow = 0.0;
    double cap = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if ((mask >> k) & 1u) {
        in[universe[k]] = 1;
        cap += g.pi[universe[k]];
      }
    }
    for (std::size_t k = 0; k < m; ++k) {
      if (!((mask >> k) & 1u)) continue;
      const auto v = universe[k];
      for (auto e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        if (!in[g.neighbors[e]]) flow += g.weights[e];
      }
    }

    auto consider = [&] {
      if (mask == 0) return;
      ++out.evaluated;
      if (cap <= opts.cap_limit) {
        ++out.feasible;
        const Candidate c{true, mask, flow, cap};
        if (better(c, out.best, opts.tie_tol)) out.best = c;
      }
      if (opts.with_complement) {
        const double ccap = total_pi - cap;
        ++out.evaluated;
        if (ccap <= opts.cap_limit) {
          ++out.feasible;
          const Candidate c{true, full ^ mask, flow, ccap};
          if (better(c, out.best, opts.tie_tol)) out.best = c;
        }
      }
    };

    consider();
    const std::uint64_t steps = std::uint64_t{1} << inner_bits;
    for (std::uint64_t step = 1; step < steps; ++step) {
      const std::size_t pos = first_free + static_cast<std::size_t>(std::countr_zero(step));
      const auto v = universe[pos];
      const bool entering = !in[v];
      double inside = 0.0;
      double outside = 0.0;
      for (auto e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
        (in[g.neighbors[e]] ? inside : outside) += g.weights[e];
      }
      if (entering) {
        flow += outside - inside;
        cap += g.pi[v];
        in[v] = 1;
      } else {
        flow += inside - outside;
        cap -= g.pi[v];
        in[v] = 0;
      }
      mask ^= std::uint64_t{1} << pos;
      consider();
    }
    outcomes[shard] = out;
  };

  parallel_for(shards, opts.threads, run_shard);

  EnumerationResult result;
  Candidate best;
  for (const auto& o : outcomes) {
    result.evaluated += o.evaluated;
    result.feasible += o.feasible;
    if (o.best.found && better(o.best, best, opts.tie_tol)) best = o.best;
  }
  result.found = best.found;
  result.mask = best.mask;
  result.flow = best.flow;
  result.capacity = best.capacity;
  return result;
}

}  // namespace cheeger_gap::detail
