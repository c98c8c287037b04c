#include "cheeger_gap/random_instance.hpp"

#include <numeric>
#include <random>
#include <vector>

#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

namespace {

bool connected(std::size_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::size_t components = n;
  for (const auto& [u, v] : edges) {
    const auto a = root(u);
    const auto b = root(v);
    if (a != b) {
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

}  // namespace

StoquasticMatrix random_stoquastic(std::uint64_t seed, std::uint64_t index, const RandomInstanceOptions& opts) {
  if (opts.min_dim < 2 || opts.max_dim < opts.min_dim) {
    throw Error(ErrorKind::invalid_model, "random instance dimension range is empty");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<std::size_t> dim_dist(opts.min_dim, opts.max_dim);
  std::bernoulli_distribution edge(opts.edge_probability);
  std::uniform_real_distribution<double> offdiag(opts.offdiag_low, opts.offdiag_high);
  std::uniform_real_distribution<double> diag(opts.diag_low, opts.diag_high);

  const auto n = dim_dist(rng);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> support;
  do {
    support.clear();
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        if (edge(rng)) support.emplace_back(i, j);
      }
    }
  } while (!connected(n, support));

  std::vector<Triplet> entries;
  for (std::uint32_t i = 0; i < n; ++i) entries.push_back({i, i, diag(rng)});
  for (const auto& [i, j] : support) entries.push_back({i, j, offdiag(rng)});
  return StoquasticMatrix::from_triplets(n, std::move(entries));
}

}  // namespace cheeger_gap
