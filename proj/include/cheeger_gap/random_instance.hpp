#pragma once

// Seeded random stoquastic matrices for the property suites.

#include <cstddef>
#include <cstdint>

#include "cheeger_gap/model.hpp"

namespace cheeger_gap {

struct RandomInstanceOptions {
  std::size_t min_dim = 4;
  std::size_t max_dim = 12;
  double edge_probability = 0.5;
  double offdiag_low = -1.0;
  double offdiag_high = -0.1;
  double diag_low = -1.0;
  double diag_high = 0.0;
};

/// Instance `index` of the stream selected by `seed`: N uniform in
/// [min_dim, max_dim], Erdos-Renyi support redrawn until connected,
/// off-diagonal and diagonal values uniform in their ranges. The same
/// (seed, index) always yields the same matrix.
StoquasticMatrix random_stoquastic(std::uint64_t seed, std::uint64_t index,
                                   const RandomInstanceOptions& opts = {});

}  // namespace cheeger_gap
