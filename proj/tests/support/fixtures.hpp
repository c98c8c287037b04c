#pragma once

#include "cheeger_gap/graph.hpp"
#include "cheeger_gap/model.hpp"
#include "cheeger_gap/spectra.hpp"

namespace fixture {

inline cheeger_gap::WeightedGraph graph_of(const cheeger_gap::StoquasticMatrix& h) {
  const auto gs = cheeger_gap::ground_state(h);
  return cheeger_gap::graph_from(h, gs.lambda0, gs.psi0);
}

}  // namespace fixture
