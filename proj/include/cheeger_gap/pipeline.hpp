#pragma once

// End-to-end bound computation for one Hamiltonian: spectrum, dressed graph,
// Cheeger cut, classic bounds and the generalised bound for each reduction
// strategy and Phi~ domain.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "cheeger_gap/cheeger.hpp"
#include "cheeger_gap/graph.hpp"
#include "cheeger_gap/model.hpp"
#include "cheeger_gap/reduced.hpp"
#include "cheeger_gap/spectra.hpp"

namespace cheeger_gap {

struct PipelineOptions {
  SpectraOptions spectra;
  CheegerOptions cheeger;
  ReducedOptions reduced;
  std::vector<ReductionStrategy> strategies{ReductionStrategy::cut_only, ReductionStrategy::cut_plus_paths,
                                            ReductionStrategy::full_graph};
  std::vector<PhiTildeDomain> domains{PhiTildeDomain::subsets_of_s, PhiTildeDomain::all_feasible};
  /// lambda1 (and so the exact gap) is computed only up to this dimension.
  std::size_t gap_limit = 4096;
  double graph_tol = 1e-9;
};

struct DomainOutcome {
  PhiTildeDomain domain = PhiTildeDomain::all_feasible;
  BestReduction reductions;
};

struct Analysis {
  std::size_t dim = 0;
  double lambda0 = 0.0;
  std::optional<SpectralPair> pair;  // present when dim <= gap_limit
  std::optional<double> gap;
  /// Shared so that the reduced graphs' parent pointers stay valid when the
  /// analysis is moved.
  std::shared_ptr<const WeightedGraph> graph;
  CheegerResult cheeger;
  ClassicBounds classic;
  std::vector<DomainOutcome> domains;  // in PipelineOptions::domains order

  const DomainOutcome* find(PhiTildeDomain d) const;
};

/// Candidate cuts used when N exceeds the enumeration limit: arcs for rings,
/// coordinate and Hamming-level cuts for the spin models; nullopt for files.
std::optional<CutFamily> candidate_family(const ModelSpec& spec);

/// The Cheeger cut S comes from cheeger_exact when N <= enum_limit, otherwise
/// from `family` (size-limit error when no family is given).
Analysis analyze(const StoquasticMatrix& h, const std::optional<CutFamily>& family,
                 const PipelineOptions& opts = {});

}  // namespace cheeger_gap
