#include "cheeger_gap/pipeline.hpp"


#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

const DomainOutcome* Analysis::find(PhiTildeDomain d) const {
  for (const auto& o : domains) {
    if (o.domain == d) return &o;
  }
  return nullptr;
}

std::optional<CutFamily> candidate_family(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::ring:
      return ring_arc_cuts();
    case ModelKind::transverse_field:
    case ModelKind::ising_chain:
      return combine("coordinate+hamming",
                     {hypercube_coordinate_cuts(spec.size), hamming_level_cuts(spec.size)});
    case ModelKind::file:
      break;
  }
  return std::nullopt;
}

Analysis analyze(const StoquasticMatrix& h, const std::optional<CutFamily>& family,
                 const PipelineOptions& opts) {
  Analysis a;
  a.dim = h.dim();
  std::vector<double> psi0;
  if (a.dim <= opts.gap_limit) {
    a.pair = low_spectrum(h, opts.spectra);
    a.lambda0 = a.pair->lambda0;
    a.gap = spectral_gap(*a.pair);
    psi0 = a.pair->psi0;
  } else {
    auto gs = ground_state(h, opts.spectra);
    a.lambda0 = gs.lambda0;
    psi0 = std::move(gs.psi0);
  }
  a.graph = std::make_shared<const WeightedGraph>(graph_from(h, a.lambda0, psi0, opts.graph_tol));

  if (a.dim <= opts.cheeger.enum_limit) {
    a.cheeger = cheeger_exact(*a.graph, opts.cheeger);
  } else if (family) {
    a.cheeger = cheeger_candidate(*a.graph, *family, opts.cheeger);
  } else {
    throw Error(ErrorKind::size_limit, "N = " + std::to_string(a.dim) +
                                           " exceeds the enumeration limit and no candidate cut family applies");
  }
  a.classic = classic_bounds(a.cheeger.phi, a.lambda0);

  for (const auto d : opts.domains) {
    a.domains.push_back({d, evaluate_reductions(*a.graph, a.cheeger.argmin.subset, opts.strategies, d, opts.reduced)});
  }
  return a;
}

}  // namespace cheeger_gap
