#pragma once

// Executable form of the max-flow argument behind the generalised lower
// bound: the left-eigenvector support V+, the Rayleigh-chain lower bound, and
// the source/sink network
//   s -> x_i           capacity (1 + Phi~) pi_i        (rule 1)
//   x_i -> y_j         capacity w_ij for (i,j) in E~   (rule 2)
//   x_i -> y_i         capacity pi_i + w_ii            (rule 3)
//   y_j -> t           capacity pi_j                   (rule 4)
// whose minimum cut should equal (1 + Phi~) C_X.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cheeger_gap/graph.hpp"
#include "cheeger_gap/reduced.hpp"
#include "cheeger_gap/report.hpp"
#include "cheeger_gap/spectra.hpp"
#include "cheeger_gap/vertex_set.hpp"

namespace cheeger_gap {

struct PositiveSupport {
  std::vector<double> e;     // e_i = beta_i alpha_i
  VertexSet vplus;           // {i : e_i > zero_tol}
  std::vector<double> ehat;  // e_i / pi_i on V+, 0 elsewhere
  double capacity = 0.0;     // C_{V+} <= 1/2
  double sum_e = 0.0;        // should vanish (orthogonality)
  bool flipped = false;      // psi1's global sign was reversed
};

/// zero_tol = 1e-12 * max |e_i|; borderline components go to the complement.
/// Throws degeneracy error for a near-degenerate pair and support error when
/// V+ comes out empty or full.
PositiveSupport positive_support(const SpectralPair& sp);

/// sum_{i<j} w_ij (ehat_i - ehat_j)^2 / sum_{i in V+} pi_i ehat_i^2, a lower
/// bound on the gap. Throws support error on a zero denominator.
double rayleigh_chain_bound(const WeightedGraph& g, const PositiveSupport& ps);

struct Arc {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  double capacity = 0.0;
  int rule = 0;  // 1..4
};

struct NetworkOptions {
  /// Energies (w_ij, Phi~) are divided by this before building capacities;
  /// 1 keeps the Hamiltonian's units.
  double energy_unit = 1.0;
};

/// Nodes: 0 = source, 1 = sink, then X (one per support vertex, ascending),
/// then Y (one per graph vertex).
class FlowNetwork {
 public:
  static constexpr std::uint32_t source = 0;
  static constexpr std::uint32_t sink = 1;

  /// A plain network on `nodes` nodes (0 = source, 1 = sink) with no layer
  /// structure; throws on out-of-range endpoints or negative capacities.
  static FlowNetwork from_arcs(std::size_t nodes, std::vector<Arc> arcs);

  std::size_t node_count() const noexcept { return node_count_; }
  std::span<const Arc> arcs() const noexcept { return arcs_; }
  std::span<const std::uint32_t> x_labels() const noexcept { return x_labels_; }
  std::size_t graph_size() const noexcept { return graph_size_; }
  std::uint32_t x_node(std::size_t k) const noexcept { return static_cast<std::uint32_t>(2 + k); }
  std::uint32_t y_node(std::uint32_t j) const noexcept {
    return static_cast<std::uint32_t>(2 + x_labels_.size() + j);
  }
  double phi_tilde() const noexcept { return phi_tilde_; }
  double energy_unit() const noexcept { return energy_unit_; }
  /// (1 + Phi~) C_X in network units.
  double source_capacity() const noexcept { return source_capacity_; }
  std::size_t arcs_by_rule(int rule) const;

 private:
  friend FlowNetwork build_network(const ReducedGraph&, const VertexSet&, double, const NetworkOptions&);

  std::vector<Arc> arcs_;
  std::size_t node_count_ = 2;
  std::vector<std::uint32_t> x_labels_;
  std::size_t graph_size_ = 0;
  double phi_tilde_ = 0.0;
  double energy_unit_ = 1.0;
  double source_capacity_ = 0.0;
};

/// Rules 1-4 over the support set (any nonempty subset of V; V+ in the proof,
/// the Cheeger-cut side in the main construction). Rule-3 arcs are present
/// even when w_ii = 0.
FlowNetwork build_network(const ReducedGraph& gt, const VertexSet& support, double phi_tilde,
                          const NetworkOptions& opts = {});

struct FlowResult {
  double value = 0.0;
  std::int64_t integer_value = 0;
  double scale = 0.0;                  // capacities were multiplied by this
  std::vector<double> arc_flow;        // descaled, per arc of the network
  std::vector<std::int64_t> arc_flow_int;
  std::vector<char> source_side;       // min-cut certificate: reachable in residual graph
  std::size_t augmentations = 0;
};

inline constexpr double kFlowScale = 1073741824.0;  // 2^30

/// Rounds capacity * scale to the nearest integer and runs shortest
/// augmenting paths (Edmonds-Karp). The scale is halved while the total
/// capacity would overflow; overflow error once the resolution drops below
/// 1e-6 of the largest capacity.
FlowResult max_flow(const FlowNetwork& net, double scale = kFlowScale);

/// llround(capacity * scale) per arc.
std::vector<std::int64_t> integer_capacities(const FlowNetwork& net, double scale);

struct Theorem1Options {
  double flow_rel_tol = 1e-6;
  double abs_tol = 1e-9;
  /// Exact gap for the end-to-end inequality; omitted when not computable.
  std::optional<double> gap;
  /// ehat over V; when present the Cauchy-Schwarz chain factor is logged.
  std::optional<std::vector<double>> ehat;
  NetworkOptions network;
};

struct Theorem1Report {
  CheckReport checks;
  FlowResult flow;
  double expected_value = 0.0;  // (1 + Phi~) C_support in network units
  double bound = 0.0;           // Phi~^2 / (2c)
  std::optional<double> chain_factor;
};

/// (a) max flow = (1 + Phi~) C_support within flow_rel_tol (relative);
/// (b) every source arc saturated: sum_j h_{x j} = (1 + Phi~) pi_x;
/// (c) sink side: sum_x h_{x y} <= pi_y;
/// (d) gap >= Phi~^2 / (2c) when the gap is supplied.
Theorem1Report verify_theorem1(const ReducedGraph& gt, const VertexSet& support, double phi_tilde,
                               const Theorem1Options& opts = {});

/// "node id layer label" lines, then "arc from to capacity flow" lines.
void export_network(std::ostream& os, const FlowNetwork& net, const FlowResult* flow = nullptr);

}  // namespace cheeger_gap
