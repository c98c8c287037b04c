#include "cheeger_gap/flownet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <queue>
#include <sstream>

#include "cheeger_gap/error.hpp"

namespace cheeger_gap {

PositiveSupport positive_support(const SpectralPair& sp) {
  if (sp.near_degenerate) {
    throw Error(ErrorKind::degeneracy, "first excited level is (nearly) degenerate with the ground state");
  }
  const auto n = sp.psi0.size();
  PositiveSupport ps;
  ps.e.resize(n);
  double emax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ps.e[i] = sp.psi1[i] * sp.psi0[i];
    emax = std::max(emax, std::abs(ps.e[i]));
    ps.sum_e += ps.e[i];
  }
  const double zero_tol = 1e-12 * emax;

  auto capacity_of_positive = [&](double sign) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (sign * ps.e[i] > zero_tol) c += sp.psi0[i] * sp.psi0[i];
    }
    return c;
  };
  if (capacity_of_positive(1.0) > 0.5) {
    ps.flipped = true;
    for (auto& x : ps.e) x = -x;
    ps.sum_e = -ps.sum_e;
  }

  ps.vplus = VertexSet(n);
  ps.ehat.assign(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ps.e[i] > zero_tol) {
      const double pi = sp.psi0[i] * sp.psi0[i];
      ps.vplus.insert(i);
      ps.ehat[i] = ps.e[i] / pi;
      ps.capacity += pi;
    }
  }
  if (!ps.vplus.proper()) {
    throw Error(ErrorKind::support, "positive support V+ is empty or the whole vertex set");
  }
  return ps;
}

double rayleigh_chain_bound(const WeightedGraph& g, const PositiveSupport& ps) {
  double num = 0.0;
  for (const auto& e : g.edges()) {
    const double d = ps.ehat[e.u] - ps.ehat[e.v];
    num += e.weight * d * d;
  }
  double den = 0.0;
  for (const auto v : ps.vplus.indices()) den += g.pi()[v] * ps.ehat[v] * ps.ehat[v];
  if (!(den > 0.0)) throw Error(ErrorKind::support, "Rayleigh-chain denominator vanishes");
  return num / den;
}

std::size_t FlowNetwork::arcs_by_rule(int rule) const {
  return static_cast<std::size_t>(
      std::count_if(arcs_.begin(), arcs_.end(), [rule](const Arc& a) { return a.rule == rule; }));
}

FlowNetwork FlowNetwork::from_arcs(std::size_t nodes, std::vector<Arc> arcs) {
  if (nodes < 2) throw Error(ErrorKind::invalid_model, "a network needs a source and a sink");
  for (const auto& a : arcs) {
    if (a.from >= nodes || a.to >= nodes || a.from == a.to) {
      throw Error(ErrorKind::invalid_model, "arc endpoint out of range or self-arc");
    }
    if (!(a.capacity >= 0.0) || !std::isfinite(a.capacity)) {
      throw Error(ErrorKind::invalid_model, "arc capacities must be finite and non-negative");
    }
  }
  FlowNetwork net;
  net.node_count_ = nodes;
  net.arcs_ = std::move(arcs);
  return net;
}

FlowNetwork build_network(const ReducedGraph& gt, const VertexSet& support, double phi_tilde,
                          const NetworkOptions& opts) {
  const auto& g = gt.parent();
  const auto n = g.size();
  if (support.universe() != n || support.empty()) {
    throw Error(ErrorKind::support, "network support must be a nonempty vertex subset");
  }
  if (!(phi_tilde >= 0.0)) throw Error(ErrorKind::invalid_model, "Phi~ must be non-negative");
  if (!(opts.energy_unit > 0.0)) throw Error(ErrorKind::invalid_model, "energy unit must be positive");

  FlowNetwork net;
  net.graph_size_ = n;
  net.x_labels_ = support.indices();
  net.node_count_ = 2 + net.x_labels_.size() + n;
  net.phi_tilde_ = phi_tilde;
  net.energy_unit_ = opts.energy_unit;
  const double phi = phi_tilde / opts.energy_unit;

  for (std::size_t k = 0; k < net.x_labels_.size(); ++k) {
    const auto i = net.x_labels_[k];
    const double cap = (1.0 + phi) * g.pi()[i];
    net.arcs_.push_back({FlowNetwork::source, net.x_node(k), cap, 1});
    net.source_capacity_ += cap;
  }
  for (std::size_t k = 0; k < net.x_labels_.size(); ++k) {
    const auto i = net.x_labels_[k];
    const auto nb = gt.neighbors(i);
    const auto wt = gt.neighbor_weights(i);
    for (std::size_t m = 0; m < nb.size(); ++m) {
      net.arcs_.push_back({net.x_node(k), net.y_node(nb[m]), wt[m] / opts.energy_unit, 2});
    }
  }
  for (std::size_t k = 0; k < net.x_labels_.size(); ++k) {
    const auto i = net.x_labels_[k];
    net.arcs_.push_back({net.x_node(k), net.y_node(i), g.pi()[i] + g.self_loop(i) / opts.energy_unit, 3});
  }
  for (std::uint32_t j = 0; j < n; ++j) {
    net.arcs_.push_back({net.y_node(j), FlowNetwork::sink, g.pi()[j], 4});
  }
  return net;
}

std::vector<std::int64_t> integer_capacities(const FlowNetwork& net, double scale) {
  std::vector<std::int64_t> caps;
  caps.reserve(net.arcs().size());
  for (const auto& a : net.arcs()) caps.push_back(std::llround(a.capacity * scale));
  return caps;
}

FlowResult max_flow(const FlowNetwork& net, double scale) {
  double total = 0.0;
  double largest = 0.0;
  for (const auto& a : net.arcs()) {
    if (!(a.capacity >= 0.0) || !std::isfinite(a.capacity)) {
      throw Error(ErrorKind::invalid_model, "arc capacities must be finite and non-negative");
    }
    total += a.capacity;
    largest = std::max(largest, a.capacity);
  }
  constexpr double limit = 0x1.0p62;
  while (total * scale >= limit) scale *= 0.5;
  if (largest > 0.0 && 1.0 / scale > 1e-6 * largest) {
    throw Error(ErrorKind::overflow, "capacities too large to integerize with 1e-6 relative resolution");
  }

  const auto caps = integer_capacities(net, scale);
  const auto nodes = net.node_count();
  // Residual graph: arc 2k is forward arc k, 2k+1 its reverse.
  std::vector<std::uint32_t> head(2 * caps.size());
  std::vector<std::int64_t> residual(2 * caps.size());
  std::vector<std::vector<std::uint32_t>> out(nodes);
  for (std::size_t k = 0; k < caps.size(); ++k) {
    const auto& a = net.arcs()[k];
    head[2 * k] = a.to;
    head[2 * k + 1] = a.from;
    residual[2 * k] = caps[k];
    residual[2 * k + 1] = 0;
    out[a.from].push_back(static_cast<std::uint32_t>(2 * k));
    out[a.to].push_back(static_cast<std::uint32_t>(2 * k + 1));
  }

  FlowResult r;
  r.scale = scale;
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> via(nodes);
  for (;;) {
    std::fill(via.begin(), via.end(), none);
    std::queue<std::uint32_t> q;
    q.push(FlowNetwork::source);
    via[FlowNetwork::source] = none - 1;
    while (!q.empty() && via[FlowNetwork::sink] == none) {
      const auto v = q.front();
      q.pop();
      for (const auto e : out[v]) {
        const auto u = head[e];
        if (residual[e] > 0 && via[u] == none) {
          via[u] = e;
          q.push(u);
        }
      }
    }
    if (via[FlowNetwork::sink] == none) break;
    std::int64_t push = std::numeric_limits<std::int64_t>::max();
    for (auto v = FlowNetwork::sink; v != FlowNetwork::source; v = head[via[v] ^ 1u]) {
      push = std::min(push, residual[via[v]]);
    }
    for (auto v = FlowNetwork::sink; v != FlowNetwork::source; v = head[via[v] ^ 1u]) {
      residual[via[v]] -= push;
      residual[via[v] ^ 1u] += push;
    }
    r.integer_value += push;
    ++r.augmentations;
  }

  r.source_side.assign(nodes, 0);
  for (std::size_t v = 0; v < nodes; ++v) r.source_side[v] = via[v] != none ? 1 : 0;
  r.arc_flow_int.resize(caps.size());
  r.arc_flow.resize(caps.size());
  for (std::size_t k = 0; k < caps.size(); ++k) {
    r.arc_flow_int[k] = residual[2 * k + 1];
    r.arc_flow[k] = static_cast<double>(r.arc_flow_int[k]) / scale;
  }
  r.value = static_cast<double>(r.integer_value) / scale;
  return r;
}

Theorem1Report verify_theorem1(const ReducedGraph& gt, const VertexSet& support, double phi_tilde,
                               const Theorem1Options& opts) {
  const auto& g = gt.parent();
  const auto net = build_network(gt, support, phi_tilde, opts.network);
  Theorem1Report rep;
  rep.flow = max_flow(net);
  rep.expected_value = net.source_capacity();
  rep.bound = generalized_bound(phi_tilde, gt.constriction());

  {
    const double rel = std::abs(rep.flow.value - rep.expected_value) / rep.expected_value;
    rep.checks.add("min_cut_value", rel <= opts.flow_rel_tol,
                   "|maxflow - (1+Phi~) C| / ((1+Phi~) C)", rel, opts.flow_rel_tol);
  }

  const double phi = phi_tilde / opts.network.energy_unit;
  const auto arcs = net.arcs();
  std::vector<double> x_out(net.x_labels().size(), 0.0);
  std::vector<double> y_in(g.size(), 0.0);
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    const auto& a = arcs[k];
    if (a.rule == 2 || a.rule == 3) {
      x_out[a.from - 2] += rep.flow.arc_flow[k];
      y_in[a.to - net.y_node(0)] += rep.flow.arc_flow[k];
    }
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < x_out.size(); ++k) {
      const double want = (1.0 + phi) * g.pi()[net.x_labels()[k]];
      worst = std::max(worst, std::abs(x_out[k] - want));
    }
    rep.checks.add("source_saturation", worst <= opts.abs_tol,
                   "max_x |sum_j h_xj - (1+Phi~) pi_x|", worst, opts.abs_tol);
  }
  {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::uint32_t j = 0; j < g.size(); ++j) worst = std::max(worst, y_in[j] - g.pi()[j]);
    rep.checks.add("sink_feasibility", worst <= opts.abs_tol, "max_y (sum_x h_xy - pi_y)", worst,
                   opts.abs_tol);
  }
  if (opts.gap) {
    const double slack = *opts.gap - rep.bound;
    rep.checks.add("gap_bound", slack >= -opts.abs_tol, "gap - Phi~^2/(2c)", slack, opts.abs_tol);
  }

  if (opts.ehat) {
    const auto& eh = *opts.ehat;
    // h_ij: flow on x_i -> y_j (zero when i is outside the support).
    std::vector<double> h_out;
    double num = 0.0;
    double den = 0.0;
    std::vector<std::int64_t> x_index(g.size(), -1);
    for (std::size_t k = 0; k < net.x_labels().size(); ++k) x_index[net.x_labels()[k]] = static_cast<std::int64_t>(k);
    auto flow_between = [&](std::uint32_t i, std::uint32_t j) {
      if (x_index[i] < 0) return 0.0;
      const auto from = net.x_node(static_cast<std::size_t>(x_index[i]));
      const auto to = net.y_node(j);
      for (std::size_t k = 0; k < arcs.size(); ++k) {
        if (arcs[k].rule == 2 && arcs[k].from == from && arcs[k].to == to) {
          return rep.flow.arc_flow[k] * opts.network.energy_unit;
        }
      }
      return 0.0;
    };
    for (const auto& e : gt.edges()) {
      const double s = eh[e.u] + eh[e.v];
      const double h = flow_between(e.u, e.v);
      num += h * h / e.weight * s * s;
      den += e.weight * s * s;
    }
    if (den > 0.0) rep.chain_factor = num / den;
  }
  return rep;
}

void export_network(std::ostream& os, const FlowNetwork& net, const FlowResult* flow) {
  os << "network 1\n" << net.node_count() << ' ' << net.arcs().size() << '\n';
  os << "node 0 source -\nnode 1 sink -\n";
  for (std::size_t k = 0; k < net.x_labels().size(); ++k) {
    os << "node " << net.x_node(k) << " X " << net.x_labels()[k] << '\n';
  }
  for (std::uint32_t j = 0; j < net.graph_size(); ++j) os << "node " << net.y_node(j) << " Y " << j << '\n';
  for (std::size_t v = 2 + net.x_labels().size() + net.graph_size(); v < net.node_count(); ++v) {
    os << "node " << v << " inner -\n";
  }
  char buf[128];
  for (std::size_t k = 0; k < net.arcs().size(); ++k) {
    const auto& a = net.arcs()[k];
    const double f = flow != nullptr ? flow->arc_flow[k] : 0.0;
    std::snprintf(buf, sizeof buf, "arc %u %u %.17g %.17g\n", a.from, a.to, a.capacity, f);
    os << buf;
  }
}

}  // namespace cheeger_gap
