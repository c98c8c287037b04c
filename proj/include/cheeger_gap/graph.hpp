#pragma once

// Weighted graph and non-symmetric Laplacian attached to a stoquastic
// Hamiltonian through its Perron ground state alpha:
//   w_ij = -alpha_i H_ij alpha_j,  pi_i = alpha_i^2,  d_i = |lambda0| pi_i,
//   L = -lambda0 I + D^-1 H D with D = diag(alpha).

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "cheeger_gap/model.hpp"
#include "cheeger_gap/report.hpp"
#include "cheeger_gap/spectra.hpp"

namespace cheeger_gap {

struct Edge {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double weight = 0.0;
};

/// Immutable after construction. Off-diagonal edges are stored once per
/// unordered pair and mirrored in the adjacency, so w_ij == w_ji exactly.
class WeightedGraph {
 public:
  std::size_t size() const noexcept { return pi_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }
  /// w_ii; zero when H_ii = 0. Never part of any cut.
  double self_loop(std::uint32_t i) const { return loops_[i]; }
  std::span<const double> pi() const noexcept { return pi_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  std::span<const double> degrees() const noexcept { return degree_; }
  double bare_degree() const noexcept { return bare_degree_; }

  /// Ascending neighbour indices of i (self excluded) and matching weights.
  std::span<const std::uint32_t> neighbors(std::uint32_t i) const;
  std::span<const double> neighbor_weights(std::uint32_t i) const;

  /// w_ij for i != j, w_ii on the diagonal; zero when absent.
  double weight(std::uint32_t i, std::uint32_t j) const;

  /// Largest |d_i - |lambda0| pi_i| seen during construction.
  double degree_defect() const noexcept { return degree_defect_; }

 private:
  friend WeightedGraph graph_from(const StoquasticMatrix&, double, std::span<const double>, double);

  std::vector<Edge> edges_;
  std::vector<double> loops_;
  std::vector<double> pi_;
  std::vector<double> alpha_;
  std::vector<double> degree_;
  double bare_degree_ = 0.0;
  double degree_defect_ = 0.0;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> adj_;
  std::vector<double> adj_weight_;
};

/// Throws positivity error for any alpha_i <= 0 and stale-ground-state error
/// when |d_i - |lambda0| pi_i| > tol for some i.
WeightedGraph graph_from(const StoquasticMatrix& h, double lambda0, std::span<const double> psi0,
                         double tol = 1e-9);

/// Text export: "graph 1", "N m", m lines "i j w_ij" (self-loops as "i i w_ii"),
/// then N lines "v i pi_i".
void export_graph(std::ostream& os, const WeightedGraph& g);

class LaplacianMatrix {
 public:
  std::size_t size() const noexcept { return pi_.size(); }
  std::span<const double> pi() const noexcept { return pi_; }
  std::span<const double> alpha() const noexcept { return alpha_; }
  double lambda0() const noexcept { return lambda0_; }

  /// y <- L x
  void apply(std::span<const double> x, std::span<double> y) const;
  /// y <- x^T L (left action)
  void apply_left(std::span<const double> x, std::span<double> y) const;
  /// Row-major dense copy; throws size-limit error above `limit`.
  std::vector<double> dense(std::size_t limit = 4096) const;
  double entry(std::uint32_t i, std::uint32_t j) const;

 private:
  friend LaplacianMatrix laplacian(const StoquasticMatrix&, double, std::span<const double>, double);

  std::vector<double> pi_;
  std::vector<double> alpha_;
  double lambda0_ = 0.0;
  std::vector<std::uint32_t> row_ptr_;
  std::vector<std::uint32_t> cols_;
  std::vector<double> vals_;
};

/// L_ii = -lambda0 + H_ii, L_ij = (alpha_j / alpha_i) H_ij. The ground state is
/// rejected as stale when max_i |pi_i * (L 1)_i| > tol (equivalently the
/// degree identity fails); raw row sums scale like 1/alpha_i and are reported
/// by verify_laplacian instead.
LaplacianMatrix laplacian(const StoquasticMatrix& h, double lambda0, std::span<const double> psi0,
                          double tol = 1e-9);

struct LaplacianCheckOptions {
  double tol = 1e-9;
  double gap_tol = 1e-8;
  /// Eigenvalues of the dense non-symmetric L are computed up to this size.
  std::size_t dense_gap_limit = 512;
};

/// Row sums (L 1 = 0), left null vector (pi L = 0), excited-vector relation
/// L D^-1 psi1 = (lambda1 - lambda0) D^-1 psi1 measured in the alpha-weighted
/// norm, and, for small N, the gap of L from a dense non-symmetric eigensolve.
CheckReport verify_laplacian(const LaplacianMatrix& l, const SpectralPair& sp,
                             const LaplacianCheckOptions& opts = {});

/// Lowest two real parts of the spectrum of dense L (general eigensolver).
std::pair<double, double> laplacian_low_eigenvalues(const LaplacianMatrix& l, std::size_t limit = 512);

}  // namespace cheeger_gap
