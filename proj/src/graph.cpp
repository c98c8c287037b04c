#include "cheeger_gap/graph.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "cheeger_gap/error.hpp"
#include "cheeger_gap/kernels.hpp"

namespace cheeger_gap {

namespace {

void require_alpha(std::span<const double> psi0, std::size_t n) {
  if (psi0.size() != n) {
    throw Error(ErrorKind::invalid_model, "ground-state length does not match matrix dimension");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(psi0[i] > 0.0)) {
      std::ostringstream os;
      os << "ground-state component " << i << " = " << psi0[i] << " is not positive";
      throw Error(ErrorKind::positivity, os.str());
    }
  }
}

}  // namespace

std::span<const std::uint32_t> WeightedGraph::neighbors(std::uint32_t i) const {
  return std::span(adj_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

std::span<const double> WeightedGraph::neighbor_weights(std::uint32_t i) const {
  return std::span(adj_weight_).subspan(offsets_[i], offsets_[i + 1] - offsets_[i]);
}

double WeightedGraph::weight(std::uint32_t i, std::uint32_t j) const {
  if (i == j) return loops_[i];
  const auto nb = neighbors(i);
  const auto it = std::lower_bound(nb.begin(), nb.end(), j);
  if (it == nb.end() || *it != j) return 0.0;
  return neighbor_weights(i)[static_cast<std::size_t>(it - nb.begin())];
}

WeightedGraph graph_from(const StoquasticMatrix& h, double lambda0, std::span<const double> psi0,
                         double tol) {
  const std::size_t n = h.dim();
  require_alpha(psi0, n);
  WeightedGraph g;
  g.alpha_.assign(psi0.begin(), psi0.end());
  g.pi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) g.pi_[i] = psi0[i] * psi0[i];
  g.loops_.assign(n, 0.0);
  g.degree_.assign(n, 0.0);
  g.bare_degree_ = std::abs(lambda0);

  const auto a = h.csr();
  for (std::uint32_t i = 0; i < n; ++i) {
    for (auto k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const auto j = a.cols[k];
      if (a.values[k] == 0.0) continue;
      if (j == i) {
        g.loops_[i] = -psi0[i] * a.values[k] * psi0[i];
      } else if (j > i) {
        g.edges_.push_back({i, j, -psi0[i] * a.values[k] * psi0[j]});
      }
    }
  }

  std::vector<std::uint32_t> count(n + 1, 0);
  for (const auto& e : g.edges_) {
    ++count[e.u + 1];
    ++count[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) count[i + 1] += count[i];
  g.offsets_ = count;
  g.adj_.resize(count[n]);
  g.adj_weight_.resize(count[n]);
  std::vector<std::uint32_t> fill(count.begin(), count.end() - 1);
  for (const auto& e : g.edges_) {
    g.adj_[fill[e.u]] = e.v;
    g.adj_weight_[fill[e.u]++] = e.weight;
  }
  for (const auto& e : g.edges_) {
    g.adj_[fill[e.v]] = e.u;
    g.adj_weight_[fill[e.v]++] = e.weight;
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    auto nb = std::span(g.adj_).subspan(g.offsets_[i], g.offsets_[i + 1] - g.offsets_[i]);
    auto wt = std::span(g.adj_weight_).subspan(g.offsets_[i], nb.size());
    // Neighbours above i were placed before those below it.
    std::vector<std::pair<std::uint32_t, double>> row;
    row.reserve(nb.size());
    for (std::size_t k = 0; k < nb.size(); ++k) row.emplace_back(nb[k], wt[k]);
    std::sort(row.begin(), row.end());
    for (std::size_t k = 0; k < nb.size(); ++k) {
      nb[k] = row[k].first;
      wt[k] = row[k].second;
    }
  }

  for (std::uint32_t i = 0; i < n; ++i) {
    double d = g.loops_[i];
    for (double w : g.neighbor_weights(i)) d += w;
    g.degree_[i] = d;
    g.degree_defect_ = std::max(g.degree_defect_, std::abs(d - g.bare_degree_ * g.pi_[i]));
  }
  if (g.degree_defect_ > tol) {
    std::ostringstream os;
    os << "degree identity d_i = |lambda0| pi_i violated by " << g.degree_defect_
       << " (tol " << tol << "); the ground state does not match H";
    throw Error(ErrorKind::stale_ground_state, os.str());
  }
  return g;
}

void export_graph(std::ostream& os, const WeightedGraph& g) {
  std::size_t loops = 0;
  for (std::uint32_t i = 0; i < g.size(); ++i) loops += g.self_loop(i) != 0.0 ? 1 : 0;
  os << "graph 1\n" << g.size() << ' ' << g.edges().size() + loops << '\n';
  char buf[64];
  auto num = [&](double x) {
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  };
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    if (g.self_loop(i) != 0.0) os << i << ' ' << i << ' ' << num(g.self_loop(i)) << '\n';
  }
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << ' ' << num(e.weight) << '\n';
  for (std::uint32_t i = 0; i < g.size(); ++i) os << "v " << i << ' ' << num(g.pi()[i]) << '\n';
}

LaplacianMatrix laplacian(const StoquasticMatrix& h, double lambda0, std::span<const double> psi0,
                          double tol) {
  const std::size_t n = h.dim();
  require_alpha(psi0, n);
  LaplacianMatrix l;
  l.alpha_.assign(psi0.begin(), psi0.end());
  l.pi_.resize(n);
  for (std::size_t i = 0; i < n; ++i) l.pi_[i] = psi0[i] * psi0[i];
  l.lambda0_ = lambda0;

  const auto a = h.csr();
  l.row_ptr_.assign(n + 1, 0);
  double defect = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    bool diag_seen = false;
    double row_sum = 0.0;
    auto push = [&](std::uint32_t j, double v) {
      l.cols_.push_back(j);
      l.vals_.push_back(v);
      row_sum += v;
    };
    for (auto k = a.row_ptr[i]; k < a.row_ptr[i + 1]; ++k) {
      const auto j = a.cols[k];
      if (j > i && !diag_seen) {
        push(i, -lambda0);
        diag_seen = true;
      }
      if (j == i) {
        push(i, -lambda0 + a.values[k]);
        diag_seen = true;
      } else {
        push(j, psi0[j] / psi0[i] * a.values[k]);
      }
    }
    if (!diag_seen) push(i, -lambda0);
    l.row_ptr_[i + 1] = static_cast<std::uint32_t>(l.cols_.size());
    defect = std::max(defect, std::abs(l.pi_[i] * row_sum));
  }
  if (defect > tol) {
    std::ostringstream os;
    os << "Laplacian rows do not sum to zero (max pi-weighted defect " << defect << ", tol "
       << tol << "); the ground state does not match H";
    throw Error(ErrorKind::stale_ground_state, os.str());
  }
  return l;
}

void LaplacianMatrix::apply(std::span<const double> x, std::span<double> y) const {
  kernels::spmv({size(), row_ptr_, cols_, vals_}, x, y);
}

void LaplacianMatrix::apply_left(std::span<const double> x, std::span<double> y) const {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) y[cols_[k]] += x[i] * vals_[k];
  }
}

double LaplacianMatrix::entry(std::uint32_t i, std::uint32_t j) const {
  for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
    if (cols_[k] == j) return vals_[k];
  }
  return 0.0;
}

std::vector<double> LaplacianMatrix::dense(std::size_t limit) const {
  const std::size_t n = size();
  if (n > limit) {
    throw Error(ErrorKind::size_limit, "dense Laplacian requested for N = " + std::to_string(n) +
                                           " above limit " + std::to_string(limit));
  }
  std::vector<double> out(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) out[i * n + cols_[k]] = vals_[k];
  }
  return out;
}

std::pair<double, double> laplacian_low_eigenvalues(const LaplacianMatrix& l, std::size_t limit) {
  const auto n = static_cast<lapack_int>(l.size());
  auto a = l.dense(limit);
  std::vector<double> wr(l.size());
  std::vector<double> wi(l.size());
  // Read as column-major this is L^T, which has the same spectrum.
  const lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, wr.data(),
                                        wi.data(), nullptr, 1, nullptr, 1);
  if (info != 0) {
    throw Error(ErrorKind::convergence, "dense Laplacian eigensolve failed (dgeev info = " +
                                            std::to_string(info) + ")");
  }
  std::sort(wr.begin(), wr.end());
  return {wr[0], wr[1]};
}

CheckReport verify_laplacian(const LaplacianMatrix& l, const SpectralPair& sp,
                             const LaplacianCheckOptions& opts) {
  CheckReport report;
  const std::size_t n = l.size();
  std::vector<double> ones(n, 1.0);
  std::vector<double> tmp(n);

  l.apply(ones, tmp);
  double row = 0.0;
  for (double x : tmp) row = std::max(row, std::abs(x));
  report.add("row_sums", row <= opts.tol, "max |(L 1)_i|", row, opts.tol);

  l.apply_left(l.pi(), tmp);
  double left = 0.0;
  for (double x : tmp) left = std::max(left, std::abs(x));
  report.add("left_null", left <= opts.tol, "max |(pi L)_i|", left, opts.tol);

  // v = D^-1 psi1; ||D (L v - gap v)||_2 equals the H-residual of psi1.
  const double gap = sp.lambda1 - sp.lambda0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = sp.psi1[i] / l.alpha()[i];
  l.apply(v, tmp);
  double excited = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = l.alpha()[i] * (tmp[i] - gap * v[i]);
    excited += r * r;
  }
  excited = std::sqrt(excited);
  report.add("excited_vector", excited <= opts.tol, "||D (L D^-1 psi1 - gap D^-1 psi1)||", excited,
             opts.tol);

  if (n <= opts.dense_gap_limit) {
    const auto [e0, e1] = laplacian_low_eigenvalues(l, opts.dense_gap_limit);
    const double diff = std::abs((e1 - e0) - gap);
    report.add("gap", diff <= opts.gap_tol, "|gap(L) - gap(H)|", diff, opts.gap_tol);
  }
  return report;
}

}  // namespace cheeger_gap
