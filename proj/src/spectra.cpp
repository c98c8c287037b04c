#include "cheeger_gap/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "cheeger_gap/error.hpp"
#include "cheeger_gap/kernels.hpp"

namespace cheeger_gap {

const char* to_string(SolverPath path) {
  switch (path) {
    case SolverPath::automatic: return "automatic";
    case SolverPath::dense: return "dense";
    case SolverPath::iterative: return "iterative";
  }
  return "unknown";
}

double residual_norm(const StoquasticMatrix& h, double lambda, std::span<const double> v) {
  std::vector<double> w(v.size());
  h.apply(v, w);
  kernels::axpy(-lambda, v, w);
  return kernels::nrm2(w);
}

double power_shift(const StoquasticMatrix& h) {
  const auto a = h.csr();
  double max_diag = 0.0;
  double max_row = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r) {
    double row = 0.0;
    for (auto k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) row += std::abs(a.values[k]);
    max_row = std::max(max_row, row);
    max_diag = std::max(max_diag, std::abs(h.diagonal(static_cast<std::uint32_t>(r))));
  }
  return max_diag + max_row;
}

namespace {

bool use_dense(const StoquasticMatrix& h, const SpectraOptions& opts) {
  switch (opts.path) {
    case SolverPath::dense: return true;
    case SolverPath::iterative: return false;
    case SolverPath::automatic: return h.dim() <= opts.dense_limit;
  }
  return true;
}

// Lowest `count` eigenpairs of the dense symmetric matrix; vectors returned
// one after the other.
void dense_lowest(const StoquasticMatrix& h, int count, std::vector<double>& values,
                  std::vector<double>& vectors) {
  const auto n = static_cast<lapack_int>(h.dim());
  auto a = h.dense();
  values.assign(static_cast<std::size_t>(n), 0.0);
  std::vector<double> z(static_cast<std::size_t>(n) * static_cast<std::size_t>(count));
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(count));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', n, a.data(), n, 0.0, 0.0, 1, count, 0.0,
                     &found, values.data(), z.data(), n, support.data());
  if (info != 0 || found != count) {
    throw Error(ErrorKind::convergence, "dense eigensolver failed (dsyevr info = " +
                                            std::to_string(info) + ")");
  }
  values.resize(static_cast<std::size_t>(count));
  vectors = std::move(z);
}

void fix_positive(std::vector<double>& psi0) {
  double sum = 0.0;
  for (double x : psi0) sum += x;
  if (sum < 0.0) kernels::scale(-1.0, psi0);
}

void require_positive(const std::vector<double>& psi0) {
  for (std::size_t i = 0; i < psi0.size(); ++i) {
    if (!(psi0[i] > 0.0)) {
      std::ostringstream os;
      os << "ground-state component " << i << " = " << psi0[i]
         << " is not strictly positive (underflow or reducible input)";
      throw Error(ErrorKind::positivity, os.str());
    }
  }
}

void fix_excited_sign(std::vector<double>& psi1) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < psi1.size(); ++i) {
    if (std::abs(psi1[i]) > std::abs(psi1[best])) best = i;
  }
  if (psi1[best] < 0.0) kernels::scale(-1.0, psi1);
}

void normalize(std::span<double> v) { kernels::scale(1.0 / kernels::nrm2(v), v); }

// Deterministic start vector with mixed signs, reproducible on any platform.
std::vector<double> start_vector(std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  for (auto& x : v) {
    state ^= state >> 12;
    state ^= state << 25;
    state ^= state >> 27;
    const auto bits = (state * 0x2545f4914f6cdd1dull) >> 11;
    x = 2.0 * static_cast<double>(bits) * 0x1.0p-53 - 1.0;
  }
  return v;
}

struct PowerOutcome {
  double lambda = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

// Power iteration on sigma*I - H starting from v, optionally kept orthogonal
// to `deflate`. Stops once ||H v - lambda v|| <= tol.
PowerOutcome power_iterate(const StoquasticMatrix& h, std::vector<double>& v,
                           std::span<const double> deflate, const SpectraOptions& opts) {
  const double sigma = power_shift(h);
  const std::size_t n = h.dim();
  std::vector<double> hv(n);
  std::vector<double> r(n);
  auto project = [&] {
    if (!deflate.empty()) kernels::axpy(-kernels::dot(deflate, v), deflate, v);
  };
  project();
  normalize(v);
  PowerOutcome out;
  for (std::size_t it = 0; it < opts.max_iterations; ++it) {
    h.apply(v, hv);
    out.lambda = kernels::dot(v, hv);
    std::copy(hv.begin(), hv.end(), r.begin());
    kernels::axpy(-out.lambda, v, r);
    out.residual = kernels::nrm2(r);
    out.iterations = it;
    if (out.residual <= opts.tol) return out;
    // v <- sigma v - H v
    kernels::axpby(-1.0, hv, sigma, v);
    project();
    normalize(v);
  }
  std::ostringstream os;
  os << "power iteration did not converge in " << opts.max_iterations
     << " iterations (final residual " << out.residual << ", tol " << opts.tol << ")";
  throw Error(ErrorKind::convergence, os.str());
}

}  // namespace

GroundState ground_state(const StoquasticMatrix& h, const SpectraOptions& opts) {
  require_valid(h);
  GroundState gs;
  if (use_dense(h, opts)) {
    std::vector<double> values;
    dense_lowest(h, 1, values, gs.psi0);
    gs.psi0.resize(h.dim());
    gs.lambda0 = values[0];
    gs.method = SolverPath::dense;
    fix_positive(gs.psi0);
    normalize(gs.psi0);
  } else {
    gs.psi0.assign(h.dim(), 1.0);
    const auto out = power_iterate(h, gs.psi0, {}, opts);
    gs.lambda0 = out.lambda;
    gs.iterations = out.iterations;
    gs.method = SolverPath::iterative;
    fix_positive(gs.psi0);
  }
  require_positive(gs.psi0);
  gs.residual = residual_norm(h, gs.lambda0, gs.psi0);
  if (gs.residual > opts.tol) {
    std::ostringstream os;
    os << "ground-state residual " << gs.residual << " exceeds tol " << opts.tol;
    throw Error(ErrorKind::convergence, os.str());
  }
  return gs;
}

SpectralPair low_spectrum(const StoquasticMatrix& h, const SpectraOptions& opts) {
  require_valid(h);
  SpectralPair sp;
  const std::size_t n = h.dim();
  if (use_dense(h, opts)) {
    std::vector<double> values;
    std::vector<double> vectors;
    dense_lowest(h, 2, values, vectors);
    sp.lambda0 = values[0];
    sp.lambda1 = values[1];
    sp.psi0.assign(vectors.begin(), vectors.begin() + static_cast<std::ptrdiff_t>(n));
    sp.psi1.assign(vectors.begin() + static_cast<std::ptrdiff_t>(n),
                   vectors.begin() + static_cast<std::ptrdiff_t>(2 * n));
    sp.method = SolverPath::dense;
    fix_positive(sp.psi0);
    normalize(sp.psi0);
    normalize(sp.psi1);
  } else {
    const auto gs = ground_state(h, opts);
    sp.lambda0 = gs.lambda0;
    sp.psi0 = gs.psi0;
    sp.psi1 = start_vector(n);
    const auto out = power_iterate(h, sp.psi1, sp.psi0, opts);
    sp.lambda1 = out.lambda;
    sp.iterations = gs.iterations + out.iterations;
    sp.method = SolverPath::iterative;
  }
  require_positive(sp.psi0);
  fix_excited_sign(sp.psi1);
  sp.residual0 = residual_norm(h, sp.lambda0, sp.psi0);
  sp.residual1 = residual_norm(h, sp.lambda1, sp.psi1);
  if (sp.residual0 > opts.tol || sp.residual1 > opts.tol) {
    std::ostringstream os;
    os << "eigenpair residuals (" << sp.residual0 << ", " << sp.residual1 << ") exceed tol "
       << opts.tol;
    throw Error(ErrorKind::convergence, os.str());
  }
  sp.near_degenerate = sp.lambda1 - sp.lambda0 < opts.degeneracy_tol;
  return sp;
}

}  // namespace cheeger_gap
