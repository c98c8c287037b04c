#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cheeger_gap/model.hpp"

namespace cheeger_gap {

enum class SolverPath { automatic, dense, iterative };

const char* to_string(SolverPath path);

struct SpectraOptions {
  double tol = 1e-10;             // residual bound ||H v - lambda v||_2
  double degeneracy_tol = 1e-8;   // lambda1 - lambda0 below this flags near-degeneracy
  std::size_t dense_limit = 4096; // automatic path uses the dense solver up to this N
  std::size_t max_iterations = 2'000'000;
  SolverPath path = SolverPath::automatic;
};

struct GroundState {
  double lambda0 = 0.0;
  std::vector<double> psi0;  // unit norm, strictly positive
  double residual = 0.0;
  SolverPath method = SolverPath::dense;
  std::size_t iterations = 0;
};

/// Lowest two eigenpairs. psi1 is orthogonal to psi0 and sign-fixed so that
/// its largest-magnitude component (lowest index on ties) is positive.
struct SpectralPair {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  std::vector<double> psi0;
  std::vector<double> psi1;
  double residual0 = 0.0;
  double residual1 = 0.0;
  bool near_degenerate = false;
  SolverPath method = SolverPath::dense;
  std::size_t iterations = 0;
};

/// ||H v - lambda v||_2 recomputed with an explicit sparse product.
double residual_norm(const StoquasticMatrix& h, double lambda, std::span<const double> v);

/// max_i |H_ii| + max_i sum_j |H_ij|; sigma*I - H is entrywise non-negative
/// and positive semidefinite.
double power_shift(const StoquasticMatrix& h);

/// Perron eigenpair. Requires validate(h) to pass.
GroundState ground_state(const StoquasticMatrix& h, const SpectraOptions& opts = {});

SpectralPair low_spectrum(const StoquasticMatrix& h, const SpectraOptions& opts = {});

inline double spectral_gap(const SpectralPair& sp) { return sp.lambda1 - sp.lambda0; }

}  // namespace cheeger_gap
