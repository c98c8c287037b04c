#include <cmath>
#include <numbers>

#include "cheeger_gap/error.hpp"
#include "cheeger_gap/random_instance.hpp"
#include "cheeger_gap/spectra.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace cheeger_gap;

namespace {

void check_against_oracle(const StoquasticMatrix& h, const SpectraOptions& opts, double tol) {
  const auto ref = oracle::jacobi(h);
  const auto sp = low_spectrum(h, opts);
  CHECK(std::abs(sp.lambda0 - ref.values[0]) <= tol);
  CHECK(std::abs(sp.lambda1 - ref.values[1]) <= tol);
  CHECK(sp.residual0 <= opts.tol * 10);
  CHECK(sp.residual1 <= opts.tol * 10);
  double overlap = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) overlap += sp.psi0[i] * ref.vectors[0][i];
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-8);
  for (double x : sp.psi0) CHECK(x > 0.0);
}

}  // namespace

TEST_CASE("transverse-field gap equals 2B") {
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    for (double b : {0.5, 1.0, 2.5}) {
      const auto sp = low_spectrum(build_transverse_field(n, b));
      CHECK(std::abs(sp.lambda0 + static_cast<double>(n) * b) <= 1e-9);
      CHECK(std::abs(spectral_gap(sp) - 2.0 * b) <= 1e-9);
    }
  }
}

TEST_CASE("ring spectrum matches the cosine band") {
  for (std::size_t n : {3u, 4u, 7u, 12u}) {
    const double t = 0.8;
    const auto sp = low_spectrum(build_ring(n, t));
    CHECK(std::abs(sp.lambda0 + 2.0 * t) <= 1e-9);
    const double expected = 2.0 * t * (1.0 - std::cos(2.0 * std::numbers::pi / static_cast<double>(n)));
    CHECK(std::abs(spectral_gap(sp) - expected) <= 1e-9);
  }
}

TEST_CASE("dense path agrees with the Jacobi oracle") {
  SpectraOptions opts;
  opts.path = SolverPath::dense;
  check_against_oracle(build_ising_chain(5, 0.7), opts, 1e-9);
  for (std::uint64_t k = 0; k < 10; ++k) check_against_oracle(random_stoquastic(7, k), opts, 1e-9);
}

TEST_CASE("iterative path agrees with the Jacobi oracle") {
  SpectraOptions opts;
  opts.path = SolverPath::iterative;
  check_against_oracle(build_ising_chain(5, 1.3), opts, 1e-8);
  check_against_oracle(build_ring(9, 1.0), opts, 1e-8);
  for (std::uint64_t k = 0; k < 5; ++k) check_against_oracle(random_stoquastic(3, k), opts, 1e-8);
}

TEST_CASE("dense and iterative ground states agree on a larger chain") {
  const auto h = build_ising_chain(9, 1.1);
  SpectraOptions d;
  d.path = SolverPath::dense;
  SpectraOptions it;
  it.path = SolverPath::iterative;
  const auto a = ground_state(h, d);
  const auto b = ground_state(h, it);
  CHECK(a.method == SolverPath::dense);
  CHECK(b.method == SolverPath::iterative);
  CHECK(std::abs(a.lambda0 - b.lambda0) <= 1e-9);
  double overlap = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) overlap += a.psi0[i] * b.psi0[i];
  CHECK(std::abs(overlap - 1.0) <= 1e-8);
}

TEST_CASE("residual and shift helpers") {
  const auto h = build_transverse_field(2, 1.0);
  std::vector<double> v(4, 0.5);
  CHECK(residual_norm(h, -2.0, v) <= 1e-15);
  CHECK(residual_norm(h, 0.0, v) == doctest::Approx(2.0));
  CHECK(power_shift(h) == doctest::Approx(2.0));
}

TEST_CASE("excited vector is orthogonal and sign-fixed") {
  const auto sp = low_spectrum(random_stoquastic(11, 4));
  double dot = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < sp.psi0.size(); ++i) {
    dot += sp.psi0[i] * sp.psi1[i];
    if (std::abs(sp.psi1[i]) > std::abs(sp.psi1[arg]) + 1e-12) arg = i;
  }
  CHECK(std::abs(dot) <= 1e-10);
  CHECK(sp.psi1[arg] > 0.0);
}

TEST_CASE("invalid matrices are refused") {
  const auto h = StoquasticMatrix::from_triplets(3, {{0, 1, -1.0}});
  CHECK_THROWS_AS(ground_state(h), Error);
}
