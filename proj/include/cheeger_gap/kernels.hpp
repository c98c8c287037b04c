#pragma once

// Dense/sparse vector kernels behind the iterative eigensolver and the
// residual checks. Each kernel has a portable scalar reference and, on x86-64,
// an AVX2+FMA variant; the active table is chosen once at runtime.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace cheeger_gap::kernels {

/// Borrowed compressed-sparse-row view; all spans outlive the call.
struct CsrView {
  std::size_t rows = 0;
  std::span<const std::uint32_t> row_ptr;  // rows + 1
  std::span<const std::uint32_t> cols;
  std::span<const double> values;
};

struct KernelTable {
  std::string_view name;
  double (*dot)(std::span<const double> x, std::span<const double> y);
  // y <- a*x + y
  void (*axpy)(double a, std::span<const double> x, std::span<double> y);
  // y <- a*x + b*y
  void (*axpby)(double a, std::span<const double> x, double b, std::span<double> y);
  void (*scale)(double a, std::span<double> x);
  // y <- A*x
  void (*spmv)(const CsrView& a, std::span<const double> x, std::span<double> y);
};

const KernelTable& scalar_table() noexcept;

/// nullptr when the binary was built without AVX2 support or the CPU lacks it.
const KernelTable* avx2_table() noexcept;

/// Selected on first use: AVX2 when available, unless CHEEGER_GAP_SIMD=scalar.
const KernelTable& active() noexcept;

inline double dot(std::span<const double> x, std::span<const double> y) { return active().dot(x, y); }
inline void axpy(double a, std::span<const double> x, std::span<double> y) { active().axpy(a, x, y); }
inline void axpby(double a, std::span<const double> x, double b, std::span<double> y) {
  active().axpby(a, x, b, y);
}
inline void scale(double a, std::span<double> x) { active().scale(a, x); }
inline void spmv(const CsrView& a, std::span<const double> x, std::span<double> y) {
  active().spmv(a, x, y);
}
double nrm2(std::span<const double> x);

}  // namespace cheeger_gap::kernels
