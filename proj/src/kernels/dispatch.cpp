#include <cmath>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace cheeger_gap::kernels {

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{"scalar", detail::dot_scalar, detail::axpy_scalar,
                                 detail::axpby_scalar, detail::scale_scalar, detail::spmv_scalar};
  return table;
}

const KernelTable* avx2_table() noexcept {
#if CHEEGER_GAP_HAVE_AVX2
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  static const KernelTable table{"avx2", detail::dot_avx2, detail::axpy_avx2, detail::axpby_avx2,
                                 detail::scale_avx2, detail::spmv_avx2};
  return supported ? &table : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* env = std::getenv("CHEEGER_GAP_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return scalar_table();
    if (const auto* t = avx2_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

double nrm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

}  // namespace cheeger_gap::kernels
