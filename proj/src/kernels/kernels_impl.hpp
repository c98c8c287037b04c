#pragma once

#include "cheeger_gap/kernels.hpp"

namespace cheeger_gap::kernels::detail {

double dot_scalar(std::span<const double> x, std::span<const double> y);
void axpy_scalar(double a, std::span<const double> x, std::span<double> y);
void axpby_scalar(double a, std::span<const double> x, double b, std::span<double> y);
void scale_scalar(double a, std::span<double> x);
void spmv_scalar(const CsrView& a, std::span<const double> x, std::span<double> y);

#if CHEEGER_GAP_HAVE_AVX2
double dot_avx2(std::span<const double> x, std::span<const double> y);
void axpy_avx2(double a, std::span<const double> x, std::span<double> y);
void axpby_avx2(double a, std::span<const double> x, double b, std::span<double> y);
void scale_avx2(double a, std::span<double> x);
void spmv_avx2(const CsrView& a, std::span<const double> x, std::span<double> y);
#endif

}  // namespace cheeger_gap::kernels::detail
