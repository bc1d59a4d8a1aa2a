#pragma once

#include <cstddef>
#include <vector>

namespace rtm::kernels {

// Dense vector kernels. The default entry points run OpenMP-parallel when the
// build enables it; the serial:: namespace keeps plain reference loops used by
// the unit tests and the kernel benchmark. Reductions accumulate per-thread
// partials over fixed contiguous slices and combine them in thread order, so a
// given thread count always reproduces the same bits.

namespace serial {

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpay(const double* x, double a, double* y, std::size_t n);  // y = x + a*y
double norm2(const double* x, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);

}  // namespace serial

double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void xpay(const double* x, double a, double* y, std::size_t n);
double norm2(const double* x, std::size_t n);
double max_abs_diff(const double* x, const double* y, std::size_t n);

inline double dot(const std::vector<double>& x, const std::vector<double>& y) {
    return dot(x.data(), y.data(), x.size());
}
inline double norm2(const std::vector<double>& x) { return norm2(x.data(), x.size()); }

}  // namespace rtm::kernels
