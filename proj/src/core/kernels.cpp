#include "rtm/core/kernels.hpp"

#include <cmath>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace rtm::kernels {

namespace serial {

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + a * y[i];
}

double norm2(const double* x, std::size_t n) { return std::sqrt(dot(x, x, n)); }

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::fabs(x[i] - y[i]);
        if (d > m) m = d;
    }
    return m;
}

}  // namespace serial

#if defined(_OPENMP)

namespace {
constexpr std::size_t kParallelCutoff = 4096;

// Fixed slice boundaries: thread t of T owns [n*t/T, n*(t+1)/T).
inline void slice(std::size_t n, int t, int nt, std::size_t& b, std::size_t& e) {
    b = n * static_cast<std::size_t>(t) / static_cast<std::size_t>(nt);
    e = n * static_cast<std::size_t>(t + 1) / static_cast<std::size_t>(nt);
}
}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
    if (n < kParallelCutoff) return serial::dot(x, y, n);
    std::vector<double> partial(static_cast<std::size_t>(omp_get_max_threads()), 0.0);
    int used = 1;
#pragma omp parallel
    {
        int t = omp_get_thread_num();
        int nt = omp_get_num_threads();
#pragma omp master
        used = nt;
        std::size_t b, e;
        slice(n, t, nt, b, e);
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += x[i] * y[i];
        partial[static_cast<std::size_t>(t)] = s;
    }
    double s = 0.0;
    for (int t = 0; t < used; ++t) s += partial[static_cast<std::size_t>(t)];
    return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
    if (n < kParallelCutoff) {
        serial::axpy(a, x, y, n);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] += a * x[i];
}

void xpay(const double* x, double a, double* y, std::size_t n) {
    if (n < kParallelCutoff) {
        serial::xpay(x, a, y, n);
        return;
    }
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(n); ++i) y[i] = x[i] + a * y[i];
}

double norm2(const double* x, std::size_t n) { return std::sqrt(dot(x, x, n)); }

double max_abs_diff(const double* x, const double* y, std::size_t n) {
    if (n < kParallelCutoff) return serial::max_abs_diff(x, y, n);
    double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        double d = std::fabs(x[i] - y[i]);
        if (d > m) m = d;
    }
    return m;
}

#else

double dot(const double* x, const double* y, std::size_t n) { return serial::dot(x, y, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { serial::axpy(a, x, y, n); }
void xpay(const double* x, double a, double* y, std::size_t n) { serial::xpay(x, a, y, n); }
double norm2(const double* x, std::size_t n) { return serial::norm2(x, n); }
double max_abs_diff(const double* x, const double* y, std::size_t n) {
    return serial::max_abs_diff(x, y, n);
}

#endif

}  // namespace rtm::kernels
