#include "rtm/bioheat/cg.hpp"

#include <cmath>

#include "rtm/core/error.hpp"
#include "rtm/core/kernels.hpp"

namespace rtm {

CgResult linear_solve(const CsrMatrix& a, const std::vector<double>& b,
                      std::vector<double>& x, double tol, int max_iter) {
    const std::size_t n = static_cast<std::size_t>(a.n);
    if (b.size() != n)
        throw Error(ErrorCategory::DimensionMismatch, "rhs length does not match matrix");
    x.resize(n, 0.0);

    const double bnorm = kernels::norm2(b.data(), n);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return {0, 0.0};
    }

    std::vector<double> inv_diag(n);
    {
        std::vector<double> d = a.diagonal();
        for (std::size_t i = 0; i < n; ++i) {
            if (!(d[i] > 0.0))
                throw Error(ErrorCategory::SolverDiverged,
                            "non-positive diagonal entry; matrix is not SPD");
            inv_diag[i] = 1.0 / d[i];
        }
    }

    std::vector<double> r(n), z(n), p(n), q(n);
    kernels::spmv(a, x.data(), r.data());
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - r[i];

    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    p = z;
    double rz = kernels::dot(r.data(), z.data(), n);

    double rel = kernels::norm2(r.data(), n) / bnorm;
    if (rel <= tol) return {0, rel};

    for (int it = 1; it <= max_iter; ++it) {
        kernels::spmv(a, p.data(), q.data());
        double pq = kernels::dot(p.data(), q.data(), n);
        if (!(pq > 0.0))
            throw Error(ErrorCategory::SolverDiverged, "curvature lost; matrix is not SPD");
        double alpha = rz / pq;
        kernels::axpy(alpha, p.data(), x.data(), n);
        kernels::axpy(-alpha, q.data(), r.data(), n);
        rel = kernels::norm2(r.data(), n) / bnorm;
        if (rel <= tol) return {it, rel};
        for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
        double rz_new = kernels::dot(r.data(), z.data(), n);
        double beta = rz_new / rz;
        rz = rz_new;
        kernels::xpay(z.data(), beta, p.data(), n);
    }
    throw Error(ErrorCategory::SolverDiverged,
                "conjugate gradients failed to reach tolerance " + std::to_string(tol) +
                    " in " + std::to_string(max_iter) + " iterations");
}

}  // namespace rtm
