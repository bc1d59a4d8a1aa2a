#pragma once

#include <vector>

#include "rtm/core/sparse.hpp"

namespace rtm {

struct CgResult {
    int iterations = 0;
    double relative_residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients for SPD systems. x carries the
// warm start on entry and the solution on exit. Converged when
// ||b - Ax|| / ||b|| <= tol (b = 0 yields x = 0). Throws SolverDiverged when
// max_iter is exhausted.
CgResult linear_solve(const CsrMatrix& a, const std::vector<double>& b,
                      std::vector<double>& x, double tol, int max_iter);

}  // namespace rtm
