#include "rtm/bioheat/solver.hpp"

#include <algorithm>
#include <cmath>

#include "rtm/bioheat/cg.hpp"
#include "rtm/core/error.hpp"
#include "rtm/core/kernels.hpp"

namespace rtm {

EliminatedSystem eliminate_dirichlet(const CsrMatrix& a_full,
                                     const std::vector<std::uint8_t>& mask,
                                     const std::vector<double>& value) {
    EliminatedSystem out;
    out.a = a_full;
    out.correction.assign(static_cast<std::size_t>(a_full.n), 0.0);
    for (int i = 0; i < a_full.n; ++i) {
        const bool row_fixed = mask[static_cast<std::size_t>(i)] != 0;
        for (int k = a_full.row_ptr[static_cast<std::size_t>(i)];
             k < a_full.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
            int j = out.a.col[static_cast<std::size_t>(k)];
            const bool col_fixed = mask[static_cast<std::size_t>(j)] != 0;
            if (row_fixed) {
                out.a.val[static_cast<std::size_t>(k)] = (i == j) ? 1.0 : 0.0;
            } else if (col_fixed) {
                out.correction[static_cast<std::size_t>(i)] +=
                    out.a.val[static_cast<std::size_t>(k)] * value[static_cast<std::size_t>(j)];
                out.a.val[static_cast<std::size_t>(k)] = 0.0;
            }
        }
    }
    return out;
}

namespace {

// Applies Dirichlet values and the elimination correction to a raw rhs.
void reduce_rhs(const SystemMatrices& sys, const EliminatedSystem& elim,
                std::vector<double>& rhs) {
    const std::size_t n = rhs.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (sys.dirichlet_mask[i])
            rhs[i] = sys.dirichlet_value[i];
        else
            rhs[i] -= elim.correction[i];
    }
}

}  // namespace

ImplicitStepOperator::ImplicitStepOperator(const SystemMatrices& sys, double tau,
                                           double linear_tol, int max_linear_iter)
    : sys_(&sys), tau_(tau), linear_tol_(linear_tol), max_linear_iter_(max_linear_iter) {
    if (!(tau > 0.0)) throw Error(ErrorCategory::ConfigError, "tau must be > 0");
    CsrMatrix a = sys.stiffness;
    for (int i = 0; i < a.n; ++i) {
        int k = a.find(i, i);
        a.val[static_cast<std::size_t>(k)] +=
            sys.damping_diag[static_cast<std::size_t>(i)] / tau_;
    }
    elim_ = eliminate_dirichlet(a, sys.dirichlet_mask, sys.dirichlet_value);
}

TemperatureField ImplicitStepOperator::step(const TemperatureField& t) const {
    const std::size_t n = static_cast<std::size_t>(sys_->n());
    if (t.values.size() != n)
        throw Error(ErrorCategory::DimensionMismatch, "field length does not match system");
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = sys_->load[i] + sys_->damping_diag[i] / tau_ * t.values[i];
    reduce_rhs(*sys_, elim_, rhs);
    TemperatureField next;
    next.values = t.values;  // warm start
    linear_solve(elim_.a, rhs, next.values, linear_tol_, max_linear_iter_);
    for (std::size_t i = 0; i < n; ++i)
        if (sys_->dirichlet_mask[i]) next.values[i] = sys_->dirichlet_value[i];
    next.time_s = t.time_s + tau_;
    return next;
}

TemperatureField step(const TemperatureField& t, const SystemMatrices& sys, double tau,
                      const SolverConfig& config) {
    ImplicitStepOperator op(sys, tau, config.linear_tol, config.max_linear_iter);
    return op.step(t);
}

TemperatureField march_to_steady(const SystemMatrices& sys, const SolverConfig& config) {
    ImplicitStepOperator op(sys, config.tau_s, config.linear_tol, config.max_linear_iter);
    const std::size_t n = static_cast<std::size_t>(sys.n());
    TemperatureField t;
    t.values.assign(n, config.t0_c);
    for (std::size_t i = 0; i < n; ++i)
        if (sys.dirichlet_mask[i]) t.values[i] = sys.dirichlet_value[i];

    for (long it = 0; it < config.max_steps; ++it) {
        TemperatureField next = op.step(t);
        double rate =
            kernels::max_abs_diff(next.values.data(), t.values.data(), n) / config.tau_s;
        t = std::move(next);
        if (rate < config.steady_tol) return t;
    }
    throw Error(ErrorCategory::NotConverged,
                "steady march did not reach rate tolerance within max_steps");
}

TemperatureField steady_direct(const SystemMatrices& sys, const SolverConfig& config) {
    EliminatedSystem elim =
        eliminate_dirichlet(sys.stiffness, sys.dirichlet_mask, sys.dirichlet_value);
    std::vector<double> rhs = sys.load;
    reduce_rhs(sys, elim, rhs);
    TemperatureField t;
    t.values.assign(static_cast<std::size_t>(sys.n()), config.t0_c);
    for (std::size_t i = 0; i < t.values.size(); ++i)
        if (sys.dirichlet_mask[i]) t.values[i] = sys.dirichlet_value[i];
    linear_solve(elim.a, rhs, t.values, config.linear_tol, config.max_linear_iter);
    for (std::size_t i = 0; i < t.values.size(); ++i)
        if (sys.dirichlet_mask[i]) t.values[i] = sys.dirichlet_value[i];
    return t;
}

TemperatureField solve_steady(const Mesh& mesh, const TissuePropertyMap& props,
                              const SolverConfig& config) {
    SystemMatrices sys = assemble(mesh, props, config);
    return march_to_steady(sys, config);
}

TemperatureField solve_steady_direct(const Mesh& mesh, const TissuePropertyMap& props,
                                     const SolverConfig& config) {
    SystemMatrices sys = assemble(mesh, props, config);
    return steady_direct(sys, config);
}

EnergyBalance energy_balance(const Mesh& mesh, const SystemMatrices& sys,
                             const TemperatureField& t, const SolverConfig& config) {
    EnergyBalance bal;
    for (int e = 0; e < mesh.element_count(); ++e)
        bal.source_power +=
            sys.element_source[static_cast<std::size_t>(e)] * mesh.element_volume(e);
    for (const BoundaryFace& f : mesh.boundary_faces) {
        if (f.kind != FaceKind::Robin) continue;
        double area = mesh.face_area(f);
        double t_face = (t.values[static_cast<std::size_t>(f.nodes[0])] +
                         t.values[static_cast<std::size_t>(f.nodes[1])] +
                         t.values[static_cast<std::size_t>(f.nodes[2])]) /
                        3.0;
        bal.robin_outflow += config.h_air * area * (t_face - config.t_air_c);
    }
    std::vector<double> mt(t.values.size());
    kernels::spmv(sys.stiffness, t.values.data(), mt.data());
    for (std::size_t i = 0; i < t.values.size(); ++i)
        if (sys.dirichlet_mask[i]) bal.dirichlet_inflow += mt[i] - sys.load[i];
    return bal;
}

}  // namespace rtm
