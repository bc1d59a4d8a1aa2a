#pragma once

#include <vector>

#include "rtm/bioheat/assemble.hpp"
#include "rtm/phantom/mesh.hpp"

namespace rtm {

struct TemperatureField {
    std::vector<double> values;  // degC per node
    double time_s = 0.0;
};

// Dirichlet row/column reduction that keeps the operator SPD: reduced rows get
// an identity diagonal, eliminated column contributions move to a constant
// correction vector applied to every right-hand side.
struct EliminatedSystem {
    CsrMatrix a;
    std::vector<double> correction;  // subtract from free rows of the rhs
};

EliminatedSystem eliminate_dirichlet(const CsrMatrix& a_full,
                                     const std::vector<std::uint8_t>& mask,
                                     const std::vector<double>& value);

// One implicit lumped-damping step: [ G_diag/tau + M ] T_next = P + G_diag/tau T,
// Dirichlet rows pinned. Reusable across steps; the eliminated operator is
// built once.
class ImplicitStepOperator {
public:
    ImplicitStepOperator(const SystemMatrices& sys, double tau, double linear_tol,
                         int max_linear_iter);

    // Advances T by tau; warm-starts the linear solve from T.
    TemperatureField step(const TemperatureField& t) const;

    double tau() const { return tau_; }

private:
    const SystemMatrices* sys_;
    double tau_;
    double linear_tol_;
    int max_linear_iter_;
    EliminatedSystem elim_;
};

TemperatureField step(const TemperatureField& t, const SystemMatrices& sys, double tau,
                      const SolverConfig& config);

// Marches the implicit scheme from the uniform initial field until
// max_i |T_next - T| / tau < steady_tol. Throws NotConverged past max_steps.
TemperatureField march_to_steady(const SystemMatrices& sys, const SolverConfig& config);

// Direct steady solve M T = P with Dirichlet elimination; retained as the
// cross-check for the march.
TemperatureField steady_direct(const SystemMatrices& sys, const SolverConfig& config);

TemperatureField solve_steady(const Mesh& mesh, const TissuePropertyMap& props,
                              const SolverConfig& config);
TemperatureField solve_steady_direct(const Mesh& mesh, const TissuePropertyMap& props,
                                     const SolverConfig& config);

struct EnergyBalance {
    double source_power = 0.0;      // sum Q_e V_e over elements, W
    double robin_outflow = 0.0;     // h sum A (T_face - T_air), W
    double dirichlet_inflow = 0.0;  // sum over Dirichlet rows of (M T - P), W
};

EnergyBalance energy_balance(const Mesh& mesh, const SystemMatrices& sys,
                             const TemperatureField& t, const SolverConfig& config);

}  // namespace rtm
