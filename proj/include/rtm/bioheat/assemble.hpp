#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "rtm/core/config.hpp"
#include "rtm/core/sparse.hpp"
#include "rtm/phantom/mesh.hpp"
#include "rtm/phantom/tissue.hpp"

namespace rtm {

struct SolverConfig {
    double tau_s = 1.0;          // implicit time step
    double steady_tol = 1e-4;    // K/s, march stopping rate
    double linear_tol = 1e-8;    // relative residual for CG
    int max_linear_iter = 5000;
    long max_steps = 500000;

    double t_air_c = 22.0;
    double h_air = 10.0;         // W/(m^2 K)
    double t_core_c = 37.0;      // base Dirichlet value
    double t_blood_c = 37.0;     // vessel Dirichlet value
    double t0_c = 37.0;          // initial uniform field

    // dirichlet: vessel nodes imposed at t_blood_c; source: vessels stay free
    // and carry the extra volumetric source q_vessel instead.
    std::string vessel_mode = "dirichlet";
    double q_vessel = 20000.0;   // W/m^3, used in source mode

    // Overrides the skin/nipple radiative sink from the tissue table when set
    // (NaN keeps table values).
    double q_rad_override = std::nan("");

    void validate() const;
    static SolverConfig from_config(const Config& cfg);  // [solver] section
};

struct SystemMatrices {
    CsrMatrix damping;                 // G
    CsrMatrix stiffness;               // M, includes Robin surface terms
    std::vector<double> load;          // P
    std::vector<double> damping_diag;  // row-sum lumped G

    std::vector<std::uint8_t> dirichlet_mask;  // per node
    std::vector<double> dirichlet_value;       // valid where mask set

    std::vector<double> element_source;  // Q per element, W/m^3

    int n() const { return damping.n; }
};

// P1 Galerkin assembly of the heat problem on tetrahedra: consistent damping
// matrix, stiffness with Robin boundary terms folded in, load vector from the
// volumetric sources plus the Robin ambient term, and the Dirichlet node set
// (base faces at t_core_c, vessel elements at t_blood_c).
SystemMatrices assemble(const Mesh& mesh, const TissuePropertyMap& props,
                        const SolverConfig& config);

// Row-sum lumping of the damping matrix.
std::vector<double> lump(const CsrMatrix& damping);

}  // namespace rtm
