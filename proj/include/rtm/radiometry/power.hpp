#pragma once

#include <string>
#include <vector>

#include "rtm/bioheat/solver.hpp"
#include "rtm/core/config.hpp"
#include "rtm/phantom/mesh.hpp"
#include "rtm/phantom/phantom.hpp"

namespace rtm {

struct RadiometryConfig {
    double frequency_hz = 1.5e9;
    std::string backend = "analytic";  // analytic | maxwell
    double grid_spacing_m = 0.0025;    // maxwell backend cell size
    int cycles = 16;                   // source periods to run
    double ir_spot_radius_m = 0.005;
    double path_step_m = 0.001;        // analytic backend line sampling

    void validate() const;
    static RadiometryConfig from_config(const Config& cfg);  // [radiometry] section
};

struct PowerDensityField {
    std::vector<double> values;  // nodal, W/m^3
    int antenna_point = -1;
    double frequency_hz = 0.0;
    std::string backend;
};

// Exponential-decay surrogate for the antenna weighting: at node r,
// P_d = sigma(r) * exp(-2 |r - p_i| / delta) with delta the conductor skin
// depth sqrt(2 / (omega mu0 mu sigma)) of the straight-line averaged medium
// between the antenna point and r.
PowerDensityField power_density_analytic(const Mesh& mesh, const BreastPhantom& phantom,
                                         const TissuePropertyMap& props, int antenna_point,
                                         double frequency_hz,
                                         double path_step_m = 0.001);

// P_d-weighted volume average of the temperature field (P1 quadrature, exact
// for nodal T and P_d). Throws ZeroWeight when the weight integral vanishes.
double brightness_temperature(const Mesh& mesh, const TemperatureField& t,
                              const PowerDensityField& pd);

// Area-weighted average of T over Robin surface faces whose centroid lies
// within the IR spot radius of the point; nearest surface node when the spot
// captures no face.
double skin_temperature(const Mesh& mesh, const TemperatureField& t, const Vec3& point,
                        double spot_radius_m);

}  // namespace rtm
