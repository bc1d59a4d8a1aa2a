#include "rtm/radiometry/power.hpp"

#include <algorithm>
#include <cmath>

#include "rtm/core/error.hpp"

namespace rtm {

namespace {
constexpr double kMu0 = 1.25663706212e-6;  // H/m
constexpr double kTwoPi = 6.283185307179586476925287;
}  // namespace

void RadiometryConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCategory::ConfigError, what); };
    if (!(frequency_hz > 0.0)) fail("frequency_hz must be > 0");
    if (backend != "analytic" && backend != "maxwell")
        fail("backend must be analytic or maxwell");
    if (!(grid_spacing_m > 0.0)) fail("grid_spacing_m must be > 0");
    if (cycles < 4) fail("cycles must be >= 4");
    if (!(ir_spot_radius_m >= 0.0)) fail("ir_spot_radius_m must be >= 0");
    if (!(path_step_m > 0.0)) fail("path_step_m must be > 0");
}

RadiometryConfig RadiometryConfig::from_config(const Config& cfg) {
    RadiometryConfig c;
    c.frequency_hz = cfg.get_double("radiometry.frequency_hz", c.frequency_hz);
    c.backend = cfg.get_string("radiometry.backend", c.backend);
    c.grid_spacing_m = cfg.get_double("radiometry.grid_spacing_m", c.grid_spacing_m);
    c.cycles = cfg.get_int("radiometry.cycles", c.cycles);
    c.ir_spot_radius_m = cfg.get_double("radiometry.ir_spot_radius_m", c.ir_spot_radius_m);
    c.path_step_m = cfg.get_double("radiometry.path_step_m", c.path_step_m);
    c.validate();
    return c;
}

PowerDensityField power_density_analytic(const Mesh& mesh, const BreastPhantom& phantom,
                                         const TissuePropertyMap& props, int antenna_point,
                                         double frequency_hz, double path_step_m) {
    if (antenna_point < 0 || antenna_point > 8)
        throw Error(ErrorCategory::InvalidSpec, "antenna point index must be 0..8");
    if (!(frequency_hz > 0.0))
        throw Error(ErrorCategory::InvalidSpec, "frequency must be > 0");

    const Vec3 p_i = phantom.points[static_cast<std::size_t>(antenna_point)];
    const double omega = kTwoPi * frequency_hz;

    PowerDensityField field;
    field.antenna_point = antenna_point;
    field.frequency_hz = frequency_hz;
    field.backend = "analytic";
    field.values.assign(static_cast<std::size_t>(mesh.node_count()), 0.0);

    // Pull sample points a hair inside so surface nodes resolve to a tissue.
    auto tissue_sigma_mu = [&](const Vec3& q, double& sigma, double& mu) {
        auto t = phantom.try_tissue_at(q);
        if (!t) {
            Vec3 inner = q * (1.0 - 1e-9);
            t = phantom.try_tissue_at(inner);
        }
        if (!t) {
            sigma = 0.0;
            mu = 1.0;
            return;
        }
        const TissueProperties& p = props[static_cast<std::size_t>(tissue_tag(*t))];
        sigma = p.sigma;
        mu = p.mu_r;
    };

    const int n = mesh.node_count();
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
    for (int v = 0; v < n; ++v) {
        const Vec3 r = mesh.nodes[static_cast<std::size_t>(v)];
        double sigma_r, mu_r;
        tissue_sigma_mu(r, sigma_r, mu_r);
        const double dist = norm(r - p_i);
        double attenuation = 1.0;
        if (dist > 0.0) {
            const int steps = std::max(2, static_cast<int>(std::ceil(dist / path_step_m)) + 1);
            double sigma_sum = 0.0, mu_sum = 0.0;
            for (int s = 0; s < steps; ++s) {
                double u = (s + 0.5) / steps;
                Vec3 q = p_i + (r - p_i) * u;
                double sg, mu;
                tissue_sigma_mu(q, sg, mu);
                sigma_sum += sg;
                mu_sum += mu;
            }
            const double sigma_bar = sigma_sum / steps;
            const double mu_bar = mu_sum / steps;
            if (sigma_bar > 0.0) {
                const double delta = std::sqrt(2.0 / (omega * kMu0 * mu_bar * sigma_bar));
                attenuation = std::exp(-2.0 * dist / delta);
            }
        }
        field.values[static_cast<std::size_t>(v)] = sigma_r * attenuation;
    }
    return field;
}

double brightness_temperature(const Mesh& mesh, const TemperatureField& t,
                              const PowerDensityField& pd) {
    const std::size_t n = static_cast<std::size_t>(mesh.node_count());
    if (t.values.size() != n || pd.values.size() != n)
        throw Error(ErrorCategory::DimensionMismatch,
                    "temperature/power fields do not match the mesh");
    double numerator = 0.0;
    double weight = 0.0;
    for (int e = 0; e < mesh.element_count(); ++e) {
        const auto& tet = mesh.tets[static_cast<std::size_t>(e)];
        const double vol = mesh.element_volume(e);
        double t_sum = 0.0, p_sum = 0.0, tp_sum = 0.0;
        for (int a = 0; a < 4; ++a) {
            const std::size_t ia = static_cast<std::size_t>(tet[static_cast<std::size_t>(a)]);
            t_sum += t.values[ia];
            p_sum += pd.values[ia];
            tp_sum += t.values[ia] * pd.values[ia];
        }
        // Exact P1 x P1 integrals: int(gi gj) = V/20 (1 + delta_ij).
        numerator += vol / 20.0 * (t_sum * p_sum + tp_sum);
        weight += vol / 4.0 * p_sum;
    }
    if (!(weight > 0.0))
        throw Error(ErrorCategory::ZeroWeight, "power density integral vanishes");
    return numerator / weight;
}

double skin_temperature(const Mesh& mesh, const TemperatureField& t, const Vec3& point,
                        double spot_radius_m) {
    double weighted = 0.0, area_sum = 0.0;
    double nearest_d2 = 1e300;
    double nearest_value = 0.0;
    for (const BoundaryFace& f : mesh.boundary_faces) {
        if (f.kind != FaceKind::Robin) continue;
        Vec3 c = mesh.face_centroid(f);
        double t_face = (t.values[static_cast<std::size_t>(f.nodes[0])] +
                         t.values[static_cast<std::size_t>(f.nodes[1])] +
                         t.values[static_cast<std::size_t>(f.nodes[2])]) /
                        3.0;
        double d2 = norm2(c - point);
        if (d2 < nearest_d2) {
            // Fallback: nearest surface node of the nearest face.
            int best = f.nodes[0];
            double bd = 1e300;
            for (int a = 0; a < 3; ++a) {
                double dn = norm2(mesh.nodes[static_cast<std::size_t>(
                                      f.nodes[static_cast<std::size_t>(a)])] -
                                  point);
                if (dn < bd) {
                    bd = dn;
                    best = f.nodes[static_cast<std::size_t>(a)];
                }
            }
            nearest_d2 = d2;
            nearest_value = t.values[static_cast<std::size_t>(best)];
        }
        if (d2 <= spot_radius_m * spot_radius_m) {
            double area = mesh.face_area(f);
            weighted += area * t_face;
            area_sum += area;
        }
    }
    if (area_sum > 0.0) return weighted / area_sum;
    return nearest_value;
}

}  // namespace rtm
