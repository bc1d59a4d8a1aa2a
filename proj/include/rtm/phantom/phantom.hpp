#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rtm/core/vec3.hpp"
#include "rtm/phantom/tissue.hpp"

namespace rtm {

struct TumorSpec {
    bool present = false;
    int point = 3;          // measurement point index 0..8
    double depth = 0.02;    // m, surface to sphere center along inward normal
    double radius = 0.01;   // m
};

struct PhantomSpec {
    double radius = 0.09;           // breast hemisphere radius R, m
    double skin_thickness = 0.002;  // m
    double fat_thickness = 0.008;   // subcutaneous adipose shell, m
    double base_thickness = 0.02;   // muscle slab below the hemisphere, m

    int lobule_count_min = 8;
    int lobule_count_max = 16;
    double lobule_semiaxis_min = 0.006;  // m
    double lobule_semiaxis_max = 0.012;  // m
    double duct_radius = 0.0012;         // m
    int connective_count = 10;
    double connective_radius = 0.0008;  // m
    double nipple_radius = 0.006;       // m
    double vessel_trunk_radius = 0.0025;  // m

    TumorSpec tumor;

    std::uint64_t seed = 1;

    // Relative parameter spread for sample_patient_properties; overrides are
    // keyed by property name (density, specific_heat, conductivity, q_met,
    // q_can, q_rad, sigma, eps_r, mu_r).
    double spread = 0.1;
    std::map<std::string, double> spread_overrides;

    // Measurement ring layout (see measurement_points).
    bool ring_clockwise = true;
    double ring_phase_deg = 0.0;

    double frequency_hz = 1.5e9;          // used when sampling dielectric properties
    std::string tissue_properties_path;   // empty: built-in table

    void validate() const;  // throws InvalidSpec

    static PhantomSpec from_config(const Config& cfg);  // [phantom] section
};

// Analytic region primitives, resolved in priority order (first match wins).
struct SphereShape { Vec3 center; double radius; };
struct EllipsoidShape {
    Vec3 center;
    std::array<Vec3, 3> axes;  // orthonormal frame
    std::array<double, 3> semi;
};
struct CapsuleShape { Vec3 a, b; double radius; };      // capped cylinder
struct DomeShellShape { double r_inner, r_outer; };     // z >= 0, r_inner < |p| <= r_outer
struct SlabShape { double z_min, z_max, rho_max; };     // base cylinder slice
struct BallShellShape { double r_inner, r_outer; };     // z >= 0 spherical shell (open inner)

using RegionShape = std::variant<SphereShape, EllipsoidShape, CapsuleShape, DomeShellShape,
                                 SlabShape, BallShellShape>;

struct Region {
    TissueType tissue;
    RegionShape shape;
    bool contains(const Vec3& p) const;
};

struct BreastPhantom {
    PhantomSpec spec;
    std::vector<Region> regions;  // priority order, ends with catch-alls
    std::array<Vec3, 9> points;   // measurement points p_0..p_8
    TissuePropertyMap properties; // per-patient sampled properties

    double radius() const { return spec.radius; }
    double base_thickness() const { return spec.base_thickness; }

    bool inside(const Vec3& p) const;
    // Tissue at an interior point; throws InvalidSpec for points outside.
    TissueType tissue_at(const Vec3& p) const;
    std::optional<TissueType> try_tissue_at(const Vec3& p) const;
};

// Apex + ring of 8 points at 45 degree spacing on the circle of radius R/2 on
// the dome. Point 1 sits at the medial axis (+x by convention), numbering runs
// clockwise viewed from outside; both are configurable via the spec.
std::array<Vec3, 9> measurement_points(double radius, bool clockwise = true,
                                       double phase_deg = 0.0);

TissuePropertyMap sample_patient_properties(const PhantomSpec& spec);

BreastPhantom build_phantom(const PhantomSpec& spec);

}  // namespace rtm
