#include "rtm/phantom/phantom.hpp"

#include <algorithm>
#include <cmath>

#include "rtm/core/error.hpp"
#include "rtm/core/rng.hpp"

namespace rtm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Substream ids for the phantom's independent random draws.
enum Stream : std::uint64_t {
    kStreamProps = 1,
    kStreamLobules = 2,
    kStreamVessels = 3,
    kStreamConnective = 4,
};

}  // namespace

void PhantomSpec::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCategory::InvalidSpec, what); };
    if (!(radius > 0.0)) fail("phantom radius must be > 0");
    if (!(skin_thickness > 0.0 && skin_thickness < radius / 4))
        fail("skin thickness out of range");
    if (!(fat_thickness >= 0.0 && skin_thickness + fat_thickness < radius / 2))
        fail("fat thickness out of range");
    if (!(base_thickness > 0.0)) fail("base thickness must be > 0");
    if (lobule_count_min < 0 || lobule_count_max < lobule_count_min) fail("bad lobule counts");
    if (!(spread >= 0.0 && spread < 1.0)) fail("spread must lie in [0, 1)");
    for (const auto& [k, v] : spread_overrides)
        if (!(v >= 0.0 && v < 1.0)) fail("spread override " + k + " must lie in [0, 1)");
    if (tumor.present) {
        if (tumor.point < 0 || tumor.point > 8) fail("tumor point index must be 0..8");
        if (!(tumor.radius > 0.0 && tumor.radius < radius)) fail("tumor radius out of range");
        double center_r = radius - tumor.depth;
        if (!(center_r - tumor.radius > 0.0) || !(center_r + tumor.radius < radius))
            fail("tumor protrudes outside the hemisphere");
        // Center z at ring latitude is (sqrt(3)/2)*center_r for points 1..8 and
        // center_r at the apex; require the whole sphere above the base plane.
        double min_center_z = center_r * (tumor.point == 0 ? 1.0 : std::sqrt(3.0) / 2.0);
        if (!(min_center_z - tumor.radius > 0.0)) fail("tumor crosses the base plane");
    }
    if (!(frequency_hz > 0.0)) fail("frequency must be > 0");
}

PhantomSpec PhantomSpec::from_config(const Config& cfg) {
    PhantomSpec s;
    s.radius = cfg.get_double("phantom.radius_m", s.radius);
    s.skin_thickness = cfg.get_double("phantom.skin_thickness_m", s.skin_thickness);
    s.fat_thickness = cfg.get_double("phantom.fat_thickness_m", s.fat_thickness);
    s.base_thickness = cfg.get_double("phantom.base_thickness_m", s.base_thickness);
    s.lobule_count_min = cfg.get_int("phantom.lobule_count_min", s.lobule_count_min);
    s.lobule_count_max = cfg.get_int("phantom.lobule_count_max", s.lobule_count_max);
    s.lobule_semiaxis_min = cfg.get_double("phantom.lobule_semiaxis_min_m", s.lobule_semiaxis_min);
    s.lobule_semiaxis_max = cfg.get_double("phantom.lobule_semiaxis_max_m", s.lobule_semiaxis_max);
    s.duct_radius = cfg.get_double("phantom.duct_radius_m", s.duct_radius);
    s.connective_count = cfg.get_int("phantom.connective_count", s.connective_count);
    s.connective_radius = cfg.get_double("phantom.connective_radius_m", s.connective_radius);
    s.nipple_radius = cfg.get_double("phantom.nipple_radius_m", s.nipple_radius);
    s.vessel_trunk_radius = cfg.get_double("phantom.vessel_trunk_radius_m", s.vessel_trunk_radius);
    s.tumor.present = cfg.get_bool("phantom.tumor_present", s.tumor.present);
    s.tumor.point = cfg.get_int("phantom.tumor_point", s.tumor.point);
    s.tumor.depth = cfg.get_double("phantom.tumor_depth_m", s.tumor.depth);
    s.tumor.radius = cfg.get_double("phantom.tumor_radius_m", s.tumor.radius);
    s.seed = cfg.get_u64("phantom.seed", s.seed);
    s.spread = cfg.get_double("phantom.spread", s.spread);
    for (const char* p : {"density", "specific_heat", "conductivity", "q_met", "q_can", "q_rad",
                          "sigma", "eps_r", "mu_r"}) {
        std::string key = std::string("phantom.spread_") + p;
        if (cfg.has(key)) s.spread_overrides[p] = cfg.get_double(key, s.spread);
    }
    s.ring_clockwise = cfg.get_bool("phantom.ring_clockwise", s.ring_clockwise);
    s.ring_phase_deg = cfg.get_double("phantom.ring_phase_deg", s.ring_phase_deg);
    s.frequency_hz = cfg.get_double("radiometry.frequency_hz", s.frequency_hz);
    s.tissue_properties_path = cfg.get_string("phantom.tissue_properties", "");
    s.validate();
    return s;
}

bool Region::contains(const Vec3& p) const {
    return std::visit(
        [&p](const auto& shape) -> bool {
            using T = std::decay_t<decltype(shape)>;
            if constexpr (std::is_same_v<T, SphereShape>) {
                return norm2(p - shape.center) <= shape.radius * shape.radius;
            } else if constexpr (std::is_same_v<T, EllipsoidShape>) {
                Vec3 d = p - shape.center;
                double s = 0.0;
                for (int k = 0; k < 3; ++k) {
                    double u = dot(d, shape.axes[static_cast<std::size_t>(k)]) /
                               shape.semi[static_cast<std::size_t>(k)];
                    s += u * u;
                }
                return s <= 1.0;
            } else if constexpr (std::is_same_v<T, CapsuleShape>) {
                return segment_distance(p, shape.a, shape.b) <= shape.radius;
            } else if constexpr (std::is_same_v<T, DomeShellShape>) {
                if (p.z < 0.0) return false;
                double r = norm(p);
                return r > shape.r_inner && r <= shape.r_outer;
            } else if constexpr (std::is_same_v<T, SlabShape>) {
                if (p.z < shape.z_min || p.z > shape.z_max) return false;
                return p.x * p.x + p.y * p.y <= shape.rho_max * shape.rho_max;
            } else {
                static_assert(std::is_same_v<T, BallShellShape>);
                if (p.z < 0.0) return false;
                double r = norm(p);
                return r > shape.r_inner && r <= shape.r_outer;
            }
        },
        shape);
}

bool BreastPhantom::inside(const Vec3& p) const {
    double R = spec.radius;
    if (p.z >= 0.0) return norm2(p) <= R * R;
    if (p.z < -spec.base_thickness) return false;
    return p.x * p.x + p.y * p.y <= R * R;
}

std::optional<TissueType> BreastPhantom::try_tissue_at(const Vec3& p) const {
    if (!inside(p)) return std::nullopt;
    for (const Region& r : regions)
        if (r.contains(p)) return r.tissue;
    // The gland catch-all sphere misses only the exact origin; treat it as gland.
    return TissueType::MammaryGland;
}

TissueType BreastPhantom::tissue_at(const Vec3& p) const {
    auto t = try_tissue_at(p);
    if (!t) throw Error(ErrorCategory::InvalidSpec, "tissue query outside the phantom domain");
    return *t;
}

std::array<Vec3, 9> measurement_points(double radius, bool clockwise, double phase_deg) {
    if (!(radius > 0.0)) throw Error(ErrorCategory::InvalidSpec, "radius must be > 0");
    std::array<Vec3, 9> pts;
    pts[0] = {0.0, 0.0, radius};
    // Ring of cylindrical radius R/2 on the dome: polar angle 30 degrees.
    const double rho = radius / 2.0;
    const double z = radius * std::sqrt(3.0) / 2.0;
    const double dir = clockwise ? -1.0 : 1.0;
    for (int i = 1; i <= 8; ++i) {
        double phi = phase_deg * kPi / 180.0 + dir * (i - 1) * (kPi / 4.0);
        pts[static_cast<std::size_t>(i)] = {rho * std::cos(phi), rho * std::sin(phi), z};
    }
    return pts;
}

TissuePropertyMap sample_patient_properties(const PhantomSpec& spec) {
    spec.validate();
    TissueTable file_table;
    const TissueTable* tbl = &TissueTable::builtin();
    if (!spec.tissue_properties_path.empty()) {
        file_table = TissueTable::from_file(spec.tissue_properties_path);
        tbl = &file_table;
    }

    auto spread_for = [&spec](const char* name) {
        auto it = spec.spread_overrides.find(name);
        return it == spec.spread_overrides.end() ? spec.spread : it->second;
    };

    Rng rng(derive_seed(spec.seed, kStreamProps));
    TissuePropertyMap map;
    for (int i = 0; i < kTissueCount; ++i) {
        TissueType t = static_cast<TissueType>(i);
        TissueProperties p = tbl->at(t, spec.frequency_hz);
        auto perturb = [&rng](double v, double s) { return v * (1.0 + rng.uniform(-s, s)); };
        p.density = perturb(p.density, spread_for("density"));
        p.specific_heat = perturb(p.specific_heat, spread_for("specific_heat"));
        p.conductivity = perturb(p.conductivity, spread_for("conductivity"));
        p.q_met = perturb(p.q_met, spread_for("q_met"));
        p.q_can = perturb(p.q_can, spread_for("q_can"));
        p.q_rad = perturb(p.q_rad, spread_for("q_rad"));
        p.sigma = std::max(0.0, perturb(p.sigma, spread_for("sigma")));
        p.eps_r = std::max(1.0, perturb(p.eps_r, spread_for("eps_r")));
        p.mu_r = perturb(p.mu_r, spread_for("mu_r"));
        p.validate(t);
        map[static_cast<std::size_t>(i)] = p;
    }
    return map;
}

namespace {

// Random orthonormal frame with the first axis along a random direction.
std::array<Vec3, 3> random_frame(Rng& rng) {
    double z = rng.uniform(-1.0, 1.0);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    Vec3 a{r * std::cos(phi), r * std::sin(phi), z};
    Vec3 helper = std::fabs(a.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 b = normalized(cross(a, helper));
    Vec3 c = cross(a, b);
    return {a, b, c};
}

Vec3 random_direction_in_cone(Rng& rng, const Vec3& axis, double max_angle) {
    // Deterministic: draw polar offset and azimuth around the axis.
    double ang = rng.uniform(0.0, max_angle);
    double phi = rng.uniform(0.0, 2.0 * kPi);
    Vec3 n = normalized(axis);
    Vec3 helper = std::fabs(n.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
    Vec3 u = normalized(cross(n, helper));
    Vec3 v = cross(n, u);
    return normalized(n * std::cos(ang) + (u * std::cos(phi) + v * std::sin(phi)) * std::sin(ang));
}

}  // namespace

BreastPhantom build_phantom(const PhantomSpec& spec) {
    spec.validate();
    BreastPhantom ph;
    ph.spec = spec;
    ph.points = measurement_points(spec.radius, spec.ring_clockwise, spec.ring_phase_deg);
    ph.properties = sample_patient_properties(spec);

    const double R = spec.radius;
    const double r_skin_inner = R - spec.skin_thickness;
    const double r_gland = R - spec.skin_thickness - spec.fat_thickness;

    auto& regions = ph.regions;

    // 1. Skin shell over the whole dome.
    regions.push_back({TissueType::Skin, DomeShellShape{r_skin_inner, R}});

    // 2. Tumor sphere centered on the inward normal at the requested point.
    if (spec.tumor.present) {
        Vec3 p = ph.points[static_cast<std::size_t>(spec.tumor.point)];
        Vec3 center = p * ((R - spec.tumor.depth) / R);
        regions.push_back({TissueType::Tumor, SphereShape{center, spec.tumor.radius}});
    }

    // 3. Vessel tree: trunk from inside the muscle slab, two branch levels.
    {
        Rng rng(derive_seed(spec.seed, kStreamVessels));
        double rho0 = rng.uniform(0.0, 0.15 * r_gland);
        double phi0 = rng.uniform(0.0, 2.0 * kPi);
        Vec3 root{rho0 * std::cos(phi0), rho0 * std::sin(phi0), -0.5 * spec.base_thickness};
        Vec3 trunk_dir = random_direction_in_cone(rng, {0, 0, 1}, 0.25);
        double trunk_len = 0.5 * spec.base_thickness + rng.uniform(0.30, 0.40) * r_gland;
        Vec3 trunk_top = root + trunk_dir * trunk_len;

        auto clamp_inside = [&](const Vec3& a, Vec3 b, double margin) {
            double limit = r_gland - margin;
            if (norm(b) <= limit) return b;
            // Shrink toward a until the endpoint fits.
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 40; ++it) {
                double mid = 0.5 * (lo + hi);
                if (norm(a + (b - a) * mid) <= limit) lo = mid; else hi = mid;
            }
            return a + (b - a) * lo;
        };

        trunk_top = clamp_inside(root, trunk_top, 3.0 * spec.vessel_trunk_radius);
        regions.push_back({TissueType::BloodVessel, CapsuleShape{root, trunk_top,
                                                                 spec.vessel_trunk_radius}});
        double r2 = 0.7 * spec.vessel_trunk_radius;
        double r3 = 0.45 * spec.vessel_trunk_radius;
        for (int b = 0; b < 2; ++b) {
            Vec3 dir2 = random_direction_in_cone(rng, trunk_dir, 0.9);
            Vec3 mid = clamp_inside(trunk_top, trunk_top + dir2 * rng.uniform(0.25, 0.35) * r_gland,
                                    3.0 * r2);
            regions.push_back({TissueType::BloodVessel, CapsuleShape{trunk_top, mid, r2}});
            for (int c = 0; c < 2; ++c) {
                Vec3 dir3 = random_direction_in_cone(rng, dir2, 1.1);
                Vec3 tip = clamp_inside(mid, mid + dir3 * rng.uniform(0.20, 0.30) * r_gland,
                                        3.0 * r3);
                regions.push_back({TissueType::BloodVessel, CapsuleShape{mid, tip, r3}});
            }
        }
    }

    // 4. Nipple: lens just beneath the apex skin.
    Vec3 nipple_center{0.0, 0.0, r_skin_inner};
    regions.push_back({TissueType::Nipple, SphereShape{nipple_center, spec.nipple_radius}});

    // 5. Muscle slab.
    regions.push_back({TissueType::Muscle, SlabShape{-spec.base_thickness, 0.0, R}});

    // 6. Lobules with one duct each converging on the nipple.
    std::vector<Region> ducts;
    {
        Rng rng(derive_seed(spec.seed, kStreamLobules));
        int count = spec.lobule_count_min +
                    static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(
                        spec.lobule_count_max - spec.lobule_count_min + 1)));
        for (int i = 0; i < count; ++i) {
            double cos_theta = rng.uniform(std::cos(75.0 * kPi / 180.0),
                                           std::cos(10.0 * kPi / 180.0));
            double theta = std::acos(cos_theta);
            double phi = rng.uniform(0.0, 2.0 * kPi);
            double rad = rng.uniform(0.30, 0.75) * r_gland;
            Vec3 center{rad * std::sin(theta) * std::cos(phi),
                        rad * std::sin(theta) * std::sin(phi), rad * std::cos(theta)};
            EllipsoidShape e;
            e.axes = random_frame(rng);
            for (int k = 0; k < 3; ++k)
                e.semi[static_cast<std::size_t>(k)] =
                    rng.uniform(spec.lobule_semiaxis_min, spec.lobule_semiaxis_max);
            double max_semi = std::max({e.semi[0], e.semi[1], e.semi[2]});
            double limit = 0.92 * r_gland - max_semi;
            if (norm(center) > limit && limit > 0.0) center = center * (limit / norm(center));
            e.center = center;
            regions.push_back({TissueType::BreastLobule, e});
            ducts.push_back({TissueType::Duct,
                             CapsuleShape{center, nipple_center, spec.duct_radius}});
        }
    }
    for (auto& d : ducts) regions.push_back(d);

    // 7. Connective strands.
    {
        Rng rng(derive_seed(spec.seed, kStreamConnective));
        for (int i = 0; i < spec.connective_count; ++i) {
            auto random_point = [&]() {
                double cos_theta = rng.uniform(0.05, 0.98);
                double theta = std::acos(cos_theta);
                double phi = rng.uniform(0.0, 2.0 * kPi);
                double rad = rng.uniform(0.2, 0.85) * r_gland;
                return Vec3{rad * std::sin(theta) * std::cos(phi),
                            rad * std::sin(theta) * std::sin(phi), rad * std::cos(theta)};
            };
            Vec3 a = random_point();
            Vec3 b = random_point();
            regions.push_back({TissueType::ConnectiveTissue,
                               CapsuleShape{a, b, spec.connective_radius}});
        }
    }

    // 8. Subcutaneous adipose shell, then the gland catch-all.
    regions.push_back({TissueType::AdiposeTissue, BallShellShape{r_gland, r_skin_inner}});
    regions.push_back({TissueType::MammaryGland, SphereShape{{0, 0, 0}, r_gland}});

    return ph;
}

}  // namespace rtm
