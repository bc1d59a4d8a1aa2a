#include "rtm/bioheat/assemble.hpp"

#include <algorithm>

#if defined(_OPENMP)
#include <omp.h>
#endif

#include "rtm/core/error.hpp"

namespace rtm {

void SolverConfig::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCategory::ConfigError, what); };
    if (!(tau_s > 0.0)) fail("tau_s must be > 0");
    if (!(steady_tol > 0.0)) fail("steady_tol must be > 0");
    if (!(linear_tol > 0.0)) fail("linear_tol must be > 0");
    if (max_linear_iter <= 0) fail("max_linear_iter must be > 0");
    if (!(h_air >= 0.0)) fail("h_air must be >= 0");
    if (vessel_mode != "dirichlet" && vessel_mode != "source")
        fail("vessel_mode must be dirichlet or source");
}

SolverConfig SolverConfig::from_config(const Config& cfg) {
    SolverConfig c;
    c.tau_s = cfg.get_double("solver.tau_s", c.tau_s);
    c.steady_tol = cfg.get_double("solver.steady_tol", c.steady_tol);
    c.linear_tol = cfg.get_double("solver.linear_tol", c.linear_tol);
    c.max_linear_iter = cfg.get_int("solver.max_linear_iter", c.max_linear_iter);
    c.max_steps = cfg.get_int("solver.max_steps", static_cast<int>(c.max_steps));
    c.t_air_c = cfg.get_double("solver.t_air_c", c.t_air_c);
    c.h_air = cfg.get_double("solver.h_air", c.h_air);
    c.t_core_c = cfg.get_double("solver.t_core_c", c.t_core_c);
    c.t_blood_c = cfg.get_double("solver.t_blood_c", c.t_blood_c);
    c.t0_c = cfg.get_double("solver.t0_c", c.t0_c);
    c.vessel_mode = cfg.get_string("solver.vessel_mode", c.vessel_mode);
    c.q_vessel = cfg.get_double("solver.q_vessel", c.q_vessel);
    if (cfg.has("solver.q_rad")) c.q_rad_override = cfg.get_double("solver.q_rad", 0.0);
    c.validate();
    return c;
}

namespace {

struct ElementGeometry {
    Vec3 grad[4];  // constant P1 basis gradients
    double volume;
};

ElementGeometry element_geometry(const Mesh& mesh, int e) {
    const auto& t = mesh.tets[static_cast<std::size_t>(e)];
    const Vec3& p0 = mesh.nodes[static_cast<std::size_t>(t[0])];
    const Vec3& p1 = mesh.nodes[static_cast<std::size_t>(t[1])];
    const Vec3& p2 = mesh.nodes[static_cast<std::size_t>(t[2])];
    const Vec3& p3 = mesh.nodes[static_cast<std::size_t>(t[3])];
    Vec3 e1 = p1 - p0, e2 = p2 - p0, e3 = p3 - p0;
    double det = dot(cross(e1, e2), e3);  // 6V
    if (!(det > 0.0))
        throw Error(ErrorCategory::SingularElement,
                    "element " + std::to_string(e) + " has non-positive volume");
    ElementGeometry g;
    g.volume = det / 6.0;
    // Rows of the inverse Jacobian are the gradients of the barycentric
    // coordinates attached to p1..p3; p0's gradient closes the partition.
    Vec3 c1 = cross(e2, e3) / det;
    Vec3 c2 = cross(e3, e1) / det;
    Vec3 c3 = cross(e1, e2) / det;
    g.grad[1] = c1;
    g.grad[2] = c2;
    g.grad[3] = c3;
    g.grad[0] = -(c1 + c2 + c3);
    return g;
}

}  // namespace

std::vector<double> lump(const CsrMatrix& damping) {
    std::vector<double> d(static_cast<std::size_t>(damping.n), 0.0);
    for (int i = 0; i < damping.n; ++i) {
        double s = 0.0;
        for (int k = damping.row_ptr[static_cast<std::size_t>(i)];
             k < damping.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
            s += damping.val[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(i)] = s;
    }
    return d;
}

SystemMatrices assemble(const Mesh& mesh, const TissuePropertyMap& props,
                        const SolverConfig& config) {
    config.validate();
    for (int i = 0; i < kTissueCount; ++i) {
        const TissueProperties& p = props[static_cast<std::size_t>(i)];
        if (!(p.density > 0.0 && p.specific_heat > 0.0 && p.conductivity > 0.0))
            throw Error(ErrorCategory::MissingProperties,
                        std::string("no valid properties for tissue ") +
                            tissue_name(static_cast<TissueType>(i)));
    }

    const int n = mesh.node_count();
    const int ne = mesh.element_count();

    CsrPatternBuilder builder(n);
    for (const auto& t : mesh.tets) builder.add_clique(t.data(), 4);

    SystemMatrices sys;
    sys.damping = builder.build();
    sys.stiffness = sys.damping;  // same pattern, values rebuilt below
    sys.load.assign(static_cast<std::size_t>(n), 0.0);
    sys.element_source.assign(static_cast<std::size_t>(ne), 0.0);

    const bool vessels_as_source = config.vessel_mode == "source";
    const bool override_q_rad = !std::isnan(config.q_rad_override);

    for (int e = 0; e < ne; ++e) {
        TissueType tt = mesh.tissue[static_cast<std::size_t>(e)];
        const TissueProperties& p = props[static_cast<std::size_t>(tissue_tag(tt))];
        double q_rad = p.q_rad;
        if (override_q_rad && (tt == TissueType::Skin || tt == TissueType::Nipple))
            q_rad = config.q_rad_override;
        double q = p.q_met + p.q_can + q_rad;
        if (vessels_as_source && tt == TissueType::BloodVessel) q += config.q_vessel;
        sys.element_source[static_cast<std::size_t>(e)] = q;
    }

    // Element scatter with per-thread value buffers merged in thread order, so
    // the result is reproducible for a fixed thread count.
    const std::size_t nnz = sys.damping.val.size();
#if defined(_OPENMP)
    const int max_threads = omp_get_max_threads();
#else
    const int max_threads = 1;
#endif
    std::vector<std::vector<double>> g_parts, m_parts, p_parts;
    g_parts.resize(static_cast<std::size_t>(max_threads));
    m_parts.resize(static_cast<std::size_t>(max_threads));
    p_parts.resize(static_cast<std::size_t>(max_threads));
    int used_threads = 1;

#if defined(_OPENMP)
#pragma omp parallel
#endif
    {
#if defined(_OPENMP)
        const int tid = omp_get_thread_num();
        const int nt = omp_get_num_threads();
#pragma omp master
        used_threads = nt;
#else
        const int tid = 0;
        const int nt = 1;
        used_threads = 1;
#endif
        auto& gv = g_parts[static_cast<std::size_t>(tid)];
        auto& mv = m_parts[static_cast<std::size_t>(tid)];
        auto& pv = p_parts[static_cast<std::size_t>(tid)];
        gv.assign(nnz, 0.0);
        mv.assign(nnz, 0.0);
        pv.assign(static_cast<std::size_t>(n), 0.0);

        const int begin = static_cast<int>(static_cast<long long>(ne) * tid / nt);
        const int end = static_cast<int>(static_cast<long long>(ne) * (tid + 1) / nt);
        for (int e = begin; e < end; ++e) {
            ElementGeometry geo = element_geometry(mesh, e);
            const auto& t = mesh.tets[static_cast<std::size_t>(e)];
            TissueType tt = mesh.tissue[static_cast<std::size_t>(e)];
            const TissueProperties& p = props[static_cast<std::size_t>(tissue_tag(tt))];
            const double rho_cp = p.density * p.specific_heat;
            const double lambda = p.conductivity;
            const double q = sys.element_source[static_cast<std::size_t>(e)];
            for (int a = 0; a < 4; ++a) {
                int ia = t[static_cast<std::size_t>(a)];
                pv[static_cast<std::size_t>(ia)] += q * geo.volume / 4.0;
                for (int b = 0; b < 4; ++b) {
                    int ib = t[static_cast<std::size_t>(b)];
                    int k = sys.damping.find(ia, ib);
                    double mass = rho_cp * geo.volume / 20.0 * (a == b ? 2.0 : 1.0);
                    double stiff = lambda * geo.volume * dot(geo.grad[a], geo.grad[b]);
                    gv[static_cast<std::size_t>(k)] += mass;
                    mv[static_cast<std::size_t>(k)] += stiff;
                }
            }
        }
    }

    std::fill(sys.damping.val.begin(), sys.damping.val.end(), 0.0);
    std::fill(sys.stiffness.val.begin(), sys.stiffness.val.end(), 0.0);
    for (int t = 0; t < used_threads; ++t) {
        const auto& gv = g_parts[static_cast<std::size_t>(t)];
        const auto& mv = m_parts[static_cast<std::size_t>(t)];
        const auto& pv = p_parts[static_cast<std::size_t>(t)];
        if (gv.empty()) continue;
        for (std::size_t k = 0; k < nnz; ++k) {
            sys.damping.val[k] += gv[k];
            sys.stiffness.val[k] += mv[k];
        }
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) sys.load[i] += pv[i];
    }

    // Robin surface terms.
    for (const BoundaryFace& f : mesh.boundary_faces) {
        if (f.kind != FaceKind::Robin) continue;
        double area = mesh.face_area(f);
        for (int a = 0; a < 3; ++a) {
            int ia = f.nodes[static_cast<std::size_t>(a)];
            sys.load[static_cast<std::size_t>(ia)] += config.h_air * config.t_air_c * area / 3.0;
            for (int b = 0; b < 3; ++b) {
                int ib = f.nodes[static_cast<std::size_t>(b)];
                sys.stiffness.at(ia, ib) += config.h_air * area / 12.0 * (a == b ? 2.0 : 1.0);
            }
        }
    }

    // Dirichlet nodes: base faces at body-core temperature, vessel elements at
    // blood temperature ("boundary condition of first kind").
    sys.dirichlet_mask.assign(static_cast<std::size_t>(n), 0);
    sys.dirichlet_value.assign(static_cast<std::size_t>(n), 0.0);
    for (const BoundaryFace& f : mesh.boundary_faces) {
        if (f.kind != FaceKind::Dirichlet) continue;
        for (int a = 0; a < 3; ++a) {
            sys.dirichlet_mask[static_cast<std::size_t>(f.nodes[static_cast<std::size_t>(a)])] = 1;
            sys.dirichlet_value[static_cast<std::size_t>(f.nodes[static_cast<std::size_t>(a)])] =
                config.t_core_c;
        }
    }
    if (!vessels_as_source) {
        for (int e = 0; e < ne; ++e) {
            if (mesh.tissue[static_cast<std::size_t>(e)] != TissueType::BloodVessel) continue;
            for (int a = 0; a < 4; ++a) {
                int ia = mesh.tets[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)];
                sys.dirichlet_mask[static_cast<std::size_t>(ia)] = 1;
                sys.dirichlet_value[static_cast<std::size_t>(ia)] = config.t_blood_c;
            }
        }
    }

    sys.damping_diag = lump(sys.damping);
    return sys;
}

}  // namespace rtm
