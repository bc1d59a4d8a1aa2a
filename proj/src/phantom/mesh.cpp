#include "rtm/phantom/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "rtm/core/error.hpp"

namespace rtm {

namespace {

double signed_volume(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    return dot(cross(b - a, c - a), d - a) / 6.0;
}

double clamp(double v, double lo, double hi) { return v < lo ? lo : (v > hi ? hi : v); }

}  // namespace

double Mesh::element_volume(int e) const {
    const auto& t = tets[static_cast<std::size_t>(e)];
    return signed_volume(nodes[static_cast<std::size_t>(t[0])], nodes[static_cast<std::size_t>(t[1])],
                         nodes[static_cast<std::size_t>(t[2])], nodes[static_cast<std::size_t>(t[3])]);
}

double Mesh::total_volume() const {
    double v = 0.0;
    for (int e = 0; e < element_count(); ++e) v += element_volume(e);
    return v;
}

Vec3 Mesh::element_centroid(int e) const {
    const auto& t = tets[static_cast<std::size_t>(e)];
    Vec3 c{0, 0, 0};
    for (int k = 0; k < 4; ++k) c += nodes[static_cast<std::size_t>(t[static_cast<std::size_t>(k)])];
    return c / 4.0;
}

double Mesh::face_area(const BoundaryFace& f) const {
    const Vec3& a = nodes[static_cast<std::size_t>(f.nodes[0])];
    const Vec3& b = nodes[static_cast<std::size_t>(f.nodes[1])];
    const Vec3& c = nodes[static_cast<std::size_t>(f.nodes[2])];
    return 0.5 * norm(cross(b - a, c - a));
}

Vec3 Mesh::face_centroid(const BoundaryFace& f) const {
    return (nodes[static_cast<std::size_t>(f.nodes[0])] + nodes[static_cast<std::size_t>(f.nodes[1])] +
            nodes[static_cast<std::size_t>(f.nodes[2])]) /
           3.0;
}

namespace {

// Smallest dihedral angle of a tet, degrees.
double min_dihedral_deg(const Vec3& p0, const Vec3& p1, const Vec3& p2, const Vec3& p3) {
    const Vec3 p[4] = {p0, p1, p2, p3};
    // Outward-ish face normals: face k excludes vertex k.
    Vec3 n[4];
    static const int f[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    for (int k = 0; k < 4; ++k)
        n[k] = normalized(cross(p[f[k][1]] - p[f[k][0]], p[f[k][2]] - p[f[k][0]]));
    double min_angle = 180.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            double c = clamp(-dot(n[a], n[b]), -1.0, 1.0);
            double ang = std::acos(c) * 180.0 / 3.14159265358979323846;
            min_angle = std::min(min_angle, ang);
        }
    }
    return min_angle;
}

}  // namespace

MeshQuality mesh_quality(const Mesh& m) {
    MeshQuality q;
    q.min_volume = 1e300;
    q.max_volume = -1e300;
    q.min_dihedral_deg = 180.0;
    for (int e = 0; e < m.element_count(); ++e) {
        double v = m.element_volume(e);
        q.min_volume = std::min(q.min_volume, v);
        q.max_volume = std::max(q.max_volume, v);
        q.total_volume += v;
        const auto& t = m.tets[static_cast<std::size_t>(e)];
        double d = min_dihedral_deg(m.nodes[static_cast<std::size_t>(t[0])],
                                    m.nodes[static_cast<std::size_t>(t[1])],
                                    m.nodes[static_cast<std::size_t>(t[2])],
                                    m.nodes[static_cast<std::size_t>(t[3])]);
        q.min_dihedral_deg = std::min(q.min_dihedral_deg, d);
        if (d < 10.0) ++q.elements_below_10deg;
    }
    if (m.element_count() == 0) {
        q.min_volume = q.max_volume = 0.0;
        q.min_dihedral_deg = 0.0;
    }
    return q;
}

// ---------------------------------------------------------------------------
// Domains

bool BreastDomain::inside(const Vec3& p) const { return phantom_->inside(p); }

Vec3 BreastDomain::project_to_surface(const Vec3& p) const {
    const double R = phantom_->radius();
    const double t = phantom_->base_thickness();
    Vec3 best{R, 0, 0};
    double best_d2 = 1e300;
    auto consider = [&](const Vec3& q) {
        double d2 = norm2(q - p);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = q;
        }
    };
    double r = norm(p);
    if (p.z >= 0.0 && r > 1e-12) consider(p * (R / r));
    double rho = std::sqrt(p.x * p.x + p.y * p.y);
    if (rho > 1e-12) {
        // Lateral wall of the slab (includes the equator rim).
        consider({p.x * (R / rho), p.y * (R / rho), clamp(p.z, -t, 0.0)});
        // Bottom disk.
        double rb = std::min(rho, R);
        consider({p.x * (rb / rho), p.y * (rb / rho), -t});
    } else {
        consider({0.0, 0.0, p.z >= -t / 2 ? R : -t});
    }
    return best;
}

FaceKind BreastDomain::face_kind(const Vec3& c) const {
    return c.z > 1e-9 ? FaceKind::Robin : FaceKind::Dirichlet;
}

TissueType BreastDomain::tissue_at(const Vec3& c) const {
    auto t = phantom_->try_tissue_at(c);
    // Snapped boundary elements may carry centroids a hair outside the
    // analytic surface; resolve them through the nearest interior point.
    if (!t) {
        Vec3 q = project_to_surface(c);
        t = phantom_->try_tissue_at(q * (1.0 - 1e-9));
    }
    if (!t) throw Error(ErrorCategory::MeshFailure, "element centroid escapes the domain");
    return *t;
}

void BreastDomain::bounds(Vec3& lo, Vec3& hi) const {
    const double R = phantom_->radius();
    lo = {-R, -R, -phantom_->base_thickness()};
    hi = {R, R, R};
}

double BreastDomain::vertical_pitch(double target_edge) const {
    // Align lattice planes with z = 0 and the slab bottom so the flat base
    // meshes without snapping.
    const double t = phantom_->base_thickness();
    int layers = std::max(1, static_cast<int>(std::lround(t / target_edge)));
    return t / layers;
}

BoxDomain::BoxDomain(Vec3 lo, Vec3 hi, TissueType tissue) : lo_(lo), hi_(hi), tissue_(tissue) {
    face_kinds_.fill(FaceKind::Adiabatic);
}

bool BoxDomain::inside(const Vec3& p) const {
    const double eps = 1e-12;
    return p.x >= lo_.x - eps && p.x <= hi_.x + eps && p.y >= lo_.y - eps &&
           p.y <= hi_.y + eps && p.z >= lo_.z - eps && p.z <= hi_.z + eps;
}

Vec3 BoxDomain::project_to_surface(const Vec3& p) const {
    return {clamp(p.x, lo_.x, hi_.x), clamp(p.y, lo_.y, hi_.y), clamp(p.z, lo_.z, hi_.z)};
}

FaceKind BoxDomain::face_kind(const Vec3& c) const {
    double d[6] = {c.x - lo_.x, hi_.x - c.x, c.y - lo_.y, hi_.y - c.y, c.z - lo_.z, hi_.z - c.z};
    int best = 0;
    for (int k = 1; k < 6; ++k)
        if (d[k] < d[best]) best = k;
    return face_kinds_[static_cast<std::size_t>(best)];
}

TissueType BoxDomain::tissue_at(const Vec3&) const { return tissue_; }

void BoxDomain::bounds(Vec3& lo, Vec3& hi) const {
    lo = lo_;
    hi = hi_;
}

// ---------------------------------------------------------------------------
// Lattice mesher

namespace {

struct LatticeIndexer {
    int nx, ny, nz;  // node counts per axis
    long long node_id(int i, int j, int k) const {
        return (static_cast<long long>(k) * ny + j) * nx + i;
    }
};

// Axis permutations of the Kuhn subdivision; odd permutations get their middle
// vertices swapped at emission so every tet is positively oriented.
constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
constexpr bool kPermOdd[6] = {false, true, true, false, false, true};

}  // namespace

Mesh tetrahedralize_domain(const MeshDomain& domain, double target_edge) {
    if (!(target_edge > 0.0))
        throw Error(ErrorCategory::InvalidSpec, "target edge must be > 0");

    Vec3 lo, hi;
    domain.bounds(lo, hi);

    const double hx = target_edge;
    const double hy = target_edge;
    double hz = domain.vertical_pitch(target_edge);
    if (hz <= 0.0) hz = target_edge;

    // One cell of padding on every side so the surface never touches the
    // lattice hull. z is anchored at lo.z so flat bases are lattice planes.
    const int cx = static_cast<int>(std::ceil((hi.x - lo.x) / hx)) + 2;
    const int cy = static_cast<int>(std::ceil((hi.y - lo.y) / hy)) + 2;
    const int cz = static_cast<int>(std::ceil((hi.z - lo.z) / hz)) + 1;
    const Vec3 origin{lo.x - hx, lo.y - hy, lo.z};

    LatticeIndexer idx{cx + 1, cy + 1, cz + 1};
    auto lattice_pos = [&](int i, int j, int k) {
        return Vec3{origin.x + i * hx, origin.y + j * hy, origin.z + k * hz};
    };

    std::vector<std::array<long long, 4>> raw_tets;
    raw_tets.reserve(65536);

    for (int k = 0; k < cz; ++k) {
        for (int j = 0; j < cy; ++j) {
            for (int i = 0; i < cx; ++i) {
                // Cube corner lattice coordinates.
                int base[3] = {i, j, k};
                for (int p = 0; p < 6; ++p) {
                    int v[4][3];
                    for (int a = 0; a < 3; ++a) v[0][a] = base[a];
                    for (int step = 0; step < 3; ++step) {
                        for (int a = 0; a < 3; ++a) v[step + 1][a] = v[step][a];
                        v[step + 1][kPerms[p][step]] += 1;
                    }
                    Vec3 centroid{0, 0, 0};
                    for (int s = 0; s < 4; ++s)
                        centroid += lattice_pos(v[s][0], v[s][1], v[s][2]);
                    centroid = centroid / 4.0;
                    if (!domain.inside(centroid)) continue;
                    std::array<long long, 4> tet;
                    for (int s = 0; s < 4; ++s) tet[static_cast<std::size_t>(s)] =
                        idx.node_id(v[s][0], v[s][1], v[s][2]);
                    if (kPermOdd[p]) std::swap(tet[1], tet[2]);
                    raw_tets.push_back(tet);
                }
            }
        }
    }

    if (raw_tets.empty())
        throw Error(ErrorCategory::MeshFailure, "no elements: target edge too coarse for domain");

    // Compact node numbering in lattice order.
    std::map<long long, int> remap;
    for (const auto& t : raw_tets)
        for (long long id : t) remap.emplace(id, 0);
    {
        int next = 0;
        for (auto& [id, v] : remap) v = next++;
    }

    Mesh mesh;
    mesh.target_edge = target_edge;
    mesh.nodes.resize(remap.size());
    std::vector<bool> snapped(remap.size(), false);
    for (const auto& [id, compact] : remap) {
        int i = static_cast<int>(id % idx.nx);
        int j = static_cast<int>((id / idx.nx) % idx.ny);
        int k = static_cast<int>(id / (static_cast<long long>(idx.nx) * idx.ny));
        Vec3 p = lattice_pos(i, j, k);
        if (!domain.inside(p)) {
            p = domain.project_to_surface(p);
            snapped[static_cast<std::size_t>(compact)] = true;
        }
        mesh.nodes[static_cast<std::size_t>(compact)] = p;
    }
    mesh.tets.reserve(raw_tets.size());
    for (const auto& t : raw_tets)
        mesh.tets.push_back({remap[t[0]], remap[t[1]], remap[t[2]], remap[t[3]]});

    // Snapping can invert boundary slivers. Relax the offending snapped nodes
    // toward their neighbours (staying on the surface) and drop what remains.
    const double vol_floor = 1e-6 * hx * hy * hz / 6.0;
    std::vector<std::vector<int>> node_neighbors(mesh.nodes.size());
    for (const auto& t : mesh.tets)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                if (a != b)
                    node_neighbors[static_cast<std::size_t>(t[static_cast<std::size_t>(a)])]
                        .push_back(t[static_cast<std::size_t>(b)]);

    for (int pass = 0; pass < 30; ++pass) {
        bool any_bad = false;
        bool moved = false;
        for (const auto& t : mesh.tets) {
            double v = signed_volume(mesh.nodes[static_cast<std::size_t>(t[0])],
                                     mesh.nodes[static_cast<std::size_t>(t[1])],
                                     mesh.nodes[static_cast<std::size_t>(t[2])],
                                     mesh.nodes[static_cast<std::size_t>(t[3])]);
            if (v > vol_floor) continue;
            any_bad = true;
            for (int s = 0; s < 4; ++s) {
                int n = t[static_cast<std::size_t>(s)];
                if (!snapped[static_cast<std::size_t>(n)]) continue;
                Vec3 avg{0, 0, 0};
                const auto& nb = node_neighbors[static_cast<std::size_t>(n)];
                for (int m : nb) avg += mesh.nodes[static_cast<std::size_t>(m)];
                if (nb.empty()) continue;
                avg = avg / static_cast<double>(nb.size());
                Vec3 relaxed = (mesh.nodes[static_cast<std::size_t>(n)] + avg) * 0.5;
                Vec3 back = domain.project_to_surface(relaxed);
                if (norm2(back - mesh.nodes[static_cast<std::size_t>(n)]) > 1e-24) {
                    mesh.nodes[static_cast<std::size_t>(n)] = back;
                    moved = true;
                }
            }
        }
        if (!any_bad || !moved) break;
    }

    // Drop irreparable boundary slivers.
    {
        std::vector<std::array<int, 4>> kept;
        kept.reserve(mesh.tets.size());
        for (const auto& t : mesh.tets) {
            double v = signed_volume(mesh.nodes[static_cast<std::size_t>(t[0])],
                                     mesh.nodes[static_cast<std::size_t>(t[1])],
                                     mesh.nodes[static_cast<std::size_t>(t[2])],
                                     mesh.nodes[static_cast<std::size_t>(t[3])]);
            if (v > vol_floor) kept.push_back(t);
        }
        if (kept.size() != mesh.tets.size()) {
            mesh.tets = std::move(kept);
            // Re-compact nodes so no orphans remain.
            std::vector<int> newid(mesh.nodes.size(), -1);
            std::vector<Vec3> nodes2;
            std::vector<std::array<int, 4>> tets2;
            tets2.reserve(mesh.tets.size());
            for (const auto& t : mesh.tets) {
                std::array<int, 4> t2;
                for (int s = 0; s < 4; ++s) {
                    int n = t[static_cast<std::size_t>(s)];
                    if (newid[static_cast<std::size_t>(n)] < 0) {
                        newid[static_cast<std::size_t>(n)] = static_cast<int>(nodes2.size());
                        nodes2.push_back(mesh.nodes[static_cast<std::size_t>(n)]);
                    }
                    t2[static_cast<std::size_t>(s)] = newid[static_cast<std::size_t>(n)];
                }
                tets2.push_back(t2);
            }
            mesh.nodes = std::move(nodes2);
            mesh.tets = std::move(tets2);
        }
    }

    if (mesh.tets.empty()) throw Error(ErrorCategory::MeshFailure, "all elements degenerate");
    for (std::size_t e = 0; e < mesh.tets.size(); ++e) {
        if (mesh.element_volume(static_cast<int>(e)) <= 0.0)
            throw Error(ErrorCategory::MeshFailure, "non-positive element volume after snapping");
    }

    // Element tissue tags.
    mesh.tissue.resize(mesh.tets.size());
    for (std::size_t e = 0; e < mesh.tets.size(); ++e)
        mesh.tissue[e] = domain.tissue_at(mesh.element_centroid(static_cast<int>(e)));

    // Boundary faces: faces incident to exactly one element.
    std::map<std::array<int, 3>, int> face_count;
    static const int kFaces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    for (const auto& t : mesh.tets) {
        for (const auto& f : kFaces) {
            std::array<int, 3> key{t[static_cast<std::size_t>(f[0])], t[static_cast<std::size_t>(f[1])],
                                   t[static_cast<std::size_t>(f[2])]};
            std::sort(key.begin(), key.end());
            ++face_count[key];
        }
    }
    for (const auto& [key, count] : face_count) {
        if (count != 1) continue;
        BoundaryFace bf;
        bf.nodes = key;
        bf.kind = domain.face_kind(mesh.face_centroid(bf));
        mesh.boundary_faces.push_back(bf);
    }

    return mesh;
}

Mesh tetrahedralize(const BreastPhantom& phantom, double target_edge) {
    if (!(target_edge > 0.0 && target_edge < phantom.radius() / 4.0))
        throw Error(ErrorCategory::InvalidSpec,
                    "target edge must lie in (0, R/4)");
    BreastDomain domain(phantom);
    return tetrahedralize_domain(domain, target_edge);
}

}  // namespace rtm
