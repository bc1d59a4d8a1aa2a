#pragma once

#include <array>
#include <memory>
#include <vector>

#include "rtm/core/vec3.hpp"
#include "rtm/phantom/phantom.hpp"
#include "rtm/phantom/tissue.hpp"

namespace rtm {

enum class FaceKind { Robin, Dirichlet, Adiabatic };

struct BoundaryFace {
    std::array<int, 3> nodes;
    FaceKind kind;
};

struct Mesh {
    std::vector<Vec3> nodes;
    std::vector<std::array<int, 4>> tets;  // positively oriented
    std::vector<TissueType> tissue;        // per element
    std::vector<BoundaryFace> boundary_faces;
    double target_edge = 0.0;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int element_count() const { return static_cast<int>(tets.size()); }

    double element_volume(int e) const;   // signed
    double total_volume() const;
    Vec3 element_centroid(int e) const;
    double face_area(const BoundaryFace& f) const;
    Vec3 face_centroid(const BoundaryFace& f) const;
};

struct MeshQuality {
    double min_volume = 0.0;
    double max_volume = 0.0;
    double total_volume = 0.0;
    double min_dihedral_deg = 0.0;
    int elements_below_10deg = 0;
};

MeshQuality mesh_quality(const Mesh& m);

// Geometry the lattice mesher discretizes: inside test, closest-surface
// projection for boundary snapping, a boundary-condition kind per surface
// face, and a tissue label per element centroid.
class MeshDomain {
public:
    virtual ~MeshDomain() = default;
    virtual bool inside(const Vec3& p) const = 0;
    virtual Vec3 project_to_surface(const Vec3& p) const = 0;
    virtual FaceKind face_kind(const Vec3& face_centroid) const = 0;
    virtual TissueType tissue_at(const Vec3& element_centroid) const = 0;
    virtual void bounds(Vec3& lo, Vec3& hi) const = 0;
    // Vertical lattice pitch; lets a domain align lattice planes with flat
    // boundaries (0 = use the isotropic target edge).
    virtual double vertical_pitch(double target_edge) const { (void)target_edge; return 0.0; }
};

// Hemisphere of radius R on a muscle-backed cylindrical slab.
class BreastDomain : public MeshDomain {
public:
    explicit BreastDomain(const BreastPhantom& phantom) : phantom_(&phantom) {}
    bool inside(const Vec3& p) const override;
    Vec3 project_to_surface(const Vec3& p) const override;
    FaceKind face_kind(const Vec3& c) const override;
    TissueType tissue_at(const Vec3& c) const override;
    void bounds(Vec3& lo, Vec3& hi) const override;
    double vertical_pitch(double target_edge) const override;

private:
    const BreastPhantom* phantom_;
};

// Axis-aligned box with per-face boundary kinds; used by the slab benchmarks.
class BoxDomain : public MeshDomain {
public:
    BoxDomain(Vec3 lo, Vec3 hi, TissueType tissue);

    // Faces indexed 0..5: x-, x+, y-, y+, z-, z+.
    void set_face_kind(int face, FaceKind kind) { face_kinds_[static_cast<std::size_t>(face)] = kind; }

    bool inside(const Vec3& p) const override;
    Vec3 project_to_surface(const Vec3& p) const override;
    FaceKind face_kind(const Vec3& c) const override;
    TissueType tissue_at(const Vec3& c) const override;
    void bounds(Vec3& lo, Vec3& hi) const override;

private:
    Vec3 lo_, hi_;
    TissueType tissue_;
    std::array<FaceKind, 6> face_kinds_;
};

// Body-centred lattice refinement with surface snapping: Kuhn-subdivided cubic
// cells, elements kept when their centroid is interior, lattice nodes of kept
// elements projected onto the analytic surface when they fall outside.
Mesh tetrahedralize_domain(const MeshDomain& domain, double target_edge);

Mesh tetrahedralize(const BreastPhantom& phantom, double target_edge);

}  // namespace rtm
