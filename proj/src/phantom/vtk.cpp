#include "rtm/phantom/vtk.hpp"

#include <cstdio>
#include <fstream>

#include "rtm/core/error.hpp"

namespace rtm {

void export_vtk(const Mesh& mesh, const std::vector<NamedField>& fields,
                const std::string& path) {
    for (const auto& [name, values] : fields) {
        if (static_cast<int>(values.size()) != mesh.node_count())
            throw Error(ErrorCategory::InvalidSpec,
                        "field " + name + " length does not match node count");
    }

    std::ofstream out(path);
    if (!out) throw Error(ErrorCategory::IOFailure, "cannot open " + path + " for writing");

    char buf[128];
    out << "# vtk DataFile Version 3.0\n";
    out << "rtmlab unstructured mesh\n";
    out << "ASCII\n";
    out << "DATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << mesh.node_count() << " double\n";
    for (const Vec3& p : mesh.nodes) {
        std::snprintf(buf, sizeof(buf), "%.9g %.9g %.9g\n", p.x, p.y, p.z);
        out << buf;
    }
    out << "CELLS " << mesh.element_count() << " " << mesh.element_count() * 5 << "\n";
    for (const auto& t : mesh.tets)
        out << "4 " << t[0] << " " << t[1] << " " << t[2] << " " << t[3] << "\n";
    out << "CELL_TYPES " << mesh.element_count() << "\n";
    for (int e = 0; e < mesh.element_count(); ++e) out << "10\n";

    out << "CELL_DATA " << mesh.element_count() << "\n";
    out << "SCALARS tissue int 1\n";
    out << "LOOKUP_TABLE default\n";
    for (TissueType t : mesh.tissue) out << tissue_tag(t) << "\n";

    if (!fields.empty()) {
        out << "POINT_DATA " << mesh.node_count() << "\n";
        for (const auto& [name, values] : fields) {
            out << "SCALARS " << name << " double 1\n";
            out << "LOOKUP_TABLE default\n";
            for (double v : values) {
                std::snprintf(buf, sizeof(buf), "%.9g\n", v);
                out << buf;
            }
        }
    }

    if (!out) throw Error(ErrorCategory::IOFailure, "write failure on " + path);
}

}  // namespace rtm
