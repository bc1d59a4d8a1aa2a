#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rtm/phantom/mesh.hpp"

namespace rtm {

using NamedField = std::pair<std::string, std::vector<double>>;

// Legacy ASCII VTK unstructured grid with the element tissue tags as a cell
// array named "tissue" and one point-data array per named nodal field.
void export_vtk(const Mesh& mesh, const std::vector<NamedField>& fields,
                const std::string& path);

}  // namespace rtm
