#pragma once

#include "cpat/io.hpp"

#include <string>
#include <vector>

namespace testing {

inline std::string data_path(const std::string& rel) { return std::string(CPAT_DATA_DIR) + "/" + rel; }

inline cpat::Triangulation load_triangulation(const std::string& name)
{
    return cpat::io::triangulation_from_json(
        cpat::io::read_json(data_path("triangulations/" + name + ".json")));
}

inline cpat::AngleAssignment load_theta(const cpat::Triangulation& t, const std::string& name)
{
    return cpat::io::theta_from_json(cpat::io::read_json(data_path("theta/" + name + ".json")), t);
}

inline cpat::CellComplex load_polyhedron(const std::string& name)
{
    return cpat::io::complex_from_json(cpat::io::read_json(data_path("polyhedra/" + name + ".json")));
}

/// Shipped sphere triangulations with at most eight vertices.
inline std::vector<std::string> small_triangulations()
{
    return {"tetrahedron", "triangular_bipyramid", "stacked_5", "octahedron", "stacked_6",
            "pentagonal_bipyramid", "hexagonal_bipyramid"};
}

inline std::vector<std::string> all_triangulations()
{
    auto v = small_triangulations();
    v.push_back("icosahedron");
    return v;
}

}  // namespace testing
