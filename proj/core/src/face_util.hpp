#pragma once

#include "cpat/complex.hpp"
#include "cpat/conditions.hpp"
#include "cpat/kernel.hpp"

#include <array>
#include <vector>

namespace cpat::detail {

/// Inner angles of face f at its three corners, in face order. NaN entries
/// mean the face is not realizable with these radii.
inline std::array<double, 3> face_angles(Mode mode, const Triangulation& t,
                                         const AngleAssignment& theta,
                                         const std::vector<double>& radii, int f)
{
    const Face& fc = t.face(f);
    const auto& fe = t.face_edges(f);
    std::array<double, 3> out{};
    for (int k = 0; k < 3; ++k) {
        const int k1 = (k + 1) % 3;
        const int k2 = (k + 2) % 3;
        out[k] = inner_angle_at(mode, radii[fc[k]], radii[fc[k1]], radii[fc[k2]], theta[fe[k]],
                                theta[fe[k1]], theta[fe[k2]]);
    }
    return out;
}

/// Rotation of face f starting at vertex v, with the matching opposite edges.
struct Corner {
    std::array<int, 3> v;
    std::array<int, 3> e;
};

inline Corner corner_at(const Triangulation& t, int f, int v)
{
    const Face& fc = t.face(f);
    const auto& fe = t.face_edges(f);
    for (int k = 0; k < 3; ++k) {
        if (fc[k] == v) {
            return Corner{{fc[k], fc[(k + 1) % 3], fc[(k + 2) % 3]},
                          {fe[k], fe[(k + 1) % 3], fe[(k + 2) % 3]}};
        }
    }
    return Corner{{fc[0], fc[1], fc[2]}, {fe[0], fe[1], fe[2]}};
}

}  // namespace cpat::detail
