#pragma once

#include "cpat/verify.hpp"

#include <string>

namespace cpat::cli {

struct RenderOptions {
    /// Width of the longer side in pixels.
    double size = 800.0;
    double stroke_width = 1.0;
    bool show_contacts = false;
    /// Outline the center triangles of the unmarked faces.
    bool show_star = false;
    int precision = 4;
};

/// SVG of a planar pattern; circles in vertex order, viewport fitted with a
/// 5% margin. Throws InvalidInput for spherical patterns.
std::string render_svg(const CirclePattern& p, const RenderOptions& opts = {});

}  // namespace cpat::cli
