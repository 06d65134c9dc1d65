#pragma once

#include "proxmesh/complexes.hpp"
#include "proxmesh/mesh.hpp"

#include <string>
#include <vector>

namespace proxmesh {

struct RenderOptions {
    bool voronoi = false;
    // Each subcomplex becomes its own highlight layer.
    std::vector<SubComplex> highlights;
};

/// SVG of the clip box scaled to a 1000-unit viewport, y axis pointing up.
/// Coordinates are rounded only when written.
std::string render_svg(const Mesh& mesh, const RenderOptions& options = {});

} // namespace proxmesh
