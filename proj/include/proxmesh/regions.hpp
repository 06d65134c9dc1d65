#pragma once

// Triangle regions of a mesh: construction under the two admissible modes,
// convexity of their union, and near-set families over a region.

#include "proxmesh/complexes.hpp"
#include "proxmesh/mesh.hpp"

#include <set>
#include <string>
#include <vector>

namespace proxmesh {

enum class RegionMode {
    pairwise,  // every two triangles share an edge
    chain,     // connected through shared edges
};

const char* to_string(RegionMode mode);
/// "pairwise" or "chain"; throws PreconditionError otherwise.
RegionMode parse_region_mode(const std::string& text);

class Region {
public:
    const Mesh& mesh() const { return *mesh_; }
    const std::set<int>& triangles() const { return triangles_; }
    RegionMode mode() const { return mode_; }
    /// Closure of the region's triangles.
    SubComplex complex() const;

private:
    friend Region build_region(const Mesh& mesh, std::set<int> triangles, RegionMode mode);
    Region(const Mesh& mesh, std::set<int> triangles, RegionMode mode)
        : mesh_(&mesh), triangles_(std::move(triangles)), mode_(mode) {}

    const Mesh* mesh_;
    std::set<int> triangles_;
    RegionMode mode_;
};

/// Throws PreconditionError for an empty set or bad index, RegionModeError
/// naming the first offending pair when the mode is violated.
Region build_region(const Mesh& mesh, std::set<int> triangles, RegionMode mode);

/// Outline of the union of the region's triangles, traced along edges that
/// belong to exactly one region triangle. Throws RegionTopologyError for
/// holes and pinch vertices.
Polygon region_outline(const Region& region);

struct ConvexityReport {
    bool is_convex = false;
    Polygon union_polygon;
    Polygon hull;
};

/// is_convex compares the union's area with its hull's area exactly.
ConvexityReport region_convexity(const Region& region);

/// The two regions' closures share a vertex.
RelationReport regions_proximal(const Region& r1, const Region& r2);

struct NeighborhoodMap {
    std::vector<SubComplex> family;
    // near_sets[i]: ascending indices j with family[i] related to family[j].
    std::vector<std::vector<int>> near_sets;

    /// Symmetry and reflexivity (for nonempty members) failures, empty when sound.
    std::vector<std::string> invariant_violations() const;
};

/// Near-sets of every member under `base`. Throws PreconditionError when a
/// member is not inside the region's closure.
NeighborhoodMap leader_topology(const Region& region, std::vector<SubComplex> family,
                                Proximity base = Proximity::visible);

/// One report per triangle comparing: empty circumcircle; circumcenter
/// equidistant from the corners with no nearer site (plus the clipped-cell
/// cross-check when the circumcenter is inside the clip box); pairwise shared
/// Voronoi boundary segments; convexity of the triangle. The verdict is
/// true when the first three agree, the cross-check (if run) matches and the
/// triangle is convex.
std::vector<RelationReport> check_delaunay_equivalences(const Mesh& mesh);

} // namespace proxmesh
