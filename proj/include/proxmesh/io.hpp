#pragma once

// Text formats. Sites files are "x,y" per line with '#' comments; meshes,
// subcomplexes, regions and constraints are JSON documents whose numbers are
// exact rationals written as strings.

#include "proxmesh/complexes.hpp"
#include "proxmesh/mesh.hpp"
#include "proxmesh/regions.hpp"
#include "proxmesh/visibility.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace proxmesh {

/// Throws Error when the file cannot be read or written.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Throws ParseError carrying the 1-based line number.
std::vector<Point2> parse_sites(const std::string& text);
/// Each comment becomes a leading "# " line.
std::string format_sites(std::span<const Point2> sites, const std::vector<std::string>& comments = {});

std::string mesh_to_json(const Mesh& mesh, bool with_voronoi = false);
/// Rebuilds and revalidates the mesh. A stored id must match the rebuilt one.
Mesh mesh_from_json(const std::string& text);

std::string subcomplex_to_json(const SubComplex& c);
/// Throws MeshMismatchError when the document names another mesh.
SubComplex subcomplex_from_json(const Mesh& mesh, const std::string& text);

std::string region_to_json(const Region& region);
Region region_from_json(const Mesh& mesh, const std::string& text);

std::string constraints_to_json(const ConstraintSet& constraints);
ConstraintSet constraints_from_json(const SiteSet& sites, const std::string& text);

} // namespace proxmesh
