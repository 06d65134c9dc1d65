#pragma once

// Subcomplexes of a mesh and the proximity/visibility relations between
// them. Closure is simplicial: a subcomplex together with every face of its
// members. Every relation below is decided exactly on that representation.

#include "proxmesh/mesh.hpp"
#include "proxmesh/random.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace proxmesh {

struct Simplex {
    int dim = 0;
    std::array<int, 3> v{};  // first dim + 1 entries are used
    int triangle = -1;       // mesh triangle index when dim == 2

    static Simplex vertex(int a) { return {0, {a, -1, -1}, -1}; }
    static Simplex edge(const Edge& e) { return {1, {e.first, e.second, -1}, -1}; }
    static Simplex face(const Mesh& mesh, int t);

    std::string describe() const;
    friend bool operator==(const Simplex&, const Simplex&) = default;
};

class SubComplex {
public:
    explicit SubComplex(const Mesh& mesh) : mesh_(&mesh) {}
    /// Throws PreconditionError when a listed vertex, edge or triangle is not in the mesh.
    SubComplex(const Mesh& mesh, std::set<int> vertices, std::set<Edge> edges, std::set<int> triangles);

    static SubComplex from_triangles(const Mesh& mesh, std::set<int> triangles);
    static SubComplex from_simplex(const Mesh& mesh, const Simplex& s);

    const Mesh& mesh() const { return *mesh_; }
    const std::set<int>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }
    const std::set<int>& triangles() const { return triangles_; }

    bool empty() const { return vertices_.empty() && edges_.empty() && triangles_.empty(); }
    std::size_t size() const { return vertices_.size() + edges_.size() + triangles_.size(); }

    SubComplex united(const SubComplex& other) const;
    SubComplex intersected(const SubComplex& other) const;
    SubComplex minus(const SubComplex& other) const;
    bool subset_of(const SubComplex& other) const;
    /// All simplices, triangles first, then edges, then vertices.
    std::vector<Simplex> simplices() const;

    /// Compact text form, e.g. "{v:0,3 e:0-1 t:2}".
    std::string describe() const;

    friend bool operator==(const SubComplex& a, const SubComplex& b) {
        return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.triangles_ == b.triangles_;
    }

private:
    const Mesh* mesh_;
    std::set<int> vertices_;
    std::set<Edge> edges_;
    std::set<int> triangles_;
};

/// Outcome of one relation evaluation or one aggregated check.
struct RelationReport {
    std::string relation;
    std::vector<std::string> operands;
    bool verdict = false;
    std::optional<Simplex> witness;
    std::optional<SubComplex> witness_set;
    std::string counterexample;
    std::string note;
    // Populated by checkers: cases evaluated, cases violating the claim.
    std::size_t checked = 0;
    std::size_t violations = 0;
    // Violations document a known gap in the claim rather than a defect.
    bool expected_divergence = false;
};

/// The base relation a derived relation is expressed through.
enum class Proximity { near, visible };

const char* to_string(Proximity p);

SubComplex closure(const SubComplex& a);

/// Frontier simplices of cl A. Open triangles are never on the frontier. An
/// edge of A's triangles is on it unless two of those triangles share it; a
/// vertex of A's triangles unless they fill its whole star away from the
/// hull. Edges not on any triangle of A keep their open segment in the
/// interior and contribute their endpoints to the frontier.
SubComplex boundary(const SubComplex& a);

/// cl A minus bdy A.
SubComplex interior(const SubComplex& a);

/// cl A and cl B intersect; witness is a lowest-dimensional shared simplex.
RelationReport near(const SubComplex& a, const SubComplex& b);
/// cl A and cl B share an edge.
RelationReport strongly_near(const SubComplex& a, const SubComplex& b);
RelationReport far(const SubComplex& a, const SubComplex& b);

/// A and C are strongly far when some B has A far from B and cl C inside
/// int(cl B). `base` selects whether "far" is tested through near or
/// visible. Without a witness, B is searched among vertex-neighborhoods of
/// C of radius 1 to 3.
RelationReport strongly_far(const SubComplex& a, const SubComplex& c, const SubComplex* witness = nullptr,
                            Proximity base = Proximity::near);

/// cl A and cl B share a triangle vertex.
RelationReport visible(const SubComplex& a, const SubComplex& b);
/// cl A and cl B share an edge, or one nonempty operand lies inside the other.
RelationReport strongly_visible(const SubComplex& a, const SubComplex& b);
RelationReport invisible(const SubComplex& a, const SubComplex& b);
/// Every single simplex of B is invisible from A.
RelationReport strongly_invisible(const SubComplex& a, const SubComplex& b);

RelationReport relate(Proximity base, const SubComplex& a, const SubComplex& b);

/// Triangles within `radius` steps of C in the shared-vertex graph, where
/// radius 1 is the set of triangles touching a vertex of cl C.
SubComplex vertex_neighborhood(const SubComplex& c, int radius);

/// Each triangle independently with probability 1/3, then closed.
SubComplex random_subcomplex(const Mesh& mesh, Rng& rng);

/// Symmetry, additivity over unions, nonemptiness and intersection axioms,
/// one report per axiom. Trial i draws from trial_rng(seed, i).
std::vector<RelationReport> check_cech_axioms(const Mesh& mesh, Proximity relation, int trials, std::uint64_t seed);

} // namespace proxmesh
