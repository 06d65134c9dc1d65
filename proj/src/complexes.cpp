#include "proxmesh/complexes.hpp"

#include "proxmesh/error.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <sstream>

namespace proxmesh {

namespace {

template <class T>
std::set<T> set_intersection_of(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class T>
std::set<T> set_union_of(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out = a;
    out.insert(b.begin(), b.end());
    return out;
}

template <class T>
std::set<T> set_difference_of(const std::set<T>& a, const std::set<T>& b) {
    std::set<T> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

template <class T>
bool includes(const std::set<T>& outer, const std::set<T>& inner) {
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

void require_same_mesh(const SubComplex& a, const SubComplex& b) {
    if (&a.mesh() != &b.mesh() && a.mesh().id() != b.mesh().id())
        throw MeshMismatchError("operands belong to different meshes (" + a.mesh().id() + " vs " + b.mesh().id() + ")");
}

RelationReport make_report(const char* name, const SubComplex& a, const SubComplex& b) {
    RelationReport r;
    r.relation = name;
    r.operands = {a.describe(), b.describe()};
    return r;
}

std::array<Edge, 3> triangle_edges(const Triangle& t) {
    return {make_edge(t.v[0], t.v[1]), make_edge(t.v[1], t.v[2]), make_edge(t.v[0], t.v[2])};
}

// Vertices touched by A, gathered straight from its members.
std::set<int> vertex_support(const SubComplex& a) {
    std::set<int> out = a.vertices();
    for (const auto& e : a.edges()) {
        out.insert(e.first);
        out.insert(e.second);
    }
    for (int t : a.triangles())
        for (int v : a.mesh().triangle(t).v) out.insert(v);
    return out;
}

bool far_through(Proximity base, const SubComplex& a, const SubComplex& b) {
    return base == Proximity::near ? far(a, b).verdict : invisible(a, b).verdict;
}

} // namespace

Simplex Simplex::face(const Mesh& mesh, int t) { return {2, mesh.triangle(t).v, t}; }

std::string Simplex::describe() const {
    switch (dim) {
    case 0:
        return "vertex " + std::to_string(v[0]);
    case 1:
        return "edge " + std::to_string(v[0]) + "-" + std::to_string(v[1]);
    default:
        return "triangle " + std::to_string(triangle) + " (" + std::to_string(v[0]) + "," + std::to_string(v[1]) +
               "," + std::to_string(v[2]) + ")";
    }
}

const char* to_string(Proximity p) { return p == Proximity::near ? "near" : "visible"; }

SubComplex::SubComplex(const Mesh& mesh, std::set<int> vertices, std::set<Edge> edges, std::set<int> triangles)
    : mesh_(&mesh), vertices_(std::move(vertices)), edges_(std::move(edges)), triangles_(std::move(triangles)) {
    const int n = static_cast<int>(mesh.sites().size());
    for (int v : vertices_)
        if (v < 0 || v >= n) throw PreconditionError("subcomplex vertex " + std::to_string(v) + " not in mesh");
    for (const auto& e : edges_)
        if (e.first >= e.second || !mesh.has_edge(e.first, e.second))
            throw PreconditionError("subcomplex edge " + std::to_string(e.first) + "-" + std::to_string(e.second) +
                                    " not in mesh");
    const int tcount = static_cast<int>(mesh.triangles().size());
    for (int t : triangles_)
        if (t < 0 || t >= tcount) throw PreconditionError("subcomplex triangle " + std::to_string(t) + " not in mesh");
}

SubComplex SubComplex::from_triangles(const Mesh& mesh, std::set<int> triangles) {
    return SubComplex(mesh, {}, {}, std::move(triangles));
}

SubComplex SubComplex::from_simplex(const Mesh& mesh, const Simplex& s) {
    switch (s.dim) {
    case 0:
        return SubComplex(mesh, {s.v[0]}, {}, {});
    case 1:
        return SubComplex(mesh, {}, {make_edge(s.v[0], s.v[1])}, {});
    default:
        return SubComplex(mesh, {}, {}, {s.triangle});
    }
}

SubComplex SubComplex::united(const SubComplex& other) const {
    require_same_mesh(*this, other);
    SubComplex out(*mesh_);
    out.vertices_ = set_union_of(vertices_, other.vertices_);
    out.edges_ = set_union_of(edges_, other.edges_);
    out.triangles_ = set_union_of(triangles_, other.triangles_);
    return out;
}

SubComplex SubComplex::intersected(const SubComplex& other) const {
    require_same_mesh(*this, other);
    SubComplex out(*mesh_);
    out.vertices_ = set_intersection_of(vertices_, other.vertices_);
    out.edges_ = set_intersection_of(edges_, other.edges_);
    out.triangles_ = set_intersection_of(triangles_, other.triangles_);
    return out;
}

SubComplex SubComplex::minus(const SubComplex& other) const {
    require_same_mesh(*this, other);
    SubComplex out(*mesh_);
    out.vertices_ = set_difference_of(vertices_, other.vertices_);
    out.edges_ = set_difference_of(edges_, other.edges_);
    out.triangles_ = set_difference_of(triangles_, other.triangles_);
    return out;
}

bool SubComplex::subset_of(const SubComplex& other) const {
    return includes(other.vertices_, vertices_) && includes(other.edges_, edges_) &&
           includes(other.triangles_, triangles_);
}

std::vector<Simplex> SubComplex::simplices() const {
    std::vector<Simplex> out;
    for (int t : triangles_) out.push_back(Simplex::face(*mesh_, t));
    for (const auto& e : edges_) out.push_back(Simplex::edge(e));
    for (int v : vertices_) out.push_back(Simplex::vertex(v));
    return out;
}

std::string SubComplex::describe() const {
    std::ostringstream out;
    out << "{v:";
    const char* sep = "";
    for (int v : vertices_) {
        out << sep << v;
        sep = ",";
    }
    out << " e:";
    sep = "";
    for (const auto& e : edges_) {
        out << sep << e.first << '-' << e.second;
        sep = ",";
    }
    out << " t:";
    sep = "";
    for (int t : triangles_) {
        out << sep << t;
        sep = ",";
    }
    out << '}';
    return out.str();
}

SubComplex closure(const SubComplex& a) {
    std::set<int> vertices = a.vertices();
    std::set<Edge> edges = a.edges();
    for (const auto& e : a.edges()) {
        vertices.insert(e.first);
        vertices.insert(e.second);
    }
    for (int t : a.triangles()) {
        const Triangle& tri = a.mesh().triangle(t);
        for (const auto& e : triangle_edges(tri)) edges.insert(e);
        for (int v : tri.v) vertices.insert(v);
    }
    return SubComplex(a.mesh(), std::move(vertices), std::move(edges), a.triangles());
}

SubComplex boundary(const SubComplex& a) {
    const Mesh& mesh = a.mesh();
    const SubComplex cl = closure(a);

    std::map<Edge, int> face_count;
    std::set<int> face_vertices;
    for (int t : a.triangles()) {
        const Triangle& tri = mesh.triangle(t);
        for (const auto& e : triangle_edges(tri)) ++face_count[e];
        for (int v : tri.v) face_vertices.insert(v);
    }
    std::set<int> edge_endpoints;
    for (const auto& e : cl.edges()) {
        edge_endpoints.insert(e.first);
        edge_endpoints.insert(e.second);
    }

    std::set<Edge> frontier_edges;
    for (const auto& e : cl.edges()) {
        auto it = face_count.find(e);
        if (it != face_count.end() && it->second < 2) frontier_edges.insert(e);
    }
    std::set<int> frontier_vertices;
    for (int v : cl.vertices()) {
        if (face_vertices.count(v)) {
            const auto star = mesh.triangles_at_vertex(v);
            const bool surrounded = !mesh.is_hull_vertex(v) &&
                                    std::all_of(star.begin(), star.end(), [&](int t) { return a.triangles().count(t) > 0; });
            if (!surrounded) frontier_vertices.insert(v);
        } else if (edge_endpoints.count(v)) {
            frontier_vertices.insert(v);
        }
    }
    return SubComplex(mesh, std::move(frontier_vertices), std::move(frontier_edges), {});
}

SubComplex interior(const SubComplex& a) { return closure(a).minus(boundary(a)); }

RelationReport near(const SubComplex& a, const SubComplex& b) {
    require_same_mesh(a, b);
    RelationReport r = make_report("near", a, b);
    const SubComplex shared = closure(a).intersected(closure(b));
    if (!shared.vertices().empty())
        r.witness = Simplex::vertex(*shared.vertices().begin());
    else if (!shared.edges().empty())
        r.witness = Simplex::edge(*shared.edges().begin());
    else if (!shared.triangles().empty())
        r.witness = Simplex::face(a.mesh(), *shared.triangles().begin());
    r.verdict = r.witness.has_value();
    return r;
}

RelationReport strongly_near(const SubComplex& a, const SubComplex& b) {
    require_same_mesh(a, b);
    RelationReport r = make_report("snear", a, b);
    const auto shared = set_intersection_of(closure(a).edges(), closure(b).edges());
    if (!shared.empty()) r.witness = Simplex::edge(*shared.begin());
    r.verdict = r.witness.has_value();
    return r;
}

RelationReport far(const SubComplex& a, const SubComplex& b) {
    RelationReport r = near(a, b);
    r.relation = "far";
    r.verdict = !r.verdict;
    if (r.verdict) r.witness.reset();
    else r.note = "closures meet at " + r.witness->describe();
    return r;
}

RelationReport strongly_far(const SubComplex& a, const SubComplex& c, const SubComplex* witness, Proximity base) {
    require_same_mesh(a, c);
    RelationReport r = make_report("sfar", a, c);
    if (base == Proximity::visible) r.relation = "sfar-v";
    if (a.empty() || c.empty()) {
        r.note = "strong farness needs nonempty operands";
        return r;
    }

    const SubComplex cl_c = closure(c);
    auto holds = [&](const SubComplex& b) { return far_through(base, a, b) && cl_c.subset_of(interior(closure(b))); };

    if (witness) {
        require_same_mesh(a, *witness);
        r.operands.push_back(witness->describe());
        r.verdict = holds(*witness);
        r.witness_set = *witness;
        if (!r.verdict) {
            if (!far_through(base, a, *witness)) r.note = "A is not far from the witness";
            else r.note = "cl C is not inside int(cl B)";
        }
        return r;
    }
    for (int radius = 1; radius <= 3; ++radius) {
        SubComplex b = vertex_neighborhood(c, radius);
        if (holds(b)) {
            r.verdict = true;
            r.witness_set = std::move(b);
            r.note = "witness found at radius " + std::to_string(radius);
            return r;
        }
    }
    r.note = "no witness among neighborhoods of radius 1..3";
    return r;
}

RelationReport visible(const SubComplex& a, const SubComplex& b) {
    require_same_mesh(a, b);
    RelationReport r = make_report("visible", a, b);
    const auto shared = set_intersection_of(vertex_support(a), vertex_support(b));
    if (!shared.empty()) r.witness = Simplex::vertex(*shared.begin());
    r.verdict = r.witness.has_value();
    return r;
}

RelationReport strongly_visible(const SubComplex& a, const SubComplex& b) {
    require_same_mesh(a, b);
    RelationReport r = make_report("svisible", a, b);
    const SubComplex cl_a = closure(a), cl_b = closure(b);
    const auto shared = set_intersection_of(cl_a.edges(), cl_b.edges());
    if (!shared.empty()) {
        r.witness = Simplex::edge(*shared.begin());
        r.verdict = true;
    } else if (!a.empty() && cl_a.subset_of(cl_b)) {
        r.verdict = true;
        r.witness_set = cl_a;
        r.note = "A lies inside B";
    } else if (!b.empty() && cl_b.subset_of(cl_a)) {
        r.verdict = true;
        r.witness_set = cl_b;
        r.note = "B lies inside A";
    }
    return r;
}

RelationReport invisible(const SubComplex& a, const SubComplex& b) {
    RelationReport r = visible(a, b);
    r.relation = "invisible";
    r.verdict = !r.verdict;
    if (r.verdict) r.witness.reset();
    else r.note = "shared " + r.witness->describe();
    return r;
}

RelationReport strongly_invisible(const SubComplex& a, const SubComplex& b) {
    require_same_mesh(a, b);
    RelationReport r = make_report("sinvisible", a, b);
    for (const Simplex& s : b.simplices()) {
        if (visible(SubComplex::from_simplex(b.mesh(), s), a).verdict) {
            r.witness = s;
            r.note = "simplex of B visible from A";
            return r;
        }
    }
    r.verdict = true;
    return r;
}

RelationReport relate(Proximity base, const SubComplex& a, const SubComplex& b) {
    return base == Proximity::near ? near(a, b) : visible(a, b);
}

SubComplex vertex_neighborhood(const SubComplex& c, int radius) {
    const Mesh& mesh = c.mesh();
    std::set<int> tris = c.triangles();
    std::set<int> frontier = closure(c).vertices();
    for (int step = 0; step < radius; ++step) {
        std::set<int> next_vertices;
        for (int v : frontier)
            for (int t : mesh.triangles_at_vertex(v))
                if (tris.insert(t).second)
                    for (int w : mesh.triangle(t).v) next_vertices.insert(w);
        frontier = std::move(next_vertices);
    }
    return SubComplex::from_triangles(mesh, std::move(tris));
}

SubComplex random_subcomplex(const Mesh& mesh, Rng& rng) {
    std::set<int> tris;
    for (int t = 0; t < static_cast<int>(mesh.triangles().size()); ++t)
        if (one_in(rng, 3)) tris.insert(t);
    return closure(SubComplex::from_triangles(mesh, std::move(tris)));
}

std::vector<RelationReport> check_cech_axioms(const Mesh& mesh, Proximity relation, int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("check_cech_axioms: trials must be >= 1");
    const std::string prefix = std::string("cech.") + to_string(relation) + ".";
    std::vector<RelationReport> reports(4);
    reports[0].relation = prefix + "symmetry";
    reports[1].relation = prefix + "additivity";
    reports[2].relation = prefix + "nonempty";
    reports[3].relation = prefix + "intersection";

    auto record = [&](RelationReport& r, bool ok, int trial, const SubComplex& a, const SubComplex& b,
                      const SubComplex* c) {
        ++r.checked;
        if (ok) return;
        if (r.violations++ == 0) {
            std::ostringstream msg;
            msg << "trial=" << trial << " seed=" << seed << " A=" << a.describe() << " B=" << b.describe();
            if (c) msg << " C=" << c->describe();
            r.counterexample = msg.str();
        }
    };

    const SubComplex empty(mesh);
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = trial_rng(seed, static_cast<std::uint64_t>(trial));
        const SubComplex a = random_subcomplex(mesh, rng);
        const SubComplex b = random_subcomplex(mesh, rng);
        const SubComplex c = random_subcomplex(mesh, rng);
        const bool ab = relate(relation, a, b).verdict;

        record(reports[0], ab == relate(relation, b, a).verdict, trial, a, b, nullptr);
        record(reports[1], relate(relation, a, b.united(c)).verdict == (ab || relate(relation, a, c).verdict), trial, a,
               b, &c);
        record(reports[2], (!ab || (!a.empty() && !b.empty())) && !relate(relation, empty, b).verdict, trial, a, b,
               nullptr);
        record(reports[3], a.intersected(b).empty() || ab, trial, a, b, nullptr);
    }
    for (auto& r : reports) {
        r.verdict = r.violations == 0;
        r.operands = {"mesh " + mesh.id()};
    }
    return reports;
}

} // namespace proxmesh
