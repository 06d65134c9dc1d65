#include "proxmesh/io.hpp"

#include "proxmesh/error.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace proxmesh {

using nlohmann::json;

namespace {

constexpr const char* kMeshFormat = "proxmesh.mesh/1";

json parse_json(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

// Numbers are stored as strings; plain JSON numbers are accepted on input.
Rational number_from(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
    throw ParseError("expected a number, got " + j.dump());
}

int index_from(const json& j) {
    if (!j.is_number_integer()) throw ParseError("expected an integer index, got " + j.dump());
    return j.get<int>();
}

const json& field(const json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
    return doc.at(name);
}

const json& array_field(const json& doc, const char* name) {
    const json& j = field(doc, name);
    if (!j.is_array()) throw ParseError(std::string("field '") + name + "' must be an array");
    return j;
}

json point_json(const Point2& p) { return json::array({format_rational(p.x), format_rational(p.y)}); }

Point2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("expected [x, y], got " + j.dump());
    return {number_from(j[0]), number_from(j[1])};
}

void check_mesh_id(const Mesh& mesh, const json& doc) {
    const std::string id = field(doc, "mesh_id").get<std::string>();
    if (id != mesh.id()) throw MeshMismatchError("document refers to mesh " + id + ", not " + mesh.id());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Type errors from malformed documents surface as ParseError.
template <typename F>
auto guarded(const char* what, F&& body) {
    try {
        return body();
    } catch (const json::exception& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

} // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << content;
    out.flush();
    if (!out) throw Error("write to " + path + " failed");
}

std::vector<Point2> parse_sites(const std::string& text) {
    std::vector<Point2> sites;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
            throw ParseError("expected 'x,y', got '" + line + "'", number);
        try {
            sites.push_back(make_point(std::string_view(line).substr(0, comma), std::string_view(line).substr(comma + 1)));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), number);
        }
    }
    return sites;
}

std::string format_sites(std::span<const Point2> sites, const std::vector<std::string>& comments) {
    std::string out;
    for (const auto& c : comments) out += "# " + c + "\n";
    for (const auto& p : sites) out += format_rational(p.x) + "," + format_rational(p.y) + "\n";
    return out;
}

std::string mesh_to_json(const Mesh& mesh, bool with_voronoi) {
    json doc;
    doc["format"] = kMeshFormat;
    doc["id"] = mesh.id();
    const BBox& box = mesh.clip_box();
    doc["bbox"] = json::array(
        {format_rational(box.lo.x), format_rational(box.lo.y), format_rational(box.hi.x), format_rational(box.hi.y)});
    json sites = json::array();
    for (const auto& p : mesh.sites().points()) sites.push_back(point_json(p));
    doc["sites"] = std::move(sites);
    json tris = json::array();
    for (const auto& t : mesh.triangles()) tris.push_back(json::array({t.v[0], t.v[1], t.v[2]}));
    doc["triangles"] = std::move(tris);
    if (with_voronoi) {
        json cells = json::array();
        for (const auto& region : mesh.voronoi()) {
            json cell = json::array();
            for (const auto& p : region.cell.vertices()) cell.push_back(point_json(p));
            cells.push_back({{"site", region.site}, {"clipped", region.clipped}, {"cell", std::move(cell)}});
        }
        doc["voronoi"] = std::move(cells);
    }
    return dump(doc);
}

Mesh mesh_from_json(const std::string& text) {
    return guarded("mesh", [&] {
        const json doc = parse_json(text, "mesh");
        if (doc.contains("format") && doc["format"] != kMeshFormat)
            throw ParseError("unsupported mesh format " + doc["format"].dump());
        const json& box = array_field(doc, "bbox");
        if (box.size() != 4) throw ParseError("bbox must hold four numbers");
        const BBox bbox{{number_from(box[0]), number_from(box[1])}, {number_from(box[2]), number_from(box[3])}};
        if (!(bbox.lo.x < bbox.hi.x && bbox.lo.y < bbox.hi.y)) throw DegenerateInputError("bbox has zero area");

        std::vector<Point2> points;
        for (const auto& p : array_field(doc, "sites")) points.push_back(point_from(p));
        std::vector<Triangle> triangles;
        for (const auto& t : array_field(doc, "triangles")) {
            if (!t.is_array() || t.size() != 3) throw ParseError("triangle must be [i, j, k], got " + t.dump());
            triangles.push_back({{index_from(t[0]), index_from(t[1]), index_from(t[2])}});
        }
        Mesh mesh = Mesh::from_parts(SiteSet(std::move(points)), std::move(triangles), bbox);
        if (doc.contains("id") && doc["id"].get<std::string>() != mesh.id())
            throw ParseError("mesh id " + doc["id"].get<std::string>() + " does not match content (" + mesh.id() + ")");
        return mesh;
    });
}

std::string subcomplex_to_json(const SubComplex& c) {
    json doc;
    doc["mesh_id"] = c.mesh().id();
    doc["vertices"] = c.vertices();
    json edges = json::array();
    for (const auto& [p, q] : c.edges()) edges.push_back(json::array({p, q}));
    doc["edges"] = std::move(edges);
    doc["triangles"] = c.triangles();
    return dump(doc);
}

SubComplex subcomplex_from_json(const Mesh& mesh, const std::string& text) {
    return guarded("subcomplex", [&] {
        const json doc = parse_json(text, "subcomplex");
        check_mesh_id(mesh, doc);
        std::set<int> vertices, triangles;
        std::set<Edge> edges;
        if (doc.contains("vertices"))
            for (const auto& v : array_field(doc, "vertices")) vertices.insert(index_from(v));
        if (doc.contains("edges"))
            for (const auto& e : array_field(doc, "edges")) {
                if (!e.is_array() || e.size() != 2) throw ParseError("edge must be [p, q], got " + e.dump());
                edges.insert(make_edge(index_from(e[0]), index_from(e[1])));
            }
        if (doc.contains("triangles"))
            for (const auto& t : array_field(doc, "triangles")) triangles.insert(index_from(t));
        return SubComplex(mesh, std::move(vertices), std::move(edges), std::move(triangles));
    });
}

std::string region_to_json(const Region& region) {
    json doc;
    doc["mesh_id"] = region.mesh().id();
    doc["mode"] = to_string(region.mode());
    doc["triangles"] = region.triangles();
    return dump(doc);
}

Region region_from_json(const Mesh& mesh, const std::string& text) {
    return guarded("region", [&] {
        const json doc = parse_json(text, "region");
        check_mesh_id(mesh, doc);
        const RegionMode mode = doc.contains("mode") ? parse_region_mode(doc["mode"].get<std::string>()) : RegionMode::pairwise;
        std::set<int> triangles;
        for (const auto& t : array_field(doc, "triangles")) triangles.insert(index_from(t));
        return build_region(mesh, std::move(triangles), mode);
    });
}

std::string constraints_to_json(const ConstraintSet& constraints) {
    json list = json::array();
    for (const auto& [p, q] : constraints.segments()) list.push_back(json::array({p, q}));
    return dump(json{{"constraints", std::move(list)}});
}

ConstraintSet constraints_from_json(const SiteSet& sites, const std::string& text) {
    return guarded("constraints", [&] {
        const json doc = parse_json(text, "constraints");
        std::vector<Edge> segments;
        for (const auto& e : array_field(doc, "constraints")) {
            if (!e.is_array() || e.size() != 2) throw ParseError("constraint must be [p, q], got " + e.dump());
            segments.emplace_back(index_from(e[0]), index_from(e[1]));
        }
        return ConstraintSet(sites, std::move(segments));
    });
}

} // namespace proxmesh
