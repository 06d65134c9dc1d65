#include "proxmesh/mesh.hpp"

#include "proxmesh/error.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <set>
#include <sstream>

namespace proxmesh {

bool BBox::contains(const Point2& p) const { return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y; }

bool BBox::strictly_contains(const Point2& p) const { return lo.x < p.x && p.x < hi.x && lo.y < p.y && p.y < hi.y; }

Polygon BBox::polygon() const { return Polygon({lo, Point2(hi.x, lo.y), hi, Point2(lo.x, hi.y)}); }

namespace {

BBox extent_of(std::span<const Point2> pts) {
    BBox b{pts.front(), pts.front()};
    for (const auto& p : pts) {
        if (p.x < b.lo.x) b.lo.x = p.x;
        if (p.y < b.lo.y) b.lo.y = p.y;
        if (p.x > b.hi.x) b.hi.x = p.x;
        if (p.y > b.hi.y) b.hi.y = p.y;
    }
    return b;
}

BBox grow(BBox box, const Rational& mx, const Rational& my) {
    box.lo.x -= mx;
    box.lo.y -= my;
    box.hi.x += mx;
    box.hi.y += my;
    return box;
}

Triangle canonical(std::array<int, 3> v) {
    auto first = std::min_element(v.begin(), v.end());
    std::rotate(v.begin(), first, v.end());
    return Triangle{v};
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct WorkTri {
    std::array<int, 3> v;
    // nbr[i] lies across the edge opposite v[i]; -1 on the outer boundary.
    std::array<int, 3> nbr;
    bool alive = true;
};

// Incremental Bowyer-Watson over the sites plus three enclosing vertices
// placed at distance proportional to `scale`.
class BowyerWatson {
public:
    BowyerWatson(const std::vector<Point2>& sites, const Rational& scale) : pts_(sites), n_(static_cast<int>(sites.size())) {
        const BBox ext = extent_of(sites);
        const Rational cx = (ext.lo.x + ext.hi.x) / 2;
        const Rational cy = (ext.lo.y + ext.hi.y) / 2;
        Rational d = std::max(Rational(ext.hi.x - ext.lo.x), Rational(ext.hi.y - ext.lo.y));
        d *= scale;
        pts_.emplace_back(cx - 2 * d, cy - d);
        pts_.emplace_back(cx + 2 * d, cy - d);
        pts_.emplace_back(cx, cy + 2 * d);
        tris_.push_back({{n_, n_ + 1, n_ + 2}, {-1, -1, -1}});
    }

    std::vector<std::array<int, 3>> run() {
        for (int p = 0; p < n_; ++p) insert(p);
        std::vector<std::array<int, 3>> out;
        for (const auto& t : tris_)
            if (t.alive && t.v[0] < n_ && t.v[1] < n_ && t.v[2] < n_) out.push_back(t.v);
        return out;
    }

private:
    int locate(int p) {
        int t = last_;
        const Point2& q = pts_[static_cast<std::size_t>(p)];
        for (std::size_t step = 0; step <= 4 * tris_.size(); ++step) {
            const auto& tri = tris_[static_cast<std::size_t>(t)];
            int next = -1;
            for (int k = 0; k < 3; ++k) {
                const int i = static_cast<int>((static_cast<std::size_t>(k) + step) % 3);
                if (orient2d(at(tri.v[(i + 1) % 3]), at(tri.v[(i + 2) % 3]), q) < 0) {
                    next = tri.nbr[static_cast<std::size_t>(i)];
                    break;
                }
            }
            if (next < 0) return t;
            t = next;
        }
        for (std::size_t i = 0; i < tris_.size(); ++i) {
            const auto& tri = tris_[i];
            if (tri.alive && orient2d(at(tri.v[0]), at(tri.v[1]), q) >= 0 &&
                orient2d(at(tri.v[1]), at(tri.v[2]), q) >= 0 && orient2d(at(tri.v[2]), at(tri.v[0]), q) >= 0)
                return static_cast<int>(i);
        }
        throw Error("bowyer-watson: point location failed");
    }

    bool encroached(int t, int p) const {
        const auto& v = tris_[static_cast<std::size_t>(t)].v;
        return incircle(at(v[0]), at(v[1]), at(v[2]), at(p)) > 0;
    }

    void insert(int p) {
        const int start = locate(p);
        if (!encroached(start, p)) throw Error("bowyer-watson: containing triangle does not encroach");

        mark_.resize(tris_.size(), -1);
        std::vector<int> cavity{start};
        mark_[static_cast<std::size_t>(start)] = p;
        for (std::size_t head = 0; head < cavity.size(); ++head) {
            for (int n : tris_[static_cast<std::size_t>(cavity[head])].nbr) {
                if (n < 0 || mark_[static_cast<std::size_t>(n)] == p) continue;
                if (encroached(n, p)) {
                    mark_[static_cast<std::size_t>(n)] = p;
                    cavity.push_back(n);
                }
            }
        }

        struct Rim {
            int a, b, outer;
        };
        std::vector<Rim> rim;
        for (int c : cavity) {
            auto& tri = tris_[static_cast<std::size_t>(c)];
            for (int i = 0; i < 3; ++i) {
                const int n = tri.nbr[static_cast<std::size_t>(i)];
                if (n < 0 || mark_[static_cast<std::size_t>(n)] != p)
                    rim.push_back({tri.v[(i + 1) % 3], tri.v[(i + 2) % 3], n});
            }
            tri.alive = false;
        }

        std::vector<std::pair<int, int>> starts, ends;  // (vertex, new triangle)
        const int first = static_cast<int>(tris_.size());
        for (const auto& e : rim) {
            const int idx = static_cast<int>(tris_.size());
            tris_.push_back({{e.a, e.b, p}, {-1, -1, e.outer}});
            if (e.outer >= 0) {
                auto& o = tris_[static_cast<std::size_t>(e.outer)];
                for (int j = 0; j < 3; ++j)
                    if (o.v[(j + 1) % 3] == e.b && o.v[(j + 2) % 3] == e.a) o.nbr[static_cast<std::size_t>(j)] = idx;
            }
            starts.emplace_back(e.a, idx);
            ends.emplace_back(e.b, idx);
        }
        auto find = [](const std::vector<std::pair<int, int>>& list, int vertex) {
            for (const auto& [v, t] : list)
                if (v == vertex) return t;
            throw Error("bowyer-watson: open cavity rim");
        };
        for (int idx = first; idx < static_cast<int>(tris_.size()); ++idx) {
            auto& tri = tris_[static_cast<std::size_t>(idx)];
            tri.nbr[0] = find(starts, tri.v[1]);
            tri.nbr[1] = find(ends, tri.v[0]);
        }
        last_ = first;
        mark_.resize(tris_.size(), -1);
    }

    const Point2& at(int i) const { return pts_[static_cast<std::size_t>(i)]; }

    std::vector<Point2> pts_;
    int n_;
    std::vector<WorkTri> tris_;
    std::vector<int> mark_;
    int last_ = 0;
};

Rational twice_area_sum(const std::vector<Point2>& pts, const std::vector<std::array<int, 3>>& tris) {
    Rational sum = 0;
    for (const auto& t : tris)
        sum += twice_signed_area(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])],
                                 pts[static_cast<std::size_t>(t[2])]);
    return sum;
}

void orient_ccw(std::array<int, 3>& t, const std::vector<Point2>& pts) {
    if (orient2d(pts[static_cast<std::size_t>(t[0])], pts[static_cast<std::size_t>(t[1])],
                 pts[static_cast<std::size_t>(t[2])]) < 0)
        std::swap(t[1], t[2]);
}

// Among the two diagonals of a cocircular quadrilateral keep the one whose
// smaller endpoint index is smaller. Each flip lowers the sum of diagonal
// minima, so the loop terminates; the fixed point triangulates every
// cocircular polygon as a fan from its smallest index.
void resolve_cocircular(std::vector<std::array<int, 3>>& tris, const std::vector<Point2>& pts) {
    for (bool flipped = true; flipped;) {
        flipped = false;
        std::map<Edge, std::vector<std::pair<int, int>>> incident;  // edge -> (triangle, opposite vertex)
        for (int t = 0; t < static_cast<int>(tris.size()); ++t)
            for (int i = 0; i < 3; ++i)
                incident[make_edge(tris[t][(i + 1) % 3], tris[t][(i + 2) % 3])].emplace_back(t, tris[t][i]);
        std::vector<bool> touched(tris.size(), false);
        for (const auto& [edge, sides] : incident) {
            if (sides.size() != 2) continue;
            const auto [t1, o1] = sides[0];
            const auto [t2, o2] = sides[1];
            if (touched[static_cast<std::size_t>(t1)] || touched[static_cast<std::size_t>(t2)]) continue;
            if (std::min(o1, o2) >= std::min(edge.first, edge.second)) continue;
            const auto& tri = tris[static_cast<std::size_t>(t1)];
            if (incircle(pts[static_cast<std::size_t>(tri[0])], pts[static_cast<std::size_t>(tri[1])],
                         pts[static_cast<std::size_t>(tri[2])], pts[static_cast<std::size_t>(o2)]) != 0)
                continue;
            tris[static_cast<std::size_t>(t1)] = {o1, o2, edge.first};
            tris[static_cast<std::size_t>(t2)] = {o1, o2, edge.second};
            orient_ccw(tris[static_cast<std::size_t>(t1)], pts);
            orient_ccw(tris[static_cast<std::size_t>(t2)], pts);
            touched[static_cast<std::size_t>(t1)] = touched[static_cast<std::size_t>(t2)] = true;
            flipped = true;
        }
    }
}

Rational hull_twice_area(const SiteSet& sites) { return convex_hull(sites.points()).twice_area(); }

} // namespace

SiteSet::SiteSet(std::vector<Point2> sites, const Rational& margin) : sites_(std::move(sites)) {
    if (sites_.size() < 3) throw DegenerateInputError("need at least 3 sites, got " + std::to_string(sites_.size()));
    if (margin <= 0) throw PreconditionError("site margin must be positive");

    std::vector<int> order(sites_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return sites_[static_cast<std::size_t>(a)] < sites_[static_cast<std::size_t>(b)];
    });
    std::vector<std::pair<int, int>> dups;
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (sites_[static_cast<std::size_t>(order[i])] == sites_[static_cast<std::size_t>(order[i - 1])]) {
            std::size_t j = i - 1;
            while (j > 0 && sites_[static_cast<std::size_t>(order[j - 1])] == sites_[static_cast<std::size_t>(order[i])]) --j;
            dups.emplace_back(order[j], order[i]);
        }
    }
    if (!dups.empty()) {
        std::ostringstream msg;
        msg << "duplicate sites:";
        for (const auto& [a, b] : dups) msg << " " << a << "=" << b << " " << to_string(sites_[static_cast<std::size_t>(a)]);
        throw DuplicateSiteError(msg.str(), std::move(dups));
    }

    bool collinear = true;
    for (std::size_t i = 2; i < sites_.size() && collinear; ++i)
        collinear = orient2d(sites_[0], sites_[1], sites_[i]) == 0;
    if (collinear) throw DegenerateInputError("all sites are collinear");

    const BBox ext = extent_of(sites_);
    bbox_ = grow(ext, margin * (ext.hi.x - ext.lo.x), margin * (ext.hi.y - ext.lo.y));
}

BBox default_clip_box(const SiteSet& sites, std::span<const Triangle> triangles, const Rational& margin) {
    if (margin <= 0) throw PreconditionError("clip margin must be positive");
    std::vector<Point2> pts = sites.points();
    const BBox site_ext = extent_of(pts);
    for (const auto& t : triangles)
        pts.push_back(circumcenter(sites[static_cast<std::size_t>(t.v[0])], sites[static_cast<std::size_t>(t.v[1])],
                                   sites[static_cast<std::size_t>(t.v[2])]));
    return grow(extent_of(pts), margin * (site_ext.hi.x - site_ext.lo.x), margin * (site_ext.hi.y - site_ext.lo.y));
}

Mesh::Mesh(SiteSet sites, std::vector<Triangle> triangles, BBox clip_box)
    : sites_(std::move(sites)), triangles_(std::move(triangles)), clip_box_(std::move(clip_box)) {
    const std::size_t n = sites_.size();
    vertex_triangles_.assign(n, {});
    for (int t = 0; t < static_cast<int>(triangles_.size()); ++t) {
        const auto& v = triangles_[static_cast<std::size_t>(t)].v;
        for (int i = 0; i < 3; ++i) {
            edges_[make_edge(v[i], v[(i + 1) % 3])].push_back(t);
            vertex_triangles_[static_cast<std::size_t>(v[i])].push_back(t);
        }
    }
    vertex_neighbors_.assign(n, {});
    hull_vertex_.assign(n, false);
    for (const auto& [e, tris] : edges_) {
        vertex_neighbors_[static_cast<std::size_t>(e.first)].push_back(e.second);
        vertex_neighbors_[static_cast<std::size_t>(e.second)].push_back(e.first);
        if (tris.size() == 1) hull_vertex_[static_cast<std::size_t>(e.first)] = hull_vertex_[static_cast<std::size_t>(e.second)] = true;
    }
    for (auto& nb : vertex_neighbors_) std::sort(nb.begin(), nb.end());

    const Polygon box = clip_box_.polygon();
    voronoi_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& s = sites_[i];
        std::vector<Point2> ring = box.vertices();
        for (int j : vertex_neighbors_[i]) {
            const Point2& o = sites_[static_cast<std::size_t>(j)];
            // |x - s|^2 <= |x - o|^2
            ring = clip_halfplane(ring, 2 * (o.x - s.x), 2 * (o.y - s.y), o.x * o.x + o.y * o.y - s.x * s.x - s.y * s.y);
        }
        Polygon cell(std::move(ring));
        const bool clipped = std::any_of(cell.vertices().begin(), cell.vertices().end(),
                                         [&](const Point2& p) { return clip_box_.on_boundary(p); });
        voronoi_.push_back(VoronoiRegion{static_cast<int>(i), std::move(cell), clipped});
    }

    std::ostringstream canon;
    for (const auto& p : sites_.points()) canon << format_rational(p.x) << ',' << format_rational(p.y) << ';';
    canon << '|';
    for (const auto& t : triangles_) canon << t.v[0] << ',' << t.v[1] << ',' << t.v[2] << ';';
    canon << '|' << format_rational(clip_box_.lo.x) << ',' << format_rational(clip_box_.lo.y) << ','
          << format_rational(clip_box_.hi.x) << ',' << format_rational(clip_box_.hi.y);
    std::ostringstream hex;
    hex << std::hex;
    hex.width(16);
    hex.fill('0');
    hex << fnv1a(canon.str());
    id_ = hex.str();
}

Mesh Mesh::from_parts(SiteSet sites, std::vector<Triangle> triangles, const BBox& clip_box) {
    const int n = static_cast<int>(sites.size());
    if (triangles.empty()) throw DegenerateInputError("mesh has no triangles");
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (auto& t : triangles) {
        for (int v : t.v) {
            if (v < 0 || v >= n) throw PreconditionError("triangle index " + std::to_string(v) + " out of range");
            used[static_cast<std::size_t>(v)] = true;
        }
        if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2])
            throw PreconditionError("triangle repeats a vertex");
        if (orient2d(sites[static_cast<std::size_t>(t.v[0])], sites[static_cast<std::size_t>(t.v[1])],
                     sites[static_cast<std::size_t>(t.v[2])]) <= 0)
            throw PreconditionError("triangle " + std::to_string(t.v[0]) + "," + std::to_string(t.v[1]) + "," +
                                    std::to_string(t.v[2]) + " is not counterclockwise");
        t = canonical(t.v);
    }
    std::sort(triangles.begin(), triangles.end());
    if (std::adjacent_find(triangles.begin(), triangles.end()) != triangles.end())
        throw PreconditionError("duplicate triangle");
    for (int v = 0; v < n; ++v)
        if (!used[static_cast<std::size_t>(v)]) throw PreconditionError("site " + std::to_string(v) + " is in no triangle");
    for (const auto& p : sites.points())
        if (!clip_box.strictly_contains(p)) throw PreconditionError("clip box does not strictly contain site " + to_string(p));

    // Directed edges: an interior edge appears once in each direction.
    std::map<std::pair<int, int>, int> directed;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t) {
        const auto& v = triangles[static_cast<std::size_t>(t)].v;
        for (int i = 0; i < 3; ++i)
            if (!directed.emplace(std::pair{v[i], v[(i + 1) % 3]}, t).second)
                throw PreconditionError("edge " + std::to_string(v[i]) + "-" + std::to_string(v[(i + 1) % 3]) +
                                        " is used twice in the same direction");
    }
    Rational area = 0;
    for (const auto& t : triangles)
        area += twice_signed_area(sites[static_cast<std::size_t>(t.v[0])], sites[static_cast<std::size_t>(t.v[1])],
                                  sites[static_cast<std::size_t>(t.v[2])]);
    if (area != hull_twice_area(sites)) throw PreconditionError("triangles do not tile the convex hull");
    for (const auto& [de, t] : directed) {
        const auto twin = directed.find({de.second, de.first});
        const Point2& a = sites[static_cast<std::size_t>(de.first)];
        const Point2& b = sites[static_cast<std::size_t>(de.second)];
        if (twin == directed.end()) {
            for (const auto& s : sites.points())
                if (orient2d(a, b, s) < 0)
                    throw PreconditionError("boundary edge " + std::to_string(de.first) + "-" +
                                            std::to_string(de.second) + " is not on the convex hull");
        } else if (de.first < de.second) {
            const auto& tv = triangles[static_cast<std::size_t>(t)].v;
            const auto& ov = triangles[static_cast<std::size_t>(twin->second)].v;
            int opposite = -1;
            for (int v : ov)
                if (v != de.first && v != de.second) opposite = v;
            if (incircle(sites[static_cast<std::size_t>(tv[0])], sites[static_cast<std::size_t>(tv[1])],
                         sites[static_cast<std::size_t>(tv[2])], sites[static_cast<std::size_t>(opposite)]) > 0)
                throw PreconditionError("edge " + std::to_string(de.first) + "-" + std::to_string(de.second) +
                                        " is not locally Delaunay");
        }
    }
    return Mesh(std::move(sites), std::move(triangles), clip_box);
}

std::span<const int> Mesh::triangles_at_edge(int p, int q) const {
    auto it = edges_.find(make_edge(p, q));
    if (it == edges_.end()) return {};
    return it->second;
}

std::span<const int> Mesh::triangles_at_vertex(int v) const { return vertex_triangles_.at(static_cast<std::size_t>(v)); }

std::span<const int> Mesh::vertex_neighbors(int v) const { return vertex_neighbors_.at(static_cast<std::size_t>(v)); }

std::vector<int> Mesh::edge_adjacent(int t) const {
    std::vector<int> out;
    const auto& v = triangle(t).v;
    for (int i = 0; i < 3; ++i)
        for (int o : triangles_at_edge(v[i], v[(i + 1) % 3]))
            if (o != t) out.push_back(o);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> Mesh::vertex_adjacent(int t) const {
    std::set<int> out;
    for (int v : triangle(t).v)
        for (int o : triangles_at_vertex(v))
            if (o != t) out.insert(o);
    return {out.begin(), out.end()};
}

Polygon Mesh::triangle_polygon(int t) const {
    const auto& v = triangle(t).v;
    return Polygon({point(v[0]), point(v[1]), point(v[2])});
}

Mesh triangulate(const SiteSet& sites, const MeshOptions& options) {
    const Rational hull_area = hull_twice_area(sites);
    std::vector<std::array<int, 3>> raw;
    // The enclosing triangle must lie outside every circumcircle of the final
    // triangulation; grow it until the real triangles tile the hull.
    for (Rational scale = 8;; scale *= 16) {
        raw = BowyerWatson(sites.points(), scale).run();
        if (twice_area_sum(sites.points(), raw) == hull_area) break;
    }
    resolve_cocircular(raw, sites.points());

    std::vector<Triangle> triangles;
    triangles.reserve(raw.size());
    for (const auto& t : raw) triangles.push_back(canonical(t));
    std::sort(triangles.begin(), triangles.end());

    BBox box = options.clip_box ? *options.clip_box : default_clip_box(sites, triangles, options.clip_margin);
    return Mesh::from_parts(sites, std::move(triangles), box);
}

bool is_delaunay_triangle(const Triangle& t, const SiteSet& sites) {
    const Point2& a = sites[static_cast<std::size_t>(t.v[0])];
    const Point2& b = sites[static_cast<std::size_t>(t.v[1])];
    const Point2& c = sites[static_cast<std::size_t>(t.v[2])];
    const int orientation = orient2d(a, b, c);
    if (orientation == 0) return false;
    for (int i = 0; i < static_cast<int>(sites.size()); ++i) {
        if (t.has_vertex(i)) continue;
        if (incircle(a, b, c, sites[static_cast<std::size_t>(i)]) * orientation > 0) return false;
    }
    return true;
}

bool is_delaunay_edge(int p, int q, const Mesh& mesh) {
    const int n = static_cast<int>(mesh.sites().size());
    if (p == q || p < 0 || q < 0 || p >= n || q >= n)
        throw PreconditionError("is_delaunay_edge: invalid site pair " + std::to_string(p) + "," + std::to_string(q));
    const auto& cells = mesh.voronoi();
    return intersect_convex(cells[static_cast<std::size_t>(p)].cell, cells[static_cast<std::size_t>(q)].cell).kind ==
           ConvexIntersection::Kind::segment;
}

std::vector<VoronoiRegion> voronoi(const SiteSet& sites, const MeshOptions& options) {
    return triangulate(sites, options).voronoi();
}

std::vector<int> triangles_sharing_edge(const Mesh& mesh, int p, int q) {
    if (p == q) throw PreconditionError("triangles_sharing_edge: p == q");
    auto tris = mesh.triangles_at_edge(p, q);
    return {tris.begin(), tris.end()};
}

} // namespace proxmesh
