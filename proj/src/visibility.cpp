#include "proxmesh/visibility.hpp"

#include "proxmesh/error.hpp"

#include <algorithm>
#include <sstream>

namespace proxmesh {

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Parameter of s's projection onto the line p + t (q - p).
Rational projection(const Point2& p, const Point2& q, const Point2& s) {
    const Rational dx = q.x - p.x, dy = q.y - p.y;
    return ((s.x - p.x) * dx + (s.y - p.y) * dy) / (dx * dx + dy * dy);
}

Point2 along(const Point2& p, const Point2& q, const Rational& t) {
    return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

enum class Contact { none, endpoint, interior };

// How segment xy meets segment pq, solved parametrically.
Contact contact(const Point2& p, const Point2& q, const Point2& x, const Point2& y) {
    const Rational denom = (q.x - p.x) * (y.y - x.y) - (q.y - p.y) * (y.x - x.x);
    const Rational wx = x.x - p.x, wy = x.y - p.y;
    if (denom != 0) {
        const Rational t = (wx * (y.y - x.y) - wy * (y.x - x.x)) / denom;
        const Rational u = (wx * (q.y - p.y) - wy * (q.x - p.x)) / denom;
        if (t < 0 || t > 1 || u < 0 || u > 1) return Contact::none;
        return (t > 0 && t < 1 && u > 0 && u < 1) ? Contact::interior : Contact::endpoint;
    }
    if (wx * (q.y - p.y) - wy * (q.x - p.x) != 0) return Contact::none;  // parallel, distinct lines
    Rational lo = projection(p, q, x), hi = projection(p, q, y);
    if (hi < lo) std::swap(lo, hi);
    const Rational from = std::max(lo, Rational(0));
    const Rational to = std::min(hi, Rational(1));
    if (from < to) return Contact::interior;
    return from == to ? Contact::endpoint : Contact::none;
}

void check_index(int i, const SiteSet& sites) {
    if (i < 0 || i >= static_cast<int>(sites.size()))
        throw PreconditionError("site index " + std::to_string(i) + " out of range");
}

} // namespace

ConstraintSet::ConstraintSet(const SiteSet& sites, std::vector<Edge> segments) {
    for (auto& e : segments) {
        check_index(e.first, sites);
        check_index(e.second, sites);
        if (e.first == e.second) throw PreconditionError("constraint " + std::to_string(e.first) + "-" +
                                                         std::to_string(e.second) + " is degenerate");
        e = make_edge(e.first, e.second);
    }
    std::sort(segments.begin(), segments.end());
    segments.erase(std::unique(segments.begin(), segments.end()), segments.end());
    segments_ = std::move(segments);
}

bool ConstraintSet::contains(int p, int q) const {
    return std::binary_search(segments_.begin(), segments_.end(), make_edge(p, q));
}

ConstraintSet ConstraintSet::without(int p, int q) const {
    ConstraintSet out;
    const Edge e = make_edge(p, q);
    std::copy_if(segments_.begin(), segments_.end(), std::back_inserter(out.segments_),
                 [&](const Edge& s) { return s != e; });
    return out;
}

bool collinear_visible(const Point2& p, const Point2& q, const SiteSet& sites) {
    if (p == q) throw PreconditionError("collinear_visible: p and q coincide at " + to_string(p));
    const auto& pts = sites.points();
    if (std::find(pts.begin(), pts.end(), p) == pts.end() || std::find(pts.begin(), pts.end(), q) == pts.end())
        throw PreconditionError("collinear_visible: endpoints must be sites");
    const Segment pq(p, q);
    return std::none_of(pts.begin(), pts.end(), [&](const Point2& s) { return point_in_segment_interior(s, pq); });
}

bool segment_visible(int p, int q, const SiteSet& sites, const ConstraintSet& constraints) {
    check_index(p, sites);
    check_index(q, sites);
    if (p == q) throw PreconditionError("segment_visible: p == q");
    const Segment pq(sites[static_cast<std::size_t>(p)], sites[static_cast<std::size_t>(q)]);
    for (int s = 0; s < static_cast<int>(sites.size()); ++s)
        if (s != p && s != q && point_in_segment_interior(sites[static_cast<std::size_t>(s)], pq)) return false;
    const Edge self = make_edge(p, q);
    for (const auto& c : constraints.segments()) {
        if (c == self) continue;
        if (segments_share_interior_point(
                pq, Segment(sites[static_cast<std::size_t>(c.first)], sites[static_cast<std::size_t>(c.second)])))
            return false;
    }
    return true;
}

std::vector<RelationReport> check_theorem_segment_visibility(const SiteSet& sites, const ConstraintSet& constraints,
                                                             int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("check_theorem_segment_visibility: trials must be >= 1");
    const int n = static_cast<int>(sites.size());
    std::vector<Edge> pairs;
    const long total = static_cast<long>(n) * (n - 1) / 2;
    if (trials >= total) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
    } else {
        for (int i = 0; i < trials; ++i) {
            Rng rng = trial_rng(seed, static_cast<std::uint64_t>(i));
            const int p = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n)));
            int q = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n - 1)));
            if (q >= p) ++q;
            pairs.emplace_back(p, q);
        }
    }

    std::vector<RelationReport> reports(3);
    reports[0].relation = "thm37.no_interior_site";
    reports[1].relation = "thm37.no_constraint_crossing";
    reports[2].relation = "thm37.endpoint_contact";
    reports[2].expected_divergence = true;
    reports[2].note = "visible pairs touching a constraint at an endpoint; the literal empty-intersection "
                      "reading would call them invisible";

    for (const auto& [p, q] : pairs) {
        if (!segment_visible(p, q, sites, constraints)) continue;
        const Point2& a = sites[static_cast<std::size_t>(p)];
        const Point2& b = sites[static_cast<std::size_t>(q)];
        for (auto& r : reports) ++r.checked;

        std::vector<Point2> on_line;
        std::vector<Rational> samples{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
        for (int s = 0; s < n; ++s) {
            if (s == p || s == q) continue;
            const Point2& site = sites[static_cast<std::size_t>(s)];
            if (cross(a, b, site) != 0) continue;
            on_line.push_back(site);
            Rational t = projection(a, b, site);
            if (t > 0 && t < 1) samples.push_back(std::move(t));
        }
        bool clear = true;
        if (!on_line.empty())
            for (const auto& t : samples) {
                const Point2 x = along(a, b, t);
                const bool hit = std::any_of(on_line.begin(), on_line.end(),
                                             [&](const Point2& s) { return squared_distance(x, s) == 0; });
                if (hit) clear = false;
            }
        if (!clear && reports[0].violations++ == 0)
            reports[0].counterexample = "pair " + std::to_string(p) + "-" + std::to_string(q) + " seed=" + std::to_string(seed);

        bool crossing = false, touching = false;
        for (const auto& c : constraints.segments()) {
            if (c == make_edge(p, q)) continue;
            const Contact k = contact(a, b, sites[static_cast<std::size_t>(c.first)], sites[static_cast<std::size_t>(c.second)]);
            crossing = crossing || k == Contact::interior;
            touching = touching || k == Contact::endpoint;
        }
        if (crossing && reports[1].violations++ == 0)
            reports[1].counterexample = "pair " + std::to_string(p) + "-" + std::to_string(q) + " seed=" + std::to_string(seed);
        if (touching && !crossing && reports[2].violations++ == 0)
            reports[2].counterexample = "pair " + std::to_string(p) + "-" + std::to_string(q);
    }
    reports[0].verdict = reports[0].violations == 0;
    reports[1].verdict = reports[1].violations == 0;
    reports[2].verdict = true;
    std::ostringstream operands;
    operands << "sites=" << n << " constraints=" << constraints.segments().size() << " pairs=" << pairs.size();
    for (auto& r : reports) r.operands = {operands.str()};
    return reports;
}

} // namespace proxmesh
