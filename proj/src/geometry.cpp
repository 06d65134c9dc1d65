#include "proxmesh/geometry.hpp"

#include "proxmesh/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

namespace proxmesh {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

mpz_class pow10(unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

int sign_of(const Rational& v) { return sgn(v); }

} // namespace

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw ParseError("empty number");

    const std::string original(text);
    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("malformed fraction '" + original + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator in '" + original + "'");
        value = Rational(mpz_class(std::string(num), 10), d);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) throw ParseError("malformed exponent in '" + original + "'");
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
            text = text.substr(0, e);
        }
        std::string_view int_part = text;
        std::string_view frac_part;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            int_part = text.substr(0, dot);
            frac_part = text.substr(dot + 1);
        }
        if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + original + "'");
        if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
            throw ParseError("malformed number '" + original + "'");
        std::string digits = std::string(int_part) + std::string(frac_part);
        mpz_class mantissa(digits, 10);
        long scale = static_cast<long>(frac_part.size()) - exponent;
        if (scale >= 0)
            value = Rational(mantissa, pow10(static_cast<unsigned long>(scale)));
        else
            value = Rational(mantissa * pow10(static_cast<unsigned long>(-scale)));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
    Rational v = value;
    v.canonicalize();
    mpz_class den = v.get_den();
    unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
    unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
    if (den != 1) return v.get_num().get_str() + "/" + v.get_den().get_str();

    const unsigned long k = std::max(twos, fives);
    mpz_class scaled = v.get_num() * pow10(k) / v.get_den();
    const bool negative = scaled < 0;
    std::string digits = mpz_class(abs(scaled)).get_str();
    if (k > 0) {
        if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
        digits.insert(digits.size() - k, ".");
    }
    return negative ? "-" + digits : digits;
}

double to_double(const Rational& value) { return value.get_d(); }

Point2 make_point(std::string_view x, std::string_view y) { return {parse_rational(x), parse_rational(y)}; }

std::string to_string(const Point2& p) { return "(" + format_rational(p.x) + "," + format_rational(p.y) + ")"; }

Segment::Segment(Point2 pa, Point2 pb) : a(std::move(pa)), b(std::move(pb)) {
    if (a == b) throw DegenerateInputError("segment endpoints coincide at " + to_string(a));
}

Rational twice_signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

int orient2d(const Point2& a, const Point2& b, const Point2& c) { return sign_of(twice_signed_area(a, b, c)); }

int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d) {
    if (orient2d(a, b, c) == 0)
        throw DegenerateInputError("incircle: collinear triangle " + to_string(a) + to_string(b) + to_string(c));
    const Rational adx = a.x - d.x, ady = a.y - d.y;
    const Rational bdx = b.x - d.x, bdy = b.y - d.y;
    const Rational cdx = c.x - d.x, cdy = c.y - d.y;
    const Rational alift = adx * adx + ady * ady;
    const Rational blift = bdx * bdx + bdy * bdy;
    const Rational clift = cdx * cdx + cdy * cdy;
    const Rational det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy) +
                         clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c) {
    const Rational d = 2 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    if (d == 0)
        throw DegenerateInputError("circumcenter: collinear triangle " + to_string(a) + to_string(b) + to_string(c));
    const Rational la = a.x * a.x + a.y * a.y;
    const Rational lb = b.x * b.x + b.y * b.y;
    const Rational lc = c.x * c.x + c.y * c.y;
    Rational ux = (la * (b.y - c.y) + lb * (c.y - a.y) + lc * (a.y - b.y)) / d;
    Rational uy = (la * (c.x - b.x) + lb * (a.x - c.x) + lc * (b.x - a.x)) / d;
    return {std::move(ux), std::move(uy)};
}

Rational squared_distance(const Point2& a, const Point2& b) {
    const Rational dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

bool point_in_segment_interior(const Point2& p, const Segment& s) {
    if (p == s.a || p == s.b) return false;
    if (orient2d(s.a, s.b, p) != 0) return false;
    // Collinear: strictly between iff the vectors to the endpoints point apart.
    const Rational dot = (s.a.x - p.x) * (s.b.x - p.x) + (s.a.y - p.y) * (s.b.y - p.y);
    return dot < 0;
}

bool segments_share_interior_point(const Segment& s1, const Segment& s2) {
    const int o1 = orient2d(s1.a, s1.b, s2.a);
    const int o2 = orient2d(s1.a, s1.b, s2.b);
    const int o3 = orient2d(s2.a, s2.b, s1.a);
    const int o4 = orient2d(s2.a, s2.b, s1.b);
    if (o1 == 0 && o2 == 0) {
        // Collinear: the open segments overlap iff the parameter intervals
        // along s1 overlap with positive length.
        const Point2 dir{s1.b.x - s1.a.x, s1.b.y - s1.a.y};
        auto param = [&](const Point2& p) -> Rational { return (p.x - s1.a.x) * dir.x + (p.y - s1.a.y) * dir.y; };
        const Rational len = param(s1.b);
        Rational lo = param(s2.a), hi = param(s2.b);
        if (hi < lo) std::swap(lo, hi);
        return std::max(lo, Rational(0)) < std::min(hi, len);
    }
    // One zero orientation means the intersection (if any) is an endpoint of
    // one of the segments, which is not interior to that segment.
    return o1 * o2 < 0 && o3 * o4 < 0;
}

Polygon::Polygon(std::vector<Point2> vertices) {
    std::vector<Point2> ring;
    ring.reserve(vertices.size());
    for (auto& p : vertices)
        if (ring.empty() || ring.back() != p) ring.push_back(std::move(p));
    while (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();

    bool changed = true;
    while (changed && ring.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
            const std::size_t n = ring.size();
            const auto& prev = ring[(i + n - 1) % n];
            const auto& next = ring[(i + 1) % n];
            if (prev == next || orient2d(prev, ring[i], next) == 0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    if (ring.size() < 3) throw DegenerateInputError("polygon has fewer than 3 non-collinear vertices");

    vertices_ = std::move(ring);
    const Rational area = twice_area();
    if (area == 0) throw DegenerateInputError("polygon has zero signed area");
    if (area < 0) std::reverse(vertices_.begin(), vertices_.end());
    auto first = std::min_element(vertices_.begin(), vertices_.end());
    std::rotate(vertices_.begin(), first, vertices_.end());
}

Rational Polygon::twice_area() const {
    Rational sum = 0;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const auto& p = vertices_[i];
        const auto& q = vertices_[(i + 1) % vertices_.size()];
        sum += p.x * q.y - q.x * p.y;
    }
    return sum;
}

std::string to_string(const Polygon& poly) {
    std::string out = "[";
    for (std::size_t i = 0; i < poly.size(); ++i) {
        if (i) out += ",";
        out += to_string(poly[i]);
    }
    return out + "]";
}

Polygon convex_hull(std::span<const Point2> points) {
    std::vector<Point2> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) throw DegenerateInputError("convex hull needs at least 3 distinct points");

    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && orient2d(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw DegenerateInputError("convex hull of collinear points");
    return Polygon(std::move(hull));
}

bool is_convex_polygon(const Polygon& poly) {
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
        if (orient2d(v[(i + n - 1) % n], v[i], v[(i + 1) % n]) < 0) return false;
    // All left turns still admits a ring that winds more than once.
    return convex_hull(v) == poly;
}

std::vector<Point2> clip_halfplane(std::span<const Point2> ring, const Rational& a, const Rational& b,
                                   const Rational& c) {
    std::vector<Point2> out;
    const std::size_t n = ring.size();
    if (n == 0) return out;
    std::vector<Rational> slack(n);
    for (std::size_t i = 0; i < n; ++i) slack[i] = c - a * ring[i].x - b * ring[i].y;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = (i + 1) % n;
        const int si = sgn(slack[i]);
        const int sj = sgn(slack[j]);
        if (si >= 0) out.push_back(ring[i]);
        if ((si > 0 && sj < 0) || (si < 0 && sj > 0)) {
            const Rational t = slack[i] / (slack[i] - slack[j]);
            out.emplace_back(ring[i].x + t * (ring[j].x - ring[i].x), ring[i].y + t * (ring[j].y - ring[i].y));
        }
    }
    return out;
}

ConvexIntersection classify_convex_points(std::vector<Point2> points) {
    ConvexIntersection result;
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) return result;
    if (points.size() == 1) {
        result.kind = ConvexIntersection::Kind::point;
        result.points = std::move(points);
        return result;
    }
    const bool collinear = std::all_of(points.begin(), points.end(), [&](const Point2& p) {
        return orient2d(points.front(), points.back(), p) == 0;
    });
    if (collinear) {
        result.kind = ConvexIntersection::Kind::segment;
        result.points = {points.front(), points.back()};
        return result;
    }
    result.kind = ConvexIntersection::Kind::area;
    result.region = convex_hull(points);
    result.points = result.region->vertices();
    return result;
}

namespace {

struct Box {
    Rational xmin, ymin, xmax, ymax;
};

Box box_of(const Polygon& p) {
    Box b{p[0].x, p[0].y, p[0].x, p[0].y};
    for (const auto& v : p.vertices()) {
        if (v.x < b.xmin) b.xmin = v.x;
        if (v.x > b.xmax) b.xmax = v.x;
        if (v.y < b.ymin) b.ymin = v.y;
        if (v.y > b.ymax) b.ymax = v.y;
    }
    return b;
}

} // namespace

ConvexIntersection intersect_convex(const Polygon& p1, const Polygon& p2) {
    if (!is_convex_polygon(p1) || !is_convex_polygon(p2))
        throw PreconditionError("intersect_convex: input polygon is not convex");

    const Box b1 = box_of(p1), b2 = box_of(p2);
    if (b1.xmax < b2.xmin || b2.xmax < b1.xmin || b1.ymax < b2.ymin || b2.ymax < b1.ymin) return {};

    std::vector<Point2> ring = p1.vertices();
    const auto& clip = p2.vertices();
    for (std::size_t i = 0; i < clip.size() && !ring.empty(); ++i) {
        const Point2& u = clip[i];
        const Point2& v = clip[(i + 1) % clip.size()];
        // Left of u->v: (v - u) x (p - u) >= 0.
        const Rational a = v.y - u.y;
        const Rational b = u.x - v.x;
        const Rational c = a * u.x + b * u.y;
        ring = clip_halfplane(ring, a, b, c);
    }
    return classify_convex_points(std::move(ring));
}

ConvexIntersection intersect_convex_all(std::span<const Polygon> polygons) {
    if (polygons.empty()) return {};
    std::vector<Point2> ring = polygons.front().vertices();
    for (const auto& clip : polygons.subspan(1)) {
        const auto& cv = clip.vertices();
        for (std::size_t i = 0; i < cv.size() && !ring.empty(); ++i) {
            const Point2& u = cv[i];
            const Point2& v = cv[(i + 1) % cv.size()];
            const Rational a = v.y - u.y;
            const Rational b = u.x - v.x;
            ring = clip_halfplane(ring, a, b, a * u.x + b * u.y);
        }
    }
    return classify_convex_points(std::move(ring));
}

double point_set_distance(const Point2& p, std::span<const Point2> points) {
    if (points.empty()) throw PreconditionError("point_set_distance: empty point set");
    Rational best = squared_distance(p, points.front());
    for (const auto& q : points.subspan(1)) {
        Rational d = squared_distance(p, q);
        if (d < best) best = std::move(d);
    }
    return std::sqrt(to_double(best));
}

} // namespace proxmesh
