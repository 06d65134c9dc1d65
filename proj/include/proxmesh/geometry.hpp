#pragma once

// Exact planar kernel. All predicates evaluate on arbitrary-precision
// rationals; floating point appears only in point_set_distance and when
// values are rendered.

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace proxmesh {

using Rational = mpq_class;

/// Parses "12", "-0.25", "1.5e-3" or "7/3" exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text: integers and finite decimals as decimals, otherwise "p/q".
/// parse_rational(format_rational(r)) == r for every r.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

struct Point2 {
    Rational x;
    Rational y;

    Point2() = default;
    // mpq_class(num, den) is not reduced, and unreduced values break
    // comparisons, so coordinates are canonicalized here.
    Point2(Rational px, Rational py) : x(std::move(px)), y(std::move(py)) {
        x.canonicalize();
        y.canonicalize();
    }
    Point2(long px, long py) : x(px), y(py) {}

    friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
    // Lexicographic (x, then y).
    friend bool operator<(const Point2& a, const Point2& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    }
};

Point2 make_point(std::string_view x, std::string_view y);
std::string to_string(const Point2& p);

struct Segment {
    Point2 a;
    Point2 b;

    Segment(Point2 pa, Point2 pb);
};

/// Counterclockwise polygon. Construction drops repeated and collinear
/// consecutive vertices, reverses clockwise input and rotates the
/// lexicographically smallest vertex to the front, so equal regions compare
/// equal.
class Polygon {
public:
    explicit Polygon(std::vector<Point2> vertices);

    const std::vector<Point2>& vertices() const { return vertices_; }
    std::size_t size() const { return vertices_.size(); }
    const Point2& operator[](std::size_t i) const { return vertices_[i]; }

    /// Twice the signed area; positive after normalization.
    Rational twice_area() const;

    friend bool operator==(const Polygon& a, const Polygon& b) { return a.vertices_ == b.vertices_; }

private:
    std::vector<Point2> vertices_;
};

std::string to_string(const Polygon& poly);

int orient2d(const Point2& a, const Point2& b, const Point2& c);

/// Sign of the in-circle determinant: +1 when d is strictly inside the
/// circle through counterclockwise (a, b, c). The sign flips with the
/// orientation of (a, b, c). Throws DegenerateInputError on collinear a, b, c.
int incircle(const Point2& a, const Point2& b, const Point2& c, const Point2& d);

Point2 circumcenter(const Point2& a, const Point2& b, const Point2& c);

Rational squared_distance(const Point2& a, const Point2& b);

/// Twice the signed area of triangle (a, b, c).
Rational twice_signed_area(const Point2& a, const Point2& b, const Point2& c);

bool point_in_segment_interior(const Point2& p, const Segment& s);

/// True iff some point is interior to both segments (proper crossing or
/// collinear overlap of positive length). Touching at an endpoint is false.
bool segments_share_interior_point(const Segment& s1, const Segment& s2);

/// Counterclockwise hull without collinear boundary points.
Polygon convex_hull(std::span<const Point2> points);

bool is_convex_polygon(const Polygon& poly);

struct ConvexIntersection {
    enum class Kind { empty, point, segment, area };

    Kind kind = Kind::empty;
    // point: one entry; segment: the two endpoints in lexicographic order;
    // area: the polygon's vertices.
    std::vector<Point2> points;
    std::optional<Polygon> region;

    bool empty() const { return kind == Kind::empty; }
};

/// Intersection of two closed convex polygons. Throws PreconditionError when
/// either input is not convex.
ConvexIntersection intersect_convex(const Polygon& p1, const Polygon& p2);

/// Common part of several closed convex polygons (no convexity check).
ConvexIntersection intersect_convex_all(std::span<const Polygon> polygons);

/// Clips a convex ring against the closed half-plane a*x + b*y <= c.
/// The result may contain repeated or collinear points.
std::vector<Point2> clip_halfplane(std::span<const Point2> ring, const Rational& a,
                                   const Rational& b, const Rational& c);

/// Classifies a point cloud lying in a convex set: empty, single point,
/// segment between its extremes, or the hull polygon.
ConvexIntersection classify_convex_points(std::vector<Point2> points);

/// Euclidean distance from p to the nearest member of points. The nearest
/// member is selected with exact squared distances; only the final square
/// root is floating point.
double point_set_distance(const Point2& p, std::span<const Point2> points);

} // namespace proxmesh
