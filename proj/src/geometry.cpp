#include "layoutgen/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace layoutgen {

double norm(Point p) { return std::hypot(p.x, p.y); }

BoundingBox bounding_box(const std::vector<Point>& points) {
    BoundingBox box;
    if (points.empty()) return box;
    box.min = box.max = points.front();
    for (const Point& p : points) {
        box.min.x = std::min(box.min.x, p.x);
        box.min.y = std::min(box.min.y, p.y);
        box.max.x = std::max(box.max.x, p.x);
        box.max.y = std::max(box.max.y, p.y);
    }
    return box;
}

double signed_area(const std::vector<Point>& polygon) {
    double twice = 0.0;
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

bool is_rectilinear(const std::vector<Point>& polygon) {
    const std::size_t n = polygon.size();
    if (n < 4) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = polygon[i];
        const Point& b = polygon[(i + 1) % n];
        const bool horizontal = a.y == b.y && a.x != b.x;
        const bool vertical = a.x == b.x && a.y != b.y;
        if (!horizontal && !vertical) return false;
    }
    return true;
}

namespace {

struct AxisSegment {
    double lo, hi, fixed;  // span along the free axis, coordinate on the fixed axis
    bool horizontal;
};

AxisSegment axis_segment(Point a, Point b) {
    AxisSegment s;
    s.horizontal = a.y == b.y;
    if (s.horizontal) {
        s.lo = std::min(a.x, b.x);
        s.hi = std::max(a.x, b.x);
        s.fixed = a.y;
    } else {
        s.lo = std::min(a.y, b.y);
        s.hi = std::max(a.y, b.y);
        s.fixed = a.x;
    }
    return s;
}

bool axis_segments_touch(const AxisSegment& p, const AxisSegment& q) {
    constexpr double tol = 1e-12;
    if (p.horizontal == q.horizontal) {
        if (std::abs(p.fixed - q.fixed) > tol) return false;
        return p.lo <= q.hi + tol && q.lo <= p.hi + tol;
    }
    const AxisSegment& h = p.horizontal ? p : q;
    const AxisSegment& v = p.horizontal ? q : p;
    return v.fixed >= h.lo - tol && v.fixed <= h.hi + tol &&
           h.fixed >= v.lo - tol && h.fixed <= v.hi + tol;
}

}  // namespace

bool self_intersects(const std::vector<Point>& polygon) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        const AxisSegment si = axis_segment(polygon[i], polygon[(i + 1) % n]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) continue;
            const AxisSegment sj = axis_segment(polygon[j], polygon[(j + 1) % n]);
            if (axis_segments_touch(si, sj)) return true;
        }
    }
    return false;
}

bool point_on_segment(Point p, const Segment& s, double tol) {
    const double dx = s.b.x - s.a.x;
    const double dy = s.b.y - s.a.y;
    const double len = std::hypot(dx, dy);
    if (len == 0.0) return std::hypot(p.x - s.a.x, p.y - s.a.y) <= tol;
    const double cross = dx * (p.y - s.a.y) - dy * (p.x - s.a.x);
    if (std::abs(cross) / len > tol) return false;
    const double dot = (p.x - s.a.x) * dx + (p.y - s.a.y) * dy;
    return dot >= -tol * len && dot <= len * len + tol * len;
}

bool point_strictly_inside(Point p, const std::vector<Point>& polygon) {
    const std::size_t n = polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (point_on_segment(p, {polygon[i], polygon[(i + 1) % n]}, 1e-12)) return false;
    }
    bool inside = false;
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point& a = polygon[i];
        const Point& b = polygon[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool segment_within_edge(const Segment& inner, const Segment& edge, double tol) {
    return point_on_segment(inner.a, edge, tol) && point_on_segment(inner.b, edge, tol);
}

bool boundary_crossing(Point a, Point b, const std::vector<Point>& polygon, Point* hit) {
    const std::size_t n = polygon.size();
    const double rx = b.x - a.x;
    const double ry = b.y - a.y;
    double best_t = 2.0;
    Point best{};
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = polygon[i];
        const Point& q = polygon[(i + 1) % n];
        const double ex = q.x - p.x;
        const double ey = q.y - p.y;
        const double denom = rx * ey - ry * ex;
        if (denom == 0.0) continue;  // parallel; sliding along an edge finds no crossing
        const double t = ((p.x - a.x) * ey - (p.y - a.y) * ex) / denom;
        const double u = ((p.x - a.x) * ry - (p.y - a.y) * rx) / denom;
        if (t > 1e-12 && t <= 1.0 + 1e-12 && u >= -1e-9 && u <= 1.0 + 1e-9 && t < best_t) {
            best_t = t;
            best = {a.x + t * rx, a.y + t * ry};
        }
    }
    if (best_t > 1.5) return false;
    if (hit != nullptr) *hit = best;
    return true;
}

}  // namespace layoutgen
