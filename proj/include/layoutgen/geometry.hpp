#pragma once

#include <vector>

namespace layoutgen {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(Point a, double k) { return {a.x * k, a.y * k}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }

double norm(Point p);

struct Segment {
    Point a;
    Point b;
};

struct BoundingBox {
    Point min;
    Point max;
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
};

BoundingBox bounding_box(const std::vector<Point>& points);

// Shoelace area; positive for counterclockwise polygons.
double signed_area(const std::vector<Point>& polygon);

bool is_rectilinear(const std::vector<Point>& polygon);

// True if any two non-adjacent edges of an axis-aligned polygon touch or cross.
bool self_intersects(const std::vector<Point>& polygon);

bool point_on_segment(Point p, const Segment& s, double tol = 1e-9);

// Even-odd test; points on the boundary count as outside.
bool point_strictly_inside(Point p, const std::vector<Point>& polygon);

// True if `inner` lies entirely within `edge` (collinear and contained).
bool segment_within_edge(const Segment& inner, const Segment& edge, double tol = 1e-9);

// First crossing of the directed segment a->b with the polygon boundary.
// Returns false when no crossing exists (or the segment runs along an edge).
bool boundary_crossing(Point a, Point b, const std::vector<Point>& polygon, Point* hit);

}  // namespace layoutgen
