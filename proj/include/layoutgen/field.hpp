#pragma once

#include <span>

#include "layoutgen/grid.hpp"

namespace layoutgen {

inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kUprightRotation = 0.7853981633974483;  // pi/4

enum class FieldShape { rectangular };

// One room's virtual field: mass centre, mass parameters and rotation.
struct FieldParams {
    double x0 = 0.0;
    double y0 = 0.0;
    double m_x = 1.0;
    double m_y = 1.0;
    double t = kUprightRotation;
    FieldShape shape = FieldShape::rectangular;
};

struct FieldConstants {
    double delta = kSqrt2;    // activation threshold
    double epsilon = 1e-9;    // pole guard
};

inline constexpr int kFreeCell = -1;
inline constexpr int kOutsideCell = -2;

struct Allocation {
    std::vector<int> owner;                    // per grid cell: room index, kFreeCell or kOutsideCell
    std::vector<std::vector<int>> room_cells;  // row-major cell lists per room
    std::vector<double> room_area;             // |cells| * s^2, metres^2
    int free_count = 0;
};

double field_magnitude(const FieldParams& field, Point p, const FieldConstants& consts);

struct HalfExtents {
    double x = 0.0;
    double y = 0.0;
};

// Closed-form half extents of the active region {p : f(p) > delta} for an
// upright field. Throws std::invalid_argument when t is not pi/4.
HalfExtents active_extent(const FieldParams& field, const FieldConstants& consts);

// Competitive cell allocation: strongest active field wins, ties go to the
// lowest room index, cells without an active field stay free. O(M*N).
Allocation allocate_cells(const Grid& grid, std::span<const FieldParams> fields,
                          const FieldConstants& consts);

// Cells of a room with at least one 4-neighbour not owned by the same room,
// row-major order.
std::vector<int> room_boundary_cells(const Allocation& alloc, int room, const Grid& grid);

// 4-connectivity of the room's cell set. Empty rooms count as connected.
bool room_is_connected(const Allocation& alloc, int room, const Grid& grid);

}  // namespace layoutgen
