#pragma once

#include <array>
#include <cstdint>

#include "layoutgen/spec.hpp"

namespace layoutgen {

// 4-neighbourhood, fixed order: west, east, south, north.
inline constexpr int kNeighborDx[4] = {-1, 1, 0, 0};
inline constexpr int kNeighborDy[4] = {0, 0, -1, 1};

struct BoundaryFace {
    int edge_index = -1;  // envelope edge the face lies on, -1 if none
    bool window = false;
};

struct Grid {
    Point origin;
    double cell_size = 1.0;
    int columns = 0;
    int rows = 0;
    std::vector<std::uint8_t> inside_mask;  // row-major, columns*rows
    // Per inside cell, one entry per face in kNeighbor order; empty for outside cells.
    std::vector<std::array<BoundaryFace, 4>> boundary_faces;
    int inside_count = 0;

    int cell_count() const { return columns * rows; }
    int index(int col, int row) const { return row * columns + col; }
    int col_of(int index) const { return index % columns; }
    int row_of(int index) const { return index / columns; }
    bool in_bounds(int col, int row) const {
        return col >= 0 && col < columns && row >= 0 && row < rows;
    }
    bool inside(int index) const {
        return index >= 0 && index < cell_count() && inside_mask[index] != 0;
    }
};

Grid build_grid(const DesignSpec& spec);

// Centre of an inside cell in metres. Throws std::out_of_range for invalid
// or outside indices.
Point cell_center(const Grid& grid, int index);

// Snaps each entrance candidate to the nearest inside cell that touches the
// envelope boundary. Result is sorted row-major.
std::vector<int> entrance_candidate_cells(const DesignSpec& spec, const Grid& grid);

}  // namespace layoutgen
