#include "layoutgen/field.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

namespace layoutgen {

double field_magnitude(const FieldParams& field, Point p, const FieldConstants& consts) {
    const double dx = p.x - field.x0;
    const double dy = p.y - field.y0;
    const double ct = std::cos(field.t);
    const double st = std::sin(field.t);
    // Rotated offsets x'-x0 and y'-y0; the mass parameters cross over so that
    // m_x governs horizontal reach and m_y vertical reach in the upright pose.
    const double xr = field.m_y * dx * ct - field.m_x * dy * st;
    const double yr = field.m_y * dx * st + field.m_x * dy * ct;
    return (field.m_x * field.m_y) / (std::abs(xr) + std::abs(yr) + consts.epsilon);
}

HalfExtents active_extent(const FieldParams& field, const FieldConstants& consts) {
    if (std::abs(field.t - kUprightRotation) > 1e-12) {
        throw std::invalid_argument("active_extent requires an upright field (t = pi/4)");
    }
    if (field.shape != FieldShape::rectangular) {
        throw std::invalid_argument("active_extent requires a rectangular field");
    }
    // At t = pi/4 the activation set f > delta is the open rectangle
    // |dx| < hx, |dy| < hy.
    const double reach = field.m_x * field.m_y / consts.delta - consts.epsilon;
    return {reach / (kSqrt2 * field.m_y), reach / (kSqrt2 * field.m_x)};
}

Allocation allocate_cells(const Grid& grid, std::span<const FieldParams> fields,
                          const FieldConstants& consts) {
    if (fields.empty()) throw std::invalid_argument("allocate_cells requires at least one field");
    for (const FieldParams& f : fields) {
        if (!(f.m_x > 0.0) || !(f.m_y > 0.0)) {
            throw std::invalid_argument("mass parameters must be positive");
        }
    }

    Allocation alloc;
    alloc.owner.assign(static_cast<std::size_t>(grid.cell_count()), kOutsideCell);
    alloc.room_cells.assign(fields.size(), {});
    alloc.room_area.assign(fields.size(), 0.0);

    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const int idx = grid.index(col, row);
            if (!grid.inside_mask[idx]) continue;
            const Point centre{grid.origin.x + (col + 0.5) * grid.cell_size,
                               grid.origin.y + (row + 0.5) * grid.cell_size};
            int best = kFreeCell;
            double best_f = consts.delta;  // activation is strict: f must surpass delta
            for (std::size_t i = 0; i < fields.size(); ++i) {
                const double f = field_magnitude(fields[i], centre, consts);
                if (f > best_f) {
                    best_f = f;
                    best = static_cast<int>(i);
                }
            }
            alloc.owner[idx] = best;
            if (best >= 0) {
                alloc.room_cells[best].push_back(idx);
            } else {
                ++alloc.free_count;
            }
        }
    }
    const double cell_area = grid.cell_size * grid.cell_size;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        alloc.room_area[i] = static_cast<double>(alloc.room_cells[i].size()) * cell_area;
    }
    return alloc;
}

std::vector<int> room_boundary_cells(const Allocation& alloc, int room, const Grid& grid) {
    if (room < 0 || room >= static_cast<int>(alloc.room_cells.size())) {
        throw std::out_of_range("room index out of range");
    }
    std::vector<int> boundary;
    for (int idx : alloc.room_cells[room]) {
        const int col = grid.col_of(idx);
        const int row = grid.row_of(idx);
        for (int n = 0; n < 4; ++n) {
            const int nc = col + kNeighborDx[n];
            const int nr = row + kNeighborDy[n];
            if (!grid.in_bounds(nc, nr) || alloc.owner[grid.index(nc, nr)] != room) {
                boundary.push_back(idx);
                break;
            }
        }
    }
    return boundary;  // room_cells is row-major already
}

bool room_is_connected(const Allocation& alloc, int room, const Grid& grid) {
    const std::vector<int>& cells = alloc.room_cells.at(static_cast<std::size_t>(room));
    if (cells.size() <= 1) return true;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(grid.cell_count()), 0);
    std::queue<int> frontier;
    frontier.push(cells.front());
    seen[cells.front()] = 1;
    std::size_t visited = 1;
    while (!frontier.empty()) {
        const int idx = frontier.front();
        frontier.pop();
        const int col = grid.col_of(idx);
        const int row = grid.row_of(idx);
        for (int n = 0; n < 4; ++n) {
            const int nc = col + kNeighborDx[n];
            const int nr = row + kNeighborDy[n];
            if (!grid.in_bounds(nc, nr)) continue;
            const int nidx = grid.index(nc, nr);
            if (seen[nidx] || alloc.owner[nidx] != room) continue;
            seen[nidx] = 1;
            ++visited;
            frontier.push(nidx);
        }
    }
    return visited == cells.size();
}

}  // namespace layoutgen
