#include "layoutgen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace layoutgen {

Grid build_grid(const DesignSpec& spec) {
    Grid grid;
    const BoundingBox box = bounding_box(spec.envelope);
    const double s = spec.cell_size;
    grid.origin = box.min;
    grid.cell_size = s;
    grid.columns = std::max(1, static_cast<int>(std::ceil(box.width() / s - 1e-9)));
    grid.rows = std::max(1, static_cast<int>(std::ceil(box.height() / s - 1e-9)));
    grid.inside_mask.assign(static_cast<std::size_t>(grid.cell_count()), 0);
    grid.boundary_faces.assign(static_cast<std::size_t>(grid.cell_count()), {});

    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const Point centre{grid.origin.x + (col + 0.5) * s, grid.origin.y + (row + 0.5) * s};
            if (point_strictly_inside(centre, spec.envelope)) {
                grid.inside_mask[grid.index(col, row)] = 1;
                ++grid.inside_count;
            }
        }
    }
    if (grid.inside_count == 0) {
        throw SpecError("envelope", "too small for a single cell at the given cell_size");
    }

    // Boundary bookkeeping: which envelope edge (and window flag) each outward
    // face of an inside cell touches.
    const std::size_t edge_count = spec.envelope.size();
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const int idx = grid.index(col, row);
            if (!grid.inside_mask[idx]) continue;
            const double x0 = grid.origin.x + col * s;
            const double y0 = grid.origin.y + row * s;
            const Segment faces[4] = {
                {{x0, y0}, {x0, y0 + s}},          // west
                {{x0 + s, y0}, {x0 + s, y0 + s}},  // east
                {{x0, y0}, {x0 + s, y0}},          // south
                {{x0, y0 + s}, {x0 + s, y0 + s}},  // north
            };
            for (int f = 0; f < 4; ++f) {
                for (std::size_t e = 0; e < edge_count; ++e) {
                    const Segment edge{spec.envelope[e], spec.envelope[(e + 1) % edge_count]};
                    if (!segment_within_edge(faces[f], edge)) continue;
                    BoundaryFace& face = grid.boundary_faces[idx][f];
                    face.edge_index = static_cast<int>(e);
                    const Point midpoint{(faces[f].a.x + faces[f].b.x) * 0.5,
                                         (faces[f].a.y + faces[f].b.y) * 0.5};
                    for (const Segment& w : spec.windows) {
                        if (point_on_segment(midpoint, w)) {
                            face.window = true;
                            break;
                        }
                    }
                    break;
                }
            }
        }
    }
    return grid;
}

Point cell_center(const Grid& grid, int index) {
    if (index < 0 || index >= grid.cell_count()) {
        throw std::out_of_range("cell index out of range");
    }
    if (!grid.inside_mask[index]) {
        throw std::out_of_range("cell lies outside the envelope");
    }
    return {grid.origin.x + (grid.col_of(index) + 0.5) * grid.cell_size,
            grid.origin.y + (grid.row_of(index) + 0.5) * grid.cell_size};
}

std::vector<int> entrance_candidate_cells(const DesignSpec& spec, const Grid& grid) {
    // Perimeter cells: inside cells with at least one 4-neighbour outside the mask.
    std::vector<int> perimeter;
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const int idx = grid.index(col, row);
            if (!grid.inside_mask[idx]) continue;
            for (int n = 0; n < 4; ++n) {
                const int nc = col + kNeighborDx[n];
                const int nr = row + kNeighborDy[n];
                if (!grid.in_bounds(nc, nr) || !grid.inside_mask[grid.index(nc, nr)]) {
                    perimeter.push_back(idx);
                    break;
                }
            }
        }
    }
    if (perimeter.empty()) throw SpecError("entrances", "no boundary-adjacent inside cell exists");

    const std::size_t edge_count = spec.envelope.size();
    std::vector<int> cells;
    cells.reserve(spec.entrance_candidates.size());
    for (std::size_t i = 0; i < spec.entrance_candidates.size(); ++i) {
        const Point candidate = spec.entrance_candidates[i];
        bool on_boundary = false;
        for (std::size_t e = 0; e < edge_count && !on_boundary; ++e) {
            on_boundary = point_on_segment(
                candidate, {spec.envelope[e], spec.envelope[(e + 1) % edge_count]});
        }
        if (!on_boundary) {
            throw SpecError("entrances[" + std::to_string(i) + "]",
                            "candidate does not lie on the envelope boundary");
        }
        int best = -1;
        double best_d2 = 0.0;
        for (int idx : perimeter) {
            const Point c = cell_center(grid, idx);
            const double d2 = (c.x - candidate.x) * (c.x - candidate.x) +
                              (c.y - candidate.y) * (c.y - candidate.y);
            if (best < 0 || d2 < best_d2) {
                best = idx;
                best_d2 = d2;
            }
        }
        cells.push_back(best);
    }
    std::sort(cells.begin(), cells.end());
    return cells;
}

}  // namespace layoutgen
