#include "layoutgen/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace layoutgen {

double internal_area(const Allocation& alloc, double cell_size) {
    double total = 0.0;
    const double cell_area = cell_size * cell_size;
    for (const std::vector<int>& cells : alloc.room_cells) {
        total += static_cast<double>(cells.size()) * cell_area;
    }
    return total;
}

double conflict_area(std::span<const FieldParams> fields, const Allocation& alloc,
                     double cell_size) {
    if (fields.size() != alloc.room_cells.size()) {
        throw std::invalid_argument("one field per room required");
    }
    const double cell_area = cell_size * cell_size;
    double total = 0.0;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        const double target = fields[i].m_x * fields[i].m_y;
        const double allocated = static_cast<double>(alloc.room_cells[i].size()) * cell_area;
        const double gap = target - allocated;
        total += gap * gap;
    }
    return total;
}

double shadow_area(const Allocation& alloc, const Grid& grid, const DesignSpec& spec,
                   Point light) {
    const double len = norm(light);
    if (len == 0.0) throw std::invalid_argument("zero-length light vector");
    const double s = grid.cell_size;
    const Point step{-light.x / len * (s * 0.5), -light.y / len * (s * 0.5)};
    const int max_steps = 4 * (grid.columns + grid.rows) + 8;

    auto window_hit = [&](Point hit) {
        for (const Segment& w : spec.windows) {
            if (point_on_segment(hit, w)) return true;
        }
        return false;
    };

    int unlit = 0;
    for (std::size_t room = 0; room < alloc.room_cells.size(); ++room) {
        if (room >= spec.rooms.size() || !spec.rooms[room].habitable) continue;
        for (int idx : alloc.room_cells[room]) {
            Point p = cell_center(grid, idx);
            bool lit = false;
            for (int iter = 0; iter < max_steps; ++iter) {
                const Point q = p + step;
                if (!point_strictly_inside(q, spec.envelope)) {
                    Point hit;
                    lit = boundary_crossing(p, q, spec.envelope, &hit) && window_hit(hit);
                    break;
                }
                const int col = static_cast<int>(std::floor((q.x - grid.origin.x) / s));
                const int row = static_cast<int>(std::floor((q.y - grid.origin.y) / s));
                if (!grid.in_bounds(col, row) ||
                    alloc.owner[grid.index(col, row)] != static_cast<int>(room)) {
                    break;  // blocked by another room, a free cell or an unmapped sliver
                }
                p = q;
            }
            if (!lit) ++unlit;
        }
    }
    return static_cast<double>(unlit) * s * s;
}

namespace {

// Walk the smaller room's cells and look for the other owner next door.
bool rooms_adjacent(const Allocation& alloc, const Grid& grid, int a, int b) {
    const int probe = alloc.room_cells[a].size() <= alloc.room_cells[b].size() ? a : b;
    const int other = probe == a ? b : a;
    for (int idx : alloc.room_cells[probe]) {
        const int col = grid.col_of(idx);
        const int row = grid.row_of(idx);
        for (int n = 0; n < 4; ++n) {
            const int nc = col + kNeighborDx[n];
            const int nr = row + kNeighborDy[n];
            if (grid.in_bounds(nc, nr) && alloc.owner[grid.index(nc, nr)] == other) return true;
        }
    }
    return false;
}

}  // namespace

double adjacency_distance(const Allocation& alloc, const Grid& grid,
                          std::span<const FieldParams> fields,
                          std::span<const std::pair<int, int>> pairs) {
    double total = 0.0;
    for (const auto& [a, b] : pairs) {
        if (a < 0 || b < 0 || a >= static_cast<int>(fields.size()) ||
            b >= static_cast<int>(fields.size())) {
            throw std::out_of_range("adjacency pair references a missing room");
        }
        if (rooms_adjacent(alloc, grid, a, b)) continue;
        total += std::hypot(fields[a].x0 - fields[b].x0, fields[a].y0 - fields[b].y0);
    }
    return total;
}

LayoutEvaluation evaluate_layout_detail(const DesignSpec& spec, const Grid& grid,
                                        std::span<const FieldParams> fields,
                                        const Allocation& alloc,
                                        const CirculationPattern& pattern) {
    LayoutEvaluation eval;
    eval.internal = internal_area(alloc, grid.cell_size);
    eval.conflict = conflict_area(fields, alloc, grid.cell_size);
    eval.corridor = corridor_metrics(pattern, spec, grid).corridor_area;

    const bool shadow_selected =
        std::find(spec.objectives.begin(), spec.objectives.end(), Objective::shadow) !=
        spec.objectives.end();
    if (shadow_selected) {
        for (Point light : spec.light_directions) {
            eval.shadow += shadow_area(alloc, grid, spec, light);
        }
    }
    const bool adjacency_selected =
        std::find(spec.objectives.begin(), spec.objectives.end(), Objective::adjacency) !=
        spec.objectives.end();
    if (adjacency_selected) {
        eval.adjacency = adjacency_distance(alloc, grid, fields, spec.adjacency_pairs);
    }

    eval.objectives.reserve(spec.objectives.size());
    for (Objective objective : spec.objectives) {
        switch (objective) {
            case Objective::area_minus_conflict:
                eval.objectives.push_back(-(eval.internal - eval.conflict));
                break;
            case Objective::circulation:
                eval.objectives.push_back(eval.corridor);
                break;
            case Objective::shadow:
                eval.objectives.push_back(eval.shadow);
                break;
            case Objective::adjacency:
                eval.objectives.push_back(eval.adjacency);
                break;
        }
    }

    eval.room_reachable.assign(alloc.room_cells.size(), 0);
    for (std::size_t room = 0; room < alloc.room_cells.size(); ++room) {
        if (room < pattern.reachable.size() && pattern.reachable[room] &&
            pattern.entrance_cells[room] != kNoEntrance) {
            eval.room_reachable[room] = 1;
        }
    }
    return eval;
}

std::vector<double> evaluate_layout(const DesignSpec& spec, const Grid& grid,
                                    std::span<const FieldParams> fields, const Allocation& alloc,
                                    const CirculationPattern& pattern) {
    return evaluate_layout_detail(spec, grid, fields, alloc, pattern).objectives;
}

}  // namespace layoutgen
