#pragma once

#include "layoutgen/circulation.hpp"

namespace layoutgen {

// Total allocated room area, metres^2.
double internal_area(const Allocation& alloc, double cell_size);

// Sum over rooms of (m_x*m_y - a_i)^2; zero iff every room fills its target
// footprint exactly.
double conflict_area(std::span<const FieldParams> fields, const Allocation& alloc,
                     double cell_size);

// 2D ray model: a habitable cell is lit when a march against the light
// direction leaves the envelope through a window while crossing only cells of
// the same room. Returns the unlit area for one light direction.
double shadow_area(const Allocation& alloc, const Grid& grid, const DesignSpec& spec,
                   Point light);

// Sum over pairs: zero when the rooms share a cell edge, otherwise the
// distance between their mass centres.
double adjacency_distance(const Allocation& alloc, const Grid& grid,
                          std::span<const FieldParams> fields,
                          std::span<const std::pair<int, int>> pairs);

struct LayoutEvaluation {
    std::vector<double> objectives;  // ordered exactly as spec.objectives
    double internal = 0.0;
    double conflict = 0.0;
    double corridor = 0.0;
    double shadow = 0.0;
    double adjacency = 0.0;
    std::vector<std::uint8_t> room_reachable;
};

std::vector<double> evaluate_layout(const DesignSpec& spec, const Grid& grid,
                                    std::span<const FieldParams> fields, const Allocation& alloc,
                                    const CirculationPattern& pattern);

LayoutEvaluation evaluate_layout_detail(const DesignSpec& spec, const Grid& grid,
                                        std::span<const FieldParams> fields,
                                        const Allocation& alloc,
                                        const CirculationPattern& pattern);

}  // namespace layoutgen
