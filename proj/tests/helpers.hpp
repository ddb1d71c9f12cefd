#pragma once

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>

#include "layoutgen/circulation.hpp"

namespace testutil {

// Rectangular spec with generic rooms; passes validate_spec.
inline layoutgen::DesignSpec rect_spec(double width, double height, double cell_size = 1.0,
                                       int rooms = 1) {
    layoutgen::DesignSpec spec;
    spec.envelope = {{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}};
    spec.windows = {{{0.0, 0.0}, {width, 0.0}}};
    spec.entrance_candidates = {{width / 2.0, 0.0}};
    for (int i = 0; i < rooms; ++i) {
        layoutgen::RoomSpec room;
        room.name = "room" + std::to_string(i);
        room.kind = layoutgen::RoomKind::other;
        room.habitable = true;
        room.width_range = {cell_size, 4.0 * cell_size};
        room.height_range = {cell_size, 4.0 * cell_size};
        spec.rooms.push_back(room);
    }
    spec.cell_size = cell_size;
    spec.objectives = {layoutgen::Objective::area_minus_conflict, layoutgen::Objective::circulation};
    spec.path_width = 1.0;
    return spec;
}

// Hand-painted allocation; owner_of returns a room index or kFreeCell.
inline layoutgen::Allocation paint_allocation(const layoutgen::Grid& grid, int room_count,
                                              const std::function<int(int, int)>& owner_of) {
    layoutgen::Allocation alloc;
    alloc.owner.assign(static_cast<std::size_t>(grid.cell_count()), layoutgen::kOutsideCell);
    alloc.room_cells.assign(static_cast<std::size_t>(room_count), {});
    alloc.room_area.assign(static_cast<std::size_t>(room_count), 0.0);
    for (int row = 0; row < grid.rows; ++row) {
        for (int col = 0; col < grid.columns; ++col) {
            const int idx = grid.index(col, row);
            if (!grid.inside_mask[idx]) continue;
            const int owner = owner_of(col, row);
            alloc.owner[idx] = owner;
            if (owner >= 0) {
                alloc.room_cells[owner].push_back(idx);
            } else {
                ++alloc.free_count;
            }
        }
    }
    const double cell_area = grid.cell_size * grid.cell_size;
    for (int i = 0; i < room_count; ++i) {
        alloc.room_area[i] = static_cast<double>(alloc.room_cells[i].size()) * cell_area;
    }
    return alloc;
}

inline std::string specs_dir() {
    const char* env = std::getenv("LAYOUTGEN_SPECS");
    if (env != nullptr) return env;
    for (const char* candidate : {"specs", "../specs"}) {
        if (std::filesystem::exists(candidate)) return candidate;
    }
    return "specs";
}

inline std::string cli_binary() {
    const char* env = std::getenv("LAYOUTGEN_BIN");
    if (env != nullptr) return env;
    for (const char* candidate : {"./layoutgen", "build/layoutgen"}) {
        if (std::filesystem::exists(candidate)) return candidate;
    }
    return "";
}

}  // namespace testutil
