#pragma once

#include <limits>

#include "layoutgen/field.hpp"

namespace layoutgen {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr int kNoEntrance = -1;

// Base edge lengths by node types.
inline constexpr double kFreeFreeLength = 2.0;
inline constexpr double kFreeBoundaryLength = 5.0;
inline constexpr double kBoundaryBoundaryLength = 10.0;

// Weighted cell graph over free cells and room boundary cells. Interior room
// cells are not nodes.
struct PathGraph {
    struct Edge {
        int to = -1;
        double length = 0.0;
    };

    std::vector<int> node_cells;              // ascending cell indices
    std::vector<int> node_of_cell;            // per grid cell, -1 if not a node
    std::vector<std::uint8_t> node_is_boundary;
    std::vector<std::vector<Edge>> adjacency;  // undirected, stored both ways

    int node_count() const { return static_cast<int>(node_cells.size()); }
};

PathGraph build_path_graph(const Allocation& alloc, const Grid& grid);

// Per-room entrance cell picked from the eligible boundary cells by fraction;
// kNoEntrance when a room has no eligible boundary cell.
std::vector<int> select_entrances(std::span<const double> fractions, const Allocation& alloc,
                                  const Grid& grid);

struct ShortestPaths {
    std::vector<double> distance;    // kUnreachable for unreached nodes
    std::vector<int> predecessor;    // -1 for source and unreached nodes
};

// Textbook single-source shortest paths; the oracle for path_generation.
ShortestPaths dijkstra_reference(const PathGraph& graph, int source_node);

struct PathGenOptions {
    double shorten_factor = 0.8;
    bool prefer_established = true;
};

struct CirculationPattern {
    int source_cell = -1;
    std::vector<int> entrance_cells;          // per room, kNoEntrance if none
    std::vector<std::vector<int>> paths;      // per room, cells source..entrance
    std::vector<double> path_distance;        // discounted distance at settle time
    std::vector<std::uint8_t> reachable;      // per room
    std::vector<int> corridor_cells;          // sorted free cells used by any path
    std::vector<double> node_distance;        // final distance map over graph nodes
};

// Dijkstra with path shortening: each time an entrance settles, the edges of
// its source path are scaled by shorten_factor and the path is re-relaxed so
// later paths prefer to reuse it.
CirculationPattern path_generation(const PathGraph& graph, int source_node,
                                   std::span<const int> entrance_cells,
                                   const PathGenOptions& options = {});

struct CorridorMetrics {
    double pathway_length = 0.0;  // metres, including unreachable-room penalties
    double corridor_area = 0.0;   // pathway_length * path_width
    int penalized_rooms = 0;
};

CorridorMetrics corridor_metrics(const CirculationPattern& pattern, const DesignSpec& spec,
                                 const Grid& grid);

}  // namespace layoutgen
