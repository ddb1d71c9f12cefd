#include "layoutgen/circulation.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace layoutgen {

namespace {

enum class CellRole { interior, free_node, boundary_node };

// Free cells and room boundary cells are graph nodes; interior room cells and
// outside cells are not.
CellRole cell_role(const Allocation& alloc, const Grid& grid, int idx) {
    const int owner = alloc.owner[idx];
    if (owner == kOutsideCell) return CellRole::interior;
    if (owner == kFreeCell) return CellRole::free_node;
    const int col = grid.col_of(idx);
    const int row = grid.row_of(idx);
    for (int n = 0; n < 4; ++n) {
        const int nc = col + kNeighborDx[n];
        const int nr = row + kNeighborDy[n];
        if (!grid.in_bounds(nc, nr) || alloc.owner[grid.index(nc, nr)] != owner) {
            return CellRole::boundary_node;
        }
    }
    return CellRole::interior;
}

}  // namespace

PathGraph build_path_graph(const Allocation& alloc, const Grid& grid) {
    PathGraph graph;
    graph.node_of_cell.assign(static_cast<std::size_t>(grid.cell_count()), -1);

    std::vector<CellRole> roles(static_cast<std::size_t>(grid.cell_count()), CellRole::interior);
    for (int idx = 0; idx < grid.cell_count(); ++idx) {
        if (!grid.inside_mask[idx]) continue;
        roles[idx] = cell_role(alloc, grid, idx);
        if (roles[idx] != CellRole::interior) {
            graph.node_of_cell[idx] = static_cast<int>(graph.node_cells.size());
            graph.node_cells.push_back(idx);
            graph.node_is_boundary.push_back(roles[idx] == CellRole::boundary_node ? 1 : 0);
        }
    }

    graph.adjacency.assign(graph.node_cells.size(), {});
    for (int u = 0; u < graph.node_count(); ++u) {
        const int idx = graph.node_cells[u];
        const int col = grid.col_of(idx);
        const int row = grid.row_of(idx);
        for (int n = 0; n < 4; ++n) {
            const int nc = col + kNeighborDx[n];
            const int nr = row + kNeighborDy[n];
            if (!grid.in_bounds(nc, nr)) continue;
            const int v = graph.node_of_cell[grid.index(nc, nr)];
            if (v < 0) continue;
            double length = kFreeFreeLength;
            const int boundary_ends = graph.node_is_boundary[u] + graph.node_is_boundary[v];
            if (boundary_ends == 1) length = kFreeBoundaryLength;
            if (boundary_ends == 2) length = kBoundaryBoundaryLength;
            graph.adjacency[u].push_back({v, length});
        }
    }
    return graph;
}

std::vector<int> select_entrances(std::span<const double> fractions, const Allocation& alloc,
                                  const Grid& grid) {
    if (fractions.size() != alloc.room_cells.size()) {
        throw std::invalid_argument("one entrance fraction per room required");
    }
    std::vector<int> entrances(alloc.room_cells.size(), kNoEntrance);
    for (std::size_t room = 0; room < alloc.room_cells.size(); ++room) {
        const double fraction = fractions[room];
        if (fraction < 0.0 || fraction > 1.0) {
            throw std::invalid_argument("entrance fraction out of [0, 1]");
        }
        // Eligible: boundary cells with a 4-neighbour that is a graph node not
        // owned by this room (a free cell or another room's boundary cell).
        std::vector<int> eligible;
        for (int idx : room_boundary_cells(alloc, static_cast<int>(room), grid)) {
            const int col = grid.col_of(idx);
            const int row = grid.row_of(idx);
            for (int n = 0; n < 4; ++n) {
                const int nc = col + kNeighborDx[n];
                const int nr = row + kNeighborDy[n];
                if (!grid.in_bounds(nc, nr)) continue;
                const int nidx = grid.index(nc, nr);
                if (!grid.inside_mask[nidx]) continue;
                if (alloc.owner[nidx] == static_cast<int>(room)) continue;
                if (cell_role(alloc, grid, nidx) == CellRole::interior) continue;
                eligible.push_back(idx);
                break;
            }
        }
        if (eligible.empty()) continue;
        std::size_t pick = static_cast<std::size_t>(fraction * static_cast<double>(eligible.size()));
        if (pick >= eligible.size()) pick = eligible.size() - 1;
        entrances[room] = eligible[pick];
    }
    return entrances;
}

ShortestPaths dijkstra_reference(const PathGraph& graph, int source_node) {
    if (source_node < 0 || source_node >= graph.node_count()) {
        throw std::invalid_argument("source node is not in the graph");
    }
    ShortestPaths result;
    result.distance.assign(graph.node_cells.size(), kUnreachable);
    result.predecessor.assign(graph.node_cells.size(), -1);
    result.distance[source_node] = 0.0;

    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    queue.push({0.0, source_node});
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > result.distance[u]) continue;
        for (const PathGraph::Edge& edge : graph.adjacency[u]) {
            const double nd = d + edge.length;
            if (nd < result.distance[edge.to]) {
                result.distance[edge.to] = nd;
                result.predecessor[edge.to] = u;
                queue.push({nd, edge.to});
            }
        }
    }
    return result;
}

CirculationPattern path_generation(const PathGraph& graph, int source_node,
                                   std::span<const int> entrance_cells,
                                   const PathGenOptions& options) {
    if (source_node < 0 || source_node >= graph.node_count()) {
        throw std::invalid_argument("source node is not in the graph");
    }
    if (!(options.shorten_factor > 0.0) || options.shorten_factor > 1.0) {
        throw std::invalid_argument("shorten_factor must be in (0, 1]");
    }

    const int nv = graph.node_count();
    std::vector<std::vector<PathGraph::Edge>> adjacency = graph.adjacency;  // mutable lengths
    std::vector<double> dist(nv, kUnreachable);
    std::vector<int> pred(nv, -1);
    std::vector<std::uint8_t> established(nv, 0);

    // Entrance bookkeeping: node -> room. Entrance cells are boundary cells of
    // distinct rooms, so no two rooms share a node.
    const std::size_t room_count = entrance_cells.size();
    std::vector<int> room_of_node(nv, -1);
    for (std::size_t room = 0; room < room_count; ++room) {
        const int cell = entrance_cells[room];
        if (cell == kNoEntrance) continue;
        if (cell < 0 || cell >= static_cast<int>(graph.node_of_cell.size())) continue;
        const int node = graph.node_of_cell[cell];
        if (node >= 0) room_of_node[node] = static_cast<int>(room);
    }

    CirculationPattern pattern;
    pattern.source_cell = graph.node_cells[source_node];
    pattern.entrance_cells.assign(entrance_cells.begin(), entrance_cells.end());
    pattern.paths.assign(room_count, {});
    pattern.path_distance.assign(room_count, kUnreachable);
    pattern.reachable.assign(room_count, 0);

    std::vector<std::uint8_t> recorded(nv, 0);

    auto scale_edge = [&](int a, int b) {
        for (PathGraph::Edge& e : adjacency[a]) {
            if (e.to == b) e.length *= options.shorten_factor;
        }
        for (PathGraph::Edge& e : adjacency[b]) {
            if (e.to == a) e.length *= options.shorten_factor;
        }
    };
    auto edge_length = [&](int a, int b) {
        for (const PathGraph::Edge& e : adjacency[a]) {
            if (e.to == b) return e.length;
        }
        return kUnreachable;
    };

    using Entry = std::pair<double, int>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
    dist[source_node] = 0.0;
    queue.push({0.0, source_node});

    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;  // stale entry

        if (room_of_node[u] >= 0 && !recorded[u]) {
            // Entrance settled: freeze its path, shorten the path edges, and
            // re-relax the path so later searches see the discount.
            recorded[u] = 1;
            std::vector<int> path;
            for (int v = u; v >= 0; v = pred[v]) path.push_back(v);
            std::reverse(path.begin(), path.end());

            const int room = room_of_node[u];
            pattern.path_distance[room] = d;
            pattern.reachable[room] = 1;
            std::vector<int>& cells = pattern.paths[room];
            cells.reserve(path.size());
            for (int v : path) cells.push_back(graph.node_cells[v]);

            for (std::size_t i = 1; i < path.size(); ++i) scale_edge(path[i - 1], path[i]);
            for (std::size_t i = 1; i < path.size(); ++i) {
                dist[path[i]] = dist[path[i - 1]] + edge_length(path[i - 1], path[i]);
            }
            for (int v : path) {
                established[v] = 1;
                queue.push({dist[v], v});
            }
        }

        for (const PathGraph::Edge& edge : adjacency[u]) {
            const int v = edge.to;
            const double nd = dist[u] + edge.length;
            if (nd < dist[v]) {
                dist[v] = nd;
                pred[v] = u;
                queue.push({nd, v});
            } else if (options.prefer_established && nd == dist[v] && pred[v] >= 0 &&
                       pred[v] != u) {
                const int current = pred[v];
                const bool candidate_better =
                    established[u] != established[current] ? established[u] != 0 : u < current;
                if (candidate_better) pred[v] = u;
            }
        }
    }

    // Corridor cells: distinct free cells on any recorded path.
    std::vector<int> corridor;
    for (const std::vector<int>& path : pattern.paths) {
        for (int cell : path) {
            const int node = graph.node_of_cell[cell];
            if (node >= 0 && !graph.node_is_boundary[node]) corridor.push_back(cell);
        }
    }
    std::sort(corridor.begin(), corridor.end());
    corridor.erase(std::unique(corridor.begin(), corridor.end()), corridor.end());
    pattern.corridor_cells = std::move(corridor);
    pattern.node_distance = std::move(dist);
    return pattern;
}

CorridorMetrics corridor_metrics(const CirculationPattern& pattern, const DesignSpec& spec,
                                 const Grid& grid) {
    CorridorMetrics metrics;
    const double s = grid.cell_size;
    metrics.pathway_length = static_cast<double>(pattern.corridor_cells.size()) * s;
    for (std::size_t room = 0; room < pattern.reachable.size(); ++room) {
        const bool missing = pattern.entrance_cells[room] == kNoEntrance || !pattern.reachable[room];
        if (missing) {
            ++metrics.penalized_rooms;
            metrics.pathway_length += 2.0 * static_cast<double>(grid.inside_count) * s;
        }
    }
    metrics.corridor_area = metrics.pathway_length * spec.path_width;
    return metrics;
}

}  // namespace layoutgen
