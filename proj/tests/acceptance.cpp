// Acceptance suite: runs every verification criterion and prints one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "layoutgen/artifact.hpp"
#include "layoutgen/evolution.hpp"

namespace fs = std::filesystem;
using namespace layoutgen;

namespace {

std::string g_cli;
std::string g_specs = "specs";

constexpr std::uint64_t kDeskRunSeed = 1;

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DesignSpec rectangle_spec(double width, double height, int rooms = 1) {
    DesignSpec spec;
    spec.envelope = {{0.0, 0.0}, {width, 0.0}, {width, height}, {0.0, height}};
    spec.windows = {{{0.0, 0.0}, {width, 0.0}}};
    spec.entrance_candidates = {{width / 2.0, 0.0}};
    for (int i = 0; i < rooms; ++i) {
        RoomSpec room;
        room.name = "room" + std::to_string(i);
        room.kind = RoomKind::other;
        room.habitable = true;
        room.width_range = {1.0, 4.0};
        room.height_range = {1.0, 4.0};
        spec.rooms.push_back(room);
    }
    spec.cell_size = 1.0;
    spec.objectives = {Objective::area_minus_conflict, Objective::circulation};
    return spec;
}

Allocation paint(const Grid& grid, int rooms, const std::function<int(int, int)>& owner_of) {
    Allocation alloc;
    alloc.owner.assign(static_cast<std::size_t>(grid.cell_count()), kOutsideCell);
    alloc.room_cells.assign(static_cast<std::size_t>(rooms), {});
    alloc.room_area.assign(static_cast<std::size_t>(rooms), 0.0);
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
    for (int i = 0; i < rooms; ++i) {
        alloc.room_area[i] = static_cast<double>(alloc.room_cells[i].size());
    }
    return alloc;
}

bool dominated_by_any(const std::vector<double>& x,
                      const std::vector<std::vector<double>>& candidates) {
    for (const auto& y : candidates) {
        if (dominates(y, x)) return true;
    }
    return false;
}

std::vector<std::vector<double>> front_of(const std::vector<Individual>& population) {
    std::vector<std::vector<double>> objectives;
    objectives.reserve(population.size());
    for (const Individual& member : population) objectives.push_back(member.objectives);
    std::vector<std::vector<double>> front;
    for (const auto& x : objectives) {
        if (!dominated_by_any(x, objectives)) front.push_back(x);
    }
    return front;
}

// ---- criterion 1 -----------------------------------------------------------

bool field_allocation_oracle(std::string& report) {
    const auto start = std::chrono::steady_clock::now();
    const DesignSpec spec = rectangle_spec(40.0, 40.0);
    const Grid grid = build_grid(spec);
    const FieldConstants consts{};
    std::mt19937 rng(20240331);
    std::uniform_real_distribution<double> mass(2.0, 8.0), position(0.0, 40.0);

    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const FieldParams field{.x0 = position(rng), .y0 = position(rng), .m_x = mass(rng),
                                .m_y = mass(rng)};
        const Allocation alloc = allocate_cells(grid, std::vector<FieldParams>{field}, consts);
        const HalfExtents extent = active_extent(field, consts);
        std::set<int> expected;
        for (int idx = 0; idx < grid.cell_count(); ++idx) {
            if (!grid.inside_mask[idx]) continue;
            const Point c = cell_center(grid, idx);
            if (std::abs(c.x - field.x0) < extent.x && std::abs(c.y - field.y0) < extent.y) {
                expected.insert(idx);
            }
        }
        const std::set<int> actual(alloc.room_cells[0].begin(), alloc.room_cells[0].end());
        if (actual != expected) {
            report = "allocation diverged from the closed-form rectangle on trial " +
                     std::to_string(trial);
            return false;
        }
        ++checked;
    }
    const double elapsed = seconds_since(start);
    std::ostringstream out;
    out << checked << " random fields matched exactly in " << elapsed << " s";
    report = out.str();
    return elapsed < 5.0;
}

// ---- criterion 2 -----------------------------------------------------------

bool footprint_parity(std::string& report) {
    const DesignSpec spec = rectangle_spec(12.0, 10.0);
    const Grid grid = build_grid(spec);
    const FieldConstants consts{};

    // Even span m_x = 4 fills 4 columns with x0 on a vertical cell boundary;
    // odd span m_y = 3 fills 3 rows with y0 on a cell-centre line.
    const FieldParams aligned{.x0 = 6.0, .y0 = 4.5, .m_x = 4.0, .m_y = 3.0};
    const std::size_t full =
        allocate_cells(grid, std::vector<FieldParams>{aligned}, consts).room_cells[0].size();

    const FieldParams centred{.x0 = 6.5, .y0 = 4.5, .m_x = 4.0, .m_y = 3.0};
    const std::size_t trimmed =
        allocate_cells(grid, std::vector<FieldParams>{centred}, consts).room_cells[0].size();

    std::ostringstream out;
    out << "span-aligned centre -> " << full << " cells, cell-centre -> " << trimmed << " cells";
    report = out.str();
    return full == 12 && trimmed == 9;
}

// ---- criterion 3 -----------------------------------------------------------

bool pathgen_degeneracy(std::string& report) {
    std::mt19937 rng(5150);
    std::uniform_int_distribution<int> dim(3, 15), rooms_dist(0, 3), side(1, 5);
    int instances = 0;
    while (instances < 100) {
        const int cols = dim(rng);
        const int rows = dim(rng);
        const DesignSpec spec = rectangle_spec(cols, rows);
        const Grid grid = build_grid(spec);
        const int room_count = rooms_dist(rng);
        std::vector<std::array<int, 4>> blocks;
        for (int i = 0; i < room_count; ++i) {
            std::uniform_int_distribution<int> cx(0, cols - 1), cy(0, rows - 1);
            blocks.push_back({cx(rng), cy(rng), side(rng), side(rng)});
        }
        const Allocation alloc = paint(grid, room_count, [&](int col, int row) {
            for (int i = room_count - 1; i >= 0; --i) {
                if (col >= blocks[i][0] && col < blocks[i][0] + blocks[i][2] &&
                    row >= blocks[i][1] && row < blocks[i][1] + blocks[i][3]) {
                    return i;
                }
            }
            return kFreeCell;
        });
        const PathGraph graph = build_path_graph(alloc, grid);
        if (graph.node_count() == 0) continue;
        std::uniform_int_distribution<int> node_pick(0, graph.node_count() - 1);
        const int source = node_pick(rng);
        std::vector<int> entrances;
        for (int i = 0; i < 3; ++i) entrances.push_back(graph.node_cells[node_pick(rng)]);

        const CirculationPattern pattern = path_generation(
            graph, source, entrances, {.shorten_factor = 1.0, .prefer_established = false});
        const ShortestPaths reference = dijkstra_reference(graph, source);
        if (pattern.node_distance != reference.distance) {
            report = "distance map diverged on instance " + std::to_string(instances);
            return false;
        }
        ++instances;
    }
    report = "100 random instances matched the reference distances exactly";
    return true;
}

// ---- criterion 4 -----------------------------------------------------------

void enumerate_paths(const PathGraph& graph, const std::vector<double>& dist, int source,
                     int target, std::vector<std::vector<int>>& out) {
    std::vector<int> suffix{target};
    std::function<void(int)> walk = [&](int v) {
        if (v == source) {
            out.emplace_back(suffix.rbegin(), suffix.rend());
            return;
        }
        for (const PathGraph::Edge& e : graph.adjacency[v]) {
            if (dist[e.to] + e.length == dist[v]) {
                suffix.push_back(e.to);
                walk(e.to);
                suffix.pop_back();
            }
        }
    };
    walk(target);
}

bool consolidation(std::string& report) {
    const DesignSpec spec = rectangle_spec(7.0, 7.0);
    const Grid grid = build_grid(spec);
    const Allocation alloc = paint(grid, 0, [](int, int) { return kFreeCell; });
    const PathGraph graph = build_path_graph(alloc, grid);
    const int source = graph.node_of_cell[grid.index(0, 0)];
    const std::vector<int> entrance_cells{grid.index(4, 6), grid.index(6, 4)};

    const ShortestPaths reference = dijkstra_reference(graph, source);
    std::size_t max_union = 0;
    std::size_t min_union = SIZE_MAX;
    std::vector<std::vector<std::vector<int>>> families;
    for (int cell : entrance_cells) {
        families.emplace_back();
        enumerate_paths(graph, reference.distance, source, graph.node_of_cell[cell],
                        families.back());
    }
    for (const auto& p1 : families[0]) {
        for (const auto& p2 : families[1]) {
            std::set<int> cells(p1.begin(), p1.end());
            cells.insert(p2.begin(), p2.end());
            max_union = std::max(max_union, cells.size());
            min_union = std::min(min_union, cells.size());
        }
    }

    const CirculationPattern pattern =
        path_generation(graph, source, entrance_cells, {.shorten_factor = 0.8});
    bool distances_ok = true;
    for (std::size_t room = 0; room < entrance_cells.size(); ++room) {
        const int node = graph.node_of_cell[entrance_cells[room]];
        if (!(pattern.path_distance[room] <= reference.distance[node])) distances_ok = false;
    }

    std::ostringstream out;
    out << "corridor " << pattern.corridor_cells.size() << " cells vs reference tie-break range ["
        << min_union << ", " << max_union << "] over " << families[0].size() << "x"
        << families[1].size() << " path pairs";
    report = out.str();
    return pattern.corridor_cells.size() < max_union && distances_ok;
}

// ---- criterion 5 -----------------------------------------------------------

bool objective_formulas(std::string& report) {
    const DesignSpec spec = rectangle_spec(12.0, 10.0);
    const Grid grid = build_grid(spec);

    const Allocation ten_cells = paint(grid, 1, [](int col, int row) {
        return (col < 5 && row < 2) ? 0 : kFreeCell;
    });
    const std::vector<FieldParams> target12{{.x0 = 2.0, .y0 = 1.5, .m_x = 4.0, .m_y = 3.0}};
    const double conflict = conflict_area(target12, ten_cells, 1.0);

    const Allocation separated = paint(grid, 2, [](int col, int row) {
        if (col < 2 && row < 2) return 0;
        if (col > 9 && row > 7) return 1;
        return kFreeCell;
    });
    const std::vector<FieldParams> centres{{.x0 = 0.0, .y0 = 0.0, .m_x = 2.0, .m_y = 2.0},
                                           {.x0 = 3.0, .y0 = 4.0, .m_x = 2.0, .m_y = 2.0}};
    const std::vector<std::pair<int, int>> pairs{{0, 1}};
    const double distance = adjacency_distance(separated, grid, centres, pairs);

    const Allocation block21 = paint(grid, 2, [](int col, int row) {
        if (col < 4 && row < 3) return 0;
        if (col > 8 && row > 6) return 1;
        return kFreeCell;
    });
    const double area = internal_area(block21, 1.0);

    std::ostringstream out;
    out << "C = " << conflict << ", D = " << distance << ", A = " << area;
    report = out.str();
    return conflict == 4.0 && distance == 5.0 && area == 21.0;
}

// ---- criterion 6 -----------------------------------------------------------

bool shadow_model(std::string& report) {
    DesignSpec spec = rectangle_spec(12.0, 6.0, 3);
    spec.windows = {{{0.0, 0.0}, {12.0, 0.0}}};
    const Grid grid = build_grid(spec);
    const Allocation alloc = paint(grid, 3, [](int col, int row) {
        if (row <= 1) return 0;  // spans the full window wall
        if (row >= 3 && row <= 4 && col >= 1 && col <= 4) return 1;
        if (row >= 3 && row <= 4 && col >= 7 && col <= 10) return 2;
        return kFreeCell;
    });

    const double south = shadow_area(alloc, grid, spec, {0.0, 1.0});
    const double north = shadow_area(alloc, grid, spec, {0.0, -1.0});

    // Room 0 alone under southern light: remove the other rooms' cells.
    const Allocation only_room0 = paint(grid, 1, [](int col, int row) {
        (void)col;
        return row <= 1 ? 0 : kFreeCell;
    });
    const double room0_south = shadow_area(only_room0, grid, spec, {0.0, 1.0});

    DesignSpec unglazed = spec;
    unglazed.windows.clear();
    const double no_window = shadow_area(alloc, grid, unglazed, {0.0, 1.0});

    std::ostringstream out;
    out << "S(south) = " << south << ", S(north) = " << north
        << ", window-wall room alone = " << room0_south << ", unglazed = " << no_window;
    report = out.str();
    return south < north && room0_south == 0.0 && no_window > south;
}

// ---- criterion 7 -----------------------------------------------------------

bool nsga_components(std::string& report) {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> size(1, 30), objective_count(2, 4);
    std::uniform_real_distribution<double> value(0.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = size(rng);
        const int m = objective_count(rng);
        std::vector<std::vector<double>> objectives(n, std::vector<double>(m));
        for (auto& row : objectives) {
            for (double& v : row) v = std::round(value(rng));
        }
        // Peeling oracle.
        std::vector<std::vector<int>> expected;
        std::vector<int> remaining(n);
        for (int i = 0; i < n; ++i) remaining[i] = i;
        while (!remaining.empty()) {
            std::vector<int> front, rest;
            for (int p : remaining) {
                bool dominated = false;
                for (int q : remaining) {
                    if (q != p && dominates(objectives[q], objectives[p])) {
                        dominated = true;
                        break;
                    }
                }
                (dominated ? rest : front).push_back(p);
            }
            expected.push_back(front);
            remaining = rest;
        }
        if (fast_nondominated_sort(objectives) != expected) {
            report = "sorting mismatch on trial " + std::to_string(trial);
            return false;
        }
    }

    const std::vector<double> crowding =
        crowding_distance({{0.0, 2.0}, {1.0, 1.0}, {2.0, 0.0}});
    const bool crowding_ok = crowding[0] == kCrowdingInfinite &&
                             crowding[2] == kCrowdingInfinite && crowding[1] == 2.0;
    report = "200 random populations sorted exactly; crowding middle = 2, ends infinite";
    return crowding_ok;
}

// ---- criterion 8 -----------------------------------------------------------

bool desk_run(std::string& report) {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in(g_specs + "/house.json", std::ios::binary);
    if (!in) {
        report = "cannot open " + g_specs + "/house.json";
        return false;
    }
    const DesignSpec spec = load_spec(in);
    const Grid grid = build_grid(spec);
    const std::vector<int> candidates = entrance_candidate_cells(spec, grid);

    OptimizerConfig config;
    config.population_size = 20;
    config.generations = 40;
    config.seed = kDeskRunSeed;
    const RunArchive archive = evolve(spec, config);
    const double elapsed = seconds_since(start);

    bool mutually_nondominated = true;
    for (const Individual& a : archive.final_front) {
        for (const Individual& b : archive.final_front) {
            if (dominates(a.objectives, b.objectives)) mutually_nondominated = false;
        }
    }

    int exact_fit_reachable = 0;
    for (const Individual& member : archive.final_front) {
        const EvaluatedLayout layout = evaluate_genome(spec, grid, candidates, member.genome);
        bool all_reachable = true;
        for (std::uint8_t flag : layout.evaluation.room_reachable) {
            if (!flag) all_reachable = false;
        }
        if (layout.evaluation.conflict == 0.0 && all_reachable) ++exact_fit_reachable;
    }

    const auto first_front = front_of(archive.generations[1]);
    const auto last_front = front_of(archive.generations.back());
    bool no_regression = true;
    for (const auto& x : last_front) {
        if (dominated_by_any(x, first_front)) no_regression = false;
    }

    std::ostringstream out;
    out << "seed " << config.seed << ": " << elapsed << " s, front " << archive.final_front.size()
        << ", exact-fit reachable layouts " << exact_fit_reachable << ", non-dominated "
        << (mutually_nondominated ? "yes" : "NO") << ", no front regression "
        << (no_regression ? "yes" : "NO");
    report = out.str();
    return elapsed < 300.0 && mutually_nondominated && exact_fit_reachable >= 1 && no_regression;
}

// ---- criterion 9 -----------------------------------------------------------

bool complexity_scaling(std::string& report) {
    const int sizes[] = {20, 40, 80};  // N = 400, 1600, 6400
    std::vector<double> log_n, log_t;
    for (int side : sizes) {
        DesignSpec spec = rectangle_spec(side, side, 6);
        for (RoomSpec& room : spec.rooms) {
            room.width_range = {2.0, side / 3.0};
            room.height_range = {2.0, side / 3.0};
        }
        const Grid grid = build_grid(spec);
        const std::vector<int> candidates = entrance_candidate_cells(spec, grid);
        Genome genome(genome_length(spec));
        std::mt19937 rng(42);
        std::uniform_real_distribution<double> gene(0.05, 0.95);
        for (double& g : genome) g = gene(rng);

        const int cells = grid.inside_count;
        const int iterations = std::max(4, 120000 / cells);
        double mean_seconds = 0.0;
        for (int rep = 0; rep < 5; ++rep) {
            const auto start = std::chrono::steady_clock::now();
            for (int i = 0; i < iterations; ++i) {
                const EvaluatedLayout layout = evaluate_genome(spec, grid, candidates, genome);
                if (layout.evaluation.objectives.empty()) std::abort();
            }
            mean_seconds += seconds_since(start) / iterations;
        }
        mean_seconds /= 5.0;
        log_n.push_back(std::log(static_cast<double>(cells)));
        log_t.push_back(std::log(mean_seconds));
    }

    double x_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        x_mean += log_n[i];
        y_mean += log_t[i];
    }
    x_mean /= log_n.size();
    y_mean /= log_t.size();
    double cov = 0.0, var = 0.0;
    for (std::size_t i = 0; i < log_n.size(); ++i) {
        cov += (log_n[i] - x_mean) * (log_t[i] - y_mean);
        var += (log_n[i] - x_mean) * (log_n[i] - x_mean);
    }
    const double alpha = cov / var;

    std::ostringstream out;
    out << "t ~ N^" << alpha << " over N in {400, 1600, 6400}";
    report = out.str();
    return alpha <= 2.3;
}

// ---- criterion 10 ----------------------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

bool determinism(std::string& report) {
    if (g_cli.empty()) {
        report = "no --cli binary given";
        return false;
    }
    const fs::path base =
        fs::temp_directory_path() / ("layoutgen_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(base);
    fs::create_directories(base);
    const fs::path out_a = base / "a";
    const fs::path out_b = base / "b";

    const std::string args = " generate " + g_specs + "/house.json --seed 11 --pop 12 --gens 6 -o ";
    for (const fs::path& out : {out_a, out_b}) {
        const std::string command = g_cli + args + out.string() + " >/dev/null 2>/dev/null";
        const int status = std::system(command.c_str());
        if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
            report = "generate failed";
            return false;
        }
    }

    std::vector<std::string> names_a, names_b;
    for (const auto& entry : fs::recursive_directory_iterator(out_a)) {
        names_a.push_back(fs::relative(entry.path(), out_a).string());
    }
    for (const auto& entry : fs::recursive_directory_iterator(out_b)) {
        names_b.push_back(fs::relative(entry.path(), out_b).string());
    }
    std::sort(names_a.begin(), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    if (names_a != names_b) {
        report = "output trees differ in file sets";
        return false;
    }
    for (const std::string& name : names_a) {
        if (fs::is_directory(out_a / name)) continue;
        if (slurp(out_a / name) != slurp(out_b / name)) {
            report = "file " + name + " differs between runs";
            return false;
        }
    }
    std::ostringstream out;
    out << names_a.size() << " files byte-identical across two runs";
    report = out.str();
    fs::remove_all(base);
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--cli") g_cli = argv[i + 1];
        if (flag == "--specs") g_specs = argv[i + 1];
    }

    struct Criterion {
        int id;
        const char* title;
        bool (*run)(std::string&);
    };
    const Criterion criteria[] = {
        {1, "field/allocation oracle equivalence", field_allocation_oracle},
        {2, "allocation footprint parity", footprint_parity},
        {3, "path generation degenerates to dijkstra", pathgen_degeneracy},
        {4, "path shortening consolidates corridors", consolidation},
        {5, "objective formulas", objective_formulas},
        {6, "shadow model", shadow_model},
        {7, "non-dominated sorting and crowding", nsga_components},
        {8, "end-to-end desk run", desk_run},
        {9, "complexity scaling", complexity_scaling},
        {10, "generate determinism", determinism},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        std::string report;
        bool ok = false;
        try {
            ok = criterion.run(report);
        } catch (const std::exception& e) {
            report = std::string("exception: ") + e.what();
        }
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << criterion.id << ". " << criterion.title
                  << " - " << report << "\n";
        if (!ok) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
