#include "layoutgen/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace layoutgen {

void validate_config(const OptimizerConfig& config) {
    if (config.population_size < 4 || config.population_size % 2 != 0) {
        throw std::invalid_argument("population_size must be even and at least 4");
    }
    if (config.generations < 1) throw std::invalid_argument("generations must be positive");
    if (config.crossover_probability < 0.0 || config.crossover_probability > 1.0) {
        throw std::invalid_argument("crossover_probability must be in [0, 1]");
    }
    if (config.mutation_probability < 0.0 || config.mutation_probability > 1.0) {
        throw std::invalid_argument("mutation_probability must be in [0, 1]");
    }
    if (!(config.eta_crossover > 0.0) || !(config.eta_mutation > 0.0)) {
        throw std::invalid_argument("distribution indices must be positive");
    }
}

std::size_t genome_length(const DesignSpec& spec) { return 1 + 5 * spec.rooms.size(); }

namespace {

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Mass parameters step over the dimension range in whole cells, so target
// areas are achievable allocation areas and a perfectly fitted room scores a
// zero conflict term.
double snapped_mass(double gene, const std::array<double, 2>& range, double cell_size) {
    const double span = range[1] - range[0];
    const double steps = std::floor(span / cell_size + 1e-9);
    if (steps < 1.0) return range[0];
    return range[0] + std::round(gene * steps) * cell_size;
}

DecodedGenome decode_impl(const Genome& genome, const DesignSpec& spec,
                          std::size_t candidate_count) {
    if (genome.size() != genome_length(spec)) {
        throw std::invalid_argument("genome length does not match the spec");
    }
    DecodedGenome decoded;
    std::size_t entry = static_cast<std::size_t>(genome[0] * static_cast<double>(candidate_count));
    if (entry >= candidate_count) entry = candidate_count - 1;  // gene value 1.0
    decoded.entry_index = static_cast<int>(entry);

    const BoundingBox box = bounding_box(spec.envelope);
    decoded.fields.reserve(spec.rooms.size());
    decoded.entrance_fractions.reserve(spec.rooms.size());
    for (std::size_t i = 0; i < spec.rooms.size(); ++i) {
        const std::size_t base = 1 + 5 * i;
        const RoomSpec& room = spec.rooms[i];
        FieldParams field;
        field.x0 = box.min.x + genome[base] * box.width();
        field.y0 = box.min.y + genome[base + 1] * box.height();
        field.m_x = snapped_mass(genome[base + 2], room.width_range, spec.cell_size);
        field.m_y = snapped_mass(genome[base + 3], room.height_range, spec.cell_size);
        field.t = kUprightRotation;
        decoded.fields.push_back(field);
        decoded.entrance_fractions.push_back(genome[base + 4]);
    }
    return decoded;
}

// Deb's simulated binary crossover. Each gene recombines with probability 0.5
// and is otherwise inherited verbatim; children are clamped to the unit box.
void sbx_pair(Genome& a, Genome& b, double eta, Rng& rng) {
    const double exponent = 1.0 / (eta + 1.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (rng.uniform() >= 0.5) continue;
        const double u = rng.uniform();
        const double beta = u <= 0.5 ? std::pow(2.0 * u, exponent)
                                     : std::pow(1.0 / (2.0 * (1.0 - u)), exponent);
        const double p1 = a[j];
        const double p2 = b[j];
        // Mean-and-spread form: equal parents reproduce exactly.
        const double mean = 0.5 * (p1 + p2);
        const double spread = 0.5 * beta * (p1 - p2);
        a[j] = clamp01(mean + spread);
        b[j] = clamp01(mean - spread);
    }
}

// Polynomial mutation on [0, 1]; the perturbation is drawn independently of
// the gene's position and the result clamped, so bounds are reachable exactly.
void polynomial_mutate(Genome& g, double pm, double eta, Rng& rng) {
    const double mut_pow = 1.0 / (eta + 1.0);
    for (double& gene : g) {
        if (rng.uniform() >= pm) continue;
        const double u = rng.uniform();
        const double deltaq = u < 0.5 ? std::pow(2.0 * u, mut_pow) - 1.0
                                      : 1.0 - std::pow(2.0 * (1.0 - u), mut_pow);
        gene = clamp01(gene + deltaq);
    }
}

std::vector<Genome> random_population(const OptimizerConfig& config, const DesignSpec& spec,
                                      Rng& rng) {
    std::vector<Genome> population(static_cast<std::size_t>(config.population_size));
    const std::size_t length = genome_length(spec);
    for (Genome& genome : population) {
        genome.resize(length);
        for (double& gene : genome) gene = rng.uniform();
    }
    return population;
}

}  // namespace

DecodedGenome decode_genome(const Genome& genome, const DesignSpec& spec, const Grid& grid) {
    return decode_impl(genome, spec, entrance_candidate_cells(spec, grid).size());
}

std::vector<Genome> initialize_population(const OptimizerConfig& config, const DesignSpec& spec) {
    validate_config(config);
    Rng rng(config.seed);
    return random_population(config, spec, rng);
}

bool dominates(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("objective vectors differ in length");
    bool any_better = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) return false;
        if (a[i] < b[i]) any_better = true;
    }
    return any_better;
}

std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives) {
    const int n = static_cast<int>(objectives.size());
    for (const auto& v : objectives) {
        if (v.size() != objectives.front().size()) {
            throw std::invalid_argument("objective vectors differ in length");
        }
    }
    std::vector<std::vector<int>> dominated(n);
    std::vector<int> domination_count(n, 0);
    std::vector<std::vector<int>> fronts;

    std::vector<int> current;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objectives[p], objectives[q])) {
                dominated[p].push_back(q);
            } else if (dominates(objectives[q], objectives[p])) {
                ++domination_count[p];
            }
        }
        if (domination_count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        fronts.push_back(current);
        std::vector<int> next;
        for (int p : fronts.back()) {
            for (int q : dominated[p]) {
                if (--domination_count[q] == 0) next.push_back(q);
            }
        }
        std::sort(next.begin(), next.end());
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_objectives) {
    const std::size_t n = front_objectives.size();
    if (n == 0) throw std::invalid_argument("crowding_distance requires a non-empty front");
    std::vector<double> distance(n, 0.0);
    const std::size_t m = front_objectives.front().size();
    std::vector<int> order(n);
    for (std::size_t obj = 0; obj < m; ++obj) {
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return front_objectives[a][obj] < front_objectives[b][obj];
        });
        distance[order.front()] = kCrowdingInfinite;
        distance[order.back()] = kCrowdingInfinite;
        const double span =
            front_objectives[order.back()][obj] - front_objectives[order.front()][obj];
        if (span == 0.0) continue;
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (distance[order[i]] == kCrowdingInfinite) continue;
            distance[order[i]] +=
                (front_objectives[order[i + 1]][obj] - front_objectives[order[i - 1]][obj]) / span;
        }
    }
    return distance;
}

std::vector<Genome> make_offspring(const std::vector<Genome>& population,
                                   const std::vector<int>& ranks,
                                   const std::vector<double>& crowding,
                                   const OptimizerConfig& config, Rng& rng) {
    const std::size_t n = population.size();
    if (ranks.size() != n || crowding.size() != n) {
        throw std::invalid_argument("ranks/crowding must match the population");
    }
    auto tournament = [&]() -> std::size_t {
        const std::size_t a = rng.pick(n);
        const std::size_t b = rng.pick(n);
        if (ranks[a] != ranks[b]) return ranks[a] < ranks[b] ? a : b;
        if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
        return a < b ? a : b;
    };

    std::vector<Genome> children;
    children.reserve(static_cast<std::size_t>(config.population_size));
    while (children.size() < static_cast<std::size_t>(config.population_size)) {
        Genome c1 = population[tournament()];
        Genome c2 = population[tournament()];
        if (rng.uniform() < config.crossover_probability) {
            sbx_pair(c1, c2, config.eta_crossover, rng);
        }
        polynomial_mutate(c1, config.mutation_probability, config.eta_mutation, rng);
        polynomial_mutate(c2, config.mutation_probability, config.eta_mutation, rng);
        children.push_back(std::move(c1));
        if (children.size() < static_cast<std::size_t>(config.population_size)) {
            children.push_back(std::move(c2));
        }
    }
    return children;
}

EvaluatedLayout evaluate_genome(const DesignSpec& spec, const Grid& grid,
                                std::span<const int> entry_candidates, const Genome& genome,
                                const PipelineConfig& pipeline) {
    EvaluatedLayout layout;
    layout.decoded = decode_impl(genome, spec, entry_candidates.size());
    layout.allocation = allocate_cells(grid, layout.decoded.fields, pipeline.field_constants);
    const std::vector<int> entrances =
        select_entrances(layout.decoded.entrance_fractions, layout.allocation, grid);
    const PathGraph graph = build_path_graph(layout.allocation, grid);
    const int source_cell = entry_candidates[layout.decoded.entry_index];
    const int source_node = graph.node_of_cell[source_cell];
    if (source_node >= 0) {
        layout.pattern = path_generation(graph, source_node, entrances, pipeline.path_options);
    } else {
        // Entry cell swallowed by a room interior: nothing is reachable.
        layout.pattern.source_cell = source_cell;
        layout.pattern.entrance_cells = entrances;
        layout.pattern.paths.assign(spec.rooms.size(), {});
        layout.pattern.path_distance.assign(spec.rooms.size(), kUnreachable);
        layout.pattern.reachable.assign(spec.rooms.size(), 0);
    }
    layout.evaluation =
        evaluate_layout_detail(spec, grid, layout.decoded.fields, layout.allocation, layout.pattern);
    return layout;
}

namespace {

std::vector<int> rank_of(const std::vector<std::vector<int>>& fronts, std::size_t n) {
    std::vector<int> ranks(n, 0);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        for (int i : fronts[r]) ranks[i] = static_cast<int>(r);
    }
    return ranks;
}

std::vector<double> crowding_of(const std::vector<std::vector<int>>& fronts,
                                const std::vector<std::vector<double>>& objectives) {
    std::vector<double> crowding(objectives.size(), 0.0);
    for (const std::vector<int>& front : fronts) {
        std::vector<std::vector<double>> subset;
        subset.reserve(front.size());
        for (int i : front) subset.push_back(objectives[i]);
        const std::vector<double> d = crowding_distance(subset);
        for (std::size_t k = 0; k < front.size(); ++k) crowding[front[k]] = d[k];
    }
    return crowding;
}

}  // namespace

RunArchive evolve(const DesignSpec& spec, const OptimizerConfig& config,
                  const PipelineConfig& pipeline) {
    validate_config(config);
    validate_spec(spec);
    const Grid grid = build_grid(spec);
    const std::vector<int> candidates = entrance_candidate_cells(spec, grid);

    const auto start = std::chrono::steady_clock::now();
    RunArchive archive;
    Rng rng(config.seed);

    std::vector<Genome> population = random_population(config, spec, rng);
    std::vector<std::vector<double>> objectives;
    objectives.reserve(population.size());
    for (const Genome& genome : population) {
        objectives.push_back(evaluate_genome(spec, grid, candidates, genome, pipeline)
                                 .evaluation.objectives);
    }
    archive.evaluations += population.size();

    auto snapshot = [&]() {
        std::vector<Individual> generation;
        generation.reserve(population.size());
        for (std::size_t i = 0; i < population.size(); ++i) {
            generation.push_back({population[i], objectives[i]});
        }
        archive.generations.push_back(std::move(generation));
    };
    snapshot();

    for (int gen = 0; gen < config.generations; ++gen) {
        const std::vector<std::vector<int>> fronts = fast_nondominated_sort(objectives);
        const std::vector<int> ranks = rank_of(fronts, population.size());
        const std::vector<double> crowding = crowding_of(fronts, objectives);

        std::vector<Genome> children = make_offspring(population, ranks, crowding, config, rng);
        std::vector<std::vector<double>> child_objectives;
        child_objectives.reserve(children.size());
        for (const Genome& genome : children) {
            child_objectives.push_back(evaluate_genome(spec, grid, candidates, genome, pipeline)
                                           .evaluation.objectives);
        }
        archive.evaluations += children.size();

        // Elitist selection over parents + children.
        std::vector<Genome> combined = population;
        combined.insert(combined.end(), std::make_move_iterator(children.begin()),
                        std::make_move_iterator(children.end()));
        std::vector<std::vector<double>> combined_objectives = objectives;
        combined_objectives.insert(combined_objectives.end(),
                                   std::make_move_iterator(child_objectives.begin()),
                                   std::make_move_iterator(child_objectives.end()));

        const std::vector<std::vector<int>> combined_fronts =
            fast_nondominated_sort(combined_objectives);
        std::vector<int> selected;
        selected.reserve(static_cast<std::size_t>(config.population_size));
        for (const std::vector<int>& front : combined_fronts) {
            if (selected.size() + front.size() <= static_cast<std::size_t>(config.population_size)) {
                selected.insert(selected.end(), front.begin(), front.end());
                continue;
            }
            std::vector<std::vector<double>> subset;
            subset.reserve(front.size());
            for (int i : front) subset.push_back(combined_objectives[i]);
            const std::vector<double> d = crowding_distance(subset);
            std::vector<int> order(front.size());
            for (std::size_t i = 0; i < front.size(); ++i) order[i] = static_cast<int>(i);
            std::stable_sort(order.begin(), order.end(),
                             [&](int a, int b) { return d[a] > d[b]; });
            for (int i : order) {
                if (selected.size() == static_cast<std::size_t>(config.population_size)) break;
                selected.push_back(front[i]);
            }
            break;
        }

        std::vector<Genome> next_population;
        std::vector<std::vector<double>> next_objectives;
        next_population.reserve(selected.size());
        next_objectives.reserve(selected.size());
        for (int i : selected) {
            next_population.push_back(std::move(combined[i]));
            next_objectives.push_back(std::move(combined_objectives[i]));
        }
        population = std::move(next_population);
        objectives = std::move(next_objectives);
        snapshot();
    }

    // Final front: non-dominated members of the last population, exact
    // objective-vector duplicates removed, sorted for stable output.
    const std::vector<std::vector<int>> final_fronts = fast_nondominated_sort(objectives);
    std::vector<Individual> front;
    for (int i : final_fronts.front()) {
        bool duplicate = false;
        for (const Individual& seen : front) {
            if (seen.objectives == objectives[i]) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) front.push_back({population[i], objectives[i]});
    }
    std::sort(front.begin(), front.end(), [](const Individual& a, const Individual& b) {
        if (a.objectives != b.objectives) return a.objectives < b.objectives;
        return a.genome < b.genome;
    });
    archive.final_front = std::move(front);

    archive.final_front_generation.reserve(archive.final_front.size());
    for (const Individual& member : archive.final_front) {
        int found = static_cast<int>(archive.generations.size()) - 1;
        for (std::size_t g = 0; g < archive.generations.size(); ++g) {
            bool present = false;
            for (const Individual& candidate : archive.generations[g]) {
                if (candidate.objectives == member.objectives) {
                    present = true;
                    break;
                }
            }
            if (present) {
                found = static_cast<int>(g);
                break;
            }
        }
        archive.final_front_generation.push_back(found);
    }

    archive.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return archive;
}

}  // namespace layoutgen
