#pragma once

#include <cstdint>
#include <random>

#include "layoutgen/evaluation.hpp"

namespace layoutgen {

// Normalized genome: gene 0 selects the floorplan entry, then five genes per
// room (x0, y0, m_x, m_y, entrance fraction), all in [0,1].
using Genome = std::vector<double>;

struct OptimizerConfig {
    int population_size = 50;
    int generations = 100;
    double crossover_probability = 0.9;
    double mutation_probability = 0.1;  // per gene
    double eta_crossover = 20.0;
    double eta_mutation = 20.0;
    std::uint64_t seed = 0;
};

// Throws std::invalid_argument on out-of-range settings.
void validate_config(const OptimizerConfig& config);

struct PipelineConfig {
    FieldConstants field_constants{};
    PathGenOptions path_options{};
};

// Deterministic uniform source. The mapping from engine output to doubles is
// fixed here so runs reproduce bit-for-bit across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    std::size_t pick(std::size_t n) {  // [0, n)
        std::size_t i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

struct DecodedGenome {
    int entry_index = 0;  // into the entrance candidate cell list
    std::vector<FieldParams> fields;
    std::vector<double> entrance_fractions;
};

std::size_t genome_length(const DesignSpec& spec);
DecodedGenome decode_genome(const Genome& genome, const DesignSpec& spec, const Grid& grid);

std::vector<Genome> initialize_population(const OptimizerConfig& config, const DesignSpec& spec);

// True when a is no worse in every component and better in at least one
// (minimization).
bool dominates(const std::vector<double>& a, const std::vector<double>& b);

// Front 1 first; every front dominated only by earlier fronts. Indices
// ascending within each front.
std::vector<std::vector<int>> fast_nondominated_sort(
    const std::vector<std::vector<double>>& objectives);

inline constexpr double kCrowdingInfinite = std::numeric_limits<double>::infinity();

std::vector<double> crowding_distance(const std::vector<std::vector<double>>& front_objectives);

std::vector<Genome> make_offspring(const std::vector<Genome>& population,
                                   const std::vector<int>& ranks,
                                   const std::vector<double>& crowding,
                                   const OptimizerConfig& config, Rng& rng);

// Full phenotype of one genome.
struct EvaluatedLayout {
    DecodedGenome decoded;
    Allocation allocation;
    CirculationPattern pattern;
    LayoutEvaluation evaluation;
};

EvaluatedLayout evaluate_genome(const DesignSpec& spec, const Grid& grid,
                                std::span<const int> entry_candidates, const Genome& genome,
                                const PipelineConfig& pipeline = {});

struct Individual {
    Genome genome;
    std::vector<double> objectives;
};

struct RunArchive {
    // generations[0] is the evaluated initial population, then one snapshot
    // per selection round.
    std::vector<std::vector<Individual>> generations;
    std::vector<Individual> final_front;       // mutually non-dominated, exact ties removed
    std::vector<int> final_front_generation;   // first generation holding each member's vector
    std::uint64_t evaluations = 0;
    double wall_seconds = 0.0;  // reported only, never serialized
};

RunArchive evolve(const DesignSpec& spec, const OptimizerConfig& config,
                  const PipelineConfig& pipeline = {});

}  // namespace layoutgen
