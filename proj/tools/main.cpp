#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "layoutgen/artifact.hpp"
#include "layoutgen/hash.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitBadArguments = 2;
constexpr int kExitInvalidSpec = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string spec_path;
    std::string layout_path;
    std::vector<std::string> archive_paths;
    std::string out_dir = "out";
    std::string out_file;
    std::optional<std::uint64_t> seed;
    std::optional<int> population;
    std::optional<int> generations;
    std::optional<double> cell_size;
    std::optional<std::string> objectives;
    std::optional<double> shorten;
    std::optional<double> delta;
    std::optional<double> epsilon;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("read failure on '" + path + "'");
    return buffer.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open '" + path.string() + "' for writing");
    out << bytes;
    if (!out) throw std::ios_base::failure("write failure on '" + path.string() + "'");
}

layoutgen::DesignSpec apply_spec_overrides(layoutgen::DesignSpec spec, const Options& opt) {
    if (opt.cell_size) spec.cell_size = *opt.cell_size;
    if (opt.objectives) {
        spec.objectives.clear();
        std::stringstream names(*opt.objectives);
        std::string name;
        while (std::getline(names, name, ',')) {
            const auto objective = layoutgen::parse_objective(name);
            if (!objective) throw layoutgen::SpecError("objectives", "unknown objective '" + name + "'");
            spec.objectives.push_back(*objective);
        }
    }
    layoutgen::validate_spec(spec);
    return spec;
}

layoutgen::OptimizerConfig optimizer_config(const Options& opt) {
    layoutgen::OptimizerConfig config;
    if (opt.seed) config.seed = *opt.seed;
    if (opt.population) config.population_size = *opt.population;
    if (opt.generations) config.generations = *opt.generations;
    layoutgen::validate_config(config);
    return config;
}

layoutgen::PipelineConfig pipeline_config(const Options& opt) {
    layoutgen::PipelineConfig pipeline;
    if (opt.delta) pipeline.field_constants.delta = *opt.delta;
    if (opt.epsilon) pipeline.field_constants.epsilon = *opt.epsilon;
    if (opt.shorten) pipeline.path_options.shorten_factor = *opt.shorten;
    if (!(pipeline.field_constants.delta > 0.0)) {
        throw layoutgen::SpecError("delta", "must be positive");
    }
    if (!(pipeline.field_constants.epsilon > 0.0)) {
        throw layoutgen::SpecError("epsilon", "must be positive");
    }
    return pipeline;
}

json manifest_json(const Options& opt, const layoutgen::OptimizerConfig& config,
                   const layoutgen::PipelineConfig& pipeline, const layoutgen::DesignSpec& spec,
                   const std::string& spec_hash) {
    json objectives = json::array();
    for (layoutgen::Objective o : spec.objectives) objectives.push_back(layoutgen::to_string(o));
    return json{
        {"command", "generate"},
        {"tool", {{"name", layoutgen::kToolName}, {"version", layoutgen::kToolVersion}}},
        {"spec", {{"path", opt.spec_path}, {"hash", spec_hash}}},
        {"config",
         {{"seed", config.seed},
          {"population_size", config.population_size},
          {"generations", config.generations},
          {"crossover_probability", config.crossover_probability},
          {"mutation_probability", config.mutation_probability},
          {"eta_crossover", config.eta_crossover},
          {"eta_mutation", config.eta_mutation},
          {"cell_size", spec.cell_size},
          {"delta", pipeline.field_constants.delta},
          {"epsilon", pipeline.field_constants.epsilon},
          {"shorten_factor", pipeline.path_options.shorten_factor},
          {"objectives", objectives}}},
    };
}

int run_validate(const Options& opt) {
    const layoutgen::DesignSpec spec = layoutgen::parse_spec_json(read_file(opt.spec_path));
    const layoutgen::Grid grid = layoutgen::build_grid(spec);
    const std::vector<int> candidates = layoutgen::entrance_candidate_cells(spec, grid);
    std::cout << "OK: " << opt.spec_path << "\n"
              << "  rooms: " << spec.rooms.size() << "\n"
              << "  grid: " << grid.columns << "x" << grid.rows << ", " << grid.inside_count
              << " inside cells at " << grid.cell_size << " m\n"
              << "  entrance candidates: " << candidates.size() << "\n"
              << "  objectives: " << spec.objectives.size() << "\n";
    return kExitOk;
}

int run_generate(const Options& opt) {
    layoutgen::DesignSpec spec =
        apply_spec_overrides(layoutgen::parse_spec_json(read_file(opt.spec_path)), opt);
    const layoutgen::OptimizerConfig config = optimizer_config(opt);
    const layoutgen::PipelineConfig pipeline = pipeline_config(opt);

    const layoutgen::RunArchive archive = layoutgen::evolve(spec, config, pipeline);

    const fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);

    // The effective spec (after overrides) is the reproduction anchor.
    const std::string spec_bytes = layoutgen::write_spec_json(spec);
    const std::string spec_hash = layoutgen::spec_fingerprint(spec_bytes);
    write_file(out_dir / "spec.json", spec_bytes);
    write_file(out_dir / "manifest.json",
               manifest_json(opt, config, pipeline, spec, spec_hash).dump(2) + "\n");

    std::vector<std::string> labels;
    for (layoutgen::Objective o : spec.objectives) labels.push_back(layoutgen::to_string(o));
    write_file(out_dir / "archive.json", layoutgen::write_archive_json(archive, labels));
    write_file(out_dir / "pareto.csv", layoutgen::write_pareto_csv(archive, labels));

    const layoutgen::Grid grid = layoutgen::build_grid(spec);
    const std::vector<int> candidates = layoutgen::entrance_candidate_cells(spec, grid);
    for (std::size_t i = 0; i < archive.final_front.size(); ++i) {
        const layoutgen::Genome& genome = archive.final_front[i].genome;
        const layoutgen::EvaluatedLayout layout =
            layoutgen::evaluate_genome(spec, grid, candidates, genome, pipeline);
        const layoutgen::LayoutDocument doc =
            layoutgen::make_layout_document(spec, grid, genome, layout, spec_bytes);
        char name[32];
        std::snprintf(name, sizeof(name), "layout_%03zu", i);
        write_file(out_dir / (std::string(name) + ".json"), layoutgen::write_layout(doc));
        write_file(out_dir / (std::string(name) + ".svg"),
                   layoutgen::render_svg(doc, grid, spec));
    }

    std::cout << "generate: " << archive.final_front.size() << " non-dominated layouts, "
              << archive.evaluations << " evaluations -> " << out_dir.string() << "\n";
    std::cerr << "wall clock: " << archive.wall_seconds << " s\n";
    return kExitOk;
}

// Pipeline settings and the spec copy are resolved from the manifest written
// by generate, unless overridden on the command line.
struct ResolvedContext {
    layoutgen::DesignSpec spec;
    std::string spec_bytes;
    layoutgen::PipelineConfig pipeline;
};

ResolvedContext resolve_context(const Options& opt) {
    ResolvedContext ctx;
    const fs::path layout_dir = fs::path(opt.layout_path).parent_path();
    Options effective = opt;
    const fs::path manifest_path = layout_dir / "manifest.json";
    if (fs::exists(manifest_path)) {
        const json manifest = json::parse(read_file(manifest_path.string()));
        const json& config = manifest.at("config");
        if (!effective.delta) effective.delta = config.value("delta", 0.0);
        if (!effective.epsilon) effective.epsilon = config.value("epsilon", 0.0);
        if (!effective.shorten) effective.shorten = config.value("shorten_factor", 0.8);
    }
    std::string spec_path = effective.spec_path;
    if (spec_path.empty()) {
        const fs::path sibling = layout_dir / "spec.json";
        if (!fs::exists(sibling)) {
            throw std::ios_base::failure("no --spec given and no spec.json next to the layout");
        }
        spec_path = sibling.string();
    }
    ctx.spec_bytes = read_file(spec_path);
    ctx.spec = layoutgen::parse_spec_json(ctx.spec_bytes);
    ctx.pipeline = pipeline_config(effective);
    return ctx;
}

int run_evaluate(const Options& opt) {
    const layoutgen::LayoutDocument doc = layoutgen::load_layout(read_file(opt.layout_path));
    const ResolvedContext ctx = resolve_context(opt);
    if (layoutgen::spec_fingerprint(ctx.spec_bytes) != doc.spec_fingerprint) {
        std::cerr << "error: layout was generated from a different spec (fingerprint mismatch)\n";
        return kExitInvalidSpec;
    }
    const layoutgen::Grid grid = layoutgen::build_grid(ctx.spec);
    const std::vector<int> candidates = layoutgen::entrance_candidate_cells(ctx.spec, grid);
    const layoutgen::EvaluatedLayout layout =
        layoutgen::evaluate_genome(ctx.spec, grid, candidates, doc.genome, ctx.pipeline);

    for (std::size_t i = 0; i < doc.objective_labels.size(); ++i) {
        std::cout << doc.objective_labels[i] << " = " << layout.evaluation.objectives[i] << "\n";
    }
    if (layout.evaluation.objectives != doc.objective_values) {
        std::cerr << "error: recomputed objectives differ from the embedded vector\n";
        return kExitFailure;
    }
    return kExitOk;
}

int run_render(const Options& opt) {
    const layoutgen::LayoutDocument doc = layoutgen::load_layout(read_file(opt.layout_path));
    const ResolvedContext ctx = resolve_context(opt);
    if (layoutgen::spec_fingerprint(ctx.spec_bytes) != doc.spec_fingerprint) {
        std::cerr << "error: layout was generated from a different spec (fingerprint mismatch)\n";
        return kExitInvalidSpec;
    }
    const layoutgen::Grid grid = layoutgen::build_grid(ctx.spec);
    std::string out_file = opt.out_file;
    if (out_file.empty()) {
        out_file = fs::path(opt.layout_path).replace_extension(".svg").string();
    }
    write_file(out_file, layoutgen::render_svg(doc, grid, ctx.spec));
    std::cout << "render: " << out_file << "\n";
    return kExitOk;
}

int run_pareto(const Options& opt) {
    std::vector<std::string> labels;
    layoutgen::RunArchive merged;
    for (std::size_t i = 0; i < opt.archive_paths.size(); ++i) {
        std::vector<std::string> archive_labels;
        const layoutgen::RunArchive archive =
            layoutgen::load_archive_json(read_file(opt.archive_paths[i]), &archive_labels);
        if (i == 0) {
            labels = archive_labels;
        } else if (labels != archive_labels) {
            throw layoutgen::SpecError("archives", "objective labels differ between archives");
        }
        for (std::size_t k = 0; k < archive.final_front.size(); ++k) {
            merged.final_front.push_back(archive.final_front[k]);
            merged.final_front_generation.push_back(archive.final_front_generation[k]);
        }
    }

    // Re-filter: keep only mutually non-dominated rows, drop exact duplicates.
    std::vector<layoutgen::Individual> kept;
    std::vector<int> kept_generation;
    for (std::size_t i = 0; i < merged.final_front.size(); ++i) {
        bool drop = false;
        for (std::size_t k = 0; k < merged.final_front.size() && !drop; ++k) {
            if (k == i) continue;
            if (layoutgen::dominates(merged.final_front[k].objectives,
                                     merged.final_front[i].objectives)) {
                drop = true;
            }
        }
        for (const layoutgen::Individual& seen : kept) {
            if (seen.objectives == merged.final_front[i].objectives) drop = true;
        }
        if (!drop) {
            kept.push_back(merged.final_front[i]);
            kept_generation.push_back(merged.final_front_generation[i]);
        }
    }
    layoutgen::RunArchive out;
    std::vector<std::size_t> order(kept.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return kept[a].objectives < kept[b].objectives;
    });
    for (std::size_t i : order) {
        out.final_front.push_back(kept[i]);
        out.final_front_generation.push_back(kept_generation[i]);
    }

    const std::string csv = layoutgen::write_pareto_csv(out, labels);
    if (opt.out_file.empty()) {
        std::cout << csv;
    } else {
        write_file(opt.out_file, csv);
        std::cout << "pareto: " << out.final_front.size() << " rows -> " << opt.out_file << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"layoutgen: field-driven floorplan generation and optimization"};
    app.require_subcommand(1);
    Options opt;

    CLI::App* validate = app.add_subcommand("validate", "Check a design spec");
    validate->add_option("spec", opt.spec_path, "design spec JSON")->required();

    CLI::App* generate = app.add_subcommand("generate", "Evolve layouts for a design spec");
    generate->add_option("spec", opt.spec_path, "design spec JSON")->required();
    generate->add_option("-o,--out", opt.out_dir, "output directory");
    generate->add_option("--seed", opt.seed, "random seed");
    generate->add_option("--pop", opt.population, "population size");
    generate->add_option("--gens", opt.generations, "generations");
    generate->add_option("--cell-size", opt.cell_size, "grid cell size, metres");
    generate->add_option("--objectives", opt.objectives, "comma-separated objective list");
    generate->add_option("--shorten", opt.shorten, "path shortening factor");
    generate->add_option("--delta", opt.delta, "field activation threshold");
    generate->add_option("--epsilon", opt.epsilon, "field pole guard");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Recompute a layout's objectives");
    evaluate->add_option("layout", opt.layout_path, "layout document JSON")->required();
    evaluate->add_option("--spec", opt.spec_path, "design spec JSON (default: sibling spec.json)");
    evaluate->add_option("--shorten", opt.shorten, "path shortening factor");
    evaluate->add_option("--delta", opt.delta, "field activation threshold");
    evaluate->add_option("--epsilon", opt.epsilon, "field pole guard");

    CLI::App* render = app.add_subcommand("render", "Draw a layout document as SVG");
    render->add_option("layout", opt.layout_path, "layout document JSON")->required();
    render->add_option("--spec", opt.spec_path, "design spec JSON (default: sibling spec.json)");
    render->add_option("-o,--out", opt.out_file, "output SVG path");

    CLI::App* pareto = app.add_subcommand("pareto", "Merge run archives into one front table");
    pareto->add_option("archives", opt.archive_paths, "archive JSON files")->required();
    pareto->add_option("-o,--out", opt.out_file, "output CSV path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitBadArguments;
    }

    try {
        if (validate->parsed()) return run_validate(opt);
        if (generate->parsed()) return run_generate(opt);
        if (evaluate->parsed()) return run_evaluate(opt);
        if (render->parsed()) return run_render(opt);
        if (pareto->parsed()) return run_pareto(opt);
    } catch (const layoutgen::SpecError& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return kExitInvalidSpec;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const fs::filesystem_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitBadArguments;
}
