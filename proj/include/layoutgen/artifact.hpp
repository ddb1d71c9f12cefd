#pragma once

#include <string>
#include <string_view>

#include "layoutgen/evolution.hpp"

namespace layoutgen {

inline constexpr const char* kToolName = "layoutgen";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr double kPixelsPerMetre = 20.0;

struct LayoutDocument {
    std::string spec_fingerprint;  // hex content hash of the spec bytes
    Genome genome;
    std::vector<FieldParams> fields;
    std::vector<std::vector<int>> room_cells;
    // Per room: outline loops traced around its cell set (outer loops
    // counterclockwise, holes clockwise).
    std::vector<std::vector<std::vector<Point>>> room_outlines;
    std::vector<int> corridor_cells;
    int source_cell = -1;
    std::vector<int> entrance_cells;
    std::vector<std::string> objective_labels;
    std::vector<double> objective_values;
    std::vector<std::uint8_t> room_connected;
    std::vector<std::uint8_t> room_reachable;
};

std::string spec_fingerprint(std::string_view spec_bytes);
std::string genome_hash(const Genome& genome);

LayoutDocument make_layout_document(const DesignSpec& spec, const Grid& grid,
                                    const Genome& genome, const EvaluatedLayout& layout,
                                    std::string_view spec_bytes);

// Canonical serialization: sorted keys, shortest round-trip decimals,
// newline-terminated, with an embedded content checksum.
std::string write_layout(const LayoutDocument& doc);

// Parses and verifies the checksum. Throws std::runtime_error on tampering.
LayoutDocument load_layout(std::string_view bytes);

std::string render_svg(const LayoutDocument& doc, const Grid& grid, const DesignSpec& spec);

std::string write_pareto_csv(const RunArchive& archive,
                             const std::vector<std::string>& objective_labels);

std::string write_archive_json(const RunArchive& archive,
                               const std::vector<std::string>& objective_labels);
RunArchive load_archive_json(std::string_view bytes, std::vector<std::string>* objective_labels);

// Rectilinear loops around a cell set, one or more per connected component.
// Exposed for tests and rendering.
std::vector<std::vector<Point>> trace_cell_outlines(const std::vector<int>& cells,
                                                    const Grid& grid);

}  // namespace layoutgen
