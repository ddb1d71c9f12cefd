#include "layoutgen/artifact.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

#include "layoutgen/hash.hpp"

namespace layoutgen {

using nlohmann::json;

std::string spec_fingerprint(std::string_view spec_bytes) { return to_hex(fnv1a(spec_bytes)); }

std::string genome_hash(const Genome& genome) { return to_hex(fnv1a(genome)); }

namespace {

// Shortest round-trip decimal form.
std::string format_double(double value) {
    char buf[32];
    const auto result = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, result.ptr);
}

const char* kind_fill(RoomKind kind) {
    switch (kind) {
        case RoomKind::living: return "#f4d35e";
        case RoomKind::dining: return "#f7b267";
        case RoomKind::bedroom: return "#9ad1d4";
        case RoomKind::bathroom: return "#b8c0ff";
        case RoomKind::kitchen: return "#f28482";
        case RoomKind::study: return "#cdeac0";
        case RoomKind::lift: return "#cfcfcf";
        case RoomKind::other: return "#e4e2dd";
    }
    return "#e4e2dd";
}

}  // namespace

std::vector<std::vector<Point>> trace_cell_outlines(const std::vector<int>& cells,
                                                    const Grid& grid) {
    // Work on integer cell-corner coordinates; convert to metres at the end.
    std::vector<std::uint8_t> in_set(static_cast<std::size_t>(grid.cell_count()), 0);
    for (int idx : cells) in_set[idx] = 1;
    auto member = [&](int col, int row) {
        return grid.in_bounds(col, row) && in_set[grid.index(col, row)] != 0;
    };

    const int stride = grid.columns + 1;
    auto vertex_id = [&](int col, int row) { return row * stride + col; };

    // Directed boundary edges with the cell set on the left.
    // Directions: 0 = +x, 1 = +y, 2 = -x, 3 = -y.
    struct DirectedEdge {
        int to;
        int direction;
        bool used = false;
    };
    std::map<int, std::vector<DirectedEdge>> outgoing;
    for (int idx : cells) {
        const int c = grid.col_of(idx);
        const int r = grid.row_of(idx);
        if (!member(c, r - 1)) outgoing[vertex_id(c, r)].push_back({vertex_id(c + 1, r), 0});
        if (!member(c + 1, r)) outgoing[vertex_id(c + 1, r)].push_back({vertex_id(c + 1, r + 1), 1});
        if (!member(c, r + 1)) outgoing[vertex_id(c + 1, r + 1)].push_back({vertex_id(c, r + 1), 2});
        if (!member(c - 1, r)) outgoing[vertex_id(c, r + 1)].push_back({vertex_id(c, r), 3});
    }
    for (auto& [vertex, edges] : outgoing) {
        std::sort(edges.begin(), edges.end(),
                  [](const DirectedEdge& a, const DirectedEdge& b) { return a.direction < b.direction; });
    }

    auto take_edge = [&](int vertex, int incoming_direction) -> DirectedEdge* {
        auto it = outgoing.find(vertex);
        if (it == outgoing.end()) return nullptr;
        // Prefer the left turn, then straight, then right: keeps components
        // separate at pinch vertices.
        for (int preference = 1; preference >= -1; --preference) {
            const int wanted = ((incoming_direction + preference) % 4 + 4) % 4;
            for (DirectedEdge& e : it->second) {
                if (!e.used && e.direction == wanted) return &e;
            }
        }
        return nullptr;
    };

    std::vector<std::vector<Point>> loops;
    while (true) {
        // Deterministic start: lowest vertex id with an unused edge.
        int start = -1;
        DirectedEdge* first = nullptr;
        for (auto& [vertex, edges] : outgoing) {
            for (DirectedEdge& e : edges) {
                if (!e.used) {
                    start = vertex;
                    first = &e;
                    break;
                }
            }
            if (first != nullptr) break;
        }
        if (first == nullptr) break;

        std::vector<int> vertices;
        std::vector<int> directions;
        int current = start;
        DirectedEdge* edge = first;
        while (true) {
            edge->used = true;
            vertices.push_back(current);
            directions.push_back(edge->direction);
            current = edge->to;
            if (current == start) break;
            edge = take_edge(current, directions.back());
            if (edge == nullptr) break;  // degenerate; never expected for valid cell sets
        }

        // Merge collinear runs and convert to metres.
        std::vector<Point> loop;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const std::size_t prev = (i + vertices.size() - 1) % vertices.size();
            if (directions[i] == directions[prev]) continue;
            const int col = vertices[i] % stride;
            const int row = vertices[i] / stride;
            loop.push_back({grid.origin.x + col * grid.cell_size,
                            grid.origin.y + row * grid.cell_size});
        }
        if (loop.size() >= 4) loops.push_back(std::move(loop));
    }
    return loops;
}

namespace {

json point_list(const std::vector<Point>& points) {
    json out = json::array();
    for (const Point& p : points) out.push_back({p.x, p.y});
    return out;
}

json document_to_json(const LayoutDocument& doc) {
    json j;
    j["spec_fingerprint"] = doc.spec_fingerprint;
    j["genome"] = doc.genome;

    json fields = json::array();
    for (const FieldParams& f : doc.fields) {
        fields.push_back({{"x0", f.x0}, {"y0", f.y0}, {"m_x", f.m_x}, {"m_y", f.m_y}, {"t", f.t}});
    }
    j["fields"] = fields;

    json rooms = json::array();
    for (std::size_t i = 0; i < doc.room_cells.size(); ++i) {
        json outlines = json::array();
        for (const std::vector<Point>& loop : doc.room_outlines[i]) {
            outlines.push_back(point_list(loop));
        }
        rooms.push_back({{"cells", doc.room_cells[i]}, {"outline", outlines}});
    }
    j["rooms"] = rooms;

    j["corridor_cells"] = doc.corridor_cells;
    j["entrances"] = {{"source_cell", doc.source_cell}, {"rooms", doc.entrance_cells}};
    j["objectives"] = {{"labels", doc.objective_labels}, {"values", doc.objective_values}};

    json connected = json::array();
    for (std::uint8_t flag : doc.room_connected) connected.push_back(flag != 0);
    json reachable = json::array();
    for (std::uint8_t flag : doc.room_reachable) reachable.push_back(flag != 0);
    j["diagnostics"] = {{"room_connected", connected}, {"room_reachable", reachable}};
    return j;
}

}  // namespace

LayoutDocument make_layout_document(const DesignSpec& spec, const Grid& grid,
                                    const Genome& genome, const EvaluatedLayout& layout,
                                    std::string_view spec_bytes) {
    LayoutDocument doc;
    doc.spec_fingerprint = spec_fingerprint(spec_bytes);
    doc.genome = genome;
    doc.fields = layout.decoded.fields;
    doc.room_cells = layout.allocation.room_cells;
    doc.room_outlines.reserve(doc.room_cells.size());
    for (const std::vector<int>& cells : doc.room_cells) {
        doc.room_outlines.push_back(trace_cell_outlines(cells, grid));
    }
    doc.corridor_cells = layout.pattern.corridor_cells;
    doc.source_cell = layout.pattern.source_cell;
    doc.entrance_cells = layout.pattern.entrance_cells;
    for (Objective objective : spec.objectives) {
        doc.objective_labels.push_back(to_string(objective));
    }
    doc.objective_values = layout.evaluation.objectives;
    doc.room_connected.reserve(doc.room_cells.size());
    for (std::size_t i = 0; i < doc.room_cells.size(); ++i) {
        doc.room_connected.push_back(
            room_is_connected(layout.allocation, static_cast<int>(i), grid) ? 1 : 0);
    }
    doc.room_reachable = layout.evaluation.room_reachable;
    return doc;
}

std::string write_layout(const LayoutDocument& doc) {
    json j = document_to_json(doc);
    j["checksum"] = to_hex(fnv1a(j.dump(2)));
    return j.dump(2) + "\n";
}

LayoutDocument load_layout(std::string_view bytes) {
    json j = json::parse(bytes);
    if (!j.contains("checksum")) throw std::runtime_error("layout document lacks a checksum");
    const std::string stored = j["checksum"].get<std::string>();
    j.erase("checksum");
    if (to_hex(fnv1a(j.dump(2))) != stored) {
        throw std::runtime_error("layout document checksum mismatch (file tampered or corrupt)");
    }

    LayoutDocument doc;
    doc.spec_fingerprint = j["spec_fingerprint"].get<std::string>();
    doc.genome = j["genome"].get<std::vector<double>>();
    for (const json& f : j["fields"]) {
        FieldParams field;
        field.x0 = f["x0"].get<double>();
        field.y0 = f["y0"].get<double>();
        field.m_x = f["m_x"].get<double>();
        field.m_y = f["m_y"].get<double>();
        field.t = f["t"].get<double>();
        doc.fields.push_back(field);
    }
    for (const json& r : j["rooms"]) {
        doc.room_cells.push_back(r["cells"].get<std::vector<int>>());
        std::vector<std::vector<Point>> outlines;
        for (const json& loop : r["outline"]) {
            std::vector<Point> points;
            for (const json& p : loop) points.push_back({p[0].get<double>(), p[1].get<double>()});
            outlines.push_back(std::move(points));
        }
        doc.room_outlines.push_back(std::move(outlines));
    }
    doc.corridor_cells = j["corridor_cells"].get<std::vector<int>>();
    doc.source_cell = j["entrances"]["source_cell"].get<int>();
    doc.entrance_cells = j["entrances"]["rooms"].get<std::vector<int>>();
    doc.objective_labels = j["objectives"]["labels"].get<std::vector<std::string>>();
    doc.objective_values = j["objectives"]["values"].get<std::vector<double>>();
    for (const json& flag : j["diagnostics"]["room_connected"]) {
        doc.room_connected.push_back(flag.get<bool>() ? 1 : 0);
    }
    for (const json& flag : j["diagnostics"]["room_reachable"]) {
        doc.room_reachable.push_back(flag.get<bool>() ? 1 : 0);
    }
    return doc;
}

namespace {

struct SvgMapper {
    double min_x, max_y, scale, pad;

    double x(double metres) const { return pad + (metres - min_x) * scale; }
    double y(double metres) const { return pad + (max_y - metres) * scale; }

    std::string fmt(double v) const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", v);
        return buf;
    }
};

std::string svg_path(const std::vector<std::vector<Point>>& loops, const SvgMapper& m) {
    std::ostringstream d;
    for (const std::vector<Point>& loop : loops) {
        for (std::size_t i = 0; i < loop.size(); ++i) {
            d << (i == 0 ? "M" : "L") << m.fmt(m.x(loop[i].x)) << " " << m.fmt(m.y(loop[i].y));
        }
        d << "Z";
    }
    return d.str();
}

}  // namespace

std::string render_svg(const LayoutDocument& doc, const Grid& grid, const DesignSpec& spec) {
    const BoundingBox box = bounding_box(spec.envelope);
    SvgMapper m{box.min.x, box.max.y, kPixelsPerMetre, 10.0};
    const double width = 2.0 * m.pad + box.width() * m.scale;
    const double height = 2.0 * m.pad + box.height() * m.scale;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << m.fmt(width)
        << "\" height=\"" << m.fmt(height) << "\" viewBox=\"0 0 " << m.fmt(width) << " "
        << m.fmt(height) << "\">\n";

    // Envelope.
    svg << "<path d=\"" << svg_path({spec.envelope}, m)
        << "\" fill=\"#fbfaf6\" stroke=\"#1d1d1b\" stroke-width=\"3\"/>\n";

    // Corridor cells.
    const double s = grid.cell_size;
    for (int idx : doc.corridor_cells) {
        const double x0 = grid.origin.x + grid.col_of(idx) * s;
        const double y0 = grid.origin.y + grid.row_of(idx) * s;
        svg << "<rect x=\"" << m.fmt(m.x(x0)) << "\" y=\"" << m.fmt(m.y(y0 + s)) << "\" width=\""
            << m.fmt(s * m.scale) << "\" height=\"" << m.fmt(s * m.scale)
            << "\" fill=\"#d8cfc2\"/>\n";
    }

    // Room regions: open-plan groups merge into one path so members share a
    // fill with no separating stroke.
    std::vector<std::uint8_t> grouped(doc.room_cells.size(), 0);
    std::vector<std::vector<int>> groups;
    for (const std::vector<int>& group : spec.open_plan_groups) {
        std::vector<int> members;
        for (int room : group) {
            if (room >= 0 && room < static_cast<int>(doc.room_cells.size()) && !grouped[room]) {
                grouped[room] = 1;
                members.push_back(room);
            }
        }
        if (!members.empty()) groups.push_back(std::move(members));
    }
    for (std::size_t room = 0; room < doc.room_cells.size(); ++room) {
        if (!grouped[room]) groups.push_back({static_cast<int>(room)});
    }

    for (const std::vector<int>& group : groups) {
        std::vector<int> cells;
        for (int room : group) {
            cells.insert(cells.end(), doc.room_cells[room].begin(), doc.room_cells[room].end());
        }
        if (cells.empty()) continue;
        std::sort(cells.begin(), cells.end());
        const std::vector<std::vector<Point>> loops = trace_cell_outlines(cells, grid);
        const RoomKind kind =
            group.front() < static_cast<int>(spec.rooms.size()) ? spec.rooms[group.front()].kind
                                                                : RoomKind::other;
        svg << "<path d=\"" << svg_path(loops, m) << "\" fill=\"" << kind_fill(kind)
            << "\" fill-rule=\"evenodd\" stroke=\"#3a3a38\" stroke-width=\"2\"/>\n";
    }

    // Windows over the envelope stroke.
    for (const Segment& w : spec.windows) {
        svg << "<line x1=\"" << m.fmt(m.x(w.a.x)) << "\" y1=\"" << m.fmt(m.y(w.a.y)) << "\" x2=\""
            << m.fmt(m.x(w.b.x)) << "\" y2=\"" << m.fmt(m.y(w.b.y))
            << "\" stroke=\"#4f9dd1\" stroke-width=\"5\"/>\n";
    }

    // Entrance markers.
    if (doc.source_cell >= 0 && grid.inside(doc.source_cell)) {
        const Point c = cell_center(grid, doc.source_cell);
        svg << "<circle cx=\"" << m.fmt(m.x(c.x)) << "\" cy=\"" << m.fmt(m.y(c.y))
            << "\" r=\"6\" fill=\"#1d1d1b\"/>\n";
    }
    for (int cell : doc.entrance_cells) {
        if (cell < 0 || !grid.inside(cell)) continue;
        const Point c = cell_center(grid, cell);
        svg << "<rect x=\"" << m.fmt(m.x(c.x) - 4.0) << "\" y=\"" << m.fmt(m.y(c.y) - 4.0)
            << "\" width=\"8\" height=\"8\" fill=\"#7a4419\"/>\n";
    }

    // Labels at the centroid of each room's cells.
    for (std::size_t room = 0; room < doc.room_cells.size(); ++room) {
        if (doc.room_cells[room].empty()) continue;
        double cx = 0.0, cy = 0.0;
        for (int idx : doc.room_cells[room]) {
            const Point c = cell_center(grid, idx);
            cx += c.x;
            cy += c.y;
        }
        cx /= static_cast<double>(doc.room_cells[room].size());
        cy /= static_cast<double>(doc.room_cells[room].size());
        const std::string label =
            room < spec.rooms.size() ? spec.rooms[room].name : "room" + std::to_string(room);
        svg << "<text x=\"" << m.fmt(m.x(cx)) << "\" y=\"" << m.fmt(m.y(cy))
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" << label
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

std::string write_pareto_csv(const RunArchive& archive,
                             const std::vector<std::string>& objective_labels) {
    std::ostringstream out;
    out << "generation";
    for (const std::string& label : objective_labels) out << "," << label;
    out << ",genome_hash\n";
    for (std::size_t i = 0; i < archive.final_front.size(); ++i) {
        const Individual& member = archive.final_front[i];
        out << archive.final_front_generation[i];
        for (double value : member.objectives) out << "," << format_double(value);
        out << "," << genome_hash(member.genome) << "\n";
    }
    return out.str();
}

std::string write_archive_json(const RunArchive& archive,
                               const std::vector<std::string>& objective_labels) {
    json j;
    j["format"] = "layoutgen-archive";
    j["objective_labels"] = objective_labels;
    j["evaluations"] = archive.evaluations;

    json generations = json::array();
    for (const std::vector<Individual>& generation : archive.generations) {
        json members = json::array();
        for (const Individual& member : generation) {
            members.push_back({{"genome", member.genome}, {"objectives", member.objectives}});
        }
        generations.push_back(std::move(members));
    }
    j["generations"] = generations;

    json front = json::array();
    for (std::size_t i = 0; i < archive.final_front.size(); ++i) {
        front.push_back({{"genome", archive.final_front[i].genome},
                         {"objectives", archive.final_front[i].objectives},
                         {"generation", archive.final_front_generation[i]}});
    }
    j["final_front"] = front;
    return j.dump(2) + "\n";
}

RunArchive load_archive_json(std::string_view bytes, std::vector<std::string>* objective_labels) {
    json j = json::parse(bytes);
    if (!j.is_object() || j.value("format", "") != "layoutgen-archive") {
        throw std::runtime_error("not a layoutgen archive");
    }
    if (objective_labels != nullptr) {
        *objective_labels = j["objective_labels"].get<std::vector<std::string>>();
    }
    RunArchive archive;
    archive.evaluations = j["evaluations"].get<std::uint64_t>();
    for (const json& generation : j["generations"]) {
        std::vector<Individual> members;
        for (const json& member : generation) {
            members.push_back({member["genome"].get<std::vector<double>>(),
                               member["objectives"].get<std::vector<double>>()});
        }
        archive.generations.push_back(std::move(members));
    }
    for (const json& member : j["final_front"]) {
        archive.final_front.push_back({member["genome"].get<std::vector<double>>(),
                                       member["objectives"].get<std::vector<double>>()});
        archive.final_front_generation.push_back(member["generation"].get<int>());
    }
    return archive;
}

}  // namespace layoutgen
