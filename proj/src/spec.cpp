#include "layoutgen/spec.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "json.hpp"

namespace layoutgen {

using nlohmann::json;

const char* to_string(RoomKind kind) {
    switch (kind) {
        case RoomKind::living: return "living";
        case RoomKind::dining: return "dining";
        case RoomKind::bedroom: return "bedroom";
        case RoomKind::bathroom: return "bathroom";
        case RoomKind::kitchen: return "kitchen";
        case RoomKind::study: return "study";
        case RoomKind::lift: return "lift";
        case RoomKind::other: return "other";
    }
    return "other";
}

const char* to_string(Objective objective) {
    switch (objective) {
        case Objective::area_minus_conflict: return "area_minus_conflict";
        case Objective::circulation: return "circulation";
        case Objective::shadow: return "shadow";
        case Objective::adjacency: return "adjacency";
    }
    return "area_minus_conflict";
}

std::optional<RoomKind> parse_room_kind(const std::string& name) {
    for (RoomKind k : {RoomKind::living, RoomKind::dining, RoomKind::bedroom, RoomKind::bathroom,
                       RoomKind::kitchen, RoomKind::study, RoomKind::lift, RoomKind::other}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

std::optional<Objective> parse_objective(const std::string& name) {
    for (Objective o : {Objective::area_minus_conflict, Objective::circulation, Objective::shadow,
                        Objective::adjacency}) {
        if (name == to_string(o)) return o;
    }
    return std::nullopt;
}

bool default_habitable(RoomKind kind) {
    return kind == RoomKind::living || kind == RoomKind::dining || kind == RoomKind::bedroom ||
           kind == RoomKind::study;
}

SpecError::SpecError(std::string field, const std::string& message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {}

namespace {

Point parse_point(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SpecError(field, "expected [x, y]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Segment> all_envelope_edges(const std::vector<Point>& envelope) {
    std::vector<Segment> edges;
    const std::size_t n = envelope.size();
    edges.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        edges.push_back({envelope[i], envelope[(i + 1) % n]});
    }
    return edges;
}

}  // namespace

DesignSpec parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("document", std::string("JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("document", "expected a JSON object");

    DesignSpec spec;

    if (!j.contains("envelope")) throw SpecError("envelope", "missing");
    for (std::size_t i = 0; i < j["envelope"].size(); ++i) {
        spec.envelope.push_back(parse_point(j["envelope"][i], "envelope[" + std::to_string(i) + "]"));
    }
    // Tolerate an explicitly closed ring.
    if (spec.envelope.size() > 1 && spec.envelope.front() == spec.envelope.back()) {
        spec.envelope.pop_back();
    }

    if (j.contains("windows")) {
        for (std::size_t i = 0; i < j["windows"].size(); ++i) {
            const json& w = j["windows"][i];
            const std::string field = "windows[" + std::to_string(i) + "]";
            if (!w.is_object() || !w.contains("edge") || !w["edge"].is_array() ||
                w["edge"].size() != 2) {
                throw SpecError(field, "expected {\"edge\": [[x,y],[x,y]]}");
            }
            spec.windows.push_back({parse_point(w["edge"][0], field + ".edge[0]"),
                                    parse_point(w["edge"][1], field + ".edge[1]")});
        }
    } else {
        // No fenestration listed: every external wall is a window wall.
        spec.windows = all_envelope_edges(spec.envelope);
    }

    if (!j.contains("entrances")) throw SpecError("entrances", "missing");
    for (std::size_t i = 0; i < j["entrances"].size(); ++i) {
        spec.entrance_candidates.push_back(
            parse_point(j["entrances"][i], "entrances[" + std::to_string(i) + "]"));
    }

    if (!j.contains("rooms")) throw SpecError("rooms", "missing");
    for (std::size_t i = 0; i < j["rooms"].size(); ++i) {
        const json& r = j["rooms"][i];
        const std::string field = "rooms[" + std::to_string(i) + "]";
        if (!r.is_object()) throw SpecError(field, "expected an object");
        RoomSpec room;
        room.name = r.value("name", "room" + std::to_string(i));
        const std::string kind_name = r.value("kind", "other");
        const auto kind = parse_room_kind(kind_name);
        if (!kind) throw SpecError(field + ".kind", "unknown room kind '" + kind_name + "'");
        room.kind = *kind;
        room.habitable = r.contains("habitable") ? r["habitable"].get<bool>()
                                                 : default_habitable(room.kind);
        auto parse_range = [&](const char* key) -> std::array<double, 2> {
            if (!r.contains(key) || !r[key].is_array() || r[key].size() != 2) {
                throw SpecError(field + "." + key, "expected [lo, hi]");
            }
            return {r[key][0].get<double>(), r[key][1].get<double>()};
        };
        room.width_range = parse_range("width");
        room.height_range = parse_range("height");
        spec.rooms.push_back(std::move(room));
    }

    if (j.contains("adjacency")) {
        for (std::size_t i = 0; i < j["adjacency"].size(); ++i) {
            const json& p = j["adjacency"][i];
            const std::string field = "adjacency[" + std::to_string(i) + "]";
            if (!p.is_array() || p.size() != 2) throw SpecError(field, "expected [i, j]");
            spec.adjacency_pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
        }
    }

    if (j.contains("open_plan")) {
        for (std::size_t i = 0; i < j["open_plan"].size(); ++i) {
            const json& g = j["open_plan"][i];
            if (!g.is_array()) {
                throw SpecError("open_plan[" + std::to_string(i) + "]", "expected an array");
            }
            spec.open_plan_groups.push_back(g.get<std::vector<int>>());
        }
    }

    spec.cell_size = j.value("cell_size", 1.0);

    if (!j.contains("objectives")) throw SpecError("objectives", "missing");
    for (std::size_t i = 0; i < j["objectives"].size(); ++i) {
        const std::string name = j["objectives"][i].get<std::string>();
        const auto objective = parse_objective(name);
        if (!objective) {
            throw SpecError("objectives[" + std::to_string(i) + "]",
                            "unknown objective '" + name + "'");
        }
        spec.objectives.push_back(*objective);
    }

    if (j.contains("light_directions")) {
        for (std::size_t i = 0; i < j["light_directions"].size(); ++i) {
            const std::string field = "light_directions[" + std::to_string(i) + "]";
            Point d = parse_point(j["light_directions"][i], field);
            const double len = norm(d);
            if (len == 0.0) throw SpecError(field, "zero-length light vector");
            spec.light_directions.push_back({d.x / len, d.y / len});
        }
    }

    spec.path_width = j.value("path_width", 1.0);

    validate_spec(spec);
    return spec;
}

DesignSpec load_spec(std::istream& source) {
    std::ostringstream buffer;
    buffer << source.rdbuf();
    if (source.bad()) throw SpecError("document", "stream read failure");
    return parse_spec_json(buffer.str());
}

DesignSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("document", "cannot open '" + path + "'");
    return load_spec(in);
}

void validate_spec(const DesignSpec& spec) {
    if (spec.envelope.size() < 4) throw SpecError("envelope", "needs at least 4 vertices");
    if (!is_rectilinear(spec.envelope)) {
        throw SpecError("envelope", "edges must be axis-aligned and non-degenerate");
    }
    const double area = signed_area(spec.envelope);
    if (area <= 0.0) throw SpecError("envelope", "vertices must be counterclockwise");
    if (self_intersects(spec.envelope)) throw SpecError("envelope", "polygon self-intersects");

    const std::vector<Segment> edges = all_envelope_edges(spec.envelope);
    for (std::size_t i = 0; i < spec.windows.size(); ++i) {
        bool on_edge = false;
        for (const Segment& e : edges) {
            if (segment_within_edge(spec.windows[i], e)) {
                on_edge = true;
                break;
            }
        }
        if (!on_edge) {
            throw SpecError("windows[" + std::to_string(i) + "]",
                            "segment does not lie on an envelope edge");
        }
    }

    if (!(spec.cell_size > 0.0)) throw SpecError("cell_size", "must be positive");
    if (!(spec.path_width > 0.0)) throw SpecError("path_width", "must be positive");

    if (spec.entrance_candidates.empty()) {
        throw SpecError("entrances", "at least one entrance candidate required");
    }
    for (std::size_t i = 0; i < spec.entrance_candidates.size(); ++i) {
        bool on_boundary = false;
        for (const Segment& e : edges) {
            if (point_on_segment(spec.entrance_candidates[i], e)) {
                on_boundary = true;
                break;
            }
        }
        if (!on_boundary) {
            throw SpecError("entrances[" + std::to_string(i) + "]",
                            "candidate must lie on the envelope boundary");
        }
    }

    if (spec.rooms.empty()) throw SpecError("rooms", "at least one room required");
    for (std::size_t i = 0; i < spec.rooms.size(); ++i) {
        const RoomSpec& r = spec.rooms[i];
        const std::string field = "rooms[" + std::to_string(i) + "]";
        auto check_range = [&](const std::array<double, 2>& range, const char* key) {
            if (!(range[0] > 0.0)) throw SpecError(field + "." + key, "range lo must be positive");
            if (range[0] > range[1]) throw SpecError(field + "." + key, "range lo > hi");
            if (range[1] < spec.cell_size) {
                throw SpecError(field + "." + key, "range must span at least one cell_size");
            }
        };
        check_range(r.width_range, "width");
        check_range(r.height_range, "height");
    }

    const int room_count = static_cast<int>(spec.rooms.size());
    for (std::size_t i = 0; i < spec.adjacency_pairs.size(); ++i) {
        const auto& [a, b] = spec.adjacency_pairs[i];
        if (a < 0 || a >= room_count || b < 0 || b >= room_count || a == b) {
            throw SpecError("adjacency[" + std::to_string(i) + "]", "invalid room pair");
        }
    }
    for (std::size_t i = 0; i < spec.open_plan_groups.size(); ++i) {
        for (int member : spec.open_plan_groups[i]) {
            if (member < 0 || member >= room_count) {
                throw SpecError("open_plan[" + std::to_string(i) + "]", "invalid room index");
            }
        }
    }

    if (spec.objectives.empty()) throw SpecError("objectives", "at least one objective required");
    for (std::size_t i = 0; i < spec.objectives.size(); ++i) {
        for (std::size_t k = i + 1; k < spec.objectives.size(); ++k) {
            if (spec.objectives[i] == spec.objectives[k]) {
                throw SpecError("objectives", "duplicate objective");
            }
        }
    }
    const bool shadow_selected =
        std::find(spec.objectives.begin(), spec.objectives.end(), Objective::shadow) !=
        spec.objectives.end();
    if (shadow_selected && spec.light_directions.empty()) {
        throw SpecError("light_directions", "required when the shadow objective is selected");
    }
}

std::string write_spec_json(const DesignSpec& spec) {
    json j;
    json envelope = json::array();
    for (const Point& p : spec.envelope) envelope.push_back({p.x, p.y});
    j["envelope"] = envelope;

    json windows = json::array();
    for (const Segment& w : spec.windows) {
        windows.push_back({{"edge", {{w.a.x, w.a.y}, {w.b.x, w.b.y}}}});
    }
    j["windows"] = windows;

    json entrances = json::array();
    for (const Point& p : spec.entrance_candidates) entrances.push_back({p.x, p.y});
    j["entrances"] = entrances;

    json rooms = json::array();
    for (const RoomSpec& r : spec.rooms) {
        rooms.push_back({{"name", r.name},
                         {"kind", to_string(r.kind)},
                         {"habitable", r.habitable},
                         {"width", {r.width_range[0], r.width_range[1]}},
                         {"height", {r.height_range[0], r.height_range[1]}}});
    }
    j["rooms"] = rooms;

    json adjacency = json::array();
    for (const auto& [a, b] : spec.adjacency_pairs) adjacency.push_back({a, b});
    j["adjacency"] = adjacency;
    j["open_plan"] = spec.open_plan_groups;
    j["cell_size"] = spec.cell_size;

    json objectives = json::array();
    for (Objective o : spec.objectives) objectives.push_back(to_string(o));
    j["objectives"] = objectives;

    json lights = json::array();
    for (const Point& d : spec.light_directions) lights.push_back({d.x, d.y});
    j["light_directions"] = lights;
    j["path_width"] = spec.path_width;

    return j.dump(2) + "\n";
}

}  // namespace layoutgen
