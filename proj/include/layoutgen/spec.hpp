#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "layoutgen/geometry.hpp"

namespace layoutgen {

enum class RoomKind { living, dining, bedroom, bathroom, kitchen, study, lift, other };
enum class Objective { area_minus_conflict, circulation, shadow, adjacency };

const char* to_string(RoomKind kind);
const char* to_string(Objective objective);
std::optional<RoomKind> parse_room_kind(const std::string& name);
std::optional<Objective> parse_objective(const std::string& name);

// Living, dining, bedroom and study rooms count as habitable unless overridden.
bool default_habitable(RoomKind kind);

struct RoomSpec {
    std::string name;
    RoomKind kind = RoomKind::other;
    bool habitable = false;
    std::array<double, 2> width_range{0.0, 0.0};   // bounds for the horizontal mass parameter, metres
    std::array<double, 2> height_range{0.0, 0.0};  // bounds for the vertical mass parameter, metres
};

struct DesignSpec {
    std::vector<Point> envelope;  // rectilinear simple polygon, counterclockwise, metres
    std::vector<Segment> windows;
    std::vector<Point> entrance_candidates;
    std::vector<RoomSpec> rooms;
    std::vector<std::pair<int, int>> adjacency_pairs;
    std::vector<std::vector<int>> open_plan_groups;
    double cell_size = 1.0;
    std::vector<Objective> objectives;
    std::vector<Point> light_directions;  // unit vectors, direction of light propagation
    double path_width = 1.0;
};

class SpecError : public std::runtime_error {
public:
    SpecError(std::string field, const std::string& message);
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

DesignSpec parse_spec_json(const std::string& text);
DesignSpec load_spec(std::istream& source);
DesignSpec load_spec_file(const std::string& path);

// Throws SpecError naming the offending field.
void validate_spec(const DesignSpec& spec);

// Canonical JSON form of a spec (sorted keys, newline-terminated).
std::string write_spec_json(const DesignSpec& spec);

}  // namespace layoutgen
