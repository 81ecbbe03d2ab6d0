#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sliver {

// Direction sets are products of named components, each with a finite value
// set. A single direction picks one value per component, in component order.
struct DirComponent {
    std::string name;
    std::vector<std::string> values;
};

using Directions = std::vector<DirComponent>;
using Direction = std::vector<std::string>;

std::optional<std::size_t> component_index(const Directions& dirs, const std::string& name);

// Total number of direction tuples (product of component sizes).
std::size_t direction_count(const Directions& dirs);

// All direction tuples in lexicographic order of component value lists.
std::vector<Direction> enumerate_directions(const Directions& dirs);

bool direction_valid(const Directions& dirs, const Direction& d);

// Key form for maps and JSON objects: component values joined with '|'.
std::string direction_key(const Direction& d);
Direction parse_direction_key(const std::string& key, std::size_t arity);

}  // namespace sliver
