#pragma once

#include <string>

#include "lfu/gadgets.hpp"
#include "lfu/model.hpp"

namespace lfu {

std::string read_file(const std::string& path);  // IoError
void write_file(const std::string& path, const std::string& content);

// "mode: slf|rlf" header, then "round <t>: <tokens>" with t = 1, 2, ...
UpdateSchedule parse_schedule(const std::string& text, const UpdateInstance& inst);
std::string render_schedule(const UpdateSchedule& schedule, const UpdateInstance& inst);

// One line per pending node: "<node> <F|B|H> <new target>".
std::string render_classification(const RoundState& state);

// Active edges solid, pending new edges dashed and coloured by class.
std::string export_dot(const RoundState& state, const GadgetLayout* layout = nullptr);

}  // namespace lfu
