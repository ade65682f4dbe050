#pragma once

#include "uavsim/sim_config.hpp"

#include <string>

namespace uavsim {

/* Serialize every config key grouped into [region] [uav] [users] [obstacles]
   [radio] [sim]. Doubles use the shortest digit string that parses back to
   the same bits, so parse_config(emit_config(cfg)) == cfg exactly. */
std::string emit_config(const SimConfig& cfg);

/* INI-style text: [section] headers, key = value lines, '#'/';' comments.
   Unknown sections, unknown keys, and malformed values all throw
   std::runtime_error with a single-line message. */
SimConfig parse_config(const std::string& text);

/* parse_config on file contents; std::runtime_error names the path when the
   file cannot be read. */
SimConfig load_config(const std::string& path);

/* Apply one "section.key" override, same key table and value rules as
   parse_config. */
void set_config_key(SimConfig& cfg, const std::string& dotted_key, const std::string& value);

/* Range/consistency checks (positive region, fraction in [0,1], obstacle
   sides that fit the region, ...). Throws std::runtime_error. */
void validate_config(const SimConfig& cfg);

} // namespace uavsim
