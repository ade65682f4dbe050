#pragma once

#include "uavsim/simulator.hpp"

#include <string>

namespace uavsim {

inline constexpr int kScenarioVersion = 1;

/* A run's full starting point: resolved config plus the drawn world, enough
   to reproduce the metrics CSV byte for byte. */
struct ScenarioFile {
  SimConfig config;
  SimState state; // slot 0
};

/* Text document: [scenario] (version, FNV-1a checksum, excluded_users), the
   config echo, [uav_state], one [obstacle.N] and [user.N] section each.
   The checksum covers the whole document with its own value zeroed out. */
std::string emit_scenario(const SimConfig& cfg, const SimState& st);

/* Strict parse; std::runtime_error on unknown keys, version mismatch, or a
   checksum that does not match the bytes. */
ScenarioFile parse_scenario(const std::string& text);

ScenarioFile load_scenario(const std::string& path);

} // namespace uavsim
