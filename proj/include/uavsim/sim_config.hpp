#pragma once

#include "uavsim/channel.hpp"

#include <cstdint>

namespace uavsim {

enum class Algorithm { Proposed, Baseline };

/* Everything a run needs. Field defaults double as the canonical config
   defaults; the config file can override each one. */
struct SimConfig {
  // [region]
  double region_width = 400.0;
  double region_height = 400.0;

  // [uav]
  double uav_altitude = 60.0;       // fixed flight height, m
  double uav_vmax = 10.0;           // max horizontal speed, m/s
  double coverage_radius = 46.0;    // ground-projected service radius R, m
  int uav_capacity = 64;            // max users served (l)

  // [users]
  int users_total = 15;
  double urllc_fraction = 0.4;      // URLLC share, rounded half-up to a count
  double user_vmax = 5.0;           // per-user speed drawn uniform from (0, vmax)
  double urllc_threshold_bps = 10e6;
  double baseline_rreq_bps = 10e6;  // rate the baseline demands of every user

  // [obstacles]
  int obstacle_count = 20;
  double obstacle_side_min = 10.0;
  double obstacle_side_max = 30.0;
  double obstacle_height_min = 10.0;
  double obstacle_height_max = 60.0;

  // [radio]
  RadioConfig radio;

  // [sim]
  int slots = 50;
  double dt = 3.0;                  // slot duration, s
  std::uint64_t seed = 1;
  double cell_size = 1.0;           // discretization grid, m
  Algorithm algorithm = Algorithm::Proposed;
  FadingMode fading = FadingMode::Stochastic;
};

} // namespace uavsim
