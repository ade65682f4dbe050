#pragma once

#include "uavsim/geometry.hpp"
#include "uavsim/sim_config.hpp"

#include <vector>

namespace uavsim {

/* Axis-aligned building volume; base sits on the ground (min.z == 0). */
struct ObstacleBox {
  Point3 min_corner;
  Point3 max_corner;
};

enum class TrafficClass { Urllc, Embb };

struct UserState {
  int id = 0;
  Point2 position;
  double velocity = 0;          // fixed per-user speed, m/s
  double heading = 0;           // radians, toward current waypoint
  TrafficClass traffic_class = TrafficClass::Embb;
  double rate_threshold = 0;    // bit/s; 0 means best effort
  Point2 waypoint;              // random-waypoint target
};

struct UavState {
  Point2 position;
  double altitude = 0;
  double velocity_max = 0;
  double coverage_radius = 0;
  int capacity = 0;
};

struct Rect {
  Point2 min;
  Point2 max;
  bool contains(Point2 p) const {
    return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
  }
};

struct Environment {
  Rect region;
  std::vector<ObstacleBox> obstacles;
  GridSpec grid;
};

/* True when the open segment a-b passes through the box interior; touching a
   face or an edge does not block. */
bool segment_hits_box(Point3 a, Point3 b, const ObstacleBox& box);

/* Obstacle-free line of sight between two endpoints. Symmetric. */
bool has_los(Point3 a, Point3 b, const Environment& env);

bool inside_footprint(Point2 p, const ObstacleBox& box);
bool inside_any_footprint(Point2 p, const std::vector<ObstacleBox>& obstacles);

/* Where the entity can be after one slot. */
Disk reach_disk(const UserState& u, double dt);
Disk reach_disk(const UavState& u, double dt);

/* Definition-style test: the user stays within coverage for the whole slot,
   i.e. dist(uav_xy, user) <= R - v*dt (inclusive). */
bool coverable(Point2 uav_xy, const UserState& u, double coverage_radius, double dt);

/* coverable plus LoS and deterministic LoS rate >= rate_threshold at every
   grid center of the user's (region-clipped) reach disk. A reach disk too
   small to contain a grid center is checked at the user position instead. */
bool covered(Point2 uav_xy, const UserState& u, const Environment& env,
             const UavState& uav, const RadioConfig& radio, double dt);

/* The grid centers covered() checks (reach disk clipped to the region,
   falling back to the user position). Exposed so the planner can precompute
   them once per slot. */
std::vector<Point2> coverage_check_points(const UserState& u, const Environment& env, double dt);

/* covered() with the check points and candidate obstacles precomputed.
   `boxes` may be any superset-filter of the obstacles that can intersect a
   sight line from uav_xy to a check point. */
bool covered_from(Point2 uav_xy, const UserState& u, const std::vector<Point2>& check_pts,
                  const std::vector<const ObstacleBox*>& boxes, const UavState& uav,
                  const RadioConfig& radio, double dt);

/* Random-waypoint step for every user: walk toward the waypoint at the fixed
   per-user speed, redraw on arrival, stay inside the region and outside
   obstacle footprints. Draws come from per-(slot,user) substreams of the
   master seed, so one user's consumption never shifts another's. */
std::vector<UserState> step_users(const std::vector<UserState>& users, const Environment& env,
                                  double dt, std::uint64_t master_seed, long slot);

struct Scenario {
  Environment env;
  std::vector<UserState> users; // the assigned set, at most capacity
  UavState uav;
  int excluded_users = 0;       // dropped beyond capacity (nearest-first keep)
};

/* Seeded world draw: obstacles, users (positions outside footprints, classes
   by rounded fraction, speeds uniform in (0, vmax)), UAV at a uniform position
   not inside any box. */
Scenario generate_scenario(const SimConfig& cfg, std::uint64_t seed);

} // namespace uavsim
