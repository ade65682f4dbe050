#include "uavsim/world.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace uavsim {

bool segment_hits_box(Point3 a, Point3 b, const ObstacleBox& box) {
  /* Canonical endpoint order keeps the test exactly symmetric under swap. */
  if (b.x < a.x || (b.x == a.x && (b.y < a.y || (b.y == a.y && b.z < a.z)))) std::swap(a, b);

  const double av[3] = {a.x, a.y, a.z};
  const double bv[3] = {b.x, b.y, b.z};
  const double lo[3] = {box.min_corner.x, box.min_corner.y, box.min_corner.z};
  const double hi[3] = {box.max_corner.x, box.max_corner.y, box.max_corner.z};

  double t0 = 0.0, t1 = 1.0;
  for (int ax = 0; ax < 3; ++ax) {
    const double d = bv[ax] - av[ax];
    if (d == 0.0) {
      // parallel to the slab: must sit strictly between the faces
      if (av[ax] <= lo[ax] || av[ax] >= hi[ax]) return false;
      continue;
    }
    double ta = (lo[ax] - av[ax]) / d;
    double tb = (hi[ax] - av[ax]) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false; // at most a face/edge touch
  }
  return t0 < t1;
}

bool has_los(Point3 a, Point3 b, const Environment& env) {
  for (const ObstacleBox& box : env.obstacles)
    if (segment_hits_box(a, b, box)) return false;
  return true;
}

bool inside_footprint(Point2 p, const ObstacleBox& box) {
  return p.x > box.min_corner.x && p.x < box.max_corner.x &&
         p.y > box.min_corner.y && p.y < box.max_corner.y;
}

bool inside_any_footprint(Point2 p, const std::vector<ObstacleBox>& obstacles) {
  for (const ObstacleBox& b : obstacles)
    if (inside_footprint(p, b)) return true;
  return false;
}

Disk reach_disk(const UserState& u, double dt) { return Disk{u.position, u.velocity * dt}; }
Disk reach_disk(const UavState& u, double dt) { return Disk{u.position, u.velocity_max * dt}; }

bool coverable(Point2 uav_xy, const UserState& u, double coverage_radius, double dt) {
  const double margin = coverage_radius - u.velocity * dt;
  if (margin < 0) return false;
  return dist2(uav_xy, u.position) <= margin * margin;
}

/* Grid centers the coverage test has to clear: reach disk, clipped to the
   region. Falls back to the current position when the disk is too small to
   catch a lattice center. */
std::vector<Point2> coverage_check_points(const UserState& u, const Environment& env, double dt) {
  std::vector<Point2> pts = discretize(reach_disk(u, dt), env.grid);
  std::erase_if(pts, [&](Point2 p) { return !env.region.contains(p); });
  if (pts.empty()) pts.push_back(u.position);
  return pts;
}

bool covered_from(Point2 uav_xy, const UserState& u, const std::vector<Point2>& check_pts,
                  const std::vector<const ObstacleBox*>& boxes, const UavState& uav,
                  const RadioConfig& radio, double dt) {
  if (!coverable(uav_xy, u, uav.coverage_radius, dt)) return false;
  const Point3 up{uav_xy.x, uav_xy.y, uav.altitude};

  // rate is monotone in distance, so the farthest check point decides it
  double worst = 0;
  for (Point2 q : check_pts) {
    const double dx = q.x - uav_xy.x, dy = q.y - uav_xy.y;
    worst = std::max(worst, dx * dx + dy * dy);
  }
  const Point3 far{uav_xy.x + std::sqrt(worst), uav_xy.y, 0.0};
  if (link_rate_det(up, far, true, radio) < u.rate_threshold) return false;

  for (Point2 q : check_pts) {
    const Point3 q3{q.x, q.y, 0.0};
    for (const ObstacleBox* box : boxes)
      if (segment_hits_box(up, q3, *box)) return false;
  }
  return true;
}

bool covered(Point2 uav_xy, const UserState& u, const Environment& env,
             const UavState& uav, const RadioConfig& radio, double dt) {
  std::vector<const ObstacleBox*> boxes;
  boxes.reserve(env.obstacles.size());
  for (const ObstacleBox& b : env.obstacles) boxes.push_back(&b);
  return covered_from(uav_xy, u, coverage_check_points(u, env, dt), boxes, uav, radio, dt);
}

namespace {

Point2 draw_point_in_region(SplitMix64& rng, const Rect& region) {
  std::uniform_real_distribution<double> ux(region.min.x, region.max.x);
  std::uniform_real_distribution<double> uy(region.min.y, region.max.y);
  const double x = ux(rng);
  const double y = uy(rng);
  return Point2{x, y};
}

Point2 draw_waypoint(SplitMix64& rng, const Environment& env) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Point2 p = draw_point_in_region(rng, env.region);
    if (!inside_any_footprint(p, env.obstacles)) return p;
  }
  // region nearly full of obstacles; accept the last draw
  return draw_point_in_region(rng, env.region);
}

Point2 clamp_to_region(Point2 p, const Rect& r) {
  return Point2{std::clamp(p.x, r.min.x, r.max.x), std::clamp(p.y, r.min.y, r.max.y)};
}

/* Advance along waypoints for a total path budget of speed*dt. Net
   displacement never exceeds the path length. */
UserState advance_user(UserState u, const Environment& env, double dt, SplitMix64& rng) {
  const UserState start = u;
  for (int attempt = 0; attempt < 24; ++attempt) {
    UserState cand = start;
    cand.waypoint = u.waypoint;
    double budget = cand.velocity * dt;
    for (int leg = 0; leg < 16 && budget > 1e-12; ++leg) {
      const double d = dist(cand.position, cand.waypoint);
      if (d <= budget) {
        cand.position = cand.waypoint;
        budget -= d;
        cand.waypoint = draw_waypoint(rng, env);
      } else {
        const double t = budget / d;
        cand.position.x += (cand.waypoint.x - cand.position.x) * t;
        cand.position.y += (cand.waypoint.y - cand.position.y) * t;
        budget = 0;
      }
    }
    cand.position = clamp_to_region(cand.position, env.region);
    if (!inside_any_footprint(cand.position, env.obstacles)) {
      cand.heading = std::atan2(cand.waypoint.y - cand.position.y,
                                cand.waypoint.x - cand.position.x);
      return cand;
    }
    // stepped into a footprint: redraw the target and retry from the start
    u.waypoint = draw_waypoint(rng, env);
  }
  return start; // give up moving this slot
}

} // namespace

std::vector<UserState> step_users(const std::vector<UserState>& users, const Environment& env,
                                  double dt, std::uint64_t master_seed, long slot) {
  static constexpr std::uint64_t kMobilityTag = stream_tag("mobility");
  std::vector<UserState> out;
  out.reserve(users.size());
  for (const UserState& u : users) {
    SplitMix64 rng = substream(master_seed, kMobilityTag, static_cast<std::uint64_t>(slot),
                               static_cast<std::uint64_t>(u.id));
    out.push_back(advance_user(u, env, dt, rng));
  }
  return out;
}

Scenario generate_scenario(const SimConfig& cfg, std::uint64_t seed) {
  if (cfg.users_total < 0 || cfg.obstacle_count < 0)
    throw std::invalid_argument("generate_scenario: negative counts");

  Scenario sc;
  sc.env.region = Rect{{0, 0}, {cfg.region_width, cfg.region_height}};
  sc.env.grid = GridSpec{cfg.cell_size, {0, 0}};

  SplitMix64 rng = substream(seed, stream_tag("scenario"));
  std::uniform_real_distribution<double> uside(cfg.obstacle_side_min, cfg.obstacle_side_max);
  std::uniform_real_distribution<double> uheight(cfg.obstacle_height_min, cfg.obstacle_height_max);

  for (int i = 0; i < cfg.obstacle_count; ++i) {
    const double sx = uside(rng);
    const double sy = uside(rng);
    const double h = uheight(rng);
    std::uniform_real_distribution<double> ux(0.0, std::max(0.0, cfg.region_width - sx));
    std::uniform_real_distribution<double> uy(0.0, std::max(0.0, cfg.region_height - sy));
    const double x = ux(rng);
    const double y = uy(rng);
    sc.env.obstacles.push_back(ObstacleBox{{x, y, 0.0}, {x + sx, y + sy, h}});
  }

  const int n_urllc = static_cast<int>(std::floor(
      static_cast<double>(cfg.users_total) * cfg.urllc_fraction + 0.5));
  std::uniform_real_distribution<double> uspeed(0.0, cfg.user_vmax);
  std::vector<UserState> users;
  for (int i = 0; i < cfg.users_total; ++i) {
    UserState u;
    u.id = i;
    do {
      u.position = draw_point_in_region(rng, sc.env.region);
    } while (inside_any_footprint(u.position, sc.env.obstacles));
    do {
      u.velocity = uspeed(rng);
    } while (u.velocity <= 0.0);
    u.traffic_class = i < n_urllc ? TrafficClass::Urllc : TrafficClass::Embb;
    u.rate_threshold = u.traffic_class == TrafficClass::Urllc ? cfg.urllc_threshold_bps : 0.0;
    u.waypoint = draw_waypoint(rng, sc.env);
    u.heading = std::atan2(u.waypoint.y - u.position.y, u.waypoint.x - u.position.x);
    users.push_back(u);
  }

  sc.uav.altitude = cfg.uav_altitude;
  sc.uav.velocity_max = cfg.uav_vmax;
  sc.uav.coverage_radius = cfg.coverage_radius;
  sc.uav.capacity = cfg.uav_capacity;
  for (int attempt = 0; attempt < 256; ++attempt) {
    sc.uav.position = draw_point_in_region(rng, sc.env.region);
    const Point3 p{sc.uav.position.x, sc.uav.position.y, sc.uav.altitude};
    const bool inside = std::any_of(sc.env.obstacles.begin(), sc.env.obstacles.end(),
                                    [&](const ObstacleBox& b) {
                                      return p.x > b.min_corner.x && p.x < b.max_corner.x &&
                                             p.y > b.min_corner.y && p.y < b.max_corner.y &&
                                             p.z > b.min_corner.z && p.z < b.max_corner.z;
                                    });
    if (!inside) break;
  }

  /* Capacity: keep the l users nearest the UAV start, preserve id order. */
  if (static_cast<int>(users.size()) > cfg.uav_capacity) {
    std::vector<int> order(users.size());
    for (std::size_t i = 0; i < users.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(), [&](int l, int r) {
      return dist2(users[l].position, sc.uav.position) < dist2(users[r].position, sc.uav.position);
    });
    order.resize(static_cast<std::size_t>(cfg.uav_capacity));
    std::sort(order.begin(), order.end());
    std::vector<UserState> kept;
    kept.reserve(order.size());
    for (int i : order) kept.push_back(users[static_cast<std::size_t>(i)]);
    sc.excluded_users = static_cast<int>(users.size() - kept.size());
    users = std::move(kept);
  }
  sc.users = std::move(users);
  return sc;
}

} // namespace uavsim
