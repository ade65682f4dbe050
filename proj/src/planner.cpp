#include "uavsim/planner.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace uavsim {

const char* to_string(FallbackLevel level) {
  switch (level) {
    case FallbackLevel::Triplet: return "triplet";
    case FallbackLevel::Pair: return "pair";
    case FallbackLevel::Single: return "single";
    default: return "none";
  }
}

int CoverageMatrix::col_sum(int j) const {
  int s = 0;
  for (int i = 0; i < rows(); ++i) s += at(i, j) ? 1 : 0;
  return s;
}

std::vector<Point2> zone_from_enclosure(const Circle& enclosure, const Disk& A,
                                        double coverage_radius, const GridSpec& grid) {
  if (enclosure.radius > coverage_radius) return {};
  const Disk du{enclosure.center, coverage_radius - enclosure.radius};
  return discretize(du, A, grid);
}

namespace {

/* Per-slot working state: the lattice cells of A inside the region, per-user
   precomputed coverage inputs, and a covered() memo shared by zone
   construction, the coverage matrix and the throughput stage. */
struct PlanContext {
  const Environment* env = nullptr;
  UavState uav;
  const RadioConfig* radio = nullptr;
  double dt = 0;
  Disk A;

  std::vector<Point2> cells; // row-major
  long long i0 = 0, j0 = 0, nx = 0, ny = 0;
  std::vector<int> index_at; // dense (nx*ny) -> cell index or -1

  struct TrackedUser {
    UserState u;
    double margin = -1;                     // R - v*dt
    std::vector<Point2> check_pts;
    std::vector<const ObstacleBox*> boxes;  // obstacles that can matter
  };
  std::vector<TrackedUser> urllc;
  std::vector<TrackedUser> embb; // check_pts = reach cells, no fallback point

  std::vector<signed char> covered_memo; // cells x urllc, -1 unknown

  int cell_index(Point2 p) const {
    const CellIndex ci = cell_index_of(p, env->grid);
    if (ci.ix < i0 || ci.ix >= i0 + nx || ci.iy < j0 || ci.iy >= j0 + ny) return -1;
    return index_at[static_cast<std::size_t>((ci.iy - j0) * nx + (ci.ix - i0))];
  }

  bool covered_cell(int cell, int user) {
    signed char& m = covered_memo[static_cast<std::size_t>(user) * cells.size() +
                                  static_cast<std::size_t>(cell)];
    if (m < 0) {
      const TrackedUser& tu = urllc[static_cast<std::size_t>(user)];
      m = covered_from(cells[static_cast<std::size_t>(cell)], tu.u, tu.check_pts, tu.boxes,
                       uav, *radio, dt)
              ? 1
              : 0;
    }
    return m != 0;
  }
};

/* Obstacles whose footprint meets the joint bounding box of A and the user's
   check points. Sight lines from an A-cell to a check point stay inside that
   box, so everything else can be skipped. */
std::vector<const ObstacleBox*> relevant_boxes(const Environment& env, const Disk& A,
                                               const std::vector<Point2>& pts) {
  double xmin = A.center.x - A.radius, xmax = A.center.x + A.radius;
  double ymin = A.center.y - A.radius, ymax = A.center.y + A.radius;
  for (Point2 p : pts) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  std::vector<const ObstacleBox*> out;
  for (const ObstacleBox& b : env.obstacles)
    if (b.max_corner.x >= xmin && b.min_corner.x <= xmax && b.max_corner.y >= ymin &&
        b.min_corner.y <= ymax)
      out.push_back(&b);
  return out;
}

PlanContext make_context(const Disk& A, const std::vector<UserState>& urllc,
                         const std::vector<UserState>& embb, const Environment& env,
                         const UavState& uav, const RadioConfig& radio, double dt) {
  PlanContext ctx;
  ctx.env = &env;
  ctx.uav = uav;
  ctx.radio = &radio;
  ctx.dt = dt;
  ctx.A = A;

  std::vector<Point2> cells = discretize(A, env.grid);
  std::erase_if(cells, [&](Point2 p) { return !env.region.contains(p); });
  ctx.cells = std::move(cells);
  if (!ctx.cells.empty()) {
    long long imin = std::numeric_limits<long long>::max(), imax = std::numeric_limits<long long>::min();
    long long jmin = imin, jmax = imax;
    std::vector<CellIndex> idx(ctx.cells.size());
    for (std::size_t c = 0; c < ctx.cells.size(); ++c) {
      idx[c] = cell_index_of(ctx.cells[c], env.grid);
      imin = std::min(imin, idx[c].ix);
      imax = std::max(imax, idx[c].ix);
      jmin = std::min(jmin, idx[c].iy);
      jmax = std::max(jmax, idx[c].iy);
    }
    ctx.i0 = imin;
    ctx.j0 = jmin;
    ctx.nx = imax - imin + 1;
    ctx.ny = jmax - jmin + 1;
    ctx.index_at.assign(static_cast<std::size_t>(ctx.nx * ctx.ny), -1);
    for (std::size_t c = 0; c < ctx.cells.size(); ++c)
      ctx.index_at[static_cast<std::size_t>((idx[c].iy - ctx.j0) * ctx.nx + (idx[c].ix - ctx.i0))] =
          static_cast<int>(c);
  }

  for (const UserState& u : urllc) {
    PlanContext::TrackedUser tu;
    tu.u = u;
    tu.margin = uav.coverage_radius - u.velocity * dt;
    tu.check_pts = coverage_check_points(u, env, dt);
    tu.boxes = relevant_boxes(env, A, tu.check_pts);
    ctx.urllc.push_back(std::move(tu));
  }
  for (const UserState& u : embb) {
    PlanContext::TrackedUser tu;
    tu.u = u;
    tu.check_pts = discretize(reach_disk(u, dt), env.grid);
    std::erase_if(tu.check_pts, [&](Point2 p) { return !env.region.contains(p); });
    tu.boxes = relevant_boxes(env, A, tu.check_pts);
    ctx.embb.push_back(std::move(tu));
  }
  // id order fixes the fp summation order, so the caller's user ordering
  // cannot leak into throughput totals or tie-breaks
  auto by_id = [](const PlanContext::TrackedUser& a, const PlanContext::TrackedUser& b) {
    return a.u.id < b.u.id;
  };
  std::sort(ctx.urllc.begin(), ctx.urllc.end(), by_id);
  std::sort(ctx.embb.begin(), ctx.embb.end(), by_id);
  ctx.covered_memo.assign(ctx.cells.size() * ctx.urllc.size(), -1);
  return ctx;
}

/* Gate + enumerate for one subset of URLLC users. The enclosure circle
   (Apollonius for triplets when it exists, minimum enclosing circle
   otherwise) decides feasibility exactly: its radius is within R iff some
   point keeps the whole subset coverable. Candidate cells are then every
   A-cell from which the whole subset is covered, a superset of the
   enclosure's candidate disk that also catches equally-good cells the inner
   disk misses. */
void collect_subset_cells(PlanContext& ctx, const std::vector<int>& subset, FallbackLevel level,
                          std::vector<std::vector<ZoneProvenance>>& marks) {
  const double R = ctx.uav.coverage_radius;
  const double rA = ctx.A.radius;

  std::vector<Disk> disks;
  for (int ui : subset) {
    const PlanContext::TrackedUser& tu = ctx.urllc[static_cast<std::size_t>(ui)];
    if (tu.margin < 0) return; // this user can never stay covered for a slot
    // necessary condition for any A-cell to work for this user
    if (dist(ctx.A.center, tu.u.position) > tu.margin + rA + 1e-9) return;
    disks.push_back(reach_disk(tu.u, ctx.dt));
  }

  Circle enclosure;
  if (disks.size() == 3) {
    const auto apo = apollonius_circle(disks[0], disks[1], disks[2]);
    const Circle meb = min_enclosing_disk(disks);
    // the tangent circle when it is the true enclosure, else the MEB
    enclosure = (apo && apo->radius <= meb.radius + kGeomTol) ? *apo : meb;
  } else {
    enclosure = min_enclosing_disk(disks);
  }
  if (enclosure.radius > R) return; // no point covers the whole subset

  ZoneProvenance prov;
  prov.level = level;
  for (std::size_t i = 0; i < subset.size(); ++i)
    prov.users[i] = ctx.urllc[static_cast<std::size_t>(subset[i])].u.id;

  for (std::size_t c = 0; c < ctx.cells.size(); ++c) {
    const Point2 p = ctx.cells[c];
    bool ok = true;
    for (int ui : subset) {
      const PlanContext::TrackedUser& tu = ctx.urllc[static_cast<std::size_t>(ui)];
      if (dist2(p, tu.u.position) > tu.margin * tu.margin) { ok = false; break; }
    }
    if (!ok) continue;
    for (int ui : subset)
      if (!ctx.covered_cell(static_cast<int>(c), ui)) { ok = false; break; }
    if (ok) marks[c].push_back(prov);
  }
}

CandidateZone build_zone(PlanContext& ctx) {
  CandidateZone zone;
  const int n = static_cast<int>(ctx.urllc.size());
  std::vector<std::vector<ZoneProvenance>> marks(ctx.cells.size());

  auto run_level = [&](int k, FallbackLevel level) {
    std::vector<int> subset(static_cast<std::size_t>(k));
    if (k == 3) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          for (int c = b + 1; c < n; ++c) {
            subset = {a, b, c};
            collect_subset_cells(ctx, subset, level, marks);
          }
    } else if (k == 2) {
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          subset = {a, b};
          collect_subset_cells(ctx, subset, level, marks);
        }
    } else {
      for (int a = 0; a < n; ++a) {
        subset = {a};
        collect_subset_cells(ctx, subset, level, marks);
      }
    }
    return std::any_of(marks.begin(), marks.end(),
                       [](const std::vector<ZoneProvenance>& m) { return !m.empty(); });
  };

  zone.level = FallbackLevel::None;
  if (n >= 3 && run_level(3, FallbackLevel::Triplet)) zone.level = FallbackLevel::Triplet;
  else if (n >= 2 && run_level(2, FallbackLevel::Pair)) zone.level = FallbackLevel::Pair;
  else if (n >= 1 && run_level(1, FallbackLevel::Single)) zone.level = FallbackLevel::Single;

  for (std::size_t c = 0; c < ctx.cells.size(); ++c) {
    if (marks[c].empty()) continue;
    zone.cells.push_back(ctx.cells[c]);
    zone.provenance.push_back(std::move(marks[c]));
  }
  return zone;
}

CoverageMatrix matrix_from_ctx(PlanContext& ctx, const CandidateZone& zone) {
  CoverageMatrix m;
  m.cells = zone.cells;
  for (const auto& tu : ctx.urllc) m.user_ids.push_back(tu.u.id);
  m.flags.assign(static_cast<std::size_t>(m.rows()) * zone.cells.size(), 0);
  for (int i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < zone.cells.size(); ++j) {
      const int cell = ctx.cell_index(zone.cells[j]);
      bool cov;
      if (cell >= 0) {
        cov = ctx.covered_cell(cell, i);
      } else { // cell outside A (caller-provided zone); fall back to direct test
        const auto& tu = ctx.urllc[static_cast<std::size_t>(i)];
        cov = covered_from(zone.cells[j], tu.u, tu.check_pts, tu.boxes, ctx.uav, *ctx.radio,
                           ctx.dt);
      }
      m.flags[static_cast<std::size_t>(i) * zone.cells.size() + j] = cov ? 1 : 0;
    }
  return m;
}

double embb_throughput_from(Point2 z, const PlanContext::TrackedUser& tu, const UavState& uav,
                            const RadioConfig& radio) {
  const double R2 = uav.coverage_radius * uav.coverage_radius;
  const Point3 up{z.x, z.y, uav.altitude};
  double sum = 0;
  int n = 0;
  for (Point2 q : tu.check_pts) {
    if (dist2(z, q) > R2) continue;
    const Point3 q3{q.x, q.y, 0.0};
    bool los = true;
    for (const ObstacleBox* box : tu.boxes)
      if (segment_hits_box(up, q3, *box)) { los = false; break; }
    sum += link_rate_det(up, q3, los, radio);
    ++n;
  }
  return n > 0 ? sum / n : 0.0;
}

double total_embb_throughput(PlanContext& ctx, Point2 z) {
  double t = 0;
  for (const auto& tu : ctx.embb) t += embb_throughput_from(z, tu, ctx.uav, *ctx.radio);
  return t;
}

PlanOutcome fallback_outcome(const PlanContext& ctx, const std::vector<UserState>& all_users) {
  PlanOutcome out;
  out.fallback_level = FallbackLevel::None;
  const Point2 e0 = ctx.uav.position;
  Point2 target = e0;
  if (!all_users.empty()) {
    Point2 centroid{0, 0};
    for (const UserState& u : all_users) {
      centroid.x += u.position.x / static_cast<double>(all_users.size());
      centroid.y += u.position.y / static_cast<double>(all_users.size());
    }
    const double d = dist(e0, centroid);
    const double step = std::min(d, ctx.uav.velocity_max * ctx.dt);
    if (d > 1e-12) {
      target.x = e0.x + (centroid.x - e0.x) / d * step;
      target.y = e0.y + (centroid.y - e0.y) / d * step;
    }
  }
  out.chosen_cell = target;
  out.displacement = dist(e0, target);
  return out;
}

/* max T(z), then min displacement, then first in row-major order */
int pick_best(PlanContext& ctx, const std::vector<Point2>& cells, const std::vector<double>& t) {
  int best = 0;
  double best_d2 = dist2(ctx.uav.position, cells[0]);
  for (std::size_t j = 1; j < cells.size(); ++j) {
    const double d2 = dist2(ctx.uav.position, cells[j]);
    if (t[j] > t[static_cast<std::size_t>(best)] ||
        (t[j] == t[static_cast<std::size_t>(best)] && d2 < best_d2)) {
      best = static_cast<int>(j);
      best_d2 = d2;
    }
  }
  return best;
}

} // namespace

CandidateZone build_candidate_zone(const std::vector<UserState>& urllc, const Disk& A,
                                   const Environment& env, const UavState& uav,
                                   const RadioConfig& radio, double dt) {
  PlanContext ctx = make_context(A, urllc, {}, env, uav, radio, dt);
  return build_zone(ctx);
}

CoverageMatrix coverage_matrix(const CandidateZone& zone, const std::vector<UserState>& urllc,
                               const Environment& env, const UavState& uav,
                               const RadioConfig& radio, double dt) {
  PlanContext ctx = make_context(Disk{uav.position, uav.velocity_max * dt}, urllc, {}, env, uav,
                                 radio, dt);
  return matrix_from_ctx(ctx, zone);
}

std::vector<Point2> select_urllc_cells(const CoverageMatrix& m) {
  std::vector<Point2> out;
  if (m.cols() == 0) return out;
  int best = 0;
  for (int j = 0; j < m.cols(); ++j) best = std::max(best, m.col_sum(j));
  for (int j = 0; j < m.cols(); ++j)
    if (m.col_sum(j) == best) out.push_back(m.cells[static_cast<std::size_t>(j)]);
  return out;
}

double embb_cell_throughput(Point2 z, const UserState& eu, const Environment& env,
                            const UavState& uav, const RadioConfig& radio, double dt) {
  PlanContext::TrackedUser tu;
  tu.u = eu;
  tu.check_pts = discretize(reach_disk(eu, dt), env.grid);
  std::erase_if(tu.check_pts, [&](Point2 p) { return !env.region.contains(p); });
  for (const ObstacleBox& b : env.obstacles) tu.boxes.push_back(&b);
  return embb_throughput_from(z, tu, uav, radio);
}

PlanOutcome plan(const std::vector<UserState>& urllc, const std::vector<UserState>& embb,
                 const UavState& uav, const Environment& env, const RadioConfig& radio,
                 double dt) {
  if (static_cast<int>(urllc.size() + embb.size()) > uav.capacity)
    throw std::invalid_argument("plan: user count exceeds uav capacity");

  PlanContext ctx = make_context(Disk{uav.position, uav.velocity_max * dt}, urllc, embb, env,
                                 uav, radio, dt);
  PlanOutcome out;

  if (urllc.empty() && embb.empty()) return fallback_outcome(ctx, {}); // nobody to serve: stay

  std::vector<Point2> zu;         // candidate cells after the coverage stage
  std::vector<int> zu_cell_index; // into ctx.cells
  CoverageMatrix m;

  if (urllc.empty()) {
    // nothing to cover: consider every reachable cell
    zu = ctx.cells;
    zu_cell_index.resize(zu.size());
    for (std::size_t j = 0; j < zu.size(); ++j) zu_cell_index[j] = static_cast<int>(j);
    out.fallback_level = FallbackLevel::None;
    out.zone_size = 0;
  } else {
    CandidateZone zone = build_zone(ctx);
    if (zone.cells.empty()) {
      std::vector<UserState> all;
      for (const auto& tu : ctx.urllc) all.push_back(tu.u);
      for (const auto& tu : ctx.embb) all.push_back(tu.u);
      PlanOutcome fb = fallback_outcome(ctx, all);
      fb.embb_throughput = total_embb_throughput(ctx, fb.chosen_cell);
      return fb;
    }
    out.fallback_level = zone.level;
    out.zone_size = static_cast<int>(zone.cells.size());
    m = matrix_from_ctx(ctx, zone);
    int best = 0;
    std::vector<int> sums(zone.cells.size());
    for (std::size_t j = 0; j < zone.cells.size(); ++j) {
      sums[j] = m.col_sum(static_cast<int>(j));
      best = std::max(best, sums[j]);
    }
    for (std::size_t j = 0; j < zone.cells.size(); ++j)
      if (sums[j] == best) {
        zu.push_back(zone.cells[j]);
        zu_cell_index.push_back(static_cast<int>(j)); // index into zone/matrix columns
      }
  }

  if (zu.empty()) {
    std::vector<UserState> all;
    for (const auto& tu : ctx.urllc) all.push_back(tu.u);
    for (const auto& tu : ctx.embb) all.push_back(tu.u);
    return fallback_outcome(ctx, all);
  }

  out.zu_size = static_cast<int>(zu.size());
  std::vector<double> t(zu.size());
  for (std::size_t j = 0; j < zu.size(); ++j) t[j] = total_embb_throughput(ctx, zu[j]);
  const int pick = pick_best(ctx, zu, t);

  out.chosen_cell = zu[static_cast<std::size_t>(pick)];
  out.embb_throughput = t[static_cast<std::size_t>(pick)];
  out.displacement = dist(ctx.uav.position, out.chosen_cell);
  if (!urllc.empty()) {
    const int col = zu_cell_index[static_cast<std::size_t>(pick)];
    for (int i = 0; i < m.rows(); ++i)
      if (m.at(i, col)) out.covered_user_ids.push_back(m.user_ids[static_cast<std::size_t>(i)]);
    out.urllc_covered = static_cast<int>(out.covered_user_ids.size());
  }
  return out;
}

PlanOutcome plan_baseline(const std::vector<UserState>& users, const UavState& uav,
                          const Environment& env, const RadioConfig& radio, double dt,
                          double baseline_rreq_bps) {
  if (static_cast<int>(users.size()) > uav.capacity)
    throw std::invalid_argument("plan_baseline: user count exceeds uav capacity");

  // id order again: keeps every sum and id list canonical
  std::vector<UserState> ordered = users;
  std::sort(ordered.begin(), ordered.end(),
            [](const UserState& a, const UserState& b) { return a.id < b.id; });

  std::vector<UserState> demanding = ordered;
  for (UserState& u : demanding) {
    u.traffic_class = TrafficClass::Urllc;
    u.rate_threshold = baseline_rreq_bps;
  }

  PlanContext ctx = make_context(Disk{uav.position, uav.velocity_max * dt}, demanding, {}, env,
                                 uav, radio, dt);
  PlanOutcome out;

  auto true_urllc_stats = [&](Point2 z) {
    std::vector<int> ids;
    for (const UserState& u : ordered)
      if (u.traffic_class == TrafficClass::Urllc && covered(z, u, env, uav, radio, dt))
        ids.push_back(u.id);
    return ids;
  };
  auto true_embb_t = [&](Point2 z) {
    double t = 0;
    for (const UserState& u : ordered)
      if (u.traffic_class == TrafficClass::Embb)
        t += embb_cell_throughput(z, u, env, uav, radio, dt);
    return t;
  };

  if (demanding.empty()) {
    out.chosen_cell = uav.position;
    return out;
  }

  CandidateZone zone = build_zone(ctx);
  if (zone.cells.empty()) {
    PlanOutcome fb = fallback_outcome(ctx, ordered);
    fb.covered_user_ids = true_urllc_stats(fb.chosen_cell);
    fb.urllc_covered = static_cast<int>(fb.covered_user_ids.size());
    fb.embb_throughput = true_embb_t(fb.chosen_cell);
    return fb;
  }
  out.fallback_level = zone.level;
  out.zone_size = static_cast<int>(zone.cells.size());

  CoverageMatrix m = matrix_from_ctx(ctx, zone);
  int best = 0;
  std::vector<int> sums(zone.cells.size());
  for (std::size_t j = 0; j < zone.cells.size(); ++j) {
    sums[j] = m.col_sum(static_cast<int>(j));
    best = std::max(best, sums[j]);
  }
  int pick = -1;
  double pick_d2 = 0;
  for (std::size_t j = 0; j < zone.cells.size(); ++j) {
    if (sums[j] != best) continue;
    const double d2 = dist2(uav.position, zone.cells[j]);
    if (pick < 0 || d2 < pick_d2) {
      pick = static_cast<int>(j);
      pick_d2 = d2;
    }
  }
  out.zu_size = static_cast<int>(std::count(sums.begin(), sums.end(), best));
  out.chosen_cell = zone.cells[static_cast<std::size_t>(pick)];
  out.displacement = dist(uav.position, out.chosen_cell);
  out.covered_user_ids = true_urllc_stats(out.chosen_cell);
  out.urllc_covered = static_cast<int>(out.covered_user_ids.size());
  out.embb_throughput = true_embb_t(out.chosen_cell);
  return out;
}

} // namespace uavsim
