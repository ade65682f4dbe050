#include "uavsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavsim {

const char* to_string(SweepParam p) {
  switch (p) {
    case SweepParam::CoverageRadius: return "coverage_radius";
    case SweepParam::Obstacles: return "obstacles";
    default: return "velocity";
  }
}

SimState init_state(const SimConfig& cfg) {
  Scenario sc = generate_scenario(cfg, cfg.seed);
  SimState st;
  st.env = std::move(sc.env);
  st.users = std::move(sc.users);
  st.uav = sc.uav;
  st.excluded_users = sc.excluded_users;
  return st;
}

SlotMetrics run_slot(SimState& st, const SimConfig& cfg) {
  static constexpr std::uint64_t kFadingTag = stream_tag("fading");

  const std::vector<UserState> snapshot = st.users;
  std::vector<UserState> urllc, embb;
  for (const UserState& u : snapshot)
    (u.traffic_class == TrafficClass::Urllc ? urllc : embb).push_back(u);

  PlanOutcome outcome;
  if (cfg.algorithm == Algorithm::Proposed)
    outcome = plan(urllc, embb, st.uav, st.env, cfg.radio, cfg.dt);
  else
    outcome = plan_baseline(snapshot, st.uav, st.env, cfg.radio, cfg.dt, cfg.baseline_rreq_bps);

  st.users = step_users(snapshot, st.env, cfg.dt, cfg.seed, st.slot);
  st.uav.position = outcome.chosen_cell;

  SlotMetrics m;
  m.slot = static_cast<int>(st.slot);
  m.urllc_covered = outcome.urllc_covered;
  m.displacement_m = outcome.displacement;
  m.fallback = outcome.fallback_level;
  m.zone_size = outcome.zone_size;
  m.zu_size = outcome.zu_size;
  m.planned_embb_bps = outcome.embb_throughput;

  const Point2 z = outcome.chosen_cell;
  const Point3 zp{z.x, z.y, st.uav.altitude};
  const double r2 = st.uav.coverage_radius * st.uav.coverage_radius;

  // accumulate in id order so the state's user ordering cannot perturb the sums
  std::vector<const UserState*> by_id(st.users.size());
  for (std::size_t i = 0; i < st.users.size(); ++i) by_id[i] = &st.users[i];
  std::sort(by_id.begin(), by_id.end(),
            [](const UserState* a, const UserState* b) { return a->id < b->id; });

  for (const UserState* up : by_id) {
    const UserState& u = *up;
    const Point3 q{u.position.x, u.position.y, 0.0};
    SplitMix64 rng = substream(cfg.seed, kFadingTag, static_cast<std::uint64_t>(st.slot),
                               static_cast<std::uint64_t>(u.id));
    if (u.traffic_class == TrafficClass::Urllc) {
      const bool counted = std::find(outcome.covered_user_ids.begin(),
                                     outcome.covered_user_ids.end(),
                                     u.id) != outcome.covered_user_ids.end();
      if (!counted) continue;
      if (has_los(zp, q, st.env)) {
        m.urllc_tput_bps += link_rate(zp, q, true, cfg.radio, cfg.fading, rng);
      } else {
        ++m.violations; // promised coverage, lost the sight line mid-slot
      }
    } else {
      if (dist2(z, u.position) > r2) continue; // outside coverage: no service
      const bool los = has_los(zp, q, st.env);
      m.embb_tput_bps += link_rate(zp, q, los, cfg.radio, cfg.fading, rng);
    }
  }
  m.sum_tput_bps = m.urllc_tput_bps + m.embb_tput_bps;
  ++st.slot;
  return m;
}

RunSummary run(const SimConfig& cfg) {
  if (cfg.slots < 0) throw std::invalid_argument("run: negative slot count");
  return run_from(init_state(cfg), cfg);
}

RunSummary run_from(SimState st, const SimConfig& cfg) {
  RunSummary rs;
  rs.excluded_users = st.excluded_users;
  const long urllc_per_slot = static_cast<long>(std::count_if(
      st.users.begin(), st.users.end(),
      [](const UserState& u) { return u.traffic_class == TrafficClass::Urllc; }));

  rs.slots.reserve(static_cast<std::size_t>(cfg.slots));
  for (int s = 0; s < cfg.slots; ++s) {
    SlotMetrics m = run_slot(st, cfg);
    rs.violations += m.violations;
    rs.urllc_user_slots += urllc_per_slot;
    rs.slots.push_back(m);
  }

  const double n = std::max<std::size_t>(rs.slots.size(), 1);
  for (const SlotMetrics& m : rs.slots) {
    rs.mean_urllc_covered += m.urllc_covered / n;
    rs.mean_urllc_tput += m.urllc_tput_bps / n;
    rs.mean_embb_tput += m.embb_tput_bps / n;
    rs.mean_sum_tput += m.sum_tput_bps / n;
    rs.mean_displacement += m.displacement_m / n;
  }
  if (rs.slots.size() > 1) {
    double acc = 0;
    for (const SlotMetrics& m : rs.slots) {
      const double d = m.sum_tput_bps - rs.mean_sum_tput;
      acc += d * d;
    }
    rs.std_sum_tput = std::sqrt(acc / (n - 1));
  }
  return rs;
}

std::vector<SweepRow> sweep(const SimConfig& base, SweepParam param,
                            const std::vector<double>& values, int seed_count,
                            bool compare_baseline) {
  if (seed_count <= 0) throw std::invalid_argument("sweep: seed_count must be positive");
  std::vector<Algorithm> algos{Algorithm::Proposed};
  if (compare_baseline) algos.push_back(Algorithm::Baseline);

  std::vector<SweepRow> rows;
  for (double v : values) {
    for (int s = 0; s < seed_count; ++s) {
      for (Algorithm a : algos) {
        SimConfig cfg = base;
        cfg.seed = base.seed + static_cast<std::uint64_t>(s);
        cfg.algorithm = a;
        switch (param) {
          case SweepParam::CoverageRadius: cfg.coverage_radius = v; break;
          case SweepParam::Obstacles: cfg.obstacle_count = static_cast<int>(std::llround(v)); break;
          case SweepParam::Velocity: cfg.user_vmax = v; break;
        }
        const RunSummary rs = run(cfg);
        SweepRow row;
        row.param = param;
        row.value = v;
        row.seed = cfg.seed;
        row.algorithm = a;
        row.mean_urllc_tput = rs.mean_urllc_tput;
        row.mean_embb_tput = rs.mean_embb_tput;
        row.mean_sum_tput = rs.mean_sum_tput;
        row.mean_urllc_covered = rs.mean_urllc_covered;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

} // namespace uavsim
