#pragma once

#include "uavsim/planner.hpp"

#include <string>

namespace uavsim {

struct SlotMetrics {
  int slot = 0;
  int urllc_covered = 0;      // planning-time covered URLLC users
  double urllc_tput_bps = 0;  // realized, end-of-slot positions
  double embb_tput_bps = 0;
  double sum_tput_bps = 0;    // always urllc + embb
  double displacement_m = 0;
  FallbackLevel fallback = FallbackLevel::None;
  int violations = 0;         // covered users that lost LoS during the slot
  int zone_size = 0;
  int zu_size = 0;
  double planned_embb_bps = 0;
};

struct RunSummary {
  std::vector<SlotMetrics> slots;
  double mean_urllc_covered = 0;
  double mean_urllc_tput = 0;
  double mean_embb_tput = 0;
  double mean_sum_tput = 0;
  double mean_displacement = 0;
  double std_sum_tput = 0;
  long violations = 0;
  long urllc_user_slots = 0;
  int excluded_users = 0;
};

struct SimState {
  Environment env;
  std::vector<UserState> users;
  UavState uav;
  long slot = 0;
  int excluded_users = 0;
};

SimState init_state(const SimConfig& cfg);

/* One slot: plan on the current snapshot, move users, park the UAV on the
   chosen cell, then score realized throughput at the end-of-slot positions.
   URLLC users counted covered at plan time earn their sampled LoS rate, or
   zero plus a violation when an obstacle cut the sight line. eMBB users earn
   their sampled rate whenever they ended up inside the coverage disk. */
SlotMetrics run_slot(SimState& st, const SimConfig& cfg);

RunSummary run(const SimConfig& cfg);

/* run() starting from an existing slot-0 state (scenario replay). */
RunSummary run_from(SimState st, const SimConfig& cfg);

enum class SweepParam { CoverageRadius, Obstacles, Velocity };

const char* to_string(SweepParam p);

struct SweepRow {
  SweepParam param = SweepParam::CoverageRadius;
  double value = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::Proposed;
  double mean_urllc_tput = 0;
  double mean_embb_tput = 0;
  double mean_sum_tput = 0;
  double mean_urllc_covered = 0;
};

/* Full cross product of values x seeds (seed, seed+1, ...) x algorithms
   (proposed plus baseline when compare_baseline). Rows come back in that
   nesting order. Cells differing only in the swept value share scenario and
   mobility draws through the common seed. */
std::vector<SweepRow> sweep(const SimConfig& base, SweepParam param,
                            const std::vector<double>& values, int seed_count,
                            bool compare_baseline);

} // namespace uavsim
