#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uavsim/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace uavsim;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.region_width = 150;
  cfg.region_height = 150;
  cfg.uav_altitude = 30;
  cfg.users_total = 12;
  cfg.obstacle_count = 8;
  cfg.slots = 30;
  cfg.cell_size = 2;
  cfg.seed = 5;
  return cfg;
}

bool same_slots(const RunSummary& a, const RunSummary& b) {
  if (a.slots.size() != b.slots.size()) return false;
  for (std::size_t i = 0; i < a.slots.size(); ++i) {
    const SlotMetrics &x = a.slots[i], &y = b.slots[i];
    if (x.slot != y.slot || x.urllc_covered != y.urllc_covered ||
        x.urllc_tput_bps != y.urllc_tput_bps || x.embb_tput_bps != y.embb_tput_bps ||
        x.sum_tput_bps != y.sum_tput_bps || x.displacement_m != y.displacement_m ||
        x.fallback != y.fallback || x.violations != y.violations)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("every slot keeps the aggregate identity and the kinematic bound") {
  const SimConfig cfg = small_config();
  const RunSummary sum = run(cfg);
  REQUIRE(static_cast<int>(sum.slots.size()) == cfg.slots);

  const SimState st = init_state(cfg);
  int urllc_count = 0;
  for (const UserState& u : st.users)
    if (u.traffic_class == TrafficClass::Urllc) ++urllc_count;

  const double bound = cfg.uav_vmax * cfg.dt + cfg.cell_size / 2 + 1e-9;
  for (const SlotMetrics& m : sum.slots) {
    CHECK(m.sum_tput_bps == m.urllc_tput_bps + m.embb_tput_bps); // exact, not approx
    CHECK(m.displacement_m <= bound);
    CHECK(m.urllc_covered <= urllc_count);
    CHECK(m.violations >= 0);
    CHECK(m.violations <= m.urllc_covered);
    CHECK(m.urllc_tput_bps >= 0);
    CHECK(m.embb_tput_bps >= 0);
  }
  CHECK(sum.urllc_user_slots == static_cast<long>(urllc_count) * cfg.slots);
}

TEST_CASE("summary statistics recompute from the per-slot list") {
  const SimConfig cfg = small_config();
  const RunSummary sum = run(cfg);

  double mean_sum = 0, mean_urllc = 0, mean_embb = 0, mean_disp = 0, mean_cov = 0;
  long viol = 0;
  for (const SlotMetrics& m : sum.slots) {
    mean_sum += m.sum_tput_bps;
    mean_urllc += m.urllc_tput_bps;
    mean_embb += m.embb_tput_bps;
    mean_disp += m.displacement_m;
    mean_cov += m.urllc_covered;
    viol += m.violations;
  }
  const double n = static_cast<double>(sum.slots.size());
  mean_sum /= n;
  mean_urllc /= n;
  mean_embb /= n;
  mean_disp /= n;
  mean_cov /= n;

  CHECK(sum.mean_sum_tput == doctest::Approx(mean_sum).epsilon(1e-12));
  CHECK(sum.mean_urllc_tput == doctest::Approx(mean_urllc).epsilon(1e-12));
  CHECK(sum.mean_embb_tput == doctest::Approx(mean_embb).epsilon(1e-12));
  CHECK(sum.mean_displacement == doctest::Approx(mean_disp).epsilon(1e-12));
  CHECK(sum.mean_urllc_covered == doctest::Approx(mean_cov).epsilon(1e-12));
  CHECK(sum.violations == viol);

  double var = 0;
  for (const SlotMetrics& m : sum.slots) {
    const double d = m.sum_tput_bps - mean_sum;
    var += d * d;
  }
  var /= (n - 1);
  CHECK(sum.std_sum_tput == doctest::Approx(std::sqrt(var)).epsilon(1e-9));
}

TEST_CASE("identical configs reproduce bitwise; replay from the drawn state matches") {
  const SimConfig cfg = small_config();
  const RunSummary a = run(cfg);
  const RunSummary b = run(cfg);
  CHECK(same_slots(a, b));
  CHECK(a.mean_sum_tput == b.mean_sum_tput);
  CHECK(a.std_sum_tput == b.std_sum_tput);

  const RunSummary c = run_from(init_state(cfg), cfg);
  CHECK(same_slots(a, c));
  CHECK(a.excluded_users == c.excluded_users);
}

TEST_CASE("user ordering in the state does not affect any metric") {
  const SimConfig cfg = small_config();
  SimState st = init_state(cfg);
  SimState rotated = st;
  std::rotate(rotated.users.begin(), rotated.users.begin() + 5, rotated.users.end());
  std::reverse(rotated.users.begin(), rotated.users.begin() + 4);

  const RunSummary a = run_from(st, cfg);
  const RunSummary b = run_from(rotated, cfg);
  CHECK(same_slots(a, b));
}

TEST_CASE("a world with no users stands still and earns nothing") {
  SimConfig cfg = small_config();
  cfg.users_total = 0;
  cfg.slots = 10;
  const RunSummary sum = run(cfg);
  for (const SlotMetrics& m : sum.slots) {
    CHECK(m.sum_tput_bps == 0.0);
    CHECK(m.urllc_covered == 0);
    CHECK(m.displacement_m == 0.0);
  }
  CHECK(sum.mean_sum_tput == 0.0);
}

TEST_CASE("deterministic fading floors covered users at the threshold rate") {
  SimConfig cfg = small_config();
  cfg.fading = FadingMode::Deterministic;
  const RunSummary sum = run(cfg);
  for (const SlotMetrics& m : sum.slots) {
    const double floor =
        static_cast<double>(m.urllc_covered - m.violations) * cfg.urllc_threshold_bps;
    CHECK(m.urllc_tput_bps >= floor - 1e-6);
  }
}

TEST_CASE("slot counts must not be negative") {
  SimConfig cfg = small_config();
  cfg.slots = -1;
  CHECK_THROWS_AS(run(cfg), std::invalid_argument);
}

TEST_CASE("a single-point sweep is exactly one plain run") {
  const SimConfig cfg = small_config();
  const auto rows = sweep(cfg, SweepParam::Velocity, {cfg.user_vmax}, 1, false);
  REQUIRE(rows.size() == 1);
  const RunSummary direct = run(cfg);
  CHECK(rows[0].value == cfg.user_vmax);
  CHECK(rows[0].seed == cfg.seed);
  CHECK(rows[0].algorithm == Algorithm::Proposed);
  CHECK(rows[0].mean_urllc_tput == direct.mean_urllc_tput);
  CHECK(rows[0].mean_embb_tput == direct.mean_embb_tput);
  CHECK(rows[0].mean_sum_tput == direct.mean_sum_tput);
  CHECK(rows[0].mean_urllc_covered == direct.mean_urllc_covered);
}

TEST_CASE("sweep rows come back value-major, seed-minor, baseline interleaved") {
  SimConfig cfg = small_config();
  cfg.slots = 5;
  const auto rows = sweep(cfg, SweepParam::Obstacles, {0, 4}, 3, true);
  REQUIRE(rows.size() == 2 * 3 * 2);
  std::size_t k = 0;
  for (double value : {0.0, 4.0})
    for (int s = 0; s < 3; ++s)
      for (Algorithm algo : {Algorithm::Proposed, Algorithm::Baseline}) {
        CHECK(rows[k].param == SweepParam::Obstacles);
        CHECK(rows[k].value == value);
        CHECK(rows[k].seed == cfg.seed + static_cast<std::uint64_t>(s));
        CHECK(rows[k].algorithm == algo);
        ++k;
      }
}

TEST_CASE("sweep validates its seed count") {
  const SimConfig cfg = small_config();
  CHECK_THROWS_AS(sweep(cfg, SweepParam::Velocity, {1.0}, 0, false), std::invalid_argument);
}

TEST_CASE("sweep parameter names are stable") {
  CHECK(std::string(to_string(SweepParam::CoverageRadius)) == "coverage_radius");
  CHECK(std::string(to_string(SweepParam::Obstacles)) == "obstacles");
  CHECK(std::string(to_string(SweepParam::Velocity)) == "velocity");
}
