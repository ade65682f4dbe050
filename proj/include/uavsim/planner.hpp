#pragma once

#include "uavsim/world.hpp"

#include <array>

namespace uavsim {

enum class FallbackLevel { Triplet, Pair, Single, None };

const char* to_string(FallbackLevel level);

/* Which user subset generated a zone cell. users holds ids, -1 padded. */
struct ZoneProvenance {
  FallbackLevel level = FallbackLevel::None;
  std::array<int, 3> users{-1, -1, -1};
};

/* Union of per-subset candidate cells, row-major order, deduplicated on the
   lattice. level records the subset size that produced the zone (Triplet
   first; Pair only when every triplet came up empty; then Single). */
struct CandidateZone {
  std::vector<Point2> cells;
  std::vector<std::vector<ZoneProvenance>> provenance; // parallel to cells
  FallbackLevel level = FallbackLevel::None;
};

/* covered(cell j, user i) for the zone cells, row per user. */
struct CoverageMatrix {
  std::vector<int> user_ids;
  std::vector<Point2> cells;
  std::vector<std::uint8_t> flags; // user-major: flags[i * cells + j]
  int rows() const { return static_cast<int>(user_ids.size()); }
  int cols() const { return static_cast<int>(cells.size()); }
  bool at(int i, int j) const { return flags[static_cast<std::size_t>(i) * cells.size() +
                                             static_cast<std::size_t>(j)] != 0; }
  int col_sum(int j) const;
};

struct PlanOutcome {
  Point2 chosen_cell;
  int urllc_covered = 0;          // URLLC users covered from the chosen cell
  double embb_throughput = 0;     // planning-time T(z), bit/s
  double displacement = 0;        // from the UAV position at plan time
  FallbackLevel fallback_level = FallbackLevel::None;
  int zone_size = 0;
  int zu_size = 0;
  std::vector<int> covered_user_ids;
};

/* Inner candidate disk for one enclosure: cells of
   Disk(enclosure.center, R - enclosure.radius) clipped to A. Empty when the
   enclosure does not fit inside the coverage radius. Sufficient but not
   exhaustive; build_candidate_zone widens it. */
std::vector<Point2> zone_from_enclosure(const Circle& enclosure, const Disk& A,
                                        double coverage_radius, const GridSpec& grid);

/* Candidate zone over the URLLC set S. For each subset the enclosure
   (Apollonius circle of three disks, minimum enclosing circle otherwise)
   gates feasibility; candidate cells are then every lattice cell of A (inside
   the region) from which the whole subset is covered. This keeps every cell
   whose covered-count ties the best, which the enclosure disk alone can
   miss - see README notes on zone completeness. */
CandidateZone build_candidate_zone(const std::vector<UserState>& urllc, const Disk& A,
                                   const Environment& env, const UavState& uav,
                                   const RadioConfig& radio, double dt);

CoverageMatrix coverage_matrix(const CandidateZone& zone, const std::vector<UserState>& urllc,
                               const Environment& env, const UavState& uav,
                               const RadioConfig& radio, double dt);

/* Argmax-coverage columns; all cells when the matrix is all-zero. Preserves
   zone (row-major) order. */
std::vector<Point2> select_urllc_cells(const CoverageMatrix& m);

/* Mean deterministic rate over grid centers of reach_disk(eu) inside
   Disk(z, R); zero when the overlap holds no grid center. */
double embb_cell_throughput(Point2 z, const UserState& eu, const Environment& env,
                            const UavState& uav, const RadioConfig& radio, double dt);

/* One slot decision: coverage-first cell choice, eMBB-throughput refinement,
   min-displacement tie-break, row-major residual tie-break. Throws
   std::invalid_argument when |urllc| + |embb| exceeds uav.capacity. */
PlanOutcome plan(const std::vector<UserState>& urllc, const std::vector<UserState>& embb,
                 const UavState& uav, const Environment& env, const RadioConfig& radio,
                 double dt);

/* Reference scheme: every user is demanded like URLLC at baseline_rreq_bps,
   the UAV takes the min-displacement max-coverage cell, no throughput
   refinement. Reported urllc_covered/covered_user_ids use the true URLLC
   semantics so runs are comparable with plan(). */
PlanOutcome plan_baseline(const std::vector<UserState>& users, const UavState& uav,
                          const Environment& env, const RadioConfig& radio, double dt,
                          double baseline_rreq_bps);

} // namespace uavsim
