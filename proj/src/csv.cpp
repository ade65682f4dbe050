#include "uavsim/csv.hpp"

#include <cstdio>

namespace uavsim {

std::string metrics_csv(const std::vector<SlotMetrics>& slots) {
  std::string out =
      "slot,urllc_covered,urllc_tput_bps,embb_tput_bps,sum_tput_bps,displacement_m,fallback\n";
  char head[64];
  for (const SlotMetrics& m : slots) {
    std::snprintf(head, sizeof head, "%d,%d,", m.slot, m.urllc_covered);
    out += head;
    out += fmt6(m.urllc_tput_bps) + ',' + fmt6(m.embb_tput_bps) + ',' + fmt6(m.sum_tput_bps) +
           ',' + fmt6(m.displacement_m) + ',';
    out += to_string(m.fallback);
    out += '\n';
  }
  return out;
}

std::string trace_csv(const std::vector<SlotMetrics>& slots) {
  std::string out = "slot,fallback,zone_size,zu_size,S_z,T_z_bps,displacement_m\n";
  char buf[96];
  for (const SlotMetrics& m : slots) {
    std::snprintf(buf, sizeof buf, "%d,%s,%d,%d,%d,", m.slot, to_string(m.fallback), m.zone_size,
                  m.zu_size, m.urllc_covered);
    out += buf;
    out += fmt6(m.planned_embb_bps) + ',' + fmt6(m.displacement_m);
    out += '\n';
  }
  return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out =
      "param,value,seed,algorithm,mean_urllc_tput,mean_embb_tput,mean_sum_tput,"
      "mean_urllc_covered\n";
  char buf[64];
  for (const SweepRow& r : rows) {
    out += to_string(r.param);
    out += ',';
    out += fmt6(r.value) + ',';
    std::snprintf(buf, sizeof buf, "%llu,", static_cast<unsigned long long>(r.seed));
    out += buf;
    out += (r.algorithm == Algorithm::Proposed) ? "proposed," : "baseline,";
    out += fmt6(r.mean_urllc_tput) + ',' + fmt6(r.mean_embb_tput) + ',' +
           fmt6(r.mean_sum_tput) + ',' + fmt6(r.mean_urllc_covered);
    out += '\n';
  }
  return out;
}

} // namespace uavsim
