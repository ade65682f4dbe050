#pragma once

#include "uavsim/fmt.hpp"
#include "uavsim/simulator.hpp"

#include <string>
#include <vector>

namespace uavsim {

// "slot,urllc_covered,urllc_tput_bps,embb_tput_bps,sum_tput_bps,displacement_m,fallback"
std::string metrics_csv(const std::vector<SlotMetrics>& slots);

// "slot,fallback,zone_size,zu_size,S_z,T_z_bps,displacement_m"
std::string trace_csv(const std::vector<SlotMetrics>& slots);

// "param,value,seed,algorithm,mean_urllc_tput,mean_embb_tput,mean_sum_tput,mean_urllc_covered"
std::string sweep_csv(const std::vector<SweepRow>& rows);

} // namespace uavsim
