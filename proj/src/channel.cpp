#include "uavsim/channel.hpp"

#include <random>
#include <stdexcept>

namespace uavsim {

double path_loss_db(double distance_m, const LinkParams& p, double shadowing_db) {
  if (distance_m <= 0) throw std::invalid_argument("path_loss_db: distance must be > 0");
  return p.alpha_db + 10.0 * p.beta * std::log10(distance_m) + shadowing_db;
}

double received_power_dbm(const RadioConfig& radio, double path_loss) {
  return radio.tx_power_dbm + radio.tx_gain_dbi + radio.rx_gain_dbi - path_loss;
}

double sample_fading_power(const LinkParams& p, FadingMode mode, SplitMix64& rng) {
  if (mode == FadingMode::Deterministic) return 1.0;
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (p.fading == FadingLaw::Rician) {
    /* g = sqrt(K/(K+1)) + CN(0, 1/(K+1)); E|g|^2 = 1 */
    const double k = p.rician_k;
    const double mean = std::sqrt(k / (k + 1.0));
    const double s = std::sqrt(0.5 / (k + 1.0));
    const double re = mean + s * gauss(rng);
    const double im = s * gauss(rng);
    return re * re + im * im;
  }
  // Rayleigh: |g|^2 ~ Exp(1)
  const double re = std::sqrt(0.5) * gauss(rng);
  const double im = std::sqrt(0.5) * gauss(rng);
  return re * re + im * im;
}

double throughput_bps(const RadioConfig& radio, double p_rx_dbm, double fading_power) {
  const double snr = dbm_to_mw(p_rx_dbm) * fading_power / dbm_to_mw(radio.noise_dbm);
  return radio.bandwidth_hz * std::log2(1.0 + snr);
}

double link_rate(Point3 uav, Point3 ue, bool los, const RadioConfig& radio,
                 FadingMode mode, SplitMix64& rng) {
  const LinkParams& p = los ? radio.los : radio.nlos;
  double shadow = 0.0;
  if (mode == FadingMode::Stochastic) {
    std::normal_distribution<double> gauss(0.0, p.sigma_db);
    shadow = gauss(rng);
  }
  const double pl = path_loss_db(dist3(uav, ue), p, shadow);
  return throughput_bps(radio, received_power_dbm(radio, pl), sample_fading_power(p, mode, rng));
}

double link_rate_det(Point3 uav, Point3 ue, bool los, const RadioConfig& radio) {
  const LinkParams& p = los ? radio.los : radio.nlos;
  const double pl = path_loss_db(dist3(uav, ue), p);
  return throughput_bps(radio, received_power_dbm(radio, pl), 1.0);
}

double max_los_range_m(const RadioConfig& radio, double rate_bps) {
  const double snr_req = std::pow(2.0, rate_bps / radio.bandwidth_hz) - 1.0;
  const double snr_req_db = 10.0 * std::log10(snr_req);
  const double pl_max = radio.tx_power_dbm + radio.tx_gain_dbi + radio.rx_gain_dbi -
                        (radio.noise_dbm + snr_req_db);
  return std::pow(10.0, (pl_max - radio.los.alpha_db) / (10.0 * radio.los.beta));
}

} // namespace uavsim
