#pragma once

#include "uavsim/geometry.hpp"
#include "uavsim/rng.hpp"

namespace uavsim {

enum class FadingLaw { Rician, Rayleigh };

/* Close-in path-loss model parameters for one propagation condition:
   PL(d) [dB] = alpha + 10 * beta * log10(d) + shadowing. */
struct LinkParams {
  double alpha_db = 0;
  double beta = 0;
  double sigma_db = 0; // lognormal shadowing std dev
  FadingLaw fading = FadingLaw::Rayleigh;
  double rician_k = 0; // linear K factor, Rician only
};

/* 73 GHz measurement fit for LoS/NLoS plus the link budget knobs. The noise
   floor is a plain config value (thermal floor for 100 MHz at 0 dB noise
   figure by default). */
struct RadioConfig {
  double tx_power_dbm = 30.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
  double bandwidth_hz = 100e6;
  double noise_dbm = -94.0;
  LinkParams los{69.8, 2.0, 3.1, FadingLaw::Rician, 2.0};
  LinkParams nlos{82.7, 2.69, 8.7, FadingLaw::Rayleigh, 0.0};
};

enum class FadingMode { Deterministic, Stochastic };

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

/* Throws std::invalid_argument when distance <= 0. */
double path_loss_db(double distance_m, const LinkParams& p, double shadowing_db = 0.0);

double received_power_dbm(const RadioConfig& radio, double path_loss);

/* |g|^2 sample with unit mean. Deterministic mode returns 1. */
double sample_fading_power(const LinkParams& p, FadingMode mode, SplitMix64& rng);

/* Shannon rate in bit/s from received signal power and fading power gain. */
double throughput_bps(const RadioConfig& radio, double p_rx_dbm, double fading_power);

/* Full link: slant distance, path loss with optional shadowing draw, fading
   draw, throughput. los selects the parameter set. */
double link_rate(Point3 uav, Point3 ue, bool los, const RadioConfig& radio,
                 FadingMode mode, SplitMix64& rng);

/* Deterministic-mode rate, no RNG needed; what the planner evaluates. */
double link_rate_det(Point3 uav, Point3 ue, bool los, const RadioConfig& radio);

/* Largest slant distance at which the deterministic LoS rate still meets
   rate_bps; used to bound coverage-radius sweeps. */
double max_los_range_m(const RadioConfig& radio, double rate_bps);

} // namespace uavsim
