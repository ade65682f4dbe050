#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "uavsim/channel.hpp"

#include <cmath>
#include <stdexcept>

using namespace uavsim;

TEST_CASE("path loss pinned values for the 73 GHz fit") {
  const RadioConfig radio;
  CHECK(path_loss_db(1.0, radio.los) == doctest::Approx(69.8).epsilon(1e-12));
  CHECK(path_loss_db(100.0, radio.los) == doctest::Approx(109.8).epsilon(1e-12));
  CHECK(path_loss_db(100.0, radio.nlos) == doctest::Approx(136.5).epsilon(1e-12));
  // shadowing enters additively in dB
  CHECK(path_loss_db(100.0, radio.los, 2.5) == doctest::Approx(112.3).epsilon(1e-12));
  CHECK_THROWS_AS(path_loss_db(0.0, radio.los), std::invalid_argument);
  CHECK_THROWS_AS(path_loss_db(-3.0, radio.los), std::invalid_argument);
}

TEST_CASE("received power is the link budget minus path loss") {
  RadioConfig radio;
  CHECK(received_power_dbm(radio, 109.8) == doctest::Approx(-79.8).epsilon(1e-12));
  radio.tx_gain_dbi = 3.0;
  radio.rx_gain_dbi = 2.0;
  CHECK(received_power_dbm(radio, 109.8) == doctest::Approx(-74.8).epsilon(1e-12));
}

TEST_CASE("dbm and milliwatt conversions round-trip") {
  CHECK(dbm_to_mw(0.0) == doctest::Approx(1.0));
  CHECK(dbm_to_mw(30.0) == doctest::Approx(1000.0));
  CHECK(mw_to_dbm(dbm_to_mw(-79.8)) == doctest::Approx(-79.8).epsilon(1e-12));
}

TEST_CASE("throughput pinned at simple SNR points") {
  const RadioConfig radio; // B = 100 MHz, noise floor -94 dBm
  // received power at the floor: SNR 1 -> one bit per hertz
  CHECK(throughput_bps(radio, -94.0, 1.0) == doctest::Approx(1e8).epsilon(1e-12));
  // fading gain of 3 at the floor: SNR 3 -> two bits per hertz
  CHECK(throughput_bps(radio, -94.0, 3.0) == doctest::Approx(2e8).epsilon(1e-12));
  // 100 m line of sight at defaults: SNR 14.2 dB
  CHECK(throughput_bps(radio, -79.8, 1.0) == doctest::Approx(4.77098e8).epsilon(1e-4));
}

TEST_CASE("deterministic rate falls with distance and prefers line of sight") {
  const RadioConfig radio;
  const Point3 ue{0, 0, 0};
  double prev = link_rate_det({0, 0, 10}, ue, true, radio);
  for (double h = 20; h <= 500; h += 20) {
    const double cur = link_rate_det({0, 0, h}, ue, true, radio);
    CHECK(cur < prev);
    prev = cur;
  }
  const Point3 uav{30, 40, 50};
  CHECK(link_rate_det(uav, ue, true, radio) > link_rate_det(uav, ue, false, radio));
}

TEST_CASE("fading: unity when deterministic, unit mean when sampled, stream-stable") {
  const RadioConfig radio;
  SplitMix64 rng = substream(7, stream_tag("fading"), 0, 0);
  CHECK(sample_fading_power(radio.los, FadingMode::Deterministic, rng) == 1.0);
  CHECK(sample_fading_power(radio.nlos, FadingMode::Deterministic, rng) == 1.0);

  for (const LinkParams& p : {radio.los, radio.nlos}) {
    SplitMix64 r = substream(7, stream_tag("fading"), 1, 2);
    double sum = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double g = sample_fading_power(p, FadingMode::Stochastic, r);
      CHECK(g >= 0.0);
      sum += g;
    }
    CHECK(sum / n == doctest::Approx(1.0).epsilon(0.02));
  }

  SplitMix64 a = substream(99, stream_tag("fading"), 3, 4);
  SplitMix64 b = substream(99, stream_tag("fading"), 3, 4);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_fading_power(radio.los, FadingMode::Stochastic, a) ==
          sample_fading_power(radio.los, FadingMode::Stochastic, b));
}

TEST_CASE("sampled link rate reproduces under an identical substream") {
  const RadioConfig radio;
  const Point3 uav{10, 20, 60}, ue{14, 25, 0};
  SplitMix64 a = substream(5, stream_tag("fading"), 8, 1);
  SplitMix64 b = substream(5, stream_tag("fading"), 8, 1);
  for (int i = 0; i < 50; ++i)
    CHECK(link_rate(uav, ue, i % 2 == 0, radio, FadingMode::Stochastic, a) ==
          link_rate(uav, ue, i % 2 == 0, radio, FadingMode::Stochastic, b));
}

TEST_CASE("maximum line-of-sight range inverts the threshold rate") {
  const RadioConfig radio;
  const double r = max_los_range_m(radio, 10e6);
  CHECK(r == doctest::Approx(1914.0).epsilon(1e-3));
  // the deterministic rate at that slant distance sits exactly on the threshold
  const double at = link_rate_det({0, 0, r}, {0, 0, 0}, true, radio);
  CHECK(at == doctest::Approx(10e6).epsilon(1e-9));
  CHECK(link_rate_det({0, 0, r * 1.01}, {0, 0, 0}, true, radio) < 10e6);
  CHECK(link_rate_det({0, 0, r * 0.99}, {0, 0, 0}, true, radio) > 10e6);
}
