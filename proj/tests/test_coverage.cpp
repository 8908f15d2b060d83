#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "uas/coverage.hpp"

using namespace uas;

// Frozen from tests/oracles/coverage_oracle.py.
namespace oracle {
constexpr double kUrbanDl = 290.672277763114;
constexpr double kUrbanUl = 9191.86450400554;
constexpr double kUrbanHover = 372.0435496334;
constexpr double kUrbanPa = 4.50672712456918e-13;
constexpr double kUrbanEdgePower = 0.00163825058182108;
constexpr double kUrbanCenterPower = 0.0005521353852376;
constexpr double kSuburbanDl = 387.956727124569;
constexpr double kSuburbanUl = 12268.2689129807;
constexpr double kSuburbanHover = 1065.90234750027;
constexpr double kSuburbanPa = 8.16677622425628e-13;
}  // namespace oracle

TEST_CASE("coverage radii under the reference link budget") {
  const auto cfg = RadioConfig::reference();
  const auto urb = EnvironmentProfile::urban();
  const auto sub = EnvironmentProfile::suburban();

  CHECK(downlink_radius(cfg, urb) == doctest::Approx(oracle::kUrbanDl).epsilon(1e-11));
  CHECK(uplink_radius(cfg, urb) == doctest::Approx(oracle::kUrbanUl).epsilon(1e-11));
  CHECK(downlink_radius(cfg, sub) == doctest::Approx(oracle::kSuburbanDl).epsilon(1e-11));
  CHECK(uplink_radius(cfg, sub) == doctest::Approx(oracle::kSuburbanUl).epsilon(1e-11));

  CHECK(uplink_radius(cfg, urb) / downlink_radius(cfg, urb) ==
        doctest::Approx(std::sqrt(1000.0)).epsilon(1e-13));
}

TEST_CASE("radius follows the square-root power law") {
  auto cfg = RadioConfig::reference();
  const auto urb = EnvironmentProfile::urban();
  double base = downlink_radius(cfg, urb);
  cfg.p_downlink *= 4.0;
  CHECK(downlink_radius(cfg, urb) / base == doctest::Approx(2.0).epsilon(1e-14));

  cfg = RadioConfig::reference();
  cfg.p_max_gn = cfg.p_downlink;
  CHECK(uplink_radius(cfg, urb) == doctest::Approx(downlink_radius(cfg, urb)).epsilon(1e-15));
}

TEST_CASE("coverage spec") {
  const auto cfg = RadioConfig::reference();
  auto urb = coverage_spec(cfg, EnvironmentProfile::urban());
  CHECK(urb.radius == urb.radius_dl);
  CHECK(urb.radius == std::min(urb.radius_dl, urb.radius_ul));
  CHECK(urb.radius == doctest::Approx(oracle::kUrbanDl).epsilon(1e-11));
  CHECK(urb.hover_height == doctest::Approx(oracle::kUrbanHover).epsilon(1e-11));
  CHECK(urb.hover_height == urb.radius * std::tan(EnvironmentProfile::urban().half_beamwidth.rad()));
  CHECK(urb.target_arrival_power == doctest::Approx(oracle::kUrbanPa).epsilon(1e-11));

  auto sub = coverage_spec(cfg, EnvironmentProfile::suburban());
  CHECK(sub.radius == doctest::Approx(oracle::kSuburbanDl).epsilon(1e-11));
  CHECK(sub.hover_height == doctest::Approx(oracle::kSuburbanHover).epsilon(1e-11));
  CHECK(sub.target_arrival_power == doctest::Approx(oracle::kSuburbanPa).epsilon(1e-11));

  CHECK(urb.radius < sub.radius);
}

TEST_CASE("downlink radius round-trips through its inverse") {
  auto cfg = RadioConfig::reference();
  for (const auto& env : {EnvironmentProfile::urban(), EnvironmentProfile::suburban()}) {
    for (double gamma : {1.0, 10.0, 100.0, 3162.0}) {
      cfg.gamma_dl = gamma;
      double r = downlink_radius(cfg, env);
      CHECK(downlink_threshold_for_radius(r, cfg, env) == doctest::Approx(gamma).epsilon(1e-13));
    }
  }
}

TEST_CASE("coverage radius monotonicity") {
  const auto env = EnvironmentProfile::urban();
  auto cfg = RadioConfig::reference();
  double prev = 1e300;
  for (double g = 1.0; g <= 1e4; g *= 1.7) {
    cfg.gamma_dl = g;
    cfg.gamma_ul = g;
    double r = coverage_spec(cfg, env).radius;
    CHECK(r <= prev);
    prev = r;
  }
  cfg = RadioConfig::reference();
  prev = 0.0;
  for (double p = 1e-4; p <= 0.5; p *= 2.0) {
    cfg.p_downlink = p;
    auto spec = coverage_spec(cfg, env);
    REQUIRE(spec.radius == spec.radius_dl);
    CHECK(spec.radius > prev);
    prev = spec.radius;
  }
}

TEST_CASE("GN uplink transmit power") {
  const auto cfg = RadioConfig::reference();
  const auto env = EnvironmentProfile::urban();
  auto spec = coverage_spec(cfg, env);

  CHECK(gn_transmit_power(spec.radius, spec, env, cfg) ==
        doctest::Approx(oracle::kUrbanEdgePower).epsilon(1e-10));
  CHECK(gn_transmit_power(0.0, spec, env, cfg) ==
        doctest::Approx(oracle::kUrbanCenterPower).epsilon(1e-10));
  CHECK(gn_transmit_power(0.0, spec, env, cfg) < gn_transmit_power(spec.radius, spec, env, cfg));
  CHECK(gn_transmit_power(spec.radius, spec, env, cfg) < cfg.p_max_gn);

  CHECK_THROWS_AS(gn_transmit_power(spec.radius * 1.01, spec, env, cfg), std::out_of_range);
}

TEST_CASE("uplink-limited edge GN power") {
  auto cfg = RadioConfig::reference();
  cfg.p_max_gn = 1e-4;  // below P: uplink becomes the binding constraint

  // The radius formula carries sin^2(theta) while the hover geometry gives a
  // slant range of R / cos(theta), so the edge power is P_max * tan^2(theta).
  for (const auto& env : {EnvironmentProfile::urban(), EnvironmentProfile::suburban()}) {
    auto spec = coverage_spec(cfg, env);
    REQUIRE(spec.radius == spec.radius_ul);
    double t = std::tan(env.half_beamwidth.rad());
    CHECK(gn_transmit_power(spec.radius, spec, env, cfg) ==
          doctest::Approx(cfg.p_max_gn * t * t).epsilon(1e-12));
  }

  // At a 45 degree half-beamwidth the two coincide: the edge GN sits exactly
  // on the P_max budget and every interior GN stays below it.
  EnvironmentProfile env45 = EnvironmentProfile::urban();
  env45.half_beamwidth = Angle::degrees(45.0);
  auto spec = coverage_spec(cfg, env45);
  REQUIRE(spec.radius == spec.radius_ul);
  CHECK(gn_transmit_power(spec.radius, spec, env45, cfg) ==
        doctest::Approx(cfg.p_max_gn).epsilon(1e-12));
  for (double f = 0.0; f <= 1.0; f += 0.05) {
    CHECK(gn_transmit_power(f * spec.radius, spec, env45, cfg) <= cfg.p_max_gn * (1.0 + 1e-9));
  }
}

TEST_CASE("downlink-limited GNs stay within the uplink budget") {
  const auto cfg = RadioConfig::reference();
  for (const auto& env : {EnvironmentProfile::urban(), EnvironmentProfile::suburban()}) {
    auto spec = coverage_spec(cfg, env);
    for (double f = 0.0; f <= 1.0; f += 0.01) {
      CHECK(gn_transmit_power(f * spec.radius, spec, env, cfg) <= cfg.p_max_gn * (1.0 + 1e-9));
    }
  }
}
