#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slitwave/core_model.hpp"
#include "slitwave/errors.hpp"

using namespace slitwave;

namespace {
constexpr double kHeliumK = 4 * std::numbers::pi * 1e10;
const ApertureSpec kDouble = ApertureSpec::make(ApertureKind::Double, 1e-6, 7e-6);
const ApertureSpec kLower = ApertureSpec::make(ApertureKind::SingleLower, 1e-6, 7e-6);
const ApertureSpec kUpper = ApertureSpec::make(ApertureKind::SingleUpper, 1e-6, 7e-6);
}  // namespace

TEST_CASE("beam: derived quantities") {
  const BeamParams b = make_beam_params(kHeliumK, kHeliumMass);
  CHECK(b.v == doctest::Approx(kHbar * kHeliumK / kHeliumMass).epsilon(1e-15));
  CHECK(b.lambda == doctest::Approx(5e-11).epsilon(1e-14));
  CHECK(kHbar * b.omega == doctest::Approx(std::pow(kHbar * kHeliumK, 2) / (2 * kHeliumMass)).epsilon(1e-14));
  CHECK(std::abs(b.v * b.m / b.hbar - kHeliumK) / kHeliumK < 1e-14);
}

TEST_CASE("beam: speed is close to the quoted helium value") {
  // quoted 1995.58 m/s; CODATA hbar gives 1993.9, recorded as a known discrepancy
  const BeamParams b = make_beam_params(kHeliumK, kHeliumMass);
  CHECK(b.v == doctest::Approx(1995.58).epsilon(1e-3));
}

TEST_CASE("beam: rejects non-positive input") {
  CHECK_THROWS_AS(make_beam_params(0, kHeliumMass), DomainError);
  CHECK_THROWS_AS(make_beam_params(-1, kHeliumMass), DomainError);
  CHECK_THROWS_AS(make_beam_params(kHeliumK, 0), DomainError);
  CHECK_THROWS_AS(make_beam_params(NAN, kHeliumMass), DomainError);
}

TEST_CASE("aperture: geometry") {
  CHECK(kDouble.separation() == doctest::Approx(8e-6));
  CHECK(kDouble.lower_slit().center() == doctest::Approx(-4e-6));
  CHECK(kDouble.upper_slit().center() == doctest::Approx(4e-6));
  CHECK(kDouble.open_slits().size() == 2);
  CHECK(kLower.open_slits().size() == 1);
  CHECK(kUpper.open_slits().front().lo == doctest::Approx(3.5e-6));
  CHECK_THROWS_AS(ApertureSpec::make(ApertureKind::Double, 0, 7e-6), DomainError);
  CHECK_THROWS_AS(ApertureSpec::make(ApertureKind::Double, 1e-6, -1), DomainError);
}

TEST_CASE("aperture: amplitude values") {
  CHECK(aperture_amplitude(kDouble, -4e-6) == doctest::Approx(707.10678).epsilon(1e-8));
  CHECK(aperture_amplitude(kDouble, 0) == 0);
  CHECK(aperture_amplitude(kLower, -4e-6) == doctest::Approx(1000.0));
  CHECK(aperture_amplitude(kLower, 4e-6) == 0);
  CHECK(aperture_amplitude(kUpper, 4e-6) == doctest::Approx(1000.0));
  // closed intervals
  CHECK(aperture_amplitude(kLower, kLower.lower_slit().lo) > 0);
  CHECK(aperture_amplitude(kLower, kLower.lower_slit().hi) > 0);
  CHECK(aperture_amplitude(kLower, std::nextafter(kLower.lower_slit().hi, 1.0)) == 0);
}

TEST_CASE("aperture: unit norm") {
  for (const auto& spec : {kLower, kUpper, kDouble}) {
    double exact = 0;
    for (const auto& s : spec.open_slits()) exact += s.width() * std::pow(aperture_amplitude(spec, s.center()), 2);
    CHECK(std::abs(exact - 1) < 1e-12);

    const int n = 12000;  // cell edges fall on the slit edges
    const double lo = -6e-6, hi = 6e-6, h = (hi - lo) / n;
    double mid = 0;
    for (int i = 0; i < n; ++i) mid += std::pow(aperture_amplitude(spec, lo + (i + 0.5) * h), 2) * h;
    CHECK(mid == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("aperture: double slit is even") {
  for (int i = 0; i <= 2000; ++i) {
    const double x = -6e-6 + i * 6e-9;
    CHECK(aperture_amplitude(kDouble, x) == aperture_amplitude(kDouble, -x));
  }
}

TEST_CASE("grid: samples and spacing") {
  const Grid1D g = make_grid(-64e-6, 64e-6, 3);
  CHECK(g[0] == -64e-6);
  CHECK(g[1] == 0);
  CHECK(g[2] == 64e-6);
  CHECK(make_grid(0, 1, 2).spacing() == 1);
  const Grid1D k = make_grid(-2e7, 2e7, 4097);
  CHECK(k.spacing() == doctest::Approx(9765.625));
  CHECK(k[4096] == 2e7);
  CHECK(k[2048] == 0);
  CHECK(k.samples().size() == 4097);
  CHECK(k.nearest_index(3.9e5) == 2048 + 40);
  CHECK(k.nearest_index(-1e9) == 0);
  CHECK(k.nearest_index(1e9) == 4096);
}

TEST_CASE("grid: strided") {
  const Grid1D g = make_grid(-1, 1, 9);
  const Grid1D s = strided_grid(g, 4);
  CHECK(s.size() == 3);
  CHECK(s[0] == -1);
  CHECK(s[2] == 1);
  const Grid1D t = strided_grid(make_grid(0, 10, 11), 3);
  CHECK(t.size() == 4);
  CHECK(t[3] == doctest::Approx(9));
  CHECK_THROWS_AS(strided_grid(g, 0), DomainError);
  CHECK_THROWS_AS(strided_grid(g, 9), DomainError);
}

TEST_CASE("grid: invalid") {
  CHECK_THROWS_AS(make_grid(0, 1, 1), DomainError);
  CHECK_THROWS_AS(make_grid(1, 1, 5), DomainError);
  CHECK_THROWS_AS(make_grid(2, 1, 5), DomainError);
  CHECK_THROWS_AS(make_grid(0, INFINITY, 5), DomainError);
}

TEST_CASE("snapshot: distance and time agree") {
  const BeamParams b = make_beam_params(kHeliumK, kHeliumMass);
  const Snapshot s = snapshot_at_distance(b, 0.12);
  CHECK(std::abs(s.t * b.v - s.y) / s.y < 1e-15);
  const Snapshot r = snapshot_at_time(b, s.t);
  CHECK(std::abs(r.y - 0.12) / 0.12 < 1e-15);
  CHECK(snapshot_at_time(b, 0).y == 0);
  CHECK_THROWS_AS(snapshot_at_distance(b, -1e-3), DomainError);
  CHECK_THROWS_AS(snapshot_at_time(b, -1e-6), DomainError);
}
