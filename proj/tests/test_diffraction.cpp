#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "oracles.hpp"
#include "slitwave/diffraction.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/parallel.hpp"

using namespace slitwave;

namespace {
const BeamParams kBeam = make_beam_params(4 * std::numbers::pi * 1e10, kHeliumMass);
const ApertureSpec kDouble = ApertureSpec::make(ApertureKind::Double, 1e-6, 7e-6);
const ApertureSpec kLower = ApertureSpec::make(ApertureKind::SingleLower, 1e-6, 7e-6);
const ApertureSpec kUpper = ApertureSpec::make(ApertureKind::SingleUpper, 1e-6, 7e-6);
const Grid1D kGrid = make_grid(-64e-6, 64e-6, 2048);

// Largest k (s_max - s_min) over a slit, scanning field points and slit points densely.
double scanned_span(const ApertureSpec& spec, double y, double extent) {
  double best = 0;
  for (const auto& slit : spec.open_slits())
    for (int i = 0; i <= 400; ++i) {
      const double x = -extent + 2 * extent * i / 400;
      double lo = INFINITY, hi = 0;
      for (int j = 0; j <= 400; ++j) {
        const long double xp = slit.lo + slit.width() * j / 400;
        const long double s = std::sqrt((long double)y * y + (xp - x) * (xp - x));
        lo = std::min(lo, (double)s);
        hi = std::max(hi, (double)s);
      }
      best = std::max(best, kBeam.k * (hi - lo));
    }
  return best;
}

std::vector<double> sample(const Grid1D& g) { return g.samples(); }
}  // namespace

TEST_CASE("node count: oversampling rule against a scanned phase span") {
  const double span = scanned_span(kDouble, 0.12, 64e-6);
  CHECK(span == doctest::Approx(72).epsilon(0.05));
  const int n = quadrature_node_count(kBeam, 0.12, kDouble, 64e-6);
  CHECK(n >= 16 * span / (2 * std::numbers::pi) * (1 - 1e-3));
  CHECK(n <= 16 * span / (2 * std::numbers::pi) + 2);
}

TEST_CASE("node count: floor and monotonicity") {
  CHECK(quadrature_node_count(kBeam, 100.0, kDouble, 1e-6) == 64);
  const int a = quadrature_node_count(kBeam, 0.12, kDouble, 64e-6);
  const int b = quadrature_node_count(kBeam, 0.12, kDouble, 128e-6);
  CHECK(b > a);
  CHECK(b <= 2 * a + 2);
  CHECK_THROWS_AS(quadrature_node_count(kBeam, 0, kDouble, 64e-6), GeometryError);
}

TEST_CASE("quadrature node geometry") {
  const QuadratureNode q = make_quadrature_node(-4e-6, 1e-8, 10e-6, 0.12);
  CHECK(q.s >= 0.12);
  CHECK(q.cos_chi > 0);
  CHECK(q.cos_chi <= 1);
  CHECK(q.s == doctest::Approx(std::hypot(0.12, 14e-6)));
}

TEST_CASE("field: rejects y <= 0") {
  CHECK_THROWS_AS(fresnel_kirchhoff_field(kDouble, kBeam, {0, 0}, kGrid), GeometryError);
  CHECK_THROWS_AS(transverse_wavefunction(kDouble, kBeam, -1e-6, kGrid), DomainError);
}

TEST_CASE("field: brute-force Simpson oracle, far and near field") {
  struct Case {
    double y;
    Grid1D grid;
  };
  for (const Case& c : {Case{0.12, make_grid(-64e-6, 64e-6, 1024)}, Case{0.24, make_grid(-64e-6, 64e-6, 1024)},
                        Case{0.01, make_grid(-20e-6, 20e-6, 256)}}) {
    CAPTURE(c.y);
    const WaveField fast = fresnel_kirchhoff_field(kDouble, kBeam, {c.y, c.y / kBeam.v}, c.grid);
    const int nodes = quadrature_node_count(kBeam, c.y, kDouble, c.grid.hi());
    const auto slow = oracle::brute_force_field(kDouble, kBeam.k, c.y, sample(c.grid), 32 * nodes);
    CHECK(oracle::rel_l2(oracle::norm2(fast.values), oracle::norm2(slow)) < 1e-6);
    CHECK(oracle::rel_l2(fast.values, slow) < 1e-6);
  }
}

TEST_CASE("field: self-convergence under node doubling") {
  QuadratureOptions fine;
  fine.refinement = 2;
  for (double y : {0.001, 0.12, 0.24}) {
    CAPTURE(y);
    const Snapshot s{y, y / kBeam.v};
    const auto a = normalize_field(fresnel_kirchhoff_field(kDouble, kBeam, s, kGrid)).density();
    const auto b = normalize_field(fresnel_kirchhoff_field(kDouble, kBeam, s, kGrid, fine)).density();
    CHECK(oracle::rel_l2(a, b) < 1e-6);
  }
}

TEST_CASE("field: double slit intensity is even") {
  for (double y : {0.003, 0.12}) {
    const auto d = fresnel_kirchhoff_field(kDouble, kBeam, {y, y / kBeam.v}, kGrid).density();
    const double peak = *std::max_element(d.begin(), d.end());
    double worst = 0;
    for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, std::abs(d[i] - d[d.size() - 1 - i]));
    CHECK(worst / peak < 1e-10);
  }
}

TEST_CASE("field: upper slit is the mirror image of the lower slit") {
  const Snapshot s{0.03, 0.03 / kBeam.v};
  const auto lower = fresnel_kirchhoff_field(kLower, kBeam, s, kGrid);
  const auto upper = fresnel_kirchhoff_field(kUpper, kBeam, s, kGrid);
  double worst = 0, peak = 0;
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    worst = std::max(worst, std::abs(lower.values[i] - upper.values[kGrid.size() - 1 - i]));
    peak = std::max(peak, std::abs(lower.values[i]));
  }
  CHECK(worst / peak < 1e-12);
}

TEST_CASE("field: superposition of the two single slits") {
  const Snapshot s{0.12, 0.12 / kBeam.v};
  const auto both = fresnel_kirchhoff_field(kDouble, kBeam, s, kGrid);
  const auto lower = fresnel_kirchhoff_field(kLower, kBeam, s, kGrid);
  const auto upper = fresnel_kirchhoff_field(kUpper, kBeam, s, kGrid);
  std::vector<oracle::Complex> sum;
  for (std::size_t i = 0; i < kGrid.size(); ++i) sum.push_back((lower.values[i] + upper.values[i]) / std::sqrt(2.0));
  CHECK(oracle::rel_l2(both.values, sum) < 1e-12);
}

TEST_CASE("field: single-slit maximum stays behind the slit at moderate y") {
  const Grid1D g = make_grid(-20e-6, 20e-6, 4001);
  for (double y : {0.001, 0.003, 0.01}) {
    CAPTURE(y);
    const auto d = fresnel_kirchhoff_field(kLower, kBeam, {y, y / kBeam.v}, g).density();
    const double x = g[static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin())];
    CHECK(kLower.lower_slit().contains(x));
  }
}

TEST_CASE("field: far-field fringe spacing lambda y / (Delta + delta)") {
  const Grid1D g = make_grid(-64e-6, 64e-6, 8192);
  const auto d = wavefunction_at_distance(kDouble, kBeam, 0.24, g).density();
  std::vector<double> peaks;
  for (std::size_t i = 1; i + 1 < d.size(); ++i)
    if (std::abs(g[i]) <= 6e-6 && d[i] > d[i - 1] && d[i] >= d[i + 1]) {
      const double shift = 0.5 * (d[i - 1] - d[i + 1]) / (d[i - 1] - 2 * d[i] + d[i + 1]);
      peaks.push_back(g[i] + shift * g.spacing());
    }
  REQUIRE(peaks.size() >= 5);
  const double spacing = (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  CHECK(spacing == doctest::Approx(kBeam.lambda * 0.24 / 8e-6).epsilon(0.02));
}

TEST_CASE("normalization: window probability, projective invariance, norm_raw") {
  const Snapshot s{0.12, 0.12 / kBeam.v};
  WaveField raw = fresnel_kirchhoff_field(kLower, kBeam, s, kGrid);
  const WaveField n1 = normalize_field(raw);
  CHECK(std::abs(n1.window_probability() - 1) < 1e-10);
  CHECK(n1.norm_raw == doctest::Approx(raw.norm_raw).epsilon(1e-14));
  for (auto& v : raw.values) v *= 7.0;
  const WaveField n7 = normalize_field(raw);
  CHECK(oracle::rel_l2(n7.values, n1.values) < 1e-15);

  const WaveField far = wavefunction_at_distance(kLower, kBeam, 0.24, kGrid);
  CHECK(std::abs(far.window_probability() - 1) < 1e-10);
  CHECK(far.norm_raw < n1.norm_raw);

  WaveField zero = raw;
  for (auto& v : zero.values) v = 0;
  CHECK_THROWS_AS(normalize_field(zero), NormalizationError);
}

TEST_CASE("transverse wavefunction: time addressing") {
  const WaveField byt = transverse_wavefunction(kDouble, kBeam, 6.01e-5, kGrid);
  CHECK(byt.snapshot.y == doctest::Approx(6.01e-5 * kBeam.v));
  CHECK(byt.snapshot.y == doctest::Approx(0.12).epsilon(2e-3));
  CHECK(transverse_wavefunction(kDouble, kBeam, 12.02e-5, kGrid).snapshot.y == doctest::Approx(0.24).epsilon(2e-3));
  const WaveField byy = wavefunction_at_distance(kDouble, kBeam, byt.snapshot.y, kGrid);
  CHECK(oracle::rel_l2(byy.density(), byt.density()) < 1e-12);
}

TEST_CASE("transverse wavefunction: t = 0 is the aperture function") {
  const WaveField f = transverse_wavefunction(kDouble, kBeam, 0, kGrid);
  CHECK(f.snapshot.y == 0);
  for (std::size_t i = 0; i < kGrid.size(); ++i) CHECK(f.values[i].real() == aperture_amplitude(kDouble, kGrid[i]));
  const double height = 1 / std::sqrt(2e-6);
  CHECK(f.values[kGrid.nearest_index(-4e-6)].real() == doctest::Approx(height));
  CHECK(f.values[kGrid.nearest_index(4e-6)].real() == doctest::Approx(height));
}

TEST_CASE("parallel: results do not depend on the worker count") {
  const Snapshot s{0.12, 0.12 / kBeam.v};
  setenv("SLITWAVE_THREADS", "1", 1);
  CHECK(worker_count() == 1);
  const auto serial = fresnel_kirchhoff_field(kDouble, kBeam, s, kGrid).values;
  setenv("SLITWAVE_THREADS", "3", 1);
  CHECK(worker_count() == 3);
  const auto threaded = fresnel_kirchhoff_field(kDouble, kBeam, s, kGrid).values;
  CHECK(serial == threaded);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t b, std::size_t) {
                    if (b > 0) throw std::runtime_error("chunk failed");
                  }),
                  std::runtime_error);
  unsetenv("SLITWAVE_THREADS");
}
