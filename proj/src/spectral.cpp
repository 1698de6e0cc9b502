#include "slitwave/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slitwave/errors.hpp"
#include "slitwave/parallel.hpp"

namespace slitwave {
namespace {

constexpr double kSeriesThreshold = 1e-4;  // |kx| delta below which the series is used
constexpr std::size_t kReseedInterval = 64;

// Sum_i w_i psi_i e^{-i kx x_i}. The twiddle is advanced by rotation and
// re-seeded from sin/cos every kReseedInterval samples.
Complex weighted_transform(const WaveField& field, double kx) {
  const Grid1D& grid = field.grid;
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const Complex step = std::polar(1.0, -kx * h);
  Complex acc{};
  Complex twiddle{};
  for (std::size_t i = 0; i < n; ++i) {
    if (i % kReseedInterval == 0) twiddle = std::polar(1.0, -kx * grid[i]);
    const double w = (i == 0 || i + 1 == n) ? 0.5 * h : h;
    acc += w * field.values[i] * twiddle;
    twiddle *= step;
  }
  return acc / std::sqrt(2.0 * std::numbers::pi);
}

// sin(kx delta / 2) / kx, second-order series near the removable singularity.
double half_sinc(double kx, double delta) {
  const double u = kx * delta;
  if (std::abs(u) < kSeriesThreshold) return 0.5 * delta * (1.0 - u * u / 24.0);
  return std::sin(0.5 * u) / kx;
}

}  // namespace

void check_nyquist(const Grid1D& xgrid, const Grid1D& kgrid) {
  const double window = xgrid.hi() - xgrid.lo();
  const double max_dk = 2.0 * std::numbers::pi / window;
  if (kgrid.spacing() > max_dk * (1 + 1e-12))
    throw SamplingError("k spacing " + std::to_string(kgrid.spacing()) + " exceeds 2 pi / window = " +
                        std::to_string(max_dk));
  const double band = std::numbers::pi / xgrid.spacing();
  if (std::max(std::abs(kgrid.lo()), std::abs(kgrid.hi())) > band * (1 + 1e-12))
    throw SamplingError("k range exceeds the x-sampling Nyquist band pi / dx = " + std::to_string(band));
}

Complex spectrum_at(const WaveField& field, double kx) { return weighted_transform(field, kx); }

SpectralField momentum_spectrum(const WaveField& field, const Grid1D& kgrid) {
  check_nyquist(field.grid, kgrid);
  SpectralField out;
  out.kgrid = kgrid;
  out.source_snapshot = field.snapshot;
  out.values.resize(kgrid.size());
  parallel_for(kgrid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j) out.values[j] = weighted_transform(field, kgrid[j]);
  });
  return out;
}

double time_independence_deviation(const SpectralField& a, const SpectralField& b) {
  if (!(a.kgrid == b.kgrid)) throw GridError("spectra live on different k grids");
  return relative_l2(a.density(), b.density());
}

Complex fraunhofer_single(double kx, const ApertureSpec& spec) {
  if (spec.kind() == ApertureKind::Double) throw DomainError("fraunhofer_single needs a one-slit aperture");
  const double delta = spec.delta();
  // i e^{ikx gap/2} (1 - e^{ikx delta}) / (kx sqrt(2 pi delta))
  //   = 2 sin(kx delta/2) e^{ikx (gap+delta)/2} / (kx sqrt(2 pi delta))
  const double sign = spec.kind() == ApertureKind::SingleUpper ? -1.0 : 1.0;
  const double magnitude = 2.0 * half_sinc(kx, delta) / std::sqrt(2.0 * std::numbers::pi * delta);
  return std::polar(1.0, sign * 0.5 * kx * spec.separation()) * magnitude;
}

Complex fraunhofer_double(double kx, const ApertureSpec& spec) {
  if (spec.kind() != ApertureKind::Double) throw DomainError("fraunhofer_double needs the two-slit aperture");
  const double delta = spec.delta();
  return 2.0 * half_sinc(kx, delta) * std::cos(0.5 * kx * spec.separation()) / std::sqrt(std::numbers::pi * delta);
}

Complex fraunhofer(double kx, const ApertureSpec& spec) {
  return spec.kind() == ApertureKind::Double ? fraunhofer_double(kx, spec) : fraunhofer_single(kx, spec);
}

Grid1D aperture_resolving_grid(const ApertureSpec& spec, std::size_t samples_per_slit) {
  if (samples_per_slit == 0) throw DomainError("samples_per_slit must be positive");
  const double h = spec.delta() / static_cast<double>(samples_per_slit);
  const double outer = 0.5 * spec.gap() + spec.delta();
  const std::size_t pad = samples_per_slit / 4 + 1;
  // Nodes at outer edge -/+ (pad + 1/2) h, so edges fall half-way between nodes.
  const double lo = -outer - (static_cast<double>(pad) + 0.5) * h;
  const auto cells = static_cast<std::size_t>(std::llround((2.0 * outer) / h)) + 2 * pad + 1;
  return make_grid(lo, lo + static_cast<double>(cells) * h, cells + 1);
}

double spectrum_vs_fraunhofer(const SpectralField& spectrum, const ApertureSpec& spec) {
  std::vector<double> oracle(spectrum.kgrid.size());
  for (std::size_t j = 0; j < oracle.size(); ++j) oracle[j] = std::norm(fraunhofer(spectrum.kgrid[j], spec));
  return relative_l2(spectrum.density(), oracle);
}

}  // namespace slitwave
