#include "slitwave/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "slitwave/errors.hpp"

namespace slitwave {

BeamParams make_beam_params(double k, double m) {
  if (!(k > 0) || !std::isfinite(k)) throw DomainError("beam wavenumber must be positive, got " + std::to_string(k));
  if (!(m > 0) || !std::isfinite(m)) throw DomainError("atom mass must be positive");
  BeamParams beam;
  beam.k = k;
  beam.m = m;
  beam.hbar = kHbar;
  beam.v = kHbar * k / m;
  beam.lambda = 2.0 * std::numbers::pi / k;
  beam.omega = kHbar * k * k / (2.0 * m);
  return beam;
}

ApertureSpec ApertureSpec::make(ApertureKind kind, double delta, double gap) {
  if (!(delta > 0) || !std::isfinite(delta)) throw DomainError("slit width delta must be positive");
  if (!(gap > 0) || !std::isfinite(gap)) throw DomainError("slit gap must be positive");
  return ApertureSpec(kind, delta, gap);
}

std::vector<Interval> ApertureSpec::open_slits() const {
  switch (kind_) {
    case ApertureKind::SingleLower: return {lower_slit()};
    case ApertureKind::SingleUpper: return {upper_slit()};
    case ApertureKind::Double: return {lower_slit(), upper_slit()};
  }
  return {};
}

double ApertureSpec::open_amplitude() const {
  const double open_width = kind_ == ApertureKind::Double ? 2.0 * delta_ : delta_;
  return 1.0 / std::sqrt(open_width);
}

double aperture_amplitude(const ApertureSpec& spec, double xprime) {
  for (const Interval& slit : spec.open_slits())
    if (slit.contains(xprime)) return spec.open_amplitude();
  return 0.0;
}

Grid1D make_grid(double lo, double hi, std::size_t n) {
  if (n < 2) throw DomainError("grid needs at least 2 samples");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) throw DomainError("grid bounds must satisfy hi > lo");
  Grid1D g;
  g.lo_ = lo;
  g.hi_ = hi;
  g.n_ = n;
  g.spacing_ = (hi - lo) / static_cast<double>(n - 1);
  return g;
}

std::vector<double> Grid1D::samples() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
  return out;
}

std::size_t Grid1D::nearest_index(double x) const {
  const double pos = std::round((x - lo_) / spacing_);
  if (pos <= 0) return 0;
  return std::min(static_cast<std::size_t>(pos), n_ - 1);
}

Grid1D strided_grid(const Grid1D& grid, std::size_t stride) {
  if (stride == 0) throw DomainError("stride must be positive");
  const std::size_t rows = (grid.size() - 1) / stride + 1;
  if (rows < 2) throw DomainError("stride leaves fewer than 2 samples");
  const std::size_t last = (rows - 1) * stride;
  return make_grid(grid.lo(), grid[last], rows);
}

Snapshot snapshot_at_distance(const BeamParams& beam, double y) {
  if (!(y >= 0) || !std::isfinite(y)) throw DomainError("snapshot distance must be >= 0");
  return {y, y / beam.v};
}

Snapshot snapshot_at_time(const BeamParams& beam, double t) {
  if (!(t >= 0) || !std::isfinite(t)) throw DomainError("snapshot time must be >= 0");
  return {beam.v * t, t};
}

}  // namespace slitwave
