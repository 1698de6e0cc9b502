#pragma once

#include <vector>

#include "slitwave/diffraction.hpp"

namespace slitwave {

/// Momentum-space amplitude c'(kx) on a transverse-wavenumber grid [sqrt(m)].
/// |c(px)|^2 = |c'(kx)|^2 / hbar is a presentation-layer rescaling only.
struct SpectralField {
  Grid1D kgrid;
  std::vector<Complex> values;
  Snapshot source_snapshot;

  std::vector<double> density() const { return modulus_squared(values); }
};

/// Throws SamplingError unless kgrid is fine enough for the x window
/// (dk <= 2 pi / L) and stays inside the x Nyquist band (|kx| <= pi / dx).
void check_nyquist(const Grid1D& xgrid, const Grid1D& kgrid);

/// (1/sqrt(2 pi)) * trapezoid-weighted sum of psi(x) e^{-i kx x} at one kx.
Complex spectrum_at(const WaveField& field, double kx);

SpectralField momentum_spectrum(const WaveField& field, const Grid1D& kgrid);

/// Relative L2 distance between |a|^2 and |b|^2 (b is the reference).
double time_independence_deviation(const SpectralField& a, const SpectralField& b);

/// Closed-form transform of the one-slit aperture function. Accepts the
/// lower slit, or the upper slit (mirror image, F(-kx)).
Complex fraunhofer_single(double kx, const ApertureSpec& spec);

/// Closed-form transform of the two-slit aperture function (real valued).
Complex fraunhofer_double(double kx, const ApertureSpec& spec);

/// Dispatches on spec.kind().
Complex fraunhofer(double kx, const ApertureSpec& spec);

/// Grid fine enough to transform the bare aperture function: spacing
/// delta / samples_per_slit, with slit edges between nodes rather than on them
/// (exactly so when gap + delta is a multiple of the spacing).
Grid1D aperture_resolving_grid(const ApertureSpec& spec, std::size_t samples_per_slit = 2000);

/// Relative L2 distance between |c'(kx)|^2 and |F(kx)|^2 on the spectrum's grid.
double spectrum_vs_fraunhofer(const SpectralField& spectrum, const ApertureSpec& spec);

}  // namespace slitwave
