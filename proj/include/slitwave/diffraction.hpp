#pragma once

#include <vector>

#include "slitwave/core_model.hpp"
#include "slitwave/numerics.hpp"

namespace slitwave {

/// Transverse wavefunction samples at one snapshot.
struct WaveField {
  Grid1D grid;
  std::vector<Complex> values;  ///< [1/sqrt(m)] once normalized
  Snapshot snapshot;
  double norm_raw = 0;  ///< L2 norm over the window before the last normalization

  std::vector<double> density() const { return modulus_squared(values); }
  /// Trapezoid integral of |values|^2 over the window.
  double window_probability() const;
};

/// One source-plane node of the diffraction integral as seen from a field point.
struct QuadratureNode {
  double xprime = 0;
  double weight = 0;   ///< [m]
  double s = 0;        ///< sqrt(y^2 + (x' - x)^2) [m]
  double cos_chi = 0;  ///< y / s
};

QuadratureNode make_quadrature_node(double xprime, double weight, double x, double y);

struct QuadratureOptions {
  double oversample = 16;      ///< nodes per 2 pi of kernel phase across a slit
  int min_nodes = 64;          ///< per slit
  int panel_order = 16;        ///< Gauss-Legendre points per panel (8, 16 or 32)
  double refinement = 1;       ///< multiplies the node count; used for convergence studies
};

/// Gauss-Legendre nodes needed per slit so that the kernel phase e^{ik(s - y)}
/// is sampled at least `oversample` times per cycle for every |x| <= x_extent.
/// Returns the largest per-slit count.
int quadrature_node_count(const BeamParams& beam, double y, const ApertureSpec& spec, double x_extent,
                          const QuadratureOptions& options = {});

/// Unnormalized Fresnel-Kirchhoff field behind the aperture:
///   sum_nodes w phi(x') e^{ik(s - y)} (1 + cos chi) / s
/// The constant prefactor and the common phase e^{iky} are dropped.
WaveField fresnel_kirchhoff_field(const ApertureSpec& spec, const BeamParams& beam, const Snapshot& snapshot,
                                  const Grid1D& grid, const QuadratureOptions& options = {});

/// Rescales so that the trapezoid integral of |psi|^2 over the window is 1.
WaveField normalize_field(WaveField field);

/// Aperture function sampled on the grid (the slit-plane state, t = 0).
WaveField aperture_field(const ApertureSpec& spec, const Grid1D& grid);

/// psi(x, t) = Phi(x, v t): normalized diffraction field for t > 0, the
/// aperture function for t = 0.
WaveField transverse_wavefunction(const ApertureSpec& spec, const BeamParams& beam, double t, const Grid1D& grid,
                                  const QuadratureOptions& options = {});

/// Same as transverse_wavefunction, addressed by distance y = v t.
WaveField wavefunction_at_distance(const ApertureSpec& spec, const BeamParams& beam, double y, const Grid1D& grid,
                                   const QuadratureOptions& options = {});

}  // namespace slitwave
