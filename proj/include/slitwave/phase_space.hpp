#pragma once

#include <vector>

#include "slitwave/spectral.hpp"

namespace slitwave {

enum class MapKind { DeBroglie, Wigner };

/// Real distribution over (x, kx). Stores the primed, hbar-scaled quantities
/// P' = hbar P and W' = hbar W, row-major over x then kx.
struct PhaseSpaceMap {
  Grid1D xgrid;
  Grid1D kgrid;
  std::vector<double> values;
  MapKind kind = MapKind::DeBroglie;
  Snapshot snapshot;
  /// max |Im| / max |Re| of the raw Wigner sums; 0 for de Broglie maps.
  double imaginary_residue = 0;

  double at(std::size_t i, std::size_t j) const { return values[i * kgrid.size() + j]; }
  double max_abs() const;
  /// Trapezoid double integral over the map window.
  double volume() const;
};

/// Hard limit on the Wigner imaginary residue relative to the largest real value.
inline constexpr double kImaginaryResidueLimit = 1e-8;

/// P'(x, kx) = |psi(x)|^2 |c'(kx)|^2 on the field's x grid and the spectrum's k grid.
PhaseSpaceMap de_broglie_density(const WaveField& field, const SpectralField& spectrum);
/// Same, with rows taken at the field nodes nearest to xgrid.
PhaseSpaceMap de_broglie_density(const WaveField& field, const SpectralField& spectrum, const Grid1D& xgrid);

/// W'(x, kx) = (1/pi) sum_xi e^{2 i kx xi} psi*(x + xi) psi(x - xi) dxi with xi on
/// multiples of the field spacing and psi = 0 outside the window.
PhaseSpaceMap wigner_function(const WaveField& field, const Grid1D& kgrid);
/// Rows at the field nodes nearest to xgrid (no interpolation).
PhaseSpaceMap wigner_function(const WaveField& field, const Grid1D& xgrid, const Grid1D& kgrid);

/// Integral over kx for each x row.
std::vector<double> marginal_x(const PhaseSpaceMap& map);
/// Integral over x for each kx column.
std::vector<double> marginal_k(const PhaseSpaceMap& map);

struct NegativityMetrics {
  double min_value = 0;
  double negative_volume = 0;    ///< integral of max(-value, 0)
  double absolute_volume = 0;    ///< integral of |value|
  double negative_fraction = 0;  ///< share of cells below -1e-6 max|value|
};

NegativityMetrics negativity_metrics(const PhaseSpaceMap& map);

/// A phase-space line on which a marginal (nearly) vanishes.
struct ZeroLine {
  enum class Axis { X, K };
  Axis axis;
  std::size_t index;       ///< row (Axis::X) or column (Axis::K)
  double coordinate;
  double marginal_ratio;   ///< marginal value / its maximum
  double line_ratio;       ///< max |map| on the line / max |map|
};

struct ZeroSetReport {
  double threshold = 1e-3;
  std::vector<ZeroLine> lines;
  std::size_t violations = 0;  ///< lines with line_ratio > threshold
  bool zero_consistent = true;
};

/// Finds rows where |psi|^2 <= eps max and columns where |c'|^2 <= eps max, and
/// checks that the map itself stays below eps max|map| on all of them.
ZeroSetReport zero_set_consistency(const WaveField& field, const SpectralField& spectrum, const PhaseSpaceMap& map,
                                   double threshold = 1e-3);

}  // namespace slitwave
