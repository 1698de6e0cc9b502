#pragma once

#include <cstddef>
#include <vector>

namespace slitwave {

/// Reduced Planck constant, CODATA 2018 [J s].
inline constexpr double kHbar = 1.054571817e-34;

/// Mass of a helium-4 atom as used for the metastable-He scenarios [kg].
inline constexpr double kHeliumMass = 6.64632e-27;

/// Atom beam constants. Derived fields are filled by make_beam_params().
struct BeamParams {
  double k = 0;       ///< longitudinal wavenumber [1/m]
  double m = 0;       ///< atom mass [kg]
  double hbar = kHbar;
  double v = 0;       ///< longitudinal speed hbar k / m [m/s]
  double lambda = 0;  ///< de Broglie wavelength 2 pi / k [m]
  double omega = 0;   ///< hbar k^2 / (2 m) [1/s]
};

BeamParams make_beam_params(double k, double m);

enum class ApertureKind {
  SingleLower,  ///< only the slit at [-gap/2 - delta, -gap/2] is open
  SingleUpper,  ///< only the slit at [gap/2, gap/2 + delta] is open
  Double,
};

/// Closed interval on the slit plane.
struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const { return x >= lo && x <= hi; }
  double width() const { return hi - lo; }
  double center() const { return 0.5 * (lo + hi); }
};

/// Slit geometry: opening width delta and inner gap between the slits.
/// The slit separation (center to center) is gap + delta.
class ApertureSpec {
 public:
  static ApertureSpec make(ApertureKind kind, double delta, double gap);

  ApertureKind kind() const { return kind_; }
  double delta() const { return delta_; }
  double gap() const { return gap_; }
  double separation() const { return gap_ + delta_; }

  Interval lower_slit() const { return {-0.5 * gap_ - delta_, -0.5 * gap_}; }
  Interval upper_slit() const { return {0.5 * gap_, 0.5 * gap_ + delta_}; }
  /// Open slits, lower first.
  std::vector<Interval> open_slits() const;
  /// Amplitude on an open slit: 1/sqrt(delta) or 1/sqrt(2 delta).
  double open_amplitude() const;

 private:
  ApertureSpec(ApertureKind kind, double delta, double gap)
      : kind_(kind), delta_(delta), gap_(gap) {}
  ApertureKind kind_;
  double delta_;
  double gap_;
};

/// Slit-plane boundary amplitude [1/sqrt(m)]; slit boundaries count as open.
double aperture_amplitude(const ApertureSpec& spec, double xprime);

/// Uniform closed grid lo..hi with n >= 2 samples.
class Grid1D {
 public:
  Grid1D() = default;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return n_; }
  double spacing() const { return spacing_; }
  double operator[](std::size_t i) const { return i + 1 == n_ ? hi_ : lo_ + spacing_ * static_cast<double>(i); }
  std::vector<double> samples() const;
  /// Index of the sample closest to x (clamped to the grid).
  std::size_t nearest_index(double x) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  friend Grid1D make_grid(double lo, double hi, std::size_t n);
  double lo_ = 0;
  double hi_ = 1;
  std::size_t n_ = 2;
  double spacing_ = 1;
};

Grid1D make_grid(double lo, double hi, std::size_t n);

/// Every stride-th sample of grid, starting at sample 0.
Grid1D strided_grid(const Grid1D& grid, std::size_t stride);

/// Distance behind the slit plane and the corresponding flight time.
struct Snapshot {
  double y = 0;  ///< [m]
  double t = 0;  ///< [s]
  friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

Snapshot snapshot_at_distance(const BeamParams& beam, double y);
Snapshot snapshot_at_time(const BeamParams& beam, double t);

}  // namespace slitwave
