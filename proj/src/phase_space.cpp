#include "slitwave/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chirp_z.hpp"
#include "slitwave/errors.hpp"
#include "slitwave/parallel.hpp"

namespace slitwave {
namespace {

std::vector<std::size_t> snapped_rows(const Grid1D& field_grid, const Grid1D& xgrid) {
  std::vector<std::size_t> rows(xgrid.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = field_grid.nearest_index(xgrid[i]);
  return rows;
}

double trapezoid_weight(std::size_t i, std::size_t n, double h) { return (i == 0 || i + 1 == n) ? 0.5 * h : h; }

}  // namespace

double PhaseSpaceMap::max_abs() const {
  double m = 0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double PhaseSpaceMap::volume() const { return trapezoid(marginal_x(*this), xgrid.spacing()); }

PhaseSpaceMap de_broglie_density(const WaveField& field, const SpectralField& spectrum) {
  return de_broglie_density(field, spectrum, field.grid);
}

PhaseSpaceMap de_broglie_density(const WaveField& field, const SpectralField& spectrum, const Grid1D& xgrid) {
  if (!(field.snapshot == spectrum.source_snapshot))
    throw ConsistencyError("field and spectrum belong to different snapshots");
  const std::vector<double> position = field.density();
  const std::vector<double> momentum = spectrum.density();
  const std::vector<std::size_t> rows = snapped_rows(field.grid, xgrid);

  PhaseSpaceMap map;
  map.xgrid = xgrid;
  map.kgrid = spectrum.kgrid;
  map.kind = MapKind::DeBroglie;
  map.snapshot = field.snapshot;
  map.values.resize(xgrid.size() * momentum.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < momentum.size(); ++j)
      map.values[i * momentum.size() + j] = position[rows[i]] * momentum[j];
  return map;
}

PhaseSpaceMap wigner_function(const WaveField& field, const Grid1D& kgrid) {
  return wigner_function(field, field.grid, kgrid);
}

PhaseSpaceMap wigner_function(const WaveField& field, const Grid1D& xgrid, const Grid1D& kgrid) {
  const Grid1D& grid = field.grid;
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  if (std::max(std::abs(kgrid.lo()), std::abs(kgrid.hi())) > std::numbers::pi / (2.0 * h) * (1 + 1e-12))
    throw SamplingError("Wigner k range exceeds pi / (2 dx) and would alias");
  if (kgrid.spacing() > 2.0 * std::numbers::pi / (grid.hi() - grid.lo()) * (1 + 1e-12))
    throw SamplingError("Wigner k spacing too coarse for the field window");
  const std::vector<std::size_t> rows = snapped_rows(grid, xgrid);

  // Widest xi reach among the requested rows: both x + xi and x - xi stay in the window.
  std::size_t reach = 0;
  for (std::size_t r : rows) reach = std::max(reach, std::min(r, n - 1 - r));
  const std::size_t lags = 2 * reach + 1;
  const std::size_t nk = kgrid.size();

  // sum_m f_m e^{2i kx_j m h}, kx_j = k0 + j dk, m = q - reach:
  //   = e^{-i theta j reach} sum_q (f_m e^{2i k0 m h}) e^{i theta j q},  theta = 2 dk h
  const double theta = 2.0 * kgrid.spacing() * h;
  const detail::ChirpZ czt(lags, nk, theta);
  std::vector<Complex> lag_phase(lags);
  for (std::size_t q = 0; q < lags; ++q) {
    const double m = static_cast<double>(q) - static_cast<double>(reach);
    lag_phase[q] = std::polar(1.0, 2.0 * kgrid.lo() * m * h);
  }
  std::vector<Complex> output_phase(nk);
  for (std::size_t j = 0; j < nk; ++j)
    output_phase[j] = std::polar(h / std::numbers::pi, -theta * static_cast<double>(j) * static_cast<double>(reach));

  PhaseSpaceMap map;
  map.xgrid = xgrid;
  map.kgrid = kgrid;
  map.kind = MapKind::Wigner;
  map.snapshot = field.snapshot;
  map.values.resize(rows.size() * nk);
  std::vector<double> row_max_real(rows.size(), 0.0), row_max_imag(rows.size(), 0.0);

  parallel_for(rows.size(), [&](std::size_t begin, std::size_t end) {
    auto work = czt.make_workspace();
    std::vector<Complex> correlation(lags), spectrum(nk);
    for (std::size_t r = begin; r < end; ++r) {
      const std::size_t i = rows[r];
      const std::size_t local = std::min(i, n - 1 - i);
      std::fill(correlation.begin(), correlation.end(), Complex{});
      for (std::size_t m = 0; m <= local; ++m) {
        correlation[reach + m] = std::conj(field.values[i + m]) * field.values[i - m] * lag_phase[reach + m];
        correlation[reach - m] = std::conj(field.values[i - m]) * field.values[i + m] * lag_phase[reach - m];
      }
      czt.transform(correlation, spectrum, work);
      for (std::size_t j = 0; j < nk; ++j) {
        const Complex w = spectrum[j] * output_phase[j];
        map.values[r * nk + j] = w.real();
        row_max_real[r] = std::max(row_max_real[r], std::abs(w.real()));
        row_max_imag[r] = std::max(row_max_imag[r], std::abs(w.imag()));
      }
    }
  });

  const double max_real = *std::max_element(row_max_real.begin(), row_max_real.end());
  const double max_imag = *std::max_element(row_max_imag.begin(), row_max_imag.end());
  map.imaginary_residue = max_real > 0 ? max_imag / max_real : max_imag;
  if (map.imaginary_residue > kImaginaryResidueLimit)
    throw IntegrityError("wigner_imaginary_residue",
                         "Wigner sums carry imaginary residue " + std::to_string(map.imaginary_residue));
  return map;
}

std::vector<double> marginal_x(const PhaseSpaceMap& map) {
  const std::size_t nx = map.xgrid.size(), nk = map.kgrid.size();
  std::vector<double> out(nx);
  for (std::size_t i = 0; i < nx; ++i)
    out[i] = trapezoid(std::span<const double>(map.values).subspan(i * nk, nk), map.kgrid.spacing());
  return out;
}

std::vector<double> marginal_k(const PhaseSpaceMap& map) {
  const std::size_t nx = map.xgrid.size(), nk = map.kgrid.size();
  std::vector<double> out(nk, 0.0);
  for (std::size_t i = 0; i < nx; ++i) {
    const double w = trapezoid_weight(i, nx, map.xgrid.spacing());
    for (std::size_t j = 0; j < nk; ++j) out[j] += w * map.values[i * nk + j];
  }
  return out;
}

NegativityMetrics negativity_metrics(const PhaseSpaceMap& map) {
  const std::size_t nx = map.xgrid.size(), nk = map.kgrid.size();
  const double cut = -1e-6 * map.max_abs();
  NegativityMetrics m;
  m.min_value = *std::min_element(map.values.begin(), map.values.end());
  std::size_t negative_cells = 0;
  for (std::size_t i = 0; i < nx; ++i) {
    const double wx = trapezoid_weight(i, nx, map.xgrid.spacing());
    for (std::size_t j = 0; j < nk; ++j) {
      const double v = map.values[i * nk + j];
      const double w = wx * trapezoid_weight(j, nk, map.kgrid.spacing());
      m.absolute_volume += w * std::abs(v);
      if (v < 0) m.negative_volume -= w * v;
      if (v < cut) ++negative_cells;
    }
  }
  m.negative_fraction = static_cast<double>(negative_cells) / static_cast<double>(map.values.size());
  return m;
}

ZeroSetReport zero_set_consistency(const WaveField& field, const SpectralField& spectrum, const PhaseSpaceMap& map,
                                   double threshold) {
  if (!(field.snapshot == map.snapshot) || !(spectrum.source_snapshot == map.snapshot))
    throw ConsistencyError("zero-set check needs field, spectrum and map from one snapshot");
  if (!(spectrum.kgrid == map.kgrid)) throw GridError("spectrum and map k grids differ");

  const std::size_t nx = map.xgrid.size(), nk = map.kgrid.size();
  const std::vector<double> full_density = field.density();
  const std::vector<std::size_t> rows = snapped_rows(field.grid, map.xgrid);
  std::vector<double> position(nx);
  for (std::size_t i = 0; i < nx; ++i) position[i] = full_density[rows[i]];
  const std::vector<double> momentum = spectrum.density();

  const double max_position = *std::max_element(position.begin(), position.end());
  const double max_momentum = *std::max_element(momentum.begin(), momentum.end());
  const double max_map = map.max_abs();

  ZeroSetReport report;
  report.threshold = threshold;
  auto record = [&](ZeroLine line) {
    if (line.line_ratio > threshold) ++report.violations;
    report.lines.push_back(line);
  };
  for (std::size_t i = 0; i < nx; ++i) {
    if (position[i] > threshold * max_position) continue;
    double line_max = 0;
    for (std::size_t j = 0; j < nk; ++j) line_max = std::max(line_max, std::abs(map.at(i, j)));
    record({ZeroLine::Axis::X, i, map.xgrid[i], position[i] / max_position, max_map > 0 ? line_max / max_map : 0});
  }
  for (std::size_t j = 0; j < nk; ++j) {
    if (momentum[j] > threshold * max_momentum) continue;
    double line_max = 0;
    for (std::size_t i = 0; i < nx; ++i) line_max = std::max(line_max, std::abs(map.at(i, j)));
    record({ZeroLine::Axis::K, j, map.kgrid[j], momentum[j] / max_momentum, max_map > 0 ? line_max / max_map : 0});
  }
  report.zero_consistent = report.violations == 0;
  return report;
}

}  // namespace slitwave
