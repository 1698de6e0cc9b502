#include "slitwave/diffraction.hpp"

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>

#include "slitwave/errors.hpp"
#include "slitwave/parallel.hpp"

namespace slitwave {
namespace {

struct ReferenceRule {
  std::vector<double> abscissa;  // on [-1, 1], ascending
  std::vector<double> weight;
};

template <unsigned Points>
ReferenceRule expand_rule() {
  using Rule = boost::math::quadrature::gauss<double, Points>;
  const auto& half_x = Rule::abscissa();
  const auto& half_w = Rule::weights();
  ReferenceRule rule;
  for (std::size_t i = half_x.size(); i-- > 0;) {
    if (half_x[i] == 0) continue;
    rule.abscissa.push_back(-half_x[i]);
    rule.weight.push_back(half_w[i]);
  }
  for (std::size_t i = 0; i < half_x.size(); ++i) {
    rule.abscissa.push_back(half_x[i]);
    rule.weight.push_back(half_w[i]);
  }
  return rule;
}

const ReferenceRule& reference_rule(int order) {
  static const ReferenceRule r8 = expand_rule<8>();
  static const ReferenceRule r16 = expand_rule<16>();
  static const ReferenceRule r32 = expand_rule<32>();
  switch (order) {
    case 8: return r8;
    case 16: return r16;
    case 32: return r32;
  }
  throw DomainError("panel_order must be 8, 16 or 32");
}

// Kernel phase excursion k * (s_max - s_min) across one slit seen from x.
double phase_span(double k, double y, const Interval& slit, double x) {
  const double da = std::abs(x - slit.lo);
  const double db = std::abs(x - slit.hi);
  const double far = std::max(da, db);
  const double near = slit.contains(x) ? 0.0 : std::min(da, db);
  const double s_far = std::hypot(y, far);
  const double s_near = std::hypot(y, near);
  return k * (far - near) * (far + near) / (s_far + s_near);
}

int slit_node_count(const BeamParams& beam, double y, const Interval& slit, double x_extent,
                    const QuadratureOptions& options) {
  const double span = std::max(phase_span(beam.k, y, slit, -x_extent), phase_span(beam.k, y, slit, x_extent));
  const double needed = std::ceil(options.oversample * span / (2.0 * std::numbers::pi));
  return std::max(options.min_nodes, static_cast<int>(needed));
}

struct SourceNode {
  double xprime;
  double weighted_amplitude;  // quadrature weight times aperture amplitude
};

std::vector<SourceNode> source_nodes(const ApertureSpec& spec, const BeamParams& beam, double y, double x_extent,
                                     const QuadratureOptions& options) {
  const ReferenceRule& rule = reference_rule(options.panel_order);
  const double amplitude = spec.open_amplitude();
  std::vector<SourceNode> nodes;
  for (const Interval& slit : spec.open_slits()) {
    const int count = slit_node_count(beam, y, slit, x_extent, options);
    const auto panels = static_cast<std::size_t>(
        std::max(1.0, std::ceil(options.refinement * count / options.panel_order)));
    const double width = slit.width() / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = slit.lo + width * static_cast<double>(p);
      const double half = 0.5 * width;
      const double mid = a + half;
      for (std::size_t g = 0; g < rule.abscissa.size(); ++g)
        nodes.push_back({mid + half * rule.abscissa[g], half * rule.weight[g] * amplitude});
    }
  }
  return nodes;
}

double grid_extent(const Grid1D& grid) { return std::max(std::abs(grid.lo()), std::abs(grid.hi())); }

}  // namespace

double WaveField::window_probability() const { return trapezoid(density(), grid.spacing()); }

QuadratureNode make_quadrature_node(double xprime, double weight, double x, double y) {
  const double s = std::hypot(y, xprime - x);
  return {xprime, weight, s, y / s};
}

int quadrature_node_count(const BeamParams& beam, double y, const ApertureSpec& spec, double x_extent,
                          const QuadratureOptions& options) {
  if (!(y > 0)) throw GeometryError("diffraction kernel is singular at y <= 0");
  int count = 0;
  for (const Interval& slit : spec.open_slits())
    count = std::max(count, slit_node_count(beam, y, slit, x_extent, options));
  return count;
}

WaveField fresnel_kirchhoff_field(const ApertureSpec& spec, const BeamParams& beam, const Snapshot& snapshot,
                                  const Grid1D& grid, const QuadratureOptions& options) {
  const double y = snapshot.y;
  if (!(y > 0)) throw GeometryError("diffraction kernel is singular at y <= 0");
  const std::vector<SourceNode> nodes = source_nodes(spec, beam, y, grid_extent(grid), options);
  const double k = beam.k;

  WaveField field;
  field.grid = grid;
  field.snapshot = snapshot;
  field.values.assign(grid.size(), Complex{});
  parallel_for(grid.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double x = grid[i];
      double re = 0, im = 0;
      for (const SourceNode& node : nodes) {
        const QuadratureNode q = make_quadrature_node(node.xprime, node.weighted_amplitude, x, y);
        const double d = q.xprime - x;
        // k (s - y) without forming k s, which is ~1e9 rad at these distances.
        const double phase = k * d * d / (q.s + y);
        const double magnitude = q.weight * (1.0 + q.cos_chi) / q.s;
        re += magnitude * std::cos(phase);
        im += magnitude * std::sin(phase);
      }
      field.values[i] = {re, im};
    }
  });
  field.norm_raw = std::sqrt(field.window_probability());
  return field;
}

WaveField normalize_field(WaveField field) {
  const double norm = std::sqrt(field.window_probability());
  if (!(norm > 0) || !std::isfinite(norm)) throw NormalizationError("cannot normalize a zero or non-finite field");
  for (Complex& v : field.values) v /= norm;
  field.norm_raw = norm;
  const double check = field.window_probability();
  if (std::abs(check - 1.0) > 1e-10)
    throw NormalizationError("normalized window probability drifted to " + std::to_string(check));
  return field;
}

WaveField aperture_field(const ApertureSpec& spec, const Grid1D& grid) {
  WaveField field;
  field.grid = grid;
  field.snapshot = {0.0, 0.0};
  field.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) field.values[i] = aperture_amplitude(spec, grid[i]);
  field.norm_raw = std::sqrt(field.window_probability());
  return field;
}

WaveField transverse_wavefunction(const ApertureSpec& spec, const BeamParams& beam, double t, const Grid1D& grid,
                                  const QuadratureOptions& options) {
  if (!(t >= 0)) throw DomainError("evolution time must be >= 0");
  if (t == 0) return aperture_field(spec, grid);
  return normalize_field(fresnel_kirchhoff_field(spec, beam, snapshot_at_time(beam, t), grid, options));
}

WaveField wavefunction_at_distance(const ApertureSpec& spec, const BeamParams& beam, double y, const Grid1D& grid,
                                   const QuadratureOptions& options) {
  if (!(y >= 0)) throw DomainError("snapshot distance must be >= 0");
  if (y == 0) return aperture_field(spec, grid);
  return normalize_field(fresnel_kirchhoff_field(spec, beam, snapshot_at_distance(beam, y), grid, options));
}

}  // namespace slitwave
