#include "slitwave/scenario.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "slitwave/errors.hpp"

#ifndef SLITWAVE_VERSION
#define SLITWAVE_VERSION "0.0.0"
#endif

namespace slitwave {
namespace {

constexpr std::string_view kKnownKeys[] = {
    "scenario.name",     "scenario.note",          "aperture.kind",     "aperture.delta",
    "aperture.Delta",    "aperture.Delta_plus_delta", "beam.k",         "beam.m",
    "snapshots.y",       "snapshots.t",            "snapshots.reconstructed",
    "grid.x.lo",         "grid.x.hi",              "grid.x.n",          "grid.k.lo",
    "grid.k.hi",         "grid.k.n",               "phase.x.lo",        "phase.x.hi",
    "phase.x.n",         "phase.x.stride",         "phase.k.lo",        "phase.k.hi",
    "phase.k.n",         "quadrature.oversample",  "quadrature.min_nodes", "outputs",
    "output.dir",        "output.precision",       "output.delimiter",  "output.map_stride_x",
    "output.map_stride_k",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class KeyValueDocument {
 public:
  explicit KeyValueDocument(std::string_view text) {
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto eol = text.find('\n', pos);
      std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
      ++line_no;
      pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw ConfigError("", line_no, "empty key");
      if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) == std::end(kKnownKeys))
        throw ConfigError(key, line_no, "unknown key");
      if (entries_.contains(key)) throw ConfigError(key, line_no, "duplicate key");
      entries_[key] = {std::string(trim(line.substr(eq + 1))), line_no};
    }
  }

  bool has(const std::string& key) const { return entries_.contains(key); }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  const std::string& raw(const std::string& key) const {
    if (!has(key)) throw ConfigError(key, 0, "missing required key");
    return entries_.at(key).value;
  }

  double number(const std::string& key) const { return to_number(key, raw(key)); }
  double number(const std::string& key, double fallback) const { return has(key) ? number(key) : fallback; }

  std::size_t count(const std::string& key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ConfigError(key, line(key), "expected a non-negative integer");
    return v;
  }

  std::vector<double> numbers(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(raw(key))) out.push_back(to_number(key, item));
    return out;
  }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& s = raw(key);
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ConfigError(key, line(key), "expected true or false");
  }

  std::string text(const std::string& key, const std::string& fallback) const { return has(key) ? raw(key) : fallback; }

 private:
  double to_number(const std::string& key, std::string_view s) const {
    double v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError(key, line(key), "expected a number, got '" + std::string(s) + "'");
    return v;
  }

  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, Entry> entries_;
};

Grid1D grid_from(const KeyValueDocument& doc, const std::string& prefix, const Grid1D& fallback) {
  const double lo = doc.number(prefix + ".lo", fallback.lo());
  const double hi = doc.number(prefix + ".hi", fallback.hi());
  const std::size_t n = doc.count(prefix + ".n", fallback.size());
  try {
    return make_grid(lo, hi, n);
  } catch (const DomainError& e) {
    throw ConfigError(prefix, doc.line(prefix + ".n"), e.what());
  }
}

std::string fmt_number(double v) { return fmt::format("{}", v); }

std::string snapshot_tag(const Snapshot& s) { return fmt::format("y{:g}mm", s.y * 1e3); }

struct Context {
  RunManifest manifest;
  std::filesystem::path dir;
  std::string reports;

  void info(std::string name, double value) { manifest.audits.push_back({std::move(name), value, std::nullopt, true, false}); }
  bool check(std::string name, double value, double limit, bool hard) {
    const bool ok = value <= limit;
    manifest.audits.push_back({name, value, limit, ok, hard});
    if (hard && !ok) manifest.failed_hard_checks.push_back(name);
    return ok;
  }
  void file(const EmittedFile& f) {
    EmittedFile rel = f;
    rel.path = f.path.lexically_relative(dir);
    manifest.files.push_back(rel);
  }
  void report(const std::string& line) { reports += line + '\n'; }
};

std::vector<double> rows_of(const std::vector<double>& full, const Grid1D& field_grid, const Grid1D& rows) {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = full[field_grid.nearest_index(rows[i])];
  return out;
}

void report_zero_set(Context& ctx, const std::string& prefix, const ZeroSetReport& z) {
  std::size_t x_lines = 0, k_lines = 0;
  for (const auto& l : z.lines) (l.axis == ZeroLine::Axis::X ? x_lines : k_lines)++;
  ctx.report(fmt::format("{}.zero_set.consistent = {}", prefix, z.zero_consistent));
  ctx.report(fmt::format("{}.zero_set.x_lines = {}", prefix, x_lines));
  ctx.report(fmt::format("{}.zero_set.k_lines = {}", prefix, k_lines));
  ctx.report(fmt::format("{}.zero_set.violations = {}", prefix, z.violations));
  std::vector<ZeroLine> minima;
  for (std::size_t n = 0; n < z.lines.size(); ++n) {
    const ZeroLine& l = z.lines[n];
    if (l.axis != ZeroLine::Axis::K) continue;
    auto not_below = [&](std::size_t m) {
      if (m >= z.lines.size()) return true;
      const ZeroLine& o = z.lines[m];
      const bool adjacent = o.axis == ZeroLine::Axis::K && (o.index + 1 == l.index || l.index + 1 == o.index);
      return !adjacent || o.marginal_ratio > l.marginal_ratio;
    };
    if ((n == 0 || not_below(n - 1)) && not_below(n + 1)) minima.push_back(l);
  }
  std::sort(minima.begin(), minima.end(),
            [](const ZeroLine& a, const ZeroLine& b) { return std::abs(a.coordinate) < std::abs(b.coordinate); });
  if (minima.size() > 24) minima.resize(24);
  std::sort(minima.begin(), minima.end(), [](const ZeroLine& a, const ZeroLine& b) { return a.index < b.index; });
  for (const auto& l : minima)
    ctx.report(fmt::format("{}.zero_set.k_minimum = kx {:.6g} marginal_ratio {:.3g} map_ratio {:.3g}", prefix,
                           l.coordinate, l.marginal_ratio, l.line_ratio));
}

}  // namespace

std::string version() { return SLITWAVE_VERSION; }

std::string_view output_name(Output o) {
  switch (o) {
    case Output::Intensity: return "intensity";
    case Output::Spectrum: return "spectrum";
    case Output::DeBroglie: return "debroglie";
    case Output::Wigner: return "wigner";
    case Output::Fraunhofer: return "fraunhofer";
    case Output::Reports: return "reports";
  }
  return "?";
}

std::optional<Output> parse_output(std::string_view name) {
  for (Output o : {Output::Intensity, Output::Spectrum, Output::DeBroglie, Output::Wigner, Output::Fraunhofer,
                   Output::Reports})
    if (output_name(o) == name) return o;
  return std::nullopt;
}

std::string_view aperture_name(ApertureKind kind) {
  switch (kind) {
    case ApertureKind::SingleLower: return "single";
    case ApertureKind::SingleUpper: return "single_upper";
    case ApertureKind::Double: return "double";
  }
  return "?";
}

ScenarioConfig parse_config(std::string_view text) {
  const KeyValueDocument doc(text);
  ScenarioConfig c;
  c.name = doc.text("scenario.name", "");
  c.note = doc.text("scenario.note", "");

  for (const auto& kind : split_list(doc.raw("aperture.kind"))) {
    if (kind == "single" || kind == "single_lower") c.apertures.push_back(ApertureKind::SingleLower);
    else if (kind == "single_upper") c.apertures.push_back(ApertureKind::SingleUpper);
    else if (kind == "double") c.apertures.push_back(ApertureKind::Double);
    else throw ConfigError("aperture.kind", doc.line("aperture.kind"), "unknown aperture kind '" + kind + "'");
  }
  if (c.apertures.empty()) throw ConfigError("aperture.kind", doc.line("aperture.kind"), "no aperture kind given");

  c.delta = doc.number("aperture.delta");
  if (!(c.delta > 0)) throw ConfigError("aperture.delta", doc.line("aperture.delta"), "must be positive");
  const bool has_gap = doc.has("aperture.Delta");
  const bool has_sum = doc.has("aperture.Delta_plus_delta");
  if (!has_gap && !has_sum)
    throw ConfigError("aperture.Delta", 0, "missing required key (or aperture.Delta_plus_delta)");
  if (has_gap) c.gap = doc.number("aperture.Delta");
  if (has_sum) {
    const double from_sum = doc.number("aperture.Delta_plus_delta") - c.delta;
    if (has_gap && std::abs(from_sum - c.gap) > 1e-9 * std::max(std::abs(c.gap), c.delta))
      throw ConfigError("aperture.Delta_plus_delta", doc.line("aperture.Delta_plus_delta"),
                        fmt::format("inconsistent with aperture.Delta + aperture.delta = {:g}", c.gap + c.delta));
    if (!has_gap) c.gap = from_sum;
  }
  if (!(c.gap > 0))
    throw ConfigError(has_gap ? "aperture.Delta" : "aperture.Delta_plus_delta",
                      doc.line(has_gap ? "aperture.Delta" : "aperture.Delta_plus_delta"),
                      "inner gap between the slits must be positive");

  c.k = doc.number("beam.k");
  c.m = doc.number("beam.m");
  if (!(c.k > 0)) throw ConfigError("beam.k", doc.line("beam.k"), "must be positive");
  if (!(c.m > 0)) throw ConfigError("beam.m", doc.line("beam.m"), "must be positive");

  const bool by_y = doc.has("snapshots.y"), by_t = doc.has("snapshots.t");
  if (by_y == by_t) throw ConfigError("snapshots.y", 0, "give exactly one of snapshots.y or snapshots.t");
  const std::string snap_key = by_y ? "snapshots.y" : "snapshots.t";
  c.snapshot_axis = by_y ? SnapshotAxis::Distance : SnapshotAxis::Time;
  c.snapshots = doc.numbers(snap_key);
  if (c.snapshots.empty()) throw ConfigError(snap_key, doc.line(snap_key), "at least one snapshot is required");
  for (double s : c.snapshots)
    if (s < 0) throw ConfigError(snap_key, doc.line(snap_key), "snapshots must be >= 0");
  c.snapshots_reconstructed = doc.flag("snapshots.reconstructed", false);

  c.xgrid = grid_from(doc, "grid.x", c.xgrid);
  c.kgrid = grid_from(doc, "grid.k", c.kgrid);
  c.phase_xgrid = grid_from(doc, "phase.x", c.phase_xgrid);
  c.phase_kgrid = grid_from(doc, "phase.k", c.phase_kgrid);
  c.phase_stride = doc.count("phase.x.stride", c.phase_stride);
  if (c.phase_stride == 0 || (c.phase_xgrid.size() - 1) / c.phase_stride < 1)
    throw ConfigError("phase.x.stride", doc.line("phase.x.stride"), "stride must leave at least two map rows");

  try {
    check_nyquist(c.xgrid, c.kgrid);
  } catch (const SamplingError& e) {
    throw ConfigError("grid.k", doc.line("grid.k.n"), e.what());
  }
  try {
    check_nyquist(c.phase_xgrid, c.phase_kgrid);
  } catch (const SamplingError& e) {
    throw ConfigError("phase.k", doc.line("phase.k.n"), e.what());
  }
  const double wigner_band = std::numbers::pi / (2.0 * c.phase_xgrid.spacing());
  if (std::max(std::abs(c.phase_kgrid.lo()), std::abs(c.phase_kgrid.hi())) > wigner_band)
    throw ConfigError("phase.k", doc.line("phase.k.hi"),
                      fmt::format("Wigner k range must stay within pi / (2 dx) = {:g}", wigner_band));

  c.quadrature.oversample = doc.number("quadrature.oversample", c.quadrature.oversample);
  c.quadrature.min_nodes = static_cast<int>(doc.count("quadrature.min_nodes", c.quadrature.min_nodes));
  if (!(c.quadrature.oversample > 0) || c.quadrature.min_nodes < 1)
    throw ConfigError("quadrature", doc.line("quadrature.oversample"), "quadrature settings must be positive");

  if (doc.has("outputs")) {
    c.outputs.clear();
    for (const auto& name : split_list(doc.raw("outputs"))) {
      const auto o = parse_output(name);
      if (!o) throw ConfigError("outputs", doc.line("outputs"), "unknown output '" + name + "'");
      c.outputs.insert(*o);
    }
  }
  c.output_dir = doc.text("output.dir", c.output_dir.string());
  c.format.precision = static_cast<int>(doc.count("output.precision", 9));
  if (c.format.precision < 1 || c.format.precision > 17)
    throw ConfigError("output.precision", doc.line("output.precision"), "precision must be within 1..17");
  const std::string delim = doc.text("output.delimiter", ",");
  if (delim == "tab") c.format.delimiter = '\t';
  else if (delim.size() == 1 && delim != "." && !std::isdigit(static_cast<unsigned char>(delim[0])) && delim != "-" && delim != "+" && delim != "e")
    c.format.delimiter = delim[0];
  else throw ConfigError("output.delimiter", doc.line("output.delimiter"), "delimiter must be one non-numeric character or 'tab'");
  c.map_stride_x = doc.count("output.map_stride_x", c.map_stride_x);
  c.map_stride_k = doc.count("output.map_stride_k", c.map_stride_k);
  if (c.map_stride_x == 0 || c.map_stride_k == 0)
    throw ConfigError("output.map_stride_x", doc.line("output.map_stride_x"), "strides must be positive");
  return c;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string ScenarioConfig::echo() const {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) { out += fmt::format("{} = {}\n", key, value); };
  auto grid = [&](std::string_view prefix, const Grid1D& g) {
    line(fmt::format("{}.lo", prefix), fmt_number(g.lo()));
    line(fmt::format("{}.hi", prefix), fmt_number(g.hi()));
    line(fmt::format("{}.n", prefix), std::to_string(g.size()));
  };
  auto join = [](const auto& items, auto&& to_string) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ", ";
      s += to_string(item);
    }
    return s;
  };
  line("scenario.name", name);
  if (!note.empty()) line("scenario.note", note);
  line("aperture.kind", join(apertures, [](ApertureKind k) { return std::string(aperture_name(k)); }));
  line("aperture.delta", fmt_number(delta));
  line("aperture.Delta", fmt_number(gap));
  line("beam.k", fmt_number(k));
  line("beam.m", fmt_number(m));
  line(snapshot_axis == SnapshotAxis::Distance ? "snapshots.y" : "snapshots.t", join(snapshots, fmt_number));
  line("snapshots.reconstructed", snapshots_reconstructed ? "true" : "false");
  grid("grid.x", xgrid);
  grid("grid.k", kgrid);
  grid("phase.x", phase_xgrid);
  line("phase.x.stride", std::to_string(phase_stride));
  grid("phase.k", phase_kgrid);
  line("quadrature.oversample", fmt_number(quadrature.oversample));
  line("quadrature.min_nodes", std::to_string(quadrature.min_nodes));
  line("outputs", join(outputs, [](Output o) { return std::string(output_name(o)); }));
  line("output.dir", output_dir.string());
  line("output.precision", std::to_string(format.precision));
  line("output.delimiter", format.delimiter == '\t' ? "tab" : std::string(1, format.delimiter));
  line("output.map_stride_x", std::to_string(map_stride_x));
  line("output.map_stride_k", std::to_string(map_stride_k));
  return out;
}

const AuditEntry* RunManifest::find(std::string_view name) const {
  for (const auto& a : audits)
    if (a.name == name) return &a;
  return nullptr;
}

std::string RunManifest::to_text() const {
  std::string out = "# slitwave run manifest\n";
  out += fmt::format("version = {}\n", version);
  out += fmt::format("status = {}\n", ok() ? "ok" : "failed");
  for (const auto& f : failed_hard_checks) out += fmt::format("failed_check = {}\n", f);
  for (const auto& n : notes) out += fmt::format("note = {}\n", n);
  out += "\n[config]\n" + config_echo;
  out += "\n[files]\n";
  for (const auto& f : files) out += fmt::format("file = {} crc32={:08x} rows={}\n", f.path.generic_string(), f.crc32, f.rows);
  out += "\n[audit]\n";
  for (const auto& a : audits) {
    if (a.limit)
      out += fmt::format("{} = {:.9g} (limit <= {:g}, {}, {})\n", a.name, a.value, *a.limit, a.passed ? "pass" : "FAIL",
                         a.hard ? "hard" : "soft");
    else
      out += fmt::format("{} = {:.9g}\n", a.name, a.value);
  }
  return out;
}

RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& options) {
  Context ctx;
  ctx.dir = options.output_dir.value_or(config.output_dir);
  ctx.manifest.version = version();
  ctx.manifest.config_echo = config.echo();
  if (!config.note.empty()) ctx.manifest.notes.push_back(config.note);
  if (config.snapshots_reconstructed)
    ctx.manifest.notes.push_back("snapshot list is a reconstructed ladder, not reference values");
  const std::set<Output> outputs = options.only.value_or(config.outputs);
  auto wants = [&](Output o) { return outputs.contains(o); };

  std::error_code ec;
  std::filesystem::create_directories(ctx.dir, ec);
  if (ec) throw IoError("cannot create output directory " + ctx.dir.string() + ": " + ec.message());

  const BeamParams beam = make_beam_params(config.k, config.m);
  const bool need_field = wants(Output::Intensity) || wants(Output::Spectrum) || wants(Output::Fraunhofer) ||
                          wants(Output::Reports);
  const bool need_spectrum = wants(Output::Spectrum) || wants(Output::Fraunhofer) || wants(Output::Reports);
  const bool need_maps = wants(Output::DeBroglie) || wants(Output::Wigner);
  const Grid1D map_rows = strided_grid(config.phase_xgrid, config.phase_stride);

  try {
    for (ApertureKind kind : config.apertures) {
      const ApertureSpec spec = ApertureSpec::make(kind, config.delta, config.gap);
      const std::string kname(aperture_name(kind));
      std::vector<std::pair<std::string, SpectralField>> spectra;

      if (wants(Output::Fraunhofer) && !wants(Output::Spectrum)) {
        std::vector<double> oracle(config.kgrid.size());
        for (std::size_t j = 0; j < oracle.size(); ++j) oracle[j] = std::norm(fraunhofer(config.kgrid[j], spec));
        ctx.file(emit_density_csv(config.kgrid, oracle, ctx.dir / fmt::format("{}_fraunhofer.csv", kname),
                                  config.format));
      }

      for (double value : config.snapshots) {
        const Snapshot snap = config.snapshot_axis == SnapshotAxis::Distance ? snapshot_at_distance(beam, value)
                                                                              : snapshot_at_time(beam, value);
        const std::string tag = snapshot_tag(snap);
        const std::string prefix = kname + "." + tag;
        ctx.report(fmt::format("[{} {}] y = {:.9g} m, t = {:.9g} s", kname, tag, snap.y, snap.t));

        auto make_field = [&](const Grid1D& grid) {
          return snap.y == 0 ? aperture_field(spec, grid)
                             : normalize_field(fresnel_kirchhoff_field(spec, beam, snap, grid, config.quadrature));
        };
        auto audit_field = [&](const std::string& p, const WaveField& f) {
          ctx.info(p + ".norm_raw", f.norm_raw);
          const double prob = f.window_probability();
          ctx.info(p + ".window_probability", prob);
          if (snap.y > 0) ctx.check(p + ".window_probability_error", std::abs(prob - 1.0), 1e-10, true);
        };

        std::optional<WaveField> field;
        if (need_field) {
          field = make_field(config.xgrid);
          audit_field(prefix, *field);
          if (wants(Output::Intensity))
            ctx.file(emit_density_csv(config.xgrid, field->density(),
                                      ctx.dir / fmt::format("{}_intensity_{}.csv", kname, tag), config.format));
        }
        if (need_spectrum) {
          SpectralField spectrum = momentum_spectrum(*field, config.kgrid);
          const std::vector<double> density = spectrum.density();
          const double mass = trapezoid(density, config.kgrid.spacing());
          ctx.info(prefix + ".spectral_mass", mass);
          const double deviation = spectrum_vs_fraunhofer(spectrum, spec);
          if (snap.y > 0) ctx.check(prefix + ".fraunhofer_deviation", deviation, 1e-2, false);
          else ctx.info(prefix + ".fraunhofer_deviation", deviation);
          ctx.report(fmt::format("spectrum.spectral_mass = {:.9g}", mass));
          ctx.report(fmt::format("spectrum.fraunhofer_deviation = {:.6g}", deviation));
          if (wants(Output::Spectrum)) {
            std::vector<double> oracle;
            if (wants(Output::Fraunhofer)) {
              oracle.resize(config.kgrid.size());
              for (std::size_t j = 0; j < oracle.size(); ++j) oracle[j] = std::norm(fraunhofer(config.kgrid[j], spec));
            }
            ctx.file(emit_spectrum_csv(spectrum,
                                       oracle.empty() ? std::nullopt
                                                      : std::optional<std::span<const double>>(oracle),
                                       ctx.dir / fmt::format("{}_spectrum_{}.csv", kname, tag), config.format));
          }
          if (snap.y > 0) spectra.emplace_back(tag, std::move(spectrum));
        }

        if (need_maps) {
          const WaveField pfield =
              (field && config.phase_xgrid == config.xgrid) ? *field : make_field(config.phase_xgrid);
          if (!(config.phase_xgrid == config.xgrid)) audit_field(prefix + ".phase_field", pfield);
          const SpectralField pspectrum = momentum_spectrum(pfield, config.phase_kgrid);
          const std::vector<double> position = rows_of(pfield.density(), pfield.grid, map_rows);
          const std::vector<double> momentum = pspectrum.density();

          if (wants(Output::DeBroglie)) {
            const std::string p = prefix + ".debroglie";
            const PhaseSpaceMap map = de_broglie_density(pfield, pspectrum, map_rows);
            const NegativityMetrics neg = negativity_metrics(map);
            ctx.info(p + ".min_value", neg.min_value);
            ctx.check(p + ".negativity", std::max(0.0, -neg.min_value), 0.0, true);
            const double kmass = trapezoid(momentum, map.kgrid.spacing());
            const double xmass = trapezoid(position, map.xgrid.spacing());
            std::vector<double> expect_x = position, expect_k = momentum;
            for (double& v : expect_x) v *= kmass;
            for (double& v : expect_k) v *= xmass;
            ctx.info(p + ".spectral_mass", kmass);
            ctx.check(p + ".marginal_x_error", relative_l2(marginal_x(map), expect_x), 1e-3, false);
            ctx.check(p + ".marginal_k_error", relative_l2(marginal_k(map), expect_k), 1e-3, false);
            const ZeroSetReport zero = zero_set_consistency(pfield, pspectrum, map);
            ctx.check(p + ".zero_set_violations", static_cast<double>(zero.violations), 0.0, false);
            ctx.report(fmt::format("debroglie.min_value = {:.9g}", neg.min_value));
            report_zero_set(ctx, "debroglie", zero);
            if (wants(Output::DeBroglie))
              ctx.file(emit_phase_space_csv(map, ctx.dir / fmt::format("{}_debroglie_{}.csv", kname, tag),
                                            config.format, config.map_stride_x, config.map_stride_k));
          }
          if (wants(Output::Wigner)) {
            const std::string p = prefix + ".wigner";
            const PhaseSpaceMap map = wigner_function(pfield, map_rows, config.phase_kgrid);
            ctx.check(p + ".imaginary_residue", map.imaginary_residue, kImaginaryResidueLimit, true);
            ctx.check(p + ".max_abs", map.max_abs(), 1.0 / std::numbers::pi + 1e-6, false);
            ctx.info(p + ".volume", map.volume());
            ctx.check(p + ".marginal_x_error", relative_l2(marginal_x(map), position), 1e-2, false);
            ctx.check(p + ".marginal_k_error", relative_l2(marginal_k(map), momentum), 1e-2, false);
            const NegativityMetrics neg = negativity_metrics(map);
            ctx.info(p + ".min_value", neg.min_value);
            ctx.info(p + ".negative_volume", neg.negative_volume);
            ctx.info(p + ".absolute_volume", neg.absolute_volume);
            ctx.info(p + ".negative_fraction", neg.negative_fraction);
            const ZeroSetReport zero = zero_set_consistency(pfield, pspectrum, map);
            ctx.info(p + ".zero_set_violations", static_cast<double>(zero.violations));
            ctx.report(fmt::format("wigner.min_value = {:.9g}", neg.min_value));
            ctx.report(fmt::format("wigner.negative_volume = {:.9g}", neg.negative_volume));
            ctx.report(fmt::format("wigner.absolute_volume = {:.9g}", neg.absolute_volume));
            ctx.report(fmt::format("wigner.negative_fraction = {:.9g}", neg.negative_fraction));
            report_zero_set(ctx, "wigner", zero);
            ctx.file(emit_phase_space_csv(map, ctx.dir / fmt::format("{}_wigner_{}.csv", kname, tag), config.format,
                                          config.map_stride_x, config.map_stride_k));
          }
        }
      }

      for (std::size_t a = 0; a < spectra.size(); ++a)
        for (std::size_t b = a + 1; b < spectra.size(); ++b) {
          const double d = time_independence_deviation(spectra[a].second, spectra[b].second);
          const std::string name =
              fmt::format("{}.time_independence.{}_vs_{}", kname, spectra[a].first, spectra[b].first);
          ctx.check(name, d, 1e-2, false);
          ctx.report(fmt::format("{} = {:.6g}", name, d));
        }
    }
  } catch (const IntegrityError& e) {
    ctx.manifest.failed_hard_checks.push_back(e.check() + ": " + e.what());
  }

  if (wants(Output::Reports)) ctx.file(write_text_file(ctx.dir / "reports.txt", ctx.reports,
                                                   static_cast<std::size_t>(std::count(ctx.reports.begin(), ctx.reports.end(), '\n'))));
  write_text_file(ctx.dir / "manifest.txt", ctx.manifest.to_text());
  return ctx.manifest;
}

std::vector<OracleCheck> run_oracles(const ScenarioConfig& config) {
  const BeamParams beam = make_beam_params(config.k, config.m);
  std::vector<OracleCheck> checks;
  for (ApertureKind kind : config.apertures) {
    const ApertureSpec spec = ApertureSpec::make(kind, config.delta, config.gap);
    const std::string kname(aperture_name(kind));

    const WaveField slit_plane = aperture_field(spec, aperture_resolving_grid(spec));
    checks.push_back({kname + ".aperture_transform", spectrum_vs_fraunhofer(momentum_spectrum(slit_plane, config.kgrid), spec), 1e-6});

    for (double value : config.snapshots) {
      const Snapshot snap = config.snapshot_axis == SnapshotAxis::Distance ? snapshot_at_distance(beam, value)
                                                                            : snapshot_at_time(beam, value);
      if (snap.y == 0) continue;
      const WaveField field =
          normalize_field(fresnel_kirchhoff_field(spec, beam, snap, config.xgrid, config.quadrature));
      checks.push_back({kname + "." + snapshot_tag(snap) + ".fraunhofer",
                        spectrum_vs_fraunhofer(momentum_spectrum(field, config.kgrid), spec), 1e-2});
    }
  }
  return checks;
}

}  // namespace slitwave
