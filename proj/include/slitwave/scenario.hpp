#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "slitwave/csv.hpp"
#include "slitwave/diffraction.hpp"
#include "slitwave/phase_space.hpp"

namespace slitwave {

std::string version();

enum class Output { Intensity, Spectrum, DeBroglie, Wigner, Fraunhofer, Reports };

std::string_view output_name(Output o);
/// Parses a single output name; nullopt if unknown.
std::optional<Output> parse_output(std::string_view name);
std::string_view aperture_name(ApertureKind kind);

enum class SnapshotAxis { Distance, Time };

struct ScenarioConfig {
  std::string name;
  std::string note;

  std::vector<ApertureKind> apertures;
  double delta = 0;
  double gap = 0;  ///< inner gap Delta; separation is gap + delta

  double k = 0;
  double m = 0;

  SnapshotAxis snapshot_axis = SnapshotAxis::Distance;
  std::vector<double> snapshots;  ///< y [m] or t [s]
  bool snapshots_reconstructed = false;

  Grid1D xgrid = make_grid(-256e-6, 256e-6, 32768);
  Grid1D kgrid = make_grid(-2e7, 2e7, 4097);
  Grid1D phase_xgrid = make_grid(-64e-6, 64e-6, 8192);
  std::size_t phase_stride = 4;
  Grid1D phase_kgrid = make_grid(-4e7, 4e7, 2049);
  QuadratureOptions quadrature;

  std::set<Output> outputs{Output::Intensity, Output::Spectrum, Output::Reports};
  std::filesystem::path output_dir = "out";
  CsvFormat format;
  std::size_t map_stride_x = 8;  ///< CSV decimation of phase-space maps
  std::size_t map_stride_k = 4;

  /// Fully resolved configuration in the input syntax.
  std::string echo() const;
};

/// Flat "key = value" document, '#' starts a comment. Throws ConfigError
/// naming the key and line for unknown, missing, malformed or inconsistent entries.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

struct AuditEntry {
  std::string name;
  double value = 0;
  std::optional<double> limit;  ///< upper bound on value; none for informational entries
  bool passed = true;
  bool hard = false;
};

struct RunManifest {
  std::string version;
  std::string config_echo;
  std::vector<EmittedFile> files;
  std::vector<AuditEntry> audits;
  std::vector<std::string> failed_hard_checks;
  std::vector<std::string> notes;

  bool ok() const { return failed_hard_checks.empty(); }
  const AuditEntry* find(std::string_view name) const;
  std::string to_text() const;
};

struct RunOptions {
  std::optional<std::filesystem::path> output_dir;
  std::optional<std::set<Output>> only;
};

/// Runs aperture -> field -> spectrum -> phase space for every aperture kind
/// and snapshot, writes the requested files plus manifest.txt. Hard invariant
/// failures are recorded in the manifest (ok() == false) rather than thrown.
RunManifest run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

struct OracleCheck {
  std::string name;
  double deviation = 0;
  double limit = 0;
  bool passed() const { return deviation <= limit; }
};

/// Analytic-oracle comparisons only: numerical spectra against the closed-form
/// aperture transforms for every aperture kind and snapshot.
std::vector<OracleCheck> run_oracles(const ScenarioConfig& config);

}  // namespace slitwave
