#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slitwave/phase_space.hpp"

namespace slitwave {

struct CsvFormat {
  int precision = 9;  ///< significant digits
  char delimiter = ',';
};

struct EmittedFile {
  std::filesystem::path path;
  std::uint32_t crc32 = 0;
  std::size_t rows = 0;  ///< data rows, header excluded
};

/// Long format "x_m,kx_per_m,value", row-major over x then kx. Strides
/// decimate the written rows/columns; 1 writes the full map.
EmittedFile emit_phase_space_csv(const PhaseSpaceMap& map, const std::filesystem::path& path,
                                 const CsvFormat& format = {}, std::size_t stride_x = 1, std::size_t stride_k = 1);

/// "coord,value", one row per grid sample.
EmittedFile emit_density_csv(const Grid1D& grid, std::span<const double> density, const std::filesystem::path& path,
                             const CsvFormat& format = {});

/// "kx_per_m,spectrum" with |c'|^2, plus a "fraunhofer" column when given.
EmittedFile emit_spectrum_csv(const SpectralField& spectrum, std::optional<std::span<const double>> fraunhofer,
                              const std::filesystem::path& path, const CsvFormat& format = {});

/// Writes text and returns its checksum; throws IoError on failure.
EmittedFile write_text_file(const std::filesystem::path& path, const std::string& text, std::size_t rows = 0);

std::uint32_t crc32_of(const std::string& bytes);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::vector<double> column(std::size_t c) const;
};

CsvTable read_csv(const std::filesystem::path& path, char delimiter = ',');

}  // namespace slitwave
