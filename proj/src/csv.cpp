#include "slitwave/csv.hpp"

#include <fmt/format.h>

#include <boost/crc.hpp>
#include <charconv>
#include <fstream>
#include <sstream>

#include "slitwave/errors.hpp"

namespace slitwave {
namespace {

void append_number(std::string& out, double v, int precision) { fmt::format_to(std::back_inserter(out), "{:.{}g}", v, precision); }

std::string header_line(std::initializer_list<std::string_view> names, char delimiter) {
  std::string line;
  for (auto name : names) {
    if (!line.empty()) line += delimiter;
    line += name;
  }
  return line + '\n';
}

}  // namespace

std::uint32_t crc32_of(const std::string& bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

EmittedFile write_text_file(const std::filesystem::path& path, const std::string& text, std::size_t rows) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path.string());
  return {path, crc32_of(text), rows};
}

EmittedFile emit_phase_space_csv(const PhaseSpaceMap& map, const std::filesystem::path& path,
                                 const CsvFormat& format, std::size_t stride_x, std::size_t stride_k) {
  if (stride_x == 0 || stride_k == 0) throw DomainError("CSV strides must be positive");
  std::string text = header_line({"x_m", "kx_per_m", "value"}, format.delimiter);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < map.xgrid.size(); i += stride_x) {
    for (std::size_t j = 0; j < map.kgrid.size(); j += stride_k) {
      append_number(text, map.xgrid[i], format.precision);
      text += format.delimiter;
      append_number(text, map.kgrid[j], format.precision);
      text += format.delimiter;
      append_number(text, map.at(i, j), format.precision);
      text += '\n';
      ++rows;
    }
  }
  return write_text_file(path, text, rows);
}

EmittedFile emit_density_csv(const Grid1D& grid, std::span<const double> density, const std::filesystem::path& path,
                             const CsvFormat& format) {
  if (density.size() != grid.size()) throw GridError("density length does not match its grid");
  std::string text = header_line({"coord", "value"}, format.delimiter);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    append_number(text, grid[i], format.precision);
    text += format.delimiter;
    append_number(text, density[i], format.precision);
    text += '\n';
  }
  return write_text_file(path, text, grid.size());
}

EmittedFile emit_spectrum_csv(const SpectralField& spectrum, std::optional<std::span<const double>> fraunhofer,
                              const std::filesystem::path& path, const CsvFormat& format) {
  const std::size_t n = spectrum.kgrid.size();
  if (fraunhofer && fraunhofer->size() != n) throw GridError("oracle column length does not match the k grid");
  std::string text = fraunhofer ? header_line({"kx_per_m", "spectrum", "fraunhofer"}, format.delimiter)
                                : header_line({"kx_per_m", "spectrum"}, format.delimiter);
  for (std::size_t j = 0; j < n; ++j) {
    append_number(text, spectrum.kgrid[j], format.precision);
    text += format.delimiter;
    append_number(text, std::norm(spectrum.values[j]), format.precision);
    if (fraunhofer) {
      text += format.delimiter;
      append_number(text, (*fraunhofer)[j], format.precision);
    }
    text += '\n';
  }
  return write_text_file(path, text, n);
}

std::vector<double> CsvTable::column(std::size_t c) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(c));
  return out;
}

CsvTable read_csv(const std::filesystem::path& path, char delimiter) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
    if (first) {
      table.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) throw IoError("bad number '" + c + "' in " + path.string());
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace slitwave
