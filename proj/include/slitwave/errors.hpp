#pragma once

#include <stdexcept>
#include <string>

namespace slitwave {

// Invalid argument outside an operation's domain (non-positive k, n < 2, t < 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// y <= 0 where the diffraction kernel is singular.
class GeometryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Mismatched grids between two sampled objects.
class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Spectral grid too coarse (or too wide) for the spatial sampling.
class SamplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inputs that refer to different snapshots.
class ConsistencyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hard numerical invariants: zero norm, imaginary residue, normalization drift.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(std::string check, const std::string& what)
      : std::runtime_error(what), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

class NormalizationError : public IntegrityError {
 public:
  explicit NormalizationError(const std::string& what)
      : IntegrityError("normalization", what) {}
};

// Configuration parse/validation failure. line is 0 when the problem is not
// tied to a single line (missing key, cross-key inconsistency).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error(format(key, line, what)), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, int line, const std::string& what) {
    std::string out = "config";
    if (line > 0) out += ":" + std::to_string(line);
    if (!key.empty()) out += ": '" + key + "'";
    return out + ": " + what;
  }
  std::string key_;
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slitwave
