#ifndef VCFV_ERRORS_HPP
#define VCFV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vcfv {

/// File could not be parsed (bad format, unsupported version).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Mesh is topologically or geometrically unusable.
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Density or pressure lost positivity.
class PositivityError : public std::runtime_error {
 public:
  explicit PositivityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Generic numerical failure (zero weight sum, non-finite value, ...).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace vcfv

#endif
