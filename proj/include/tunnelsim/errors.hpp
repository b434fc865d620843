#pragma once

#include <stdexcept>
#include <string>

namespace tunnelsim {

// Base class for all library errors. Messages name the module and the
// offending parameter so they survive a trip through the CLI unchanged.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Physical-domain violations: negative frequency, E above the barrier, ...
class DomainError : public Error {
 public:
  using Error::Error;
};

// Optical, quantum and acoustic media cannot be mixed within one stack.
class IncompatibleMediaError : public Error {
 public:
  using Error::Error;
};

// Complex (lossy) wavenumbers are outside the scope of this toolkit.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Frequency grid problems: too coarse to unwrap, missing margin around the
// evaluation point, or a pulse band not covered by the grid.
class GridError : public Error {
 public:
  using Error::Error;
};

class CoverageError : public Error {
 public:
  using Error::Error;
};

// Requested a tunneling analysis of a structure that is not evanescent.
class NotTunnelingError : public Error {
 public:
  using Error::Error;
};

class NotTotalReflectionError : public Error {
 public:
  using Error::Error;
};

class MeasurementError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NoSolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace tunnelsim
