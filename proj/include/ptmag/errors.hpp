#pragma once

#include <stdexcept>
#include <string>

namespace ptmag {

/// Base class for every failure that has a physical meaning (domain
/// violations, poles, instabilities). The CLI maps these to exit code 3.
class PhysicsError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DomainError : public PhysicsError {
public:
  using PhysicsError::PhysicsError;
};

/// A response function or self-energy denominator vanished.
class PoleError : public PhysicsError {
public:
  PoleError(const std::string &mode, double omega)
      : PhysicsError("pole in " + mode + " response at omega = " +
                     std::to_string(omega) + " rad/s"),
        mode_(mode), omega_(omega) {}

  const std::string &mode() const noexcept { return mode_; }
  double omega() const noexcept { return omega_; }

private:
  std::string mode_;
  double omega_;
};

class SingularDriveError : public PhysicsError {
public:
  using PhysicsError::PhysicsError;
};

class NetHeatingError : public PhysicsError {
public:
  using PhysicsError::PhysicsError;
};

class UnstableError : public PhysicsError {
public:
  using PhysicsError::PhysicsError;
};

class TruncationError : public PhysicsError {
public:
  TruncationError(const std::string &what, long long suggested)
      : PhysicsError(what), suggested_(suggested) {}
  long long suggested_truncation() const noexcept { return suggested_; }

private:
  long long suggested_;
};

/// Malformed configuration input. `line` is 1-based; 0 when the error is
/// not tied to a line (missing keys, conflicting quantities).
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &source, int line, const std::string &msg)
      : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : "") +
                           ": " + msg),
        line_(line) {}
  int line() const noexcept { return line_; }

private:
  int line_;
};

} // namespace ptmag
