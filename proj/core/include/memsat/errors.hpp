#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace memsat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No mix of 3- and 4-occurrence variables fills the XOR literal slots.
class InfeasibleBalance : public Error {
 public:
  InfeasibleBalance(std::size_t n, double rho_xor, const std::string& why)
      : Error("infeasible balanced instance (n=" + std::to_string(n) +
              ", rho_xor=" + std::to_string(rho_xor) + "): " + why),
        n_(n),
        rho_xor_(rho_xor) {}
  std::size_t n() const { return n_; }
  double rho_xor() const { return rho_xor_; }

 private:
  std::size_t n_;
  double rho_xor_;
};

class LengthMismatch : public Error {
 public:
  LengthMismatch(std::size_t expected, std::size_t actual)
      : Error("assignment length " + std::to_string(actual) + " does not match " +
              std::to_string(expected) + " variables") {}
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class HeaderMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when an integration step produced NaN or Inf, usually because dt
/// is too large for the current memory magnitudes.
class NonFiniteState : public Error {
 public:
  explicit NonFiniteState(long long step)
      : Error("non-finite state after step " + std::to_string(step)), step_(step) {}
  long long step() const { return step_; }

 private:
  long long step_;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace memsat
