#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aimsolve {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownSymbolError : public Error {
 public:
  UnknownSymbolError(const std::string& symbol, std::size_t position)
      : Error("unknown symbol '" + symbol + "' at position " + std::to_string(position)),
        symbol_(symbol),
        position_(position) {}
  const std::string& symbol() const { return symbol_; }
  std::size_t position() const { return position_; }

 private:
  std::string symbol_;
  std::size_t position_;
};

// An expression falls outside rational-times-exp(polynomial) form.
class UnsupportedFormError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

class PoleError : public Error {
 public:
  using Error::Error;
};

class UnboundParameterError : public Error {
 public:
  explicit UnboundParameterError(const std::string& name)
      : Error("parameter '" + name + "' has no numeric binding"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Degree guard tripped during iteration.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class DegenerateError : public Error {
 public:
  using Error::Error;
};

class TransformInapplicableError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  using Error::Error;
};

class IntegrationEscapedError : public Error {
 public:
  IntegrationEscapedError(const std::string& msg, double where) : Error(msg), where_(where) {}
  double where() const { return where_; }

 private:
  double where_;
};

class NoTruncationError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace aimsolve
