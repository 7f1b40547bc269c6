#pragma once

#include <stdexcept>
#include <string>

namespace segpc {

enum class ErrorKind {
  InvalidArgument,
  Size,
  InsufficientSamples,
  RankDeficient,
  RankDeficientPool,
  UnsupportedModel,
  SolverDivergence,
  AdjointSolve,
};

const char* to_string(ErrorKind kind) noexcept;

/// Base of every error raised by the library. The kind lets callers (the CLI
/// in particular) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::InvalidArgument, what) {}
};

class SizeError : public Error {
 public:
  explicit SizeError(const std::string& what) : Error(ErrorKind::Size, what) {}
};

class InsufficientSamples : public Error {
 public:
  explicit InsufficientSamples(const std::string& what)
      : Error(ErrorKind::InsufficientSamples, what) {}
};

/// Least-squares system without full column rank. Carries the condition
/// estimate that triggered the failure.
class RankDeficient : public Error {
 public:
  RankDeficient(const std::string& what, double cond_estimate)
      : Error(ErrorKind::RankDeficient, what), cond_estimate_(cond_estimate) {}

  double cond_estimate() const noexcept { return cond_estimate_; }

 private:
  double cond_estimate_;
};

class RankDeficientPool : public Error {
 public:
  RankDeficientPool(const std::string& what, std::size_t pivots_found)
      : Error(ErrorKind::RankDeficientPool, what), pivots_found_(pivots_found) {}

  std::size_t pivots_found() const noexcept { return pivots_found_; }

 private:
  std::size_t pivots_found_;
};

class UnsupportedModel : public Error {
 public:
  explicit UnsupportedModel(const std::string& what)
      : Error(ErrorKind::UnsupportedModel, what) {}
};

class SolverDivergence : public Error {
 public:
  SolverDivergence(const std::string& what, double last_residual)
      : Error(ErrorKind::SolverDivergence, what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class AdjointSolveError : public Error {
 public:
  explicit AdjointSolveError(const std::string& what)
      : Error(ErrorKind::AdjointSolve, what) {}
};

}  // namespace segpc
