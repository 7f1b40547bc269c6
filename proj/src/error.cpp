#include "segpc/error.hpp"

namespace segpc {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument:
      return "invalid-argument";
    case ErrorKind::Size:
      return "size-error";
    case ErrorKind::InsufficientSamples:
      return "insufficient-samples";
    case ErrorKind::RankDeficient:
      return "rank-deficient";
    case ErrorKind::RankDeficientPool:
      return "rank-deficient-pool";
    case ErrorKind::UnsupportedModel:
      return "unsupported-model";
    case ErrorKind::SolverDivergence:
      return "solver-divergence";
    case ErrorKind::AdjointSolve:
      return "adjoint-solve";
  }
  return "unknown";
}

}  // namespace segpc
