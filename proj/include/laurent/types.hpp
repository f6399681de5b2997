#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace laurent {

using cd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

enum class ErrorCode {
  ParseError,
  InvalidArgument,
  DimensionMismatch,
  GridTooCoarse,
  NoConvergence,
  AmbiguousTracking,
  NontrivialMonodromy,
  BandViolation,
  RootFindingFailure,
};

std::string_view to_string(ErrorCode code);

// Every failure the library reports carries one of the codes above; callers
// (the CLI in particular) map them to exit codes and structured error output.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace laurent
