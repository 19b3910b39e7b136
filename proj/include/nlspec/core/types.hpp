#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nlspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

#ifdef NLSPEC_VERSION
inline constexpr const char* kLibraryVersion = NLSPEC_VERSION;
#else
inline constexpr const char* kLibraryVersion = "0.1.0";
#endif

enum class ErrorCode {
  invalid_argument,
  point_outside_domain,
  oracle_evaluation,
  non_finite,
  missing_bandwidth,
  missing_gram,
  indefinite_gram,
  window_exceeds_capacity,
  unsupported,
  steady_state_divergence,
  disconnected,
  empty_set,
  config,
  io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::point_outside_domain: return "point-outside-domain";
    case ErrorCode::oracle_evaluation: return "oracle-evaluation-failure";
    case ErrorCode::non_finite: return "non-finite";
    case ErrorCode::missing_bandwidth: return "missing-bandwidth";
    case ErrorCode::missing_gram: return "missing-gram";
    case ErrorCode::indefinite_gram: return "indefinite-gram";
    case ErrorCode::window_exceeds_capacity: return "window-exceeds-capacity";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::steady_state_divergence: return "steady-state-divergence";
    case ErrorCode::disconnected: return "disconnected";
    case ErrorCode::empty_set: return "empty-set";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string format_complex(Complex z) {
  return "(" + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") + std::to_string(z.imag()) + "i)";
}

}  // namespace nlspec
