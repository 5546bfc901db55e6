#pragma once

#include <stdexcept>
#include <string>

namespace smv {

// Base for every failure raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_argument : public error {
 public:
  using error::error;
};

// Degree out of the supported range for the requested operation.
class invalid_degree : public invalid_argument {
 public:
  using invalid_argument::invalid_argument;
};

// The evaluation point z is (numerically) a critical point of P.
class critical_point_error : public error {
 public:
  using error::error;
};

// z and zeta coincide, so the difference quotient is undefined.
class coincident_points_error : public error {
 public:
  using error::error;
};

// Root solver did not reach the residual tolerance.
class not_converged_error : public error {
 public:
  using error::error;
};

}  // namespace smv
