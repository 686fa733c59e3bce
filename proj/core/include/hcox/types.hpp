#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace hcox {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-scope input: bad graph spec, shape mismatch, non-Lanner graph.
class InputError : public Error {
 public:
  using Error::Error;
};

// Matrix entries left the representable range during enumeration or transport.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

// A point, direction or cell violates a geometric precondition.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A resource or truncation guard was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

}  // namespace hcox
