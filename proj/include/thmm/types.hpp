#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace thmm {

using cplx = std::complex<double>;

// Every block object is a dense complex matrix whose dimensions are
// multiples of the block size q. The aliases document intent at call sites.
using Matrix = Eigen::MatrixXcd;
using MatrixQ = Matrix;
using BlockMatrix = Matrix;
using BlockVector = Matrix;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments or inputs (wrong sizes, too few moments, bad files).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A matrix that must be inverted failed the condition test.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

// A standing assumption of the construction (positivity, invertibility
// of H~ or of the Gamma combination) does not hold for the data.
class AssumptionViolated : public Error {
 public:
  using Error::Error;
};

}  // namespace thmm
