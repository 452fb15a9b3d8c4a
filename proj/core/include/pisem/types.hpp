#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace pisem {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Frobenius-norm threshold for approximate equality. Every "A = B" in the
/// library is implemented as ||A - B||_F <= eps.
struct Tol {
  double eps = 1e-9;

  Tol() = default;
  explicit Tol(double e) : eps(e) {
    if (!(e >= 0.0 && e < 1.0))
      throw std::invalid_argument("Tol: eps must lie in [0, 1)");
  }
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape mismatch or non-square input.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked on input that violates its stated hypotheses.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A structural conclusion that holds for every valid input failed. Either
/// the input does not satisfy the hypotheses after all, or numerics broke
/// down; both cases deserve a loud signal.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

/// Semigroup consists of the zero operator only; structure extraction is
/// undefined.
class DegenerateSemigroupError : public Error {
 public:
  using Error::Error;
};

/// A bounded search (e.g. for an identity power) ran out of iterations.
class SearchExhaustedError : public Error {
 public:
  using Error::Error;
};

/// Full enumeration was refused because it would be exponentially large.
class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

/// Malformed or invalid input file.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Two projections that were required to commute do not.
class CommutativityViolation : public Error {
 public:
  CommutativityViolation(std::string msg, int first, int second, double defect)
      : Error(std::move(msg)), first_index(first), second_index(second),
        commutator_norm(defect) {}

  int first_index;
  int second_index;
  double commutator_norm;
};

}  // namespace pisem
