#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace starscat {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Library-wide tolerances. kDefaultTol guards algebraic identities evaluated
// in double precision; kModuliTol is looser because classification may
// consume noisy solver output rather than exact formulas.
inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kModuliTol = 1e-9;

// Entries at or below this magnitude count as structural zeros when deciding
// whether a connector edge exists at all.
inline constexpr double kEntryZeroTol = 1e-14;

// Dense solves whose reciprocal condition estimate falls below this are
// rejected instead of returning garbage.
inline constexpr double kRcondFloor = 1e-14;

// Convergence-order fits ignore rows whose error sits below this floor; such
// rows measure roundoff, not the approximation.
inline constexpr double kFitFloor = 1e-12;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad input: wrong shapes, violated invariants, unparsable files. The CLI
// maps this to exit code 2.
class ValidationError : public Error {
public:
  using Error::Error;
};

// The computation itself failed (singular system, broken postcondition).
// The CLI maps this to exit code 3.
class NumericalError : public Error {
public:
  using Error::Error;
};

class SingularSystemError : public NumericalError {
public:
  SingularSystemError(const std::string& msg, double rcond)
      : NumericalError(msg), rcond_(rcond) {}
  double rcond() const { return rcond_; }

private:
  double rcond_;
};

class NotFreeLikeError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotHermitianError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InconsistentPError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Largest entry magnitude, the max-entry norm used for every tolerance check
// in this library.
inline double max_abs(const CMatrix& M) {
  return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

}  // namespace starscat
