#include "starscat/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace starscat {

const CouplingST& validate_st(const CouplingST& c) {
  if (c.n < 2)
    throw ValidationError("coupling degree must satisfy n >= 2, got n=" +
                          std::to_string(c.n));
  if (c.m < 1 || c.m > c.n - 1)
    throw ValidationError("rank split must satisfy 1 <= m <= n-1, got m=" +
                          std::to_string(c.m) + " for n=" + std::to_string(c.n));
  if (c.T.rows() != c.m || c.T.cols() != c.n - c.m)
    throw ValidationError(
        "T must be " + std::to_string(c.m) + "x" + std::to_string(c.n - c.m) +
        ", got " + std::to_string(c.T.rows()) + "x" + std::to_string(c.T.cols()));
  if (!c.T.allFinite())
    throw ValidationError("T contains a non-finite entry");
  return c;
}

const CouplingAB& validate_ab(const CouplingAB& c, double tol) {
  const Eigen::Index n = c.A.rows();
  if (n < 1 || c.A.cols() != n || c.B.rows() != n || c.B.cols() != n)
    throw ValidationError("A and B must be square matrices of equal size");
  if (!c.A.allFinite() || !c.B.allFinite())
    throw ValidationError("boundary matrices contain a non-finite entry");

  CMatrix AB(n, 2 * n);
  AB << c.A, c.B;
  Eigen::ColPivHouseholderQR<CMatrix> qr(AB);
  if (qr.rank() != n)
    throw ValidationError("rank(A|B) = " + std::to_string(qr.rank()) +
                          " < n = " + std::to_string(n) +
                          "; boundary condition is degenerate");

  CMatrix H = c.A * c.B.adjoint();
  double scale = std::max(1.0, max_abs(c.A) * max_abs(c.B));
  if (max_abs(H - H.adjoint()) > tol * scale)
    throw ValidationError("A B+ is not Hermitian; boundary condition is not self-adjoint");
  return c;
}

CouplingAB st_to_ab(const CouplingST& c) {
  validate_st(c);
  const int m = c.m;
  const int q = c.n - c.m;
  CouplingAB ab;
  ab.A = CMatrix::Zero(c.n, c.n);
  ab.B = CMatrix::Zero(c.n, c.n);
  ab.A.bottomLeftCorner(q, m) = -c.T.adjoint();
  ab.A.bottomRightCorner(q, q) = CMatrix::Identity(q, q);
  ab.B.topLeftCorner(m, m) = CMatrix::Identity(m, m);
  ab.B.topRightCorner(m, q) = c.T;
  return ab;
}

CMatrix ft_scattering(const CouplingST& c) {
  validate_st(c);
  const int m = c.m;
  const int q = c.n - c.m;
  const CMatrix& T = c.T;
  const CMatrix Im = CMatrix::Identity(m, m);
  const CMatrix Iq = CMatrix::Identity(q, q);
  const CMatrix TTd = T * T.adjoint();
  const CMatrix TdT = T.adjoint() * T;

  // I + T T+ and I + T+ T are Hermitian positive definite by construction,
  // so a failed Cholesky factorization can only mean corrupted input.
  Eigen::LLT<CMatrix> left(Im + TTd);
  Eigen::LLT<CMatrix> right(Iq + TdT);
  if (left.info() != Eigen::Success || right.info() != Eigen::Success)
    throw NumericalError("Cholesky factorization of I + T T+ failed on valid input");

  CMatrix S(c.n, c.n);
  S.topLeftCorner(m, m) = left.solve(Im - TTd);
  S.topRightCorner(m, q) = left.solve(2.0 * T);
  S.bottomLeftCorner(q, m) = right.solve(2.0 * T.adjoint());
  S.bottomRightCorner(q, q) = -right.solve(Iq - TdT);
  return S;
}

CMatrix ks_scattering(const CouplingAB& c, double k) {
  validate_ab(c);
  if (!(k > 0.0))
    throw ValidationError("momentum k must be positive");
  const Complex ik(0.0, k);
  const CMatrix M = c.A + ik * c.B;
  Eigen::PartialPivLU<CMatrix> lu(M);
  const double rc = lu.rcond();
  if (!(rc > kRcondFloor))
    throw SingularSystemError(
        "A + ikB is numerically singular at k=" + std::to_string(k) +
        " (rcond ~ " + std::to_string(rc) + ")", rc);
  return -lu.solve(c.A - ik * c.B);
}

bool is_k_independent(const CouplingAB& c, const std::vector<double>& k_samples,
                      double tol) {
  std::vector<double> ks = k_samples;
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.size() < 2)
    throw ValidationError("is_k_independent needs at least two distinct momenta");
  for (double k : ks)
    if (!(k > 0.0))
      throw ValidationError("all momentum samples must be positive");

  std::vector<CMatrix> mats;
  mats.reserve(ks.size());
  for (double k : ks) mats.push_back(ks_scattering(c, k));
  for (std::size_t i = 0; i + 1 < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (max_abs(mats[i] - mats[j]) > tol) return false;
  return true;
}

int parameter_count(int n, int m) {
  if (n < 2 || m < 1 || m > n - 1)
    throw ValidationError("parameter_count requires n >= 2 and 1 <= m <= n-1");
  return 2 * m * (n - m);
}

}  // namespace starscat
