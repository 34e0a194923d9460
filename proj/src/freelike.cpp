#include "starscat/freelike.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace starscat {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

double wrap_2pi(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  return y;
}

bool is_identity_perm(const std::vector<int>& perm) {
  for (std::size_t a = 0; a < perm.size(); ++a)
    if (perm[a] != static_cast<int>(a)) return false;
  return true;
}

// Unit phases (1, e^{i xi_2}, ...) of the form's diagonal matrix D.
CVector phase_vector(const FreeLikeForm& f) {
  CVector d(f.n);
  d(0) = Complex(1.0, 0.0);
  for (int b = 1; b < f.n; ++b) d(b) = std::polar(1.0, f.phases(b - 1));
  return d;
}

// The balanced canonical block matrix for even n.
CMatrix balanced_canonical(int n) {
  const int h = n / 2;
  const double w = 2.0 / n;
  CMatrix M(n, n);
  M.topLeftCorner(h, h) = CMatrix::Identity(h, h) - w * CMatrix::Ones(h, h);
  M.topRightCorner(h, h) = w * CMatrix::Ones(h, h);
  M.bottomLeftCorner(h, h) = w * CMatrix::Ones(h, h);
  M.bottomRightCorner(h, h) = -CMatrix::Identity(h, h) + w * CMatrix::Ones(h, h);
  return M;
}

}  // namespace

const FreeLikeForm& validate_form(const FreeLikeForm& f) {
  if (f.n < 2)
    throw ValidationError("free-like form needs n >= 2, got n=" + std::to_string(f.n));
  if (f.phases.size() != f.n - 1)
    throw ValidationError("free-like form needs exactly n-1 phases, got " +
                          std::to_string(f.phases.size()));
  if (!f.phases.allFinite())
    throw ValidationError("free-like form has a non-finite phase");
  if (static_cast<int>(f.perm.size()) != f.n)
    throw ValidationError("free-like permutation must have n entries");
  std::vector<bool> seen(f.n, false);
  for (int v : f.perm) {
    if (v < 0 || v >= f.n || seen[v])
      throw ValidationError("free-like permutation is not a bijection on 0..n-1");
    seen[v] = true;
  }
  switch (f.kind) {
    case FreeLikeCase::MinusJ:
      if (f.p != 0) throw ValidationError("MinusJ form requires p = 0");
      break;
    case FreeLikeCase::PlusJ:
      if (f.p != f.n) throw ValidationError("PlusJ form requires p = n");
      break;
    case FreeLikeCase::Balanced:
      if (f.n % 2 != 0)
        throw ValidationError("balanced case requires even n, got n=" +
                              std::to_string(f.n));
      if (2 * f.p != f.n) throw ValidationError("balanced form requires p = n/2");
      break;
  }
  if (f.kind != FreeLikeCase::Balanced && !is_identity_perm(f.perm))
    throw ValidationError("permutation must be the identity unless the form is balanced");
  return f;
}

bool is_freelike(const CMatrix& S, double tol) {
  const Eigen::Index n = S.rows();
  if (n < 2 || S.cols() != n)
    throw ValidationError("scattering matrix must be square with n >= 2");
  const double diag = 1.0 - 2.0 / static_cast<double>(n);
  const double off = 2.0 / static_cast<double>(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double want = (i == j) ? diag : off;
      if (std::abs(std::abs(S(i, j)) - want) > tol) return false;
    }
  return true;
}

FreeLikeForm classify_freelike(const CMatrix& S, double tol) {
  const int n = static_cast<int>(S.rows());
  if (n < 2 || S.cols() != n)
    throw ValidationError("scattering matrix must be square with n >= 2");
  if (!is_freelike(S, tol))
    throw NotFreeLikeError("amplitude moduli are not free-like");
  if (max_abs(S - S.adjoint()) > tol)
    throw NotHermitianError(
        "free-like moduli but the matrix is not Hermitian; "
        "no scale-invariant coupling produces it");

  FreeLikeForm f;
  f.n = n;
  f.phases = RVector::Zero(n - 1);
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);

  if (n == 2) {
    // The diagonal vanishes at degree 2, so p carries no information and
    // both unpermuted families cover all of these matrices. Break the tie
    // so the recovered phase lands in (-pi/2, pi/2].
    const Complex s = S(0, 1);
    if (s.real() >= 0.0) {
      f.kind = FreeLikeCase::MinusJ;
      f.p = 0;
      f.phases(0) = wrap_2pi(std::arg(s));
    } else {
      f.kind = FreeLikeCase::PlusJ;
      f.p = 2;
      f.phases(0) = wrap_2pi(std::arg(-s));
    }
    return f;
  }

  int p = 0;
  for (int j = 0; j < n; ++j)
    if (S(j, j).real() > 0.0) ++p;

  if (p == 0) {
    // S = D+ (-I + (2/n)J) D, so S_1b = (2/n) d_b for b >= 2.
    f.kind = FreeLikeCase::MinusJ;
    f.p = 0;
    for (int b = 1; b < n; ++b) f.phases(b - 1) = wrap_2pi(std::arg(S(0, b)));
    return f;
  }
  if (p == n) {
    // S = D+ (I - (2/n)J) D, so S_1b = -(2/n) d_b for b >= 2.
    f.kind = FreeLikeCase::PlusJ;
    f.p = n;
    for (int b = 1; b < n; ++b) f.phases(b - 1) = wrap_2pi(std::arg(-S(0, b)));
    return f;
  }
  if (2 * p != n)
    throw InconsistentPError(
        "diagonal sign count p=" + std::to_string(p) + " of n=" + std::to_string(n) +
        " fits no canonical family (expected 0, n, or n/2); input is corrupted");

  // Balanced. Stable-sort the positive-diagonal lines to the front, then
  // recover D in two passes, mirroring the constructive classification: a
  // first diagonal from row 1 and a residual one from row p+1.
  f.kind = FreeLikeCase::Balanced;
  f.p = p;
  std::vector<int> perm;
  perm.reserve(n);
  for (int j = 0; j < n; ++j)
    if (S(j, j).real() > 0.0) perm.push_back(j);
  for (int j = 0; j < n; ++j)
    if (!(S(j, j).real() > 0.0)) perm.push_back(j);
  f.perm = perm;

  CMatrix Mt(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) Mt(a, b) = S(perm[a], perm[b]);

  // Row 1 of the canonical matrix is (1-2/n, -2/n, ..., -2/n, +2/n, ..),
  // negative over the first block, positive over the second, so each d_b is
  // read off a single entry.
  CVector dhat = CVector::Ones(n);
  for (int b = 1; b < n; ++b) {
    Complex z = Mt(0, b);
    if (b < p) z = -z;
    dhat(b) = std::polar(1.0, std::arg(z));
  }
  const CMatrix Sh = dhat.asDiagonal() * Mt * dhat.conjugate().asDiagonal();

  // Row p+1 entries toward the rest of the second block are +2/n in the
  // canonical matrix; absorb whatever phase is left there.
  CVector dchk = CVector::Ones(n);
  for (int b = p + 1; b < n; ++b) dchk(b) = std::polar(1.0, std::arg(Sh(p, b)));

  for (int b = 1; b < n; ++b)
    f.phases(b - 1) = wrap_2pi(std::arg(dchk(b) * dhat(b)));
  return f;
}

CouplingST build_freelike(const FreeLikeForm& f) {
  validate_form(f);
  const int n = f.n;
  const CVector d = phase_vector(f);
  CouplingST c;
  c.n = n;

  switch (f.kind) {
    case FreeLikeCase::MinusJ: {
      c.m = 1;
      c.T = CMatrix(1, n - 1);
      for (int j = 0; j < n - 1; ++j) c.T(0, j) = d(j + 1);
      break;
    }
    case FreeLikeCase::PlusJ: {
      // The unimodular column reproducing D+ (I - (2/n)J) D under
      // ft_scattering is t_a = -e^{i(xi_n - xi_a)}: with it the upper-left
      // block I - (2/n) t t+ matches the canonical entries, and the
      // off-diagonal blocks 2t/n, 2t+/n pick up the required -e^{i(xi_n -
      // xi_a)} factors. A bare column of e^{i xi} phases would instead land
      // in the MinusJ family for n = 2.
      c.m = n - 1;
      c.T = CMatrix(n - 1, 1);
      for (int a = 0; a < n - 1; ++a) c.T(a, 0) = -d(n - 1) * std::conj(d(a));
      break;
    }
    case FreeLikeCase::Balanced: {
      const int h = n / 2;
      c.m = h;
      c.T = CMatrix(h, h);
      const double w = 2.0 / n;
      for (int a = 0; a < h; ++a)
        for (int b = 0; b < h; ++b) c.T(a, b) = w * std::conj(d(a)) * d(h + b);
      break;
    }
  }
  validate_st(c);
  return c;
}

CMatrix realize_smatrix(const FreeLikeForm& f) {
  validate_form(f);
  const int n = f.n;
  const CVector d = phase_vector(f);
  const double w = 2.0 / n;

  CMatrix C;
  switch (f.kind) {
    case FreeLikeCase::MinusJ:
      C = w * (d.conjugate() * d.transpose());
      C -= CMatrix::Identity(n, n);
      break;
    case FreeLikeCase::PlusJ:
      C = -w * (d.conjugate() * d.transpose());
      C += CMatrix::Identity(n, n);
      break;
    case FreeLikeCase::Balanced:
      C = d.conjugate().asDiagonal() * balanced_canonical(n) * d.asDiagonal();
      break;
  }

  if (f.kind != FreeLikeCase::Balanced) return C;
  CMatrix S(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) S(f.perm[a], f.perm[b]) = C(a, b);
  return S;
}

std::vector<std::pair<CouplingST, CMatrix>> enumerate_time_reversal(
    int n, FreeLikeCase kind) {
  if (n < 2)
    throw ValidationError("enumeration needs n >= 2, got n=" + std::to_string(n));
  if (n > 24)
    throw ValidationError("enumeration of 2^(n-1) couplings is unreasonable for n=" +
                          std::to_string(n));
  if (kind == FreeLikeCase::Balanced && n % 2 != 0)
    throw ValidationError("balanced case requires even n, got n=" + std::to_string(n));

  constexpr double kPi = 3.1415926535897932384626433832795;
  FreeLikeForm f;
  f.n = n;
  f.kind = kind;
  f.p = (kind == FreeLikeCase::MinusJ) ? 0
        : (kind == FreeLikeCase::PlusJ) ? n
                                        : n / 2;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), 0);

  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  std::vector<std::pair<CouplingST, CMatrix>> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    f.phases = RVector::Zero(n - 1);
    for (int b = 0; b < n - 1; ++b)
      if ((mask >> b) & 1u) f.phases(b) = kPi;
    CouplingST c = build_freelike(f);
    CMatrix S = ft_scattering(c);
    out.emplace_back(std::move(c), std::move(S));
  }
  return out;
}

}  // namespace starscat
