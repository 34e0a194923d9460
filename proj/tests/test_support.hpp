#pragma once

#include <random>

#include "starscat/coupling.hpp"
#include "starscat/types.hpp"

namespace starscat::test {

// Uniform draw from the closed complex disk of the given radius.
inline Complex random_disk(std::mt19937& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  return std::polar(radius * std::sqrt(unit(rng)), angle(rng));
}

// Random coupling of degree n: split uniform in 1..n-1, T entries in a disk
// whose radius is itself drawn up to max_scale.
inline CouplingST random_coupling(std::mt19937& rng, int n, double max_scale = 10.0) {
  std::uniform_int_distribution<int> pick_m(1, n - 1);
  std::uniform_real_distribution<double> pick_scale(0.0, max_scale);
  CouplingST c;
  c.n = n;
  c.m = pick_m(rng);
  const double scale = pick_scale(rng);
  c.T = CMatrix(c.m, n - c.m);
  for (int i = 0; i < c.m; ++i)
    for (int j = 0; j < n - c.m; ++j) c.T(i, j) = random_disk(rng, scale);
  return c;
}

// Independent slow path for the scattering matrix: for incoming line i the
// wave on line j is delta_ij e^{-ikx} + s_j e^{ikx}, tying the boundary data
// (Psi(0), Psi'(0)) in C^{2n} by the vertex condition and the wave shape,
//
//     A Psi(0) +  B Psi'(0) = 0
//    ik Psi(0) -    Psi'(0) = 2ik e_i
//
// after which s = Psi(0) - e_i. Solving this 2n x 2n system column by column
// never touches the blockwise closed form, so it serves as the oracle for
// ft_scattering.
inline CMatrix brute_force_scattering(const CouplingAB& ab, double k) {
  const Eigen::Index n = ab.A.rows();
  const Complex ik(0.0, k);
  CMatrix M(2 * n, 2 * n);
  M.topLeftCorner(n, n) = ab.A;
  M.topRightCorner(n, n) = ab.B;
  M.bottomLeftCorner(n, n) = ik * CMatrix::Identity(n, n);
  M.bottomRightCorner(n, n) = -CMatrix::Identity(n, n);
  Eigen::PartialPivLU<CMatrix> lu(M);
  CMatrix S(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    CVector rhs = CVector::Zero(2 * n);
    rhs(n + i) = 2.0 * ik;
    const CVector sol = lu.solve(rhs);
    S.col(i) = sol.head(n);
    S(i, i) -= 1.0;
  }
  return S;
}

}  // namespace starscat::test
