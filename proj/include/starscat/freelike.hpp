#pragma once

#include <utility>
#include <vector>

#include "starscat/coupling.hpp"
#include "starscat/types.hpp"

namespace starscat {

// A coupling is free-like when its scattering amplitudes carry the moduli of
// the free connection: |S_jj| = 1 - 2/n on the diagonal, |S_ij| = 2/n off
// it. Every such S is Hermitian unitary and, after conjugation by a diagonal
// phase matrix D = diag(1, e^{i xi_2}, ..., e^{i xi_n}) and possibly a
// permutation, falls into exactly one of three canonical families,
// distinguished by p, the number of diagonal entries equal to +(1 - 2/n):
//
//   MinusJ    p = 0:    S = D+ (-I + (2/n) J) D
//   PlusJ     p = n:    S = D+ ( I - (2/n) J) D
//   Balanced  p = n/2:  S = P [ D+ M D ] P^T,  n even, with the block matrix
//                       M = (  I - (2/n)J   (2/n)J      )
//                           (  (2/n)J      -I + (2/n)J  )   (blocks n/2)
//
// J is the all-ones matrix of the indicated size and P a permutation.
enum class FreeLikeCase { MinusJ, PlusJ, Balanced };

struct FreeLikeForm {
  int n = 0;
  FreeLikeCase kind = FreeLikeCase::MinusJ;

  // (xi_2, ..., xi_n), each in [0, 2pi); the leading phase is fixed to 0 so
  // the gauge freedom in D is spent deterministically.
  RVector phases;

  // 0-based permutation, identity unless kind == Balanced. perm[a] is the
  // physical line occupying canonical slot a, so a physical matrix S and its
  // canonical form C are related by S(perm[a], perm[b]) = C(a, b).
  std::vector<int> perm;

  // Count of positive diagonal entries: 0, n, or n/2 according to kind.
  int p = 0;
};

const FreeLikeForm& validate_form(const FreeLikeForm& f);

// True iff every diagonal modulus is within tol of 1 - 2/n and every
// off-diagonal modulus within tol of 2/n.
bool is_freelike(const CMatrix& S, double tol = kModuliTol);

// Decompose a free-like Hermitian S into its canonical form. The permutation
// is the stable sort moving positive-diagonal lines to the front; phases are
// recovered from the first row of the sorted matrix, with a second pass
// through row p+1 fixing the residual phases of the lower block in the
// balanced case. Throws NotFreeLikeError, NotHermitianError, or
// InconsistentPError (diagonal sign count outside {0, n, n/2}).
//
// Degree 2 is degenerate: the diagonal vanishes, both unpermuted families
// sweep the same matrices, and the tie is broken by Re S_12 >= 0 (MinusJ)
// versus Re S_12 < 0 (PlusJ).
FreeLikeForm classify_freelike(const CMatrix& S, double tol = kModuliTol);

// ST-form coupling realizing the canonical (unpermuted) matrix of the form:
//
//   MinusJ:   m = 1,     T = row ( e^{i xi_2}, ..., e^{i xi_n} )
//   PlusJ:    m = n - 1, T = column with t_a = -e^{i (xi_n - xi_a)}, xi_1 = 0
//   Balanced: m = n/2,   T = (2/n) X+ J Y, X = diag of the first-half phases,
//                        Y = diag of the second-half phases
//
// Each choice plugs into ft_scattering to give exactly the matching
// canonical matrix; for the balanced case the stored permutation is applied
// by realize_smatrix, not folded into T (a permuted balanced matrix need not
// admit any single ST-form with this block layout, since the leading m x m
// block of ft_scattering output is always positive definite).
CouplingST build_freelike(const FreeLikeForm& f);

// Closed-form scattering matrix of the form, permutation included. Agrees
// with ft_scattering(build_freelike(f)) up to that permutation.
CMatrix realize_smatrix(const FreeLikeForm& f);

// All couplings of the given family with time-reversal symmetry: phases
// restricted to {0, pi}, giving exactly 2^(n-1) members with pairwise
// distinct scattering matrices. Balanced enumeration keeps the identity
// partition. Each entry pairs the coupling with its scattering matrix.
std::vector<std::pair<CouplingST, CMatrix>> enumerate_time_reversal(
    int n, FreeLikeCase kind);

}  // namespace starscat
