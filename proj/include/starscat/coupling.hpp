#pragma once

#include <vector>

#include "starscat/types.hpp"

namespace starscat {

// A scale-invariant vertex coupling on a star graph of
// degree n, in ST-form. Split the boundary data at the vertex into the
// first m lines (block I) and the remaining n-m lines (block II); the
// coupling is
//
//     psi'_I  + T psi'_II = 0
//     psi_II  - T+ psi_I  = 0
//
// with T a complex m x (n-m) matrix and T+ its conjugate transpose. Values
// and derivatives never mix across the two equations, which is exactly why
// the scattering matrix of such a coupling carries no momentum dependence.
//
// Entry T(j, l) couples line j (0-based, j < m) to line m + l. In formulas
// the second index is often written as the line label m+1..n; storage here
// is plain 0-based and contiguous, and any label shift stays inside
// accessors and serialization.
struct CouplingST {
  int n = 0;
  int m = 0;
  CMatrix T;
};

// General vertex boundary condition A psi(0) + B psi'(0) = 0. Admissible
// couplings satisfy rank(A|B) = n and A B+ = B A+ (Hermiticity of A B+),
// which together make the vertex self-adjoint.
struct CouplingAB {
  CMatrix A;
  CMatrix B;
};

// Returns the coupling unchanged if all CouplingST invariants hold:
// n >= 2, 1 <= m <= n-1, T exactly m x (n-m), all entries finite.
const CouplingST& validate_st(const CouplingST& c);

// Returns the coupling unchanged if A, B are square of equal size, finite,
// rank(A|B) is full and A B+ is Hermitian within tol.
const CouplingAB& validate_ab(const CouplingAB& c, double tol = kDefaultTol);

// ST-form to (A, B) form:
//
//     A = ( 0    0 )        B = ( I  T )
//         ( -T+  I )            ( 0  0 )
//
// The output satisfies A B+ = B A+ exactly (the product is zero blockwise).
CouplingAB st_to_ab(const CouplingST& c);

// Exact scattering matrix of a scale-invariant coupling, assembled blockwise:
//
//     S = ( (I+TT+)^-1 (I-TT+)      (I+TT+)^-1 2T      )
//         ( (I+T+T)^-1 2T+         -(I+T+T)^-1 (I-T+T) )
//
// Both Gram-type matrices are Hermitian positive definite, so the solves
// cannot fail for valid input. S is unitary and Hermitian, hence an
// involution; its +1 eigenspace has dimension m.
CMatrix ft_scattering(const CouplingST& c);

// Momentum-dependent scattering matrix of a general boundary condition,
// S(k) = -(A + ikB)^{-1} (A - ikB), the unique matrix with
// A (S + I) + ikB (S - I) = 0. Throws SingularSystemError if A + ikB is
// numerically singular, which signals inadmissible boundary data.
CMatrix ks_scattering(const CouplingAB& c, double k);

// True iff S(k) agrees across all sample momenta within tol (max-entry
// distance over all pairs). Requires at least two distinct positive samples.
bool is_k_independent(const CouplingAB& c, const std::vector<double>& k_samples,
                      double tol = kDefaultTol);

// Number of real parameters of the degree-n, split-m family: 2 m (n - m).
int parameter_count(int n, int m);

}  // namespace starscat
