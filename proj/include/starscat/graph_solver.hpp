#pragma once

#include <string>
#include <vector>

#include "starscat/approximation.hpp"
#include "starscat/coupling.hpp"
#include "starscat/types.hpp"

namespace starscat {

// Two independent ways to propagate (psi, psi') across a connector.
// Lemma uses the closed form: a constant vector potential A on a segment of
// length L/2 inside an edge of length L contributes only the overall phase
// e^{i A L / 2}, so M = e^{i A L / 2} M_free(L). Segmented rebuilds the edge
// from three pieces (free quarter, potential region, free quarter) by
// matching covariant plane waves and is kept as an oracle for the closed
// form.
enum class TransferMode { Lemma, Segmented };

// 2x2 transfer matrix mapping (psi(0), psi'(0)) to (psi(L), psi'(L)) on one
// connector at momentum k, with L = conn.length. The two modes agree to
// roundoff.
Eigen::Matrix2cd connector_transfer(const Connector& conn, double k,
                                    TransferMode mode = TransferMode::Lemma);

// Scattering matrix of the approximating graph at momentum k. For each
// incoming half-line the stationary problem is one dense linear system in
// the n outgoing amplitudes plus the boundary data (value, derivative) of
// each connector; all n right-hand sides share a single LU factorization.
// At every endpoint the wave value is continuous and the outward derivative
// sum equals alpha_j times the value (a half-line contributes +psi'(0), a
// connector +phi'(0) at its from-end and -phi'(L) at its to-end).
// Throws SingularSystemError, with the condition estimate attached, when k
// hits a resonance of the compact part; no automatic perturbation of k is
// ever applied. The result is checked to be unitary within 1e-9.
CMatrix solve_scattering(const ApproxGraph& g, double k);

struct ConvergenceRow {
  double d = 0.0;
  double error = 0.0;
  bool ok = false;
  std::string message;
};

// Rows in input order plus the least-squares slope of log(error) against
// log(d), using only successful rows with error above kFitFloor. fitted_order
// is NaN when fewer than two rows qualify.
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  double fitted_order = 0.0;
};

// Error of the approximation against ft_scattering(c) over a strictly
// decreasing list of scales (at least three). Solver failures mark their row
// as failed instead of aborting the study; at least three rows must succeed.
ConvergenceReport convergence_study(const CouplingST& c, double k,
                                    const std::vector<double>& d_values);

}  // namespace starscat
