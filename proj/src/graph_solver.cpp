#include "starscat/graph_solver.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace starscat {

namespace {

Eigen::Matrix2cd free_transfer(double k, double L) {
  const double c = std::cos(k * L);
  const double s = std::sin(k * L);
  Eigen::Matrix2cd M;
  M << Complex(c), Complex(s / k), Complex(-k * s), Complex(c);
  return M;
}

// Propagate (value, derivative) across a free stretch of given length.
std::pair<Complex, Complex> free_step(Complex V, Complex W, double k, double len) {
  const double c = std::cos(k * len);
  const double s = std::sin(k * len);
  return {V * c + W * (s / k), -V * (k * s) + W * c};
}

}  // namespace

Eigen::Matrix2cd connector_transfer(const Connector& conn, double k,
                                    TransferMode mode) {
  if (!(k > 0.0)) throw ValidationError("momentum k must be positive");
  if (!(conn.length > 0.0)) throw ValidationError("connector length must be positive");
  const double L = conn.length;
  const double A = conn.potential;

  if (mode == TransferMode::Lemma)
    return std::polar(1.0, A * L / 2.0) * free_transfer(k, L);

  // Segmented oracle. On the middle half the eigenfunctions of
  // (-i d/dx - A)^2 are e^{i(A+k)x} and e^{i(A-k)x}, whose covariant
  // derivative psi' - iA psi is +ik resp. -ik times the function. Matching
  // at the support boundaries requires continuity of psi and of the
  // covariant derivative, which on the free sides is the plain derivative.
  const Complex ik(0.0, k);
  Eigen::Matrix2cd M;
  const Complex eA = std::polar(1.0, A * L / 2.0);
  const Complex ep = std::polar(1.0, k * L / 2.0);
  for (int col = 0; col < 2; ++col) {
    Complex V(col == 0 ? 1.0 : 0.0);
    Complex W(col == 0 ? 0.0 : 1.0);
    std::tie(V, W) = free_step(V, W, k, L / 4.0);
    // coefficients of the two covariant waves, folded with their value at
    // the left edge of the support
    const Complex P = 0.5 * (V + W / ik);
    const Complex Q = 0.5 * (V - W / ik);
    V = eA * (P * ep + Q * std::conj(ep));
    W = ik * eA * (P * ep - Q * std::conj(ep));
    std::tie(V, W) = free_step(V, W, k, L / 4.0);
    M(0, col) = V;
    M(1, col) = W;
  }
  return M;
}

CMatrix solve_scattering(const ApproxGraph& g, double k) {
  validate_graph(g);
  if (!(k > 0.0)) throw ValidationError("momentum k must be positive");

  const int n = g.n;
  const int E = static_cast<int>(g.connectors.size());
  const int N = n + 2 * E;
  const Complex ik(0.0, k);

  // Unknowns per incoming line: s_0..s_{n-1} outgoing amplitudes, then
  // (u_e, v_e) = (phi_e(0), phi_e'(0)) for each connector. The half-line
  // wave for incoming line i is delta_ij e^{-ikx} + s_j e^{ikx}, so its
  // boundary value is delta_ij + s_j and its outward derivative
  // ik (s_j - delta_ij).
  CMatrix L = CMatrix::Zero(N, N);
  CMatrix rhs = CMatrix::Zero(N, n);

  std::vector<Eigen::Matrix2cd> Ms;
  Ms.reserve(E);
  for (const Connector& conn : g.connectors)
    Ms.push_back(connector_transfer(conn, k, TransferMode::Lemma));

  for (int e = 0; e < E; ++e) {
    const Connector& conn = g.connectors[e];
    const Eigen::Matrix2cd& M = Ms[e];
    const int iu = n + 2 * e;
    const int iv = iu + 1;
    // value continuity at both ends of the connector
    L(2 * e, iu) = 1.0;
    L(2 * e, conn.from) = -1.0;
    rhs(2 * e, conn.from) = 1.0;
    L(2 * e + 1, iu) = M(0, 0);
    L(2 * e + 1, iv) = M(0, 1);
    L(2 * e + 1, conn.to) = -1.0;
    rhs(2 * e + 1, conn.to) = 1.0;
  }
  for (int j = 0; j < n; ++j) {
    const int row = 2 * E + j;
    L(row, j) = ik - g.alpha(j);
    rhs(row, j) = g.alpha(j) + ik;
    for (int e = 0; e < E; ++e) {
      const Connector& conn = g.connectors[e];
      const Eigen::Matrix2cd& M = Ms[e];
      const int iu = n + 2 * e;
      const int iv = iu + 1;
      if (conn.from == j) L(row, iv) += 1.0;
      if (conn.to == j) {
        L(row, iu) -= M(1, 0);
        L(row, iv) -= M(1, 1);
      }
    }
  }

  Eigen::PartialPivLU<CMatrix> lu(L);
  const double rc = lu.rcond();
  if (!(rc > kRcondFloor))
    throw SingularSystemError(
        "vertex system is numerically singular at k=" + std::to_string(k) +
        " (rcond ~ " + std::to_string(rc) +
        "); likely a resonance of the compact part, retry with k shifted by ~1e-3",
        rc);
  const CMatrix X = lu.solve(rhs);
  CMatrix S = X.topRows(n);

  const double udev = max_abs(S.adjoint() * S - CMatrix::Identity(n, n));
  if (udev > kModuliTol)
    throw NumericalError("solved scattering matrix is not unitary (deviation " +
                         std::to_string(udev) + "); system is ill-conditioned");
  return S;
}

ConvergenceReport convergence_study(const CouplingST& c, double k,
                                    const std::vector<double>& d_values) {
  validate_st(c);
  if (!(k > 0.0)) throw ValidationError("momentum k must be positive");
  if (d_values.size() < 3)
    throw ValidationError("convergence study needs at least three scales");
  for (std::size_t i = 0; i < d_values.size(); ++i) {
    if (!(d_values[i] > 0.0))
      throw ValidationError("all scales must be positive");
    if (i > 0 && !(d_values[i] < d_values[i - 1]))
      throw ValidationError("scales must be strictly decreasing");
  }

  const CMatrix S_exact = ft_scattering(c);
  ConvergenceReport report;
  report.rows.reserve(d_values.size());
  int good = 0;
  for (double d : d_values) {
    ConvergenceRow row;
    row.d = d;
    try {
      const CMatrix S = solve_scattering(build_approximation(c, d), k);
      row.error = max_abs(S - S_exact);
      row.ok = true;
      ++good;
    } catch (const NumericalError& e) {
      row.error = std::numeric_limits<double>::quiet_NaN();
      row.ok = false;
      row.message = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  if (good < 3)
    throw NumericalError("fewer than three scales produced a solvable system");

  // Least-squares slope of log(error) against log(d) over the meaningful
  // rows. Errors at the double-precision floor would only pollute the fit.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int fitted = 0;
  for (const ConvergenceRow& row : report.rows) {
    if (!row.ok || !(row.error > kFitFloor)) continue;
    const double x = std::log(row.d);
    const double y = std::log(row.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++fitted;
  }
  if (fitted >= 2 && sxx * fitted - sx * sx > 0.0)
    report.fitted_order = (fitted * sxy - sx * sy) / (fitted * sxx - sx * sx);
  else
    report.fitted_order = std::numeric_limits<double>::quiet_NaN();
  return report;
}

}  // namespace starscat
