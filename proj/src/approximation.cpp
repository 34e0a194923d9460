#include "starscat/approximation.hpp"

#include <cmath>
#include <set>
#include <utility>

namespace starscat {

namespace {

Complex gram_sum(const CMatrix& T, int j, int k) {
  Complex s(0.0, 0.0);
  for (Eigen::Index l = 0; l < T.cols(); ++l) s += T(j, l) * std::conj(T(k, l));
  return s;
}

}  // namespace

const ApproxGraph& validate_graph(const ApproxGraph& g) {
  if (g.n < 1)
    throw ValidationError("approximating graph needs n >= 1 half-lines");
  if (!(g.d > 0.0))
    throw ValidationError("approximation scale d must be positive");
  if (g.alpha.size() != g.n || !g.alpha.allFinite())
    throw ValidationError("graph needs n finite delta strengths");
  std::set<std::pair<int, int>> pairs;
  for (const Connector& c : g.connectors) {
    if (c.from < 0 || c.from >= g.n || c.to < 0 || c.to >= g.n)
      throw ValidationError("connector endpoint out of range");
    if (c.from == c.to)
      throw ValidationError("self-loop connector is not allowed");
    if (!(c.gamma > 0.0))
      throw ValidationError("connector gamma must be positive");
    if (!std::isfinite(c.potential))
      throw ValidationError("connector potential must be finite");
    if (!(c.length > 0.0) || std::abs(c.length - g.d / c.gamma) > 1e-12 * c.length)
      throw ValidationError("connector length must equal d / gamma");
    auto key = std::minmax(c.from, c.to);
    if (!pairs.insert(key).second)
      throw ValidationError("duplicate connector between a pair of endpoints");
  }
  return g;
}

ApproxGraph build_approximation(const CouplingST& c, double d) {
  validate_st(c);
  if (!(d > 0.0))
    throw ValidationError("approximation scale d must be positive, got " +
                          std::to_string(d));
  const int m = c.m;
  const int q = c.n - c.m;
  const CMatrix& T = c.T;

  ApproxGraph g;
  g.n = c.n;
  g.d = d;
  g.alpha = RVector::Zero(c.n);

  // Cross edges, one per nonzero entry of T. The orientation runs from the
  // high-index endpoint toward the low one, and the potential is fixed by
  // gamma e^{-i (d / 2 gamma) A} = conj(t).
  for (int j = 0; j < m; ++j)
    for (int l = 0; l < q; ++l) {
      const Complex t = T(j, l);
      const double gamma = std::abs(t);
      if (gamma <= kEntryZeroTol) continue;
      Connector conn;
      conn.from = m + l;
      conn.to = j;
      conn.gamma = gamma;
      conn.potential = (2.0 * gamma / d) * std::arg(t);
      conn.length = d / gamma;
      g.connectors.push_back(conn);
    }

  // Intra edges among the first m lines, driven by the Gram sums sigma_jk;
  // here the phase target is -sigma_jk.
  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      const Complex sigma = gram_sum(T, j, k);
      const double gamma = std::abs(sigma);
      if (gamma <= kEntryZeroTol) continue;
      Connector conn;
      conn.from = j;
      conn.to = k;
      conn.gamma = gamma;
      conn.potential = -(2.0 * gamma / d) * std::arg(-sigma);
      conn.length = d / gamma;
      g.connectors.push_back(conn);
    }

  for (int l = 0; l < q; ++l) {
    double colsum = 0.0;
    for (int j = 0; j < m; ++j) colsum += std::abs(T(j, l));
    g.alpha(m + l) = (1.0 - colsum) / d;
  }
  for (int j = 0; j < m; ++j) {
    double row_sq = 0.0;
    double row_abs = 0.0;
    for (int l = 0; l < q; ++l) {
      const double a = std::abs(T(j, l));
      row_sq += a * a;
      row_abs += a;
    }
    double gram_abs = 0.0;
    for (int k = 0; k < m; ++k)
      if (k != j) gram_abs += std::abs(gram_sum(T, j, k));
    g.alpha(j) = (row_sq - gram_abs - row_abs) / d;
  }

  validate_graph(g);
  return g;
}

double reconstruction_residual(const CouplingST& c, const ApproxGraph& g) {
  validate_st(c);
  validate_graph(g);
  if (g.n != c.n)
    throw ValidationError("graph degree does not match the coupling");
  double worst = 0.0;
  for (const Connector& conn : g.connectors) {
    Complex target;
    if (conn.from >= c.m) {
      // cross edge: to < m is the T row, from - m the column
      if (conn.to >= c.m)
        throw ValidationError("connector between two high-index lines is invalid");
      target = std::conj(c.T(conn.to, conn.from - c.m));
    } else {
      if (conn.to < c.m) {
        target = -gram_sum(c.T, conn.from, conn.to);
      } else {
        // cross edge stored with reversed orientation; reversal negates A,
        // which conjugates the realized value, so the target conjugates too
        target = c.T(conn.from, conn.to - c.m);
      }
    }
    const Complex realized =
        std::polar(conn.gamma, -(g.d / (2.0 * conn.gamma)) * conn.potential);
    worst = std::max(worst, std::abs(realized - target));
  }
  return worst;
}

}  // namespace starscat
