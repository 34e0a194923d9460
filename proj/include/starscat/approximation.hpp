#pragma once

#include <vector>

#include "starscat/coupling.hpp"
#include "starscat/types.hpp"

namespace starscat {

// One finite edge of the approximating graph. The wave coordinate runs from
// endpoint 'from' (x = 0) to endpoint 'to' (x = length), with a constant
// vector potential of the given strength supported on the middle half of the
// edge, [length/4, 3 length/4]. Reversing the orientation flips the sign of
// the potential. Indices are 0-based; length = d / gamma is stored so the
// edge is self-contained for the solver.
struct Connector {
  int from = 0;
  int to = 0;
  double gamma = 0.0;
  double potential = 0.0;
  double length = 0.0;
};

// The approximating graph at scale d: the n half-lines of the star are cut
// apart, endpoint j gets a delta coupling of strength alpha(j), and selected
// pairs of endpoints are joined by short connector edges.
struct ApproxGraph {
  int n = 0;
  double d = 0.0;
  RVector alpha;
  std::vector<Connector> connectors;
};

const ApproxGraph& validate_graph(const ApproxGraph& g);

// Synthesize the approximating graph for a scale-invariant coupling. With
// q = n - m and sigma_jk = sum_l T(j,l) conj(T(k,l)):
//
//   cross edges   (j < m, line m+l):  present iff T(j,l) != 0, oriented from
//       the high line toward j, gamma = |T(j,l)|,
//       A = (2 gamma / d) arg T(j,l)
//   intra edges   (j < k < m):        present iff sigma_jk != 0, oriented
//       j -> k, gamma = |sigma_jk|, A = -(2 gamma / d) arg(-sigma_jk)
//   no edges among the last q lines
//
//   delta strengths:
//       alpha_h = (1 - sum_j |T(j,h)|) / d                      for lines > m
//       alpha_j = (sum_l |T(j,l)|^2 - sum_{k != j} |sigma_jk|
//                  - sum_l |T(j,l)|) / d                        for lines <= m
//
// The potentials are chosen so that gamma e^{-i (d / 2 gamma) A} equals
// conj(T(j,l)) on cross edges and -sigma_jk on intra edges exactly; that
// identity is what makes the graph reproduce the coupling as d -> 0. All of
// the d-dependence is the explicit 1/d factor, so scaling d rescales alpha
// and A without touching the gammas.
ApproxGraph build_approximation(const CouplingST& c, double d);

// Largest deviation in the identity above over all connectors of g, assuming
// g came from build_approximation(c, g.d). Zero up to roundoff by
// construction; exposed so serialized graphs can be audited.
double reconstruction_residual(const CouplingST& c, const ApproxGraph& g);

}  // namespace starscat
