#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "starscat/graph_solver.hpp"
#include "test_support.hpp"

using namespace starscat;
using test::random_coupling;

namespace {

CouplingST make(int n, int m, std::initializer_list<Complex> entries) {
  CouplingST c;
  c.n = n;
  c.m = m;
  c.T = CMatrix(m, n - m);
  auto it = entries.begin();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n - m; ++j) c.T(i, j) = *it++;
  return c;
}

Connector conn(double gamma, double A, double d, int from = 0, int to = 1) {
  Connector c;
  c.from = from;
  c.to = to;
  c.gamma = gamma;
  c.potential = A;
  c.length = d / gamma;
  return c;
}

Eigen::Matrix2cd free_matrix2(double k, double L) {
  Eigen::Matrix2cd M;
  M << Complex(std::cos(k * L)), Complex(std::sin(k * L) / k),
      Complex(-k * std::sin(k * L)), Complex(std::cos(k * L));
  return M;
}

}  // namespace

TEST_CASE("connector transfer without potential is the free propagator") {
  const Connector c = conn(2.0, 0.0, 0.3);
  for (double k : {0.5, 1.0, 4.0}) {
    const Eigen::Matrix2cd expect = free_matrix2(k, 0.15);
    CHECK((connector_transfer(c, k, TransferMode::Lemma) - expect)
              .cwiseAbs()
              .maxCoeff() <= 1e-14);
    CHECK((connector_transfer(c, k, TransferMode::Segmented) - expect)
              .cwiseAbs()
              .maxCoeff() <= 1e-13);
  }
}

TEST_CASE("a full phase winding is invisible") {
  const double d = 0.2, gamma = 1.0;
  const double L = d / gamma;
  const double A = 2.0 * 3.14159265358979323846 / (L / 2.0);
  const Connector c = conn(gamma, A, d);
  const Eigen::Matrix2cd M = connector_transfer(c, 1.7, TransferMode::Lemma);
  CHECK((M - free_matrix2(1.7, L)).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("lemma and segmented transfer agree on random draws") {
  std::mt19937 rng(12321);
  std::uniform_real_distribution<double> pa(-20.0, 20.0);
  std::uniform_real_distribution<double> pk(0.2, 5.0);
  std::uniform_real_distribution<double> pg(0.25, 4.0);
  std::uniform_real_distribution<double> pd(0.02, 0.5);
  for (int trial = 0; trial < 300; ++trial) {
    const Connector c = conn(pg(rng), pa(rng), pd(rng));
    const double k = pk(rng);
    const Eigen::Matrix2cd lemma = connector_transfer(c, k, TransferMode::Lemma);
    const Eigen::Matrix2cd seg = connector_transfer(c, k, TransferMode::Segmented);
    CHECK((lemma - seg).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("the free-coupling graph scatters like a bare line of length d") {
  const double d = 0.1;
  const ApproxGraph g = build_approximation(make(2, 1, {1.0}), d);
  for (double k : {1.0, 2.3}) {
    const CMatrix S = solve_scattering(g, k);
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 1) = std::polar(1.0, k * d);
    expect(1, 0) = std::polar(1.0, k * d);
    CHECK(max_abs(S - expect) <= 1e-10);
  }
}

TEST_CASE("disconnected Neumann endpoints reflect perfectly") {
  ApproxGraph g;
  g.n = 3;
  g.d = 0.1;
  g.alpha = RVector::Zero(3);
  const CMatrix S = solve_scattering(g, 1.0);
  CHECK(max_abs(S - CMatrix::Identity(3, 3)) <= 1e-14);
}

TEST_CASE("Robin endpoints reproduce the textbook reflection amplitude") {
  ApproxGraph g;
  g.n = 2;
  g.d = 0.1;
  g.alpha = RVector::Zero(2);
  g.alpha(0) = 3.0;
  g.alpha(1) = -0.7;
  const double k = 1.4;
  const CMatrix S = solve_scattering(g, k);
  for (int j = 0; j < 2; ++j) {
    const Complex expect =
        (Complex(0.0, k) + g.alpha(j)) / (Complex(0.0, k) - g.alpha(j));
    CHECK(std::abs(S(j, j) - expect) <= 1e-13);
  }
  CHECK(std::abs(S(0, 1)) <= 1e-14);
}

TEST_CASE("the approximation approaches the exact scattering matrix") {
  const CouplingST c = make(2, 1, {2.0});
  const CMatrix exact = ft_scattering(c);
  CMatrix expect(2, 2);
  expect << -0.6, 0.8, 0.8, 0.6;
  REQUIRE(max_abs(exact - expect) <= 1e-12);

  double prev = 1e9;
  for (double d : {0.1, 0.05, 0.025, 0.0125}) {
    const CMatrix S = solve_scattering(build_approximation(c, d), 1.0);
    const double err = max_abs(S - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 0.05);
}

TEST_CASE("solutions stay unitary and orientation is a gauge choice") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const CouplingST c = random_coupling(rng, n, 3.0);
    ApproxGraph g = build_approximation(c, 0.08);
    const CMatrix S = solve_scattering(g, 1.3);
    CHECK(max_abs(S.adjoint() * S - CMatrix::Identity(n, n)) <= 1e-9);

    if (!g.connectors.empty()) {
      // flip the first connector: swap endpoints and negate the potential
      Connector& e = g.connectors.front();
      std::swap(e.from, e.to);
      e.potential = -e.potential;
      const CMatrix S2 = solve_scattering(g, 1.3);
      CHECK(max_abs(S - S2) <= 1e-11);
    }
  }
}

TEST_CASE("the approximation is genuinely momentum-dependent at fixed d") {
  const CouplingST c = make(2, 1, {2.0});
  const ApproxGraph g = build_approximation(c, 0.1);
  const CMatrix S1 = solve_scattering(g, 1.0);
  const CMatrix S2 = solve_scattering(g, 2.0);
  CHECK(max_abs(S1 - S2) > 1e-4);
}

TEST_CASE("convergence_study fits a first-order rate for the free coupling") {
  std::vector<double> ds;
  for (int j = 0; j < 6; ++j) ds.push_back(0.2 * std::pow(2.0, -j));
  const ConvergenceReport r = convergence_study(make(2, 1, {1.0}), 1.0, ds);
  REQUIRE(r.rows.size() == 6);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].ok);
    // the analytic error is |e^{ikd} - 1| = 2 |sin(kd/2)|
    const double expect = 2.0 * std::abs(std::sin(1.0 * r.rows[i].d / 2.0));
    CHECK(r.rows[i].error == doctest::Approx(expect).epsilon(1e-6));
  }
  CHECK(r.fitted_order == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("decoupled lines converge through the 1/d delta strengths") {
  CouplingST c;
  c.n = 2;
  c.m = 1;
  c.T = CMatrix::Zero(1, 1);
  std::vector<double> ds;
  for (int j = 0; j < 6; ++j) ds.push_back(0.2 * std::pow(2.0, -j));
  const ConvergenceReport r = convergence_study(c, 1.0, ds);
  CHECK(r.fitted_order == doctest::Approx(1.0).epsilon(0.15));
  // the only surviving deviation is |s_1 + 1| = 2 / |ik - 1/d|, about 2kd
  CHECK(r.rows.back().error <= 0.02);
}

TEST_CASE("convergence_study validates its scale grid") {
  const CouplingST c = make(2, 1, {1.0});
  CHECK_THROWS_AS(convergence_study(c, 1.0, {0.1, 0.05}), ValidationError);
  CHECK_THROWS_AS(convergence_study(c, 1.0, {0.1, 0.2, 0.05}), ValidationError);
  CHECK_THROWS_AS(convergence_study(c, 1.0, {0.1, 0.05, -0.01}), ValidationError);
  CHECK_THROWS_AS(convergence_study(c, -1.0, {0.1, 0.05, 0.025}), ValidationError);
}
