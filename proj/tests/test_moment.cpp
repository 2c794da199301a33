#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpval/moment.hpp"

#include <array>
#include <cmath>
#include <random>

using namespace lpval;

namespace {

Matrix cols(std::initializer_list<std::initializer_list<double>> vertices) {
  const Index n = static_cast<Index>(vertices.begin()->size());
  Matrix m(n, static_cast<Index>(vertices.size()));
  Index j = 0;
  for (const auto& v : vertices) {
    Index i = 0;
    for (double x : v) m(i++, j) = x;
    ++j;
  }
  return m;
}

double moment(const Body& K, const Vector& u, double p) {
  return momentPlusBody(K, u, MomentParams<double>(p, K.ambientDim()));
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Vector gaussian(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

Body randomSimplex(std::mt19937_64& rng, Index n) {
  for (;;) {
    Matrix v(n, n + 1);
    for (Index j = 0; j <= n; ++j) v.col(j) = gaussian(rng, n);
    if (std::abs((v.rightCols(n).colwise() - v.col(0)).determinant()) > 0.1) return simplexBody<double>(v);
  }
}

const Body T3 = referenceBody<double>(ReferenceBody::StandardSimplex, 3);

}  // namespace

TEST_CASE("falling ratio") {
  CHECK(fallingRatio(2.0, 3) == doctest::Approx(1.0 / 60).epsilon(1e-15));
  CHECK(fallingRatio(1.0, 1) == 0.5);
  CHECK(fallingRatio(2.5, 3) == doctest::Approx(1.0 / 86.625).epsilon(1e-15));
  CHECK(fallingRatio(1.5, 3) == doctest::Approx(0.025396825396825397).epsilon(1e-15));
  CHECK(fallingRatio(3.0, 3) == doctest::Approx(1.0 / 120).epsilon(1e-15));
  CHECK(fallingRatio(2.0, 4) == doctest::Approx(1.0 / 360).epsilon(1e-15));
  CHECK(fallingRatio(0.3, 0) == 1.0);
  CHECK_THROWS_AS(fallingRatio(-1.0, 2), IntegrationError);
  CHECK_THROWS_AS(fallingRatio(2.0, -1), IntegrationError);
}

TEST_CASE("divided differences of powers") {
  const std::array<double, 4> confluent{0, 0, 0, 1};
  for (double p : {1.5, 2.0, 3.7}) CHECK(dividedDifferencePower<double>(confluent, p + 3) == doctest::Approx(1.0));
  const std::array<double, 2> line{0, 1};
  CHECK(dividedDifferencePower<double>(line, 2.0) == doctest::Approx(1.0));
  const std::array<double, 2> doubled{1, 1};
  CHECK(dividedDifferencePower<double>(doubled, 3.0) == doctest::Approx(3.0));

  // Close nodes agree with the confluent limit: [1,1,1] t^4 = 6.
  const std::array<double, 3> close{1.0, 1.0 + 1e-9, 1.0 + 2e-9};
  CHECK(dividedDifferencePower<double>(close, 4.0) == doctest::Approx(6.0).epsilon(1e-8));
  // Distinct nodes: [1,2,4] t^3 = 1 + 2 + 4.
  const std::array<double, 3> distinct{4.0, 1.0, 2.0};
  CHECK(dividedDifferencePower<double>(distinct, 3.0) == doctest::Approx(7.0).epsilon(1e-14));

  const std::array<double, 2> negative{-1, 1};
  CHECK_THROWS_AS(dividedDifferencePower<double>(negative, 3.0), IntegrationError);
  CHECK_THROWS_AS(dividedDifferencePower<double>(confluent, 3.0), IntegrationError);
  CHECK_THROWS_AS(dividedDifferencePower<double>(std::span<const double>{}, 3.0), IntegrationError);
}

TEST_CASE("moments of the standard simplex") {
  for (auto [n, p] : {std::pair{Index(3), 1.5}, {3, 2.0}, {3, 3.0}, {4, 2.0}, {2, 2.5}}) {
    const Body t = referenceBody<double>(ReferenceBody::StandardSimplex, n);
    for (Index i = 0; i < n; ++i) {
      CHECK(rel(moment(t, Vector::Unit(n, i), p), fallingRatio(p, n)) < 1e-12);
      CHECK(moment(t, Vector(-Vector::Unit(n, i)), p) == 0.0);
    }
  }
  CHECK(rel(moment(T3, Vector{{1.0, 1.0, 1.0}}, 2.0), 0.1) < 1e-12);
}

// Reference values from tests/oracles/moment_oracle.py (80-digit arithmetic).
TEST_CASE("moments against the high-precision oracle") {
  struct Case {
    const char* name;
    Matrix vertices;
    Vector u;
    double p;
    double expected;
  };
  const std::vector<Case> cases{
      {"triangle_straddle", cols({{-1, 0.2}, {0.8, -0.6}, {0.3, 1.1}}), Vector{{1, 0.3}}, 1.5,
       0.18600253666582189959},
      {"tetra_straddle", cols({{0.2, -0.3, 0.1}, {1.1, 0.4, -0.2}, {-0.5, 0.9, 0.3}, {0.3, 0.2, 1.2}}),
       Vector{{0.7, -0.4, 0.5}}, 2.5, 0.020364912650709295016},
      {"tetra_positive", cols({{1, 0.5, 0.2}, {2, 0.1, 0.3}, {1.5, 1.4, 0.1}, {1.2, 0.6, 1.3}}),
       Vector{{0.9, 0.3, 0.2}}, 2.5, 0.63698685726943044201},
      {"pentatope_straddle",
       cols({{0, 0, 0, 0}, {1, 0.2, -0.1, 0.3}, {-0.4, 1, 0.2, 0.1}, {0.3, -0.2, 1, 0.4}, {0.1, 0.5, -0.3, 1}}),
       Vector{{0.6, -0.5, 0.4, 0.3}}, 3.0, 0.0010082958101199669678},
      {"standard_close_nodes", T3.vertices(), Vector{{1, 1.0001, 1.0002}}, 2.0, 0.10002000116666666446},
      {"standard_equal_nodes", T3.vertices(), Vector{{1, 1, 1}}, 2.0, 0.1},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    const Body K = simplexBody<double>(c.vertices);
    CHECK(rel(moment(K, c.u, c.p), c.expected) < 1e-12);
  }
}

TEST_CASE("moment preconditions") {
  CHECK_THROWS_AS(MomentParams<double>(1.0, 3), IntegrationError);
  CHECK_THROWS_AS(MomentParams<double>(2.0, 0), IntegrationError);
  const MomentParams<double> params(2.0, 3);
  CHECK_THROWS_AS(momentPlusSimplex(Simplex<double>(Matrix::Identity(3, 3)), Vector(Vector::Ones(3)), params),
                  IntegrationError);
  Matrix flat = T3.vertices();
  flat.row(2).setZero();
  CHECK_THROWS_AS(momentPlusSimplex(Simplex<double>(flat), Vector(Vector::Ones(3)), params), IntegrationError);
  CHECK_THROWS_AS(momentPlusBody(Body(3, T3.vertices()), Vector(Vector::Ones(3)), params), IntegrationError);
  CHECK_THROWS_AS(momentPlusBody(T3, Vector(Vector::Ones(2)), params), IntegrationError);
  CHECK(momentPlusSimplex(T3.simplex(0), Vector(Vector::Zero(3)), params) == 0.0);

  // Lower-dimensional bodies have zero moment.
  CHECK(moment(referenceBody<double>(ReferenceBody::FacetSimplex, 3), Vector(Vector::Ones(3)), 2.0) == 0.0);
}

TEST_CASE("homogeneity, scaling, additivity and reflection") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + trial % 3;
    const Body K = trial % 2 ? randomSimplex(rng, n)
                             : translate(applyMap(box<double>(Vector::Zero(n), Vector::Ones(n)),
                                                  randomSlMap<double>(n, 3, std::uint64_t(trial))),
                                         Vector(0.3 * gaussian(rng, n)));
    Vector u = gaussian(rng, n);
    const double p = 1.5 + 0.5 * (trial % 4);
    if (moment(K, u, p) == 0.0) u = -u;
    const double base = moment(K, u, p);
    CAPTURE(trial);
    REQUIRE(base > 0.0);

    for (double s : {0.5, 2.0, 7.0}) CHECK(rel(moment(K, Vector(s * u), p), std::pow(s, p) * base) < 1e-10);
    for (double s : {0.5, 1.5})
      CHECK(rel(moment(scale(K, s), u, p), std::pow(s, double(n) + p) * base) < 1e-9);

    const Vector normal = gaussian(rng, n);
    const Hyperplane<double> H(normal, normal.dot(K.vertices().rowwise().mean()));
    const auto pieces = clip(K, H);
    const double split = (pieces.plus.isEmpty() ? 0.0 : moment(pieces.plus, u, p)) +
                         (pieces.minus.isEmpty() ? 0.0 : moment(pieces.minus, u, p));
    CHECK(rel(split, base) < 1e-9);
    if (!pieces.slice.isEmpty()) CHECK(moment(pieces.slice, u, p) == 0.0);

    CHECK(rel(moment(K, Vector(-u), p), moment(reflect(K), u, p)) < 1e-10);
  }
}

TEST_CASE("Monte Carlo oracle") {
  const MomentParams<double> params(2.0, 3);
  const McEstimate est = mcMoment(T3, Vector(Vector::Unit(3, 0)), params, 1000000, 7);
  CHECK(est.standardError > 0.0);
  CHECK(std::abs(est.value - 1.0 / 60) <= 3.5 * est.standardError);

  const McEstimate zero = mcMoment(T3, Vector(-Vector::Unit(3, 0)), params, 10000, 7);
  CHECK(zero.value == 0.0);
  CHECK(zero.standardError == 0.0);

  const McEstimate again = mcMoment(T3, Vector(Vector::Unit(3, 0)), params, 1000000, 7);
  CHECK(again.value == est.value);
  CHECK(again.standardError == est.standardError);

  CHECK_THROWS_AS(mcMoment(T3, Vector(Vector::Unit(3, 0)), params, 999, 1), IntegrationError);
  const McEstimate flat =
      mcMoment(referenceBody<double>(ReferenceBody::FacetSimplex, 3), Vector(Vector::Ones(3)), params, 1000, 1);
  CHECK(flat.value == 0.0);
  CHECK(flat.standardError == 0.0);

  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const Body K = randomSimplex(rng, 3);
    const Vector u = gaussian(rng, 3);
    const MomentParams<double> pp(2.5, 3);
    const McEstimate mc = mcMoment(K, u, pp, 1000000, std::uint64_t(100 + trial));
    CHECK(std::abs(momentPlusBody(K, u, pp) - mc.value) <= 3.5 * mc.standardError);
  }
}
