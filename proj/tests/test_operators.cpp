#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "lpval/lab.hpp"
#include "lpval/moment.hpp"
#include "lpval/operators.hpp"

#include <cmath>
#include <random>

using namespace lpval;

namespace {

Body named(ReferenceBody name, Index n) { return referenceBody<double>(name, n); }

Vector e(Index n, Index i) { return Vector::Unit(n, i); }

double rel(double a, double b) {
  const double s = std::abs(a) + std::abs(b);
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

const OperatorKind Ipp{Family::I, Sign::Plus};
const OperatorKind Mpp{Family::M, Sign::Plus};
const OperatorKind Mpms{Family::Mstar, Sign::Minus};

// Polygons with o at a vertex, on an edge, inside, or outside.
Body planarCase(std::uint64_t seed) {
  const Body K = randomBody(2, seed);
  switch (seed % 4) {
    case 0: return translate(K, Vector(-K.vertex(0)));
    case 1: {
      const Cell& c = K.cells().front();
      return translate(K, Vector(-0.5 * (K.vertex(c[0]) + K.vertex(c[1]))));
    }
    case 2: return randomBodyContainingOrigin(2, seed);
    default: return K;
  }
}

}  // namespace

TEST_CASE("names") {
  for (Index n : {2, 3}) {
    for (const OperatorKind& k : builtinOperators(n)) {
      const auto back = parseOperator(operatorName(k));
      REQUIRE(back.has_value());
      CHECK(*back == k);
    }
  }
  CHECK(builtinOperators(2).size() == 12);
  CHECK(builtinOperators(3).size() == 8);
  CHECK(operatorName(Mpms) == "Mpms");
  CHECK_FALSE(parseOperator("Xpp").has_value());
  CHECK(isSupportPower(Family::M));
  CHECK_FALSE(isSupportPower(Family::J));
  CHECK_FALSE(isSupportPower(Family::F));
}

TEST_CASE("I and J on segments and triangles") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  const Body seg = named(ReferenceBody::SegmentOriginE1, 3);
  const Body seg12 = named(ReferenceBody::SegmentE1TwoE1, 3);
  for (double p : {1.5, 2.0, 3.0}) {
    for (int k = 0; k < 20; ++k) {
      const Vector x{{g(rng), g(rng), g(rng)}};
      const double plus = std::pow(std::max(x(0), 0.0), p);
      CHECK(std::abs(evalI(Sign::Plus, seg, x, p) - plus) <= 1e-12 * std::max(1.0, plus));
      CHECK(std::abs(evalI(Sign::Plus, seg12, x, p) - std::pow(2.0, p) * plus) <= 1e-12 * std::max(1.0, plus));
      CHECK(std::abs(evalJ(Sign::Plus, seg12, x, p) - plus) <= 1e-12 * std::max(1.0, plus));
    }
    CHECK(evalI(Sign::Plus, seg, Vector{{-1.0, 0.0, 0.0}}, p) == 0.0);

    const Body tri = named(ReferenceBody::Triangle112, 2);
    const Vector e12{{1.0, 1.0}};
    CHECK(evalI(Sign::Plus, tri, e(2, 0), p) == doctest::Approx(1.0));
    CHECK(evalI(Sign::Plus, tri, e(2, 1), p) == doctest::Approx(1.0));
    CHECK(evalI(Sign::Plus, tri, e12, p) == doctest::Approx(std::pow(2.0, p)));
    CHECK(evalJ(Sign::Plus, tri, e(2, 0), p) == 0.0);
    CHECK(evalJ(Sign::Plus, tri, e(2, 1), p) == 0.0);
    CHECK(evalJ(Sign::Plus, tri, e12, p) == doctest::Approx(1.0));
    for (const Vector& u : {e(2, 0), e(2, 1), e12}) {
      CHECK(evalI(Sign::Minus, tri, u, p) == 0.0);
      CHECK(evalJ(Sign::Minus, tri, u, p) == 0.0);
    }

    const Body t1 = named(ReferenceBody::FacetSimplex, 2);
    CHECK(evalI(Sign::Plus, t1, e(2, 0), p) == doctest::Approx(1.0));
    CHECK(evalI(Sign::Plus, t1, e12, p) == doctest::Approx(1.0));
    CHECK(evalI(Sign::Plus, t1, Vector{{2.0, 1.0}}, p) == doctest::Approx(std::pow(2.0, p)));
    CHECK(evalJ(Sign::Plus, t1, e(2, 0), p) == 0.0);
    CHECK(evalJ(Sign::Plus, t1, e12, p) == doctest::Approx(1.0));
    CHECK(evalJ(Sign::Plus, t1, Vector{{2.0, 1.0}}, p) == doctest::Approx(1.0));
  }
  const Body cube = box<double>(Vector::Constant(3, -1.0), Vector::Ones(3));
  CHECK(evalI(Sign::Plus, cube, Vector{{1.0, 2.0, -0.5}}, 2.0) == doctest::Approx(std::pow(3.5, 2)));
}

TEST_CASE("M and M* constants") {
  for (auto [n, p] : {std::pair{Index(3), 1.5}, {3, 2.0}, {3, 3.0}, {4, 2.0}}) {
    const Body t = named(ReferenceBody::StandardSimplex, n);
    const Body facet = named(ReferenceBody::FacetSimplex, n);
    for (Index i = 0; i < n; ++i) {
      CHECK(rel(evalM(Sign::Plus, t, e(n, i), p), fallingRatio(p, n)) < 1e-12);
      CHECK(evalM(Sign::Plus, t, Vector(-e(n, i)), p) == 0.0);
      CHECK(rel(evalMstar(Sign::Plus, facet, e(n, i), p), fallingRatio(p, n)) < 1e-12);
      CHECK(evalMstar(Sign::Plus, facet, Vector(-e(n, i)), p) == 0.0);
      CHECK(evalM(Sign::Plus, facet, e(n, i), p) == 0.0);
      CHECK(evalMstar(Sign::Plus, t, e(n, i), p) == 0.0);
    }
  }
  CHECK_THROWS_AS(evalM(Sign::Plus, Body(2, Matrix::Identity(2, 2)), e(2, 0), 2.0), OperatorError);
  CHECK_THROWS_AS(evalMstar(Sign::Plus, Body(2, Matrix::Identity(2, 2)), e(2, 0), 2.0), OperatorError);
}

TEST_CASE("E and F in the plane") {
  const Body t2 = named(ReferenceBody::StandardSimplex, 2);
  const Body t1 = named(ReferenceBody::FacetSimplex, 2);
  for (double p : {1.5, 2.0, 4.0}) {
    for (Index i = 0; i < 2; ++i) {
      CHECK(evalE(Sign::Plus, t2, e(2, i), p) == doctest::Approx(0.5));
      CHECK(evalE(Sign::Plus, t2, Vector(-e(2, i)), p) == 0.0);
      CHECK(evalE(Sign::Plus, t1, e(2, i), p) == doctest::Approx(0.5));
      CHECK(evalE(Sign::Plus, t1, Vector(-e(2, i)), p) == 0.0);
      CHECK(evalF(Sign::Plus, t2, e(2, i), p) == 0.0);
      CHECK(evalF(Sign::Plus, t1, e(2, i), p) == doctest::Approx(0.5));
      const double combined = evalI(Sign::Plus, t2, e(2, i), p) - evalE(Sign::Plus, t2, e(2, i), p) +
                              evalJ(Sign::Plus, t2, e(2, i), p) - evalF(Sign::Plus, t2, e(2, i), p);
      CHECK(combined == doctest::Approx(0.5));
    }
    // o interior: no zero-support direction.
    const Body centered = box<double>(Vector::Constant(2, -1.0), Vector::Ones(2));
    CHECK(zeroSupportFaces(centered).empty());
    CHECK(evalE(Sign::Plus, centered, e(2, 0), p) == 0.0);
    CHECK(evalF(Sign::Plus, centered, e(2, 0), p) == 0.0);

    // E and F agree with I and J on segments whose line passes through o.
    Matrix v(2, 2);
    v << 0.5, 2.0, 0.25, 1.0;
    const Body seg = simplexBody<double>(v);
    for (const Vector& u : {e(2, 0), Vector(-e(2, 1)), Vector{{0.3, -2.0}}}) {
      CHECK(evalE(Sign::Plus, seg, u, p) == doctest::Approx(evalI(Sign::Plus, seg, u, p)));
      CHECK(evalF(Sign::Plus, seg, u, p) == doctest::Approx(evalJ(Sign::Plus, seg, u, p)));
      CHECK(evalE(Sign::Minus, seg, u, p) == doctest::Approx(evalI(Sign::Minus, seg, u, p)));
    }

    // (Jpp - Fpp)(eps e2 + [o,e1])(e1) = -1/2.
    Matrix lifted(2, 2);
    lifted << 0.0, 1.0, 1e-3, 1e-3;
    const Body L = simplexBody<double>(lifted);
    CHECK(evalJ(Sign::Plus, L, e(2, 0), p) - evalF(Sign::Plus, L, e(2, 0), p) == doctest::Approx(-0.5));
    const Body limit = named(ReferenceBody::SegmentOriginE1, 2);
    CHECK(evalJ(Sign::Plus, limit, e(2, 0), p) - evalF(Sign::Plus, limit, e(2, 0), p) == 0.0);
    CHECK(evalI(Sign::Plus, limit, e(2, 0), p) - evalE(Sign::Plus, limit, e(2, 0), p) == 0.0);
  }
  CHECK_THROWS_AS(evalE(Sign::Plus, named(ReferenceBody::StandardSimplex, 3), e(3, 0), 2.0), OperatorError);
  CHECK_THROWS_AS(evalF(Sign::Plus, named(ReferenceBody::StandardSimplex, 3), e(3, 0), 2.0), OperatorError);
}

TEST_CASE("preconditions") {
  const Body t = named(ReferenceBody::StandardSimplex, 3);
  for (const OperatorKind& k : builtinOperators(3)) {
    CHECK_THROWS_AS(evaluate(k, t, e(3, 0), 1.0), OperatorError);
    CHECK_THROWS_AS(evaluate(k, t, e(2, 0), 2.0), OperatorError);
    CHECK_THROWS_AS(bind(k, t, 0.5), OperatorError);
  }
  CHECK_THROWS_AS(PHomFunction(2, 2.0, nullptr), OperatorError);
}

TEST_CASE("reflection duality") {
  int count = 0;
  for (std::uint64_t s = 0; count < 200; ++s) {
    const Index n = s % 2 ? 3 : 2;
    const Body K = n == 2 ? planarCase(s) : randomBody(3, s);
    const Vector u = randomDirections(n, 1, s + 77).front();
    for (const OperatorKind& k : builtinOperators(n)) {
      const OperatorKind plus{k.family, Sign::Plus};
      if (k.sign != Sign::Minus) continue;
      CAPTURE(operatorName(k));
      CAPTURE(s);
      const double a = evaluate(k, K, u, 2.5);
      const double b = evaluate(plus, reflect(K), u, 2.5);
      CHECK(rel(a, b) <= 1e-12);
    }
    ++count;
  }
}

TEST_CASE("roots of support-power operators are sublinear") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  for (Index n : {2, 3}) {
    for (const OperatorKind& k : builtinOperators(n)) {
      if (!isSupportPower(k.family)) continue;
      const double p = 2.5;
      for (int b = 0; b < 5; ++b) {
        const std::uint64_t seed = 300 + std::uint64_t(b);
        const Body K = n == 2 ? planarCase(seed) : randomBody(n, seed);
        const PHomFunction f = bind(k, K, p);
        const auto root = [&](const Vector& u) { return std::pow(f(u), 1.0 / p); };
        for (int i = 0; i < 100; ++i) {
          Vector u(n), v(n);
          for (Index j = 0; j < n; ++j) {
            u(j) = g(rng);
            v(j) = g(rng);
          }
          const double lhs = root(u + v);
          const double rhs = root(u) + root(v);
          CAPTURE(operatorName(k));
          CHECK(lhs <= rhs * (1 + 1e-9) + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("J and F vanish on bodies containing o") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Index n = s % 2 ? 3 : 2;
    const Body K = randomBodyContainingOrigin(n, s);
    REQUIRE(originIn(K));
    for (const Vector& u : randomDirections(n, 10, s)) {
      CHECK(evalJ(Sign::Plus, K, u, 2.0) == 0.0);
      CHECK(evalJ(Sign::Minus, K, u, 2.0) == 0.0);
      if (n == 2) {
        CHECK(evalF(Sign::Plus, K, u, 2.0) == 0.0);
        CHECK(evalF(Sign::Minus, K, u, 2.0) == 0.0);
      }
      CHECK(evalMstar(Sign::Plus, K, u, 2.0) == 0.0);
    }
  }
  // o on the boundary as a vertex: F picks the min over faces through o.
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Body K = planarCase(4 * s);
    for (const Vector& u : randomDirections(2, 10, s)) CHECK(evalF(Sign::Plus, K, u, 2.0) == 0.0);
  }
}

TEST_CASE("p-homogeneity in the direction") {
  for (Index n : {2, 3}) {
    const Body K = n == 2 ? planarCase(8) : randomBody(3, 9);
    for (const OperatorKind& k : builtinOperators(n)) {
      const PHomFunction f = bind(k, K, 2.5);
      for (const Vector& u : randomDirections(n, 10, 3))
        for (double s : {0.5, 3.0}) {
          const double base = f(u);
          CHECK(std::abs(f(Vector(s * u)) - std::pow(s, 2.5) * base) <= 1e-10 * std::max(std::abs(base), 1e-300));
        }
    }
  }
}

TEST_CASE("M* plus M equals M of the hull with o") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Index n = 2 + Index(s % 3);
    const Body K = randomBody(n, s);
    const Body hull = hullWithOrigin(K);
    for (const Vector& u : randomDirections(n, 5, s)) {
      for (Sign sign : {Sign::Plus, Sign::Minus}) {
        const double lhs = evalMstar(sign, K, u, 2.0) + evalM(sign, K, u, 2.0);
        CHECK(rel(lhs, evalM(sign, hull, u, 2.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("bound functions match direct evaluation") {
  const Body K = planarCase(6);
  for (const OperatorKind& k : builtinOperators(2)) {
    const PHomFunction f = bind(k, K, 3.0);
    CHECK(f.dim() == 2);
    CHECK(f.p() == 3.0);
    for (const Vector& u : randomDirections(2, 10, 4)) CHECK(f(u) == evaluate(k, K, u, 3.0));
    CHECK_THROWS_AS(f(e(3, 0)), OperatorError);
  }
}

TEST_CASE("Lp combination") {
  const Body K = randomBody(3, 12);
  const PHomFunction m = bind(Mpp, K, 2.0);
  const PHomFunction i = bind(Ipp, K, 2.0);
  const std::vector<Vector> dirs = randomDirections(3, 10, 1);

  const std::vector<LpTerm> single{{1.0, m}};
  const std::vector<LpTerm> twice{{1.0, i}, {1.0, i}};
  const std::vector<LpTerm> mixed{{2.0, m}, {0.5, i}};
  const PHomFunction id = lpCombine(single);
  const PHomFunction doubled = lpCombine(twice);
  const PHomFunction mix = lpCombine(mixed);
  const Body grown = scale(K, std::pow(2.0, 0.5));
  for (const Vector& u : dirs) {
    CHECK(id(u) == m(u));
    CHECK(rel(doubled(u), evalI(Sign::Plus, grown, u, 2.0)) < 1e-14);
    CHECK(rel(mix(u), 4.0 * m(u) + 0.25 * i(u)) < 1e-15);
    CHECK(rel(mix(Vector(3.0 * u)), 9.0 * mix(u)) < 1e-12);
  }

  const std::vector<LpTerm> negative{{-1.0, m}};
  const std::vector<LpTerm> mismatched{{1.0, m}, {1.0, bind(Mpp, K, 3.0)}};
  CHECK_THROWS_AS(lpCombine(negative), OperatorError);
  CHECK_THROWS_AS(lpCombine(mismatched), OperatorError);
  CHECK_THROWS_AS(lpCombine(std::span<const LpTerm>{}), OperatorError);
}
