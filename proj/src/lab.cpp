#include "lpval/lab.hpp"

#include "lpval/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

namespace lpval {

using nlohmann::json;

namespace {

double absSum(std::initializer_list<double> values) {
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return s;
}

Vector gaussianVector(std::mt19937_64& rng, Index n) {
  std::normal_distribution<double> g;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = g(rng);
  return v;
}

}  // namespace

std::string domainName(Domain d) { return d == Domain::Kno ? "Kno" : "Kn"; }

std::optional<Domain> parseDomain(std::string_view name) {
  if (name == "Kno") return Domain::Kno;
  if (name == "Kn") return Domain::Kn;
  return std::nullopt;
}

BlackBoxValuation builtinValuation(OperatorKind kind, Index n, double p) {
  BlackBoxValuation v;
  v.name = operatorName(kind);
  v.n = n;
  v.p = p;
  v.domain = Domain::Kn;
  v.apply = [kind, p](const Body& K) { return bind(kind, K, p); };
  return v;
}

BlackBoxValuation linearCombination(std::span<const WeightedOperator> terms, Index n, double p) {
  std::vector<WeightedOperator> copy(terms.begin(), terms.end());
  BlackBoxValuation v;
  v.name = "combination";
  v.n = n;
  v.p = p;
  v.domain = Domain::Kn;
  v.apply = [copy, n, p](const Body& K) {
    std::vector<std::pair<double, PHomFunction>> bound;
    for (const WeightedOperator& t : copy)
      if (t.weight != 0.0) bound.emplace_back(t.weight, bind(t.kind, K, p));
    if (bound.empty()) return PHomFunction::zero(n, p);
    return PHomFunction(n, p, [bound](const Vector& u) {
      double total = 0.0;
      for (const auto& [w, f] : bound) total += w * f(u);
      return total;
    });
  };
  return v;
}

BlackBoxValuation zeroValuation(Index n, double p) {
  BlackBoxValuation v;
  v.name = "zero";
  v.n = n;
  v.p = p;
  v.apply = [n, p](const Body&) { return PHomFunction::zero(n, p); };
  return v;
}

std::vector<double> FitResult::minkowskiCoefficients() const {
  std::vector<double> c;
  for (double d : coefficients)
    c.push_back(d >= 0.0 ? std::pow(d, 1.0 / p) : std::numeric_limits<double>::quiet_NaN());
  return c;
}

DeviationTracker::DeviationTracker(std::string name, double tol, std::uint64_t seed) {
  report_.name = std::move(name);
  report_.tolerance = tol;
  report_.seed = seed;
}

void DeviationTracker::record(double lhs, double rhs, double scale, const std::function<std::string()>& describe) {
  const double absDev = std::abs(lhs - rhs);
  double rel = 0.0;
  if (!std::isfinite(absDev))
    rel = std::numeric_limits<double>::infinity();
  else if (absDev > 0.0)
    rel = scale > 0.0 ? absDev / scale : std::numeric_limits<double>::infinity();
  ++report_.cases;
  report_.max_abs_deviation = std::max(report_.max_abs_deviation, absDev);
  report_.max_rel_deviation = std::max(report_.max_rel_deviation, rel);
  if (rel > worstRel_) {
    worstRel_ = rel;
    json w = json::parse(describe());
    w["lhs"] = lhs;
    w["rhs"] = rhs;
    report_.worst_case = w.dump();
  }
  report_.passed = report_.max_rel_deviation <= report_.tolerance;
}

CheckReport mergeReports(std::string name, std::span<const CheckReport> parts) {
  CheckReport out;
  out.name = std::move(name);
  double worst = -1.0;
  for (const CheckReport& r : parts) {
    out.cases += r.cases;
    out.max_abs_deviation = std::max(out.max_abs_deviation, r.max_abs_deviation);
    out.max_rel_deviation = std::max(out.max_rel_deviation, r.max_rel_deviation);
    out.passed = out.passed && r.passed;
    out.tolerance = std::max(out.tolerance, r.tolerance);
    if (!r.worst_case.empty() && r.max_rel_deviation > worst) {
      worst = r.max_rel_deviation;
      out.worst_case = r.worst_case;
      out.seed = r.seed;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded inputs

std::vector<Vector> randomDirections(Index n, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(dirs.size()) < count) {
    const Vector v = gaussianVector(rng, n);
    const double len = v.norm();
    if (len > 1e-6) dirs.push_back(v / len);
  }
  return dirs;
}

Body randomBody(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const int kind = static_cast<int>(seed % 3);
  const Vector shift = gaussianVector(rng, n);
  switch (kind) {
    case 0: {
      for (;;) {
        Matrix v(n, n + 1);
        for (Index j = 0; j <= n; ++j) v.col(j) = gaussianVector(rng, n);
        const Simplex<double> s(v);
        if (std::abs(s.edges().determinant()) > 0.05) return simplexBody<double>(v);
      }
    }
    case 1: {
      for (;;) {
        Matrix a = Matrix::Identity(n, n) + 0.5 * Matrix::NullaryExpr(n, n, [&]() {
                     return std::normal_distribution<double>()(rng);
                   });
        if (std::abs(a.determinant()) > 0.2)
          return translate(applyMap(box<double>(Vector::Zero(n), Vector::Ones(n)), LinearMap<double>(a)), shift);
      }
    }
    default: {
      const double s = 0.5 + uni(rng);
      return translate(scale(referenceBody<double>(ReferenceBody::StandardSimplex, n), s), shift);
    }
  }
}

Body randomBodyContainingOrigin(Index n, std::uint64_t seed) {
  const Body K = randomBody(n, seed);
  const Vector centroid = K.simplex(0).vertices().rowwise().mean();
  return translate(K, Vector(-centroid));
}

Hyperplane<double> randomSplittingPlane(const Body& K, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xD1B54A32D192ED03ULL);
  std::uniform_int_distribution<std::size_t> pick(0, K.cells().size() - 1);
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  const Simplex<double> s = K.simplex(pick(rng));
  Vector w(s.vertices().cols());
  for (Index i = 0; i < w.size(); ++i) w(i) = uni(rng);
  w /= w.sum();
  const Vector point = s.vertices() * w;
  const Vector normal = gaussianVector(rng, K.ambientDim());
  return Hyperplane<double>(normal, normal.dot(point));
}

LinearMap<double> randomPositiveMap(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x2545F4914F6CDD1DULL);
  for (;;) {
    Matrix a = Matrix::Identity(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) a(i, j) += 0.6 * std::normal_distribution<double>()(rng);
    if (a.determinant() < 0) a.col(0) *= -1.0;
    if (a.determinant() > 0.2) return LinearMap<double>(std::move(a));
  }
}

// ---------------------------------------------------------------------------
// Checks

CheckReport checkValuationSplit(const BlackBoxValuation& phi, const Body& K, const Hyperplane<double>& H,
                                std::span<const Vector> dirs, double tol) {
  DeviationTracker track("valuation_split:" + phi.name, tol);
  const ClipResult<double> pieces = clip(K, H);
  bool above = false;
  bool below = false;
  const double snap = tol::kClip * (K.scale() * H.normal().norm() + std::abs(H.offset()));
  for (Index i = 0; i < K.vertexCount(); ++i) {
    const double d = H.signedDistance(K.vertex(i));
    above = above || d > snap;
    below = below || d < -snap;
  }
  if (!above || !below) return track.report();

  const PHomFunction whole = phi.apply(K);
  const PHomFunction slice = phi.apply(pieces.slice);
  const PHomFunction plus = phi.apply(pieces.plus);
  const PHomFunction minus = phi.apply(pieces.minus);
  for (const Vector& u : dirs) {
    const double a = whole(u);
    const double b = slice(u);
    const double c = plus(u);
    const double d = minus(u);
    track.record(a + b, c + d, absSum({a, b, c, d}), [&] {
      json w;
      w["body"] = toJson(K);
      w["plane"] = {{"normal", toJson(H.normal())}, {"offset", H.offset()}};
      w["u"] = toJson(u);
      return w.dump();
    });
  }
  return track.report();
}

Body regionBody(const Body& parent, std::span<const Hyperplane<double>> planes,
                std::span<const std::pair<std::size_t, Side>> cuts) {
  std::vector<int> mode(planes.size(), 0);  // bit 1: plus, bit 2: minus
  for (const auto& [index, side] : cuts) {
    if (index >= planes.size()) throw GeometryError("cut refers to a missing plane");
    mode[index] |= side == Side::Plus ? 1 : 2;
  }
  Body current = parent;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    if (mode[i] == 0) continue;
    if (current.isEmpty()) break;
    ClipResult<double> pieces = clip(current, planes[i]);
    current = mode[i] == 1 ? pieces.plus : mode[i] == 2 ? pieces.minus : pieces.slice;
  }
  return current;
}

CheckReport checkInclusionExclusion(const BlackBoxValuation& phi, const Body& parent,
                                    std::span<const Hyperplane<double>> planes, std::span<const RegionPiece> pieces,
                                    std::span<const Vector> dirs, double tol) {
  if (pieces.empty() || pieces.size() > 3) throw GeometryError("inclusion-exclusion takes one to three pieces");
  struct Term {
    int sign;
    Body body;
  };
  std::vector<Term> terms;
  const std::size_t m = pieces.size();
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    std::vector<std::pair<std::size_t, Side>> cuts;
    int count = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (1u << i))) continue;
      ++count;
      cuts.insert(cuts.end(), pieces[i].cuts.begin(), pieces[i].cuts.end());
    }
    terms.push_back({count % 2 == 1 ? 1 : -1, regionBody(parent, planes, cuts)});
  }

  double covered = 0.0;
  for (const Term& t : terms)
    if (!t.body.isEmpty()) covered += t.sign * volume(t.body);
  const double whole = volume(parent);
  if (std::abs(covered - whole) > 1e-9 * std::max(whole, 1e-300))
    throw GeometryError("pieces do not form a polytopal union equal to the parent");

  DeviationTracker track("inclusion_exclusion:" + phi.name, tol);
  const PHomFunction parentF = phi.apply(parent);
  std::vector<std::pair<int, PHomFunction>> bound;
  for (const Term& t : terms)
    if (!t.body.isEmpty()) bound.emplace_back(t.sign, phi.apply(t.body));
  for (const Vector& u : dirs) {
    const double lhs = parentF(u);
    double rhs = 0.0;
    double scale = std::abs(lhs);
    for (const auto& [sign, f] : bound) {
      const double v = f(u);
      rhs += sign * v;
      scale += std::abs(v);
    }
    track.record(lhs, rhs, scale, [&] {
      json w;
      w["body"] = toJson(parent);
      w["planes"] = json::array();
      for (const auto& h : planes) w["planes"].push_back({{"normal", toJson(h.normal())}, {"offset", h.offset()}});
      w["u"] = toJson(u);
      return w.dump();
    });
  }
  return track.report();
}

CheckReport checkSlCovariance(const BlackBoxValuation& phi, const Body& K, const LinearMap<double>& map,
                              std::span<const Vector> dirs, double tol) {
  if (std::abs(map.det() - 1.0) > 1e-10) throw GeometryError("map is not unimodular");
  DeviationTracker track("sl_covariance:" + phi.name, tol);
  const PHomFunction image = phi.apply(applyMap(K, map));
  const PHomFunction original = phi.apply(K);
  for (const Vector& u : dirs) {
    const double lhs = image(u);
    const double rhs = original(map.transposeApply(u));
    track.record(lhs, rhs, absSum({lhs, rhs}), [&] {
      json w;
      w["body"] = toJson(K);
      w["map"] = toJson(map);
      w["u"] = toJson(u);
      return w.dump();
    });
  }
  return track.report();
}

CheckReport checkGlScaling(const BlackBoxValuation& phi, const Body& P, const LinearMap<double>& map,
                           std::span<const Vector> dirs, double tol) {
  const double det = map.det();
  if (!(det > 1e-12)) throw GeometryError("map must have positive determinant");
  const double n = double(P.ambientDim());
  DeviationTracker track("gl_scaling:" + phi.name, tol);
  const PHomFunction image = phi.apply(applyMap(P, map));
  const PHomFunction scaled = phi.apply(scale(P, std::pow(det, 1.0 / n)));
  const double factor = std::pow(det, -phi.p / n);
  for (const Vector& x : dirs) {
    const double lhs = image(x);
    const double rhs = factor * scaled(map.transposeApply(x));
    track.record(lhs, rhs, absSum({lhs, rhs}), [&] {
      json w;
      w["body"] = toJson(P);
      w["map"] = toJson(map);
      w["x"] = toJson(x);
      return w.dump();
    });
  }
  return track.report();
}

CheckReport checkHomogeneity(const BlackBoxValuation& phi, const Body& K, std::span<const double> scales,
                             double expectedDegree, std::span<const Vector> dirs, double tol) {
  DeviationTracker track("homogeneity:" + phi.name, tol);
  const PHomFunction base = phi.apply(K);
  for (double s : scales) {
    if (!(s > 0.0)) throw GeometryError("scales must be positive");
    const PHomFunction scaled = phi.apply(scale(K, s));
    const double factor = std::pow(s, expectedDegree);
    for (const Vector& u : dirs) {
      const double lhs = scaled(u);
      const double rhs = factor * base(u);
      track.record(lhs, rhs, absSum({lhs, rhs}), [&] {
        json w;
        w["body"] = toJson(K);
        w["s"] = s;
        w["u"] = toJson(u);
        return w.dump();
      });
    }
  }
  return track.report();
}

CheckReport checkFunctionalEquation(const BlackBoxValuation& phi, Index n, double lambda, double s,
                                    std::span<const Vector> xs, double tol) {
  if (!(s > 0.0)) throw GeometryError("s must be positive");
  const auto [phiMap, psiMap] = shearPair(lambda, n);
  const double nn = double(n);
  const double p = phi.p;
  const Body t = scale(referenceBody<double>(ReferenceBody::StandardSimplex, n), s);
  DeviationTracker track("functional_equation:" + phi.name, tol);
  const PHomFunction whole = phi.apply(t);
  const PHomFunction first = phi.apply(scale(t, std::pow(lambda, 1.0 / nn)));
  const PHomFunction second = phi.apply(scale(t, std::pow(1.0 - lambda, 1.0 / nn)));
  const double a = std::pow(lambda, -p / nn);
  const double b = std::pow(1.0 - lambda, -p / nn);
  for (const Vector& x : xs) {
    const double lhs = whole(x);
    const double r1 = a * first(phiMap.transposeApply(x));
    const double r2 = b * second(psiMap.transposeApply(x));
    track.record(lhs, r1 + r2, absSum({lhs, r1, r2}), [&] {
      json w;
      w["n"] = n;
      w["lambda"] = lambda;
      w["s"] = s;
      w["x"] = toJson(x);
      return w.dump();
    });
  }
  return track.report();
}

CheckReport checkProjection(const BlackBoxValuation& phi, const Body& P, std::span<const Vector> dirs, double tol) {
  const Index n = P.ambientDim();
  const Index d = dimension(P);
  if (d >= n) throw GeometryError("projection check needs dim P < n");
  const Index r = linearRank(P);
  if (r != d) throw GeometryError("origin is not in the affine hull of P");
  Matrix projector = Matrix::Zero(n, n);
  if (r > 0) {
    Eigen::JacobiSVD<Matrix> svd(P.vertices(), Eigen::ComputeThinU);
    const Matrix basis = svd.matrixU().leftCols(r);
    projector = basis * basis.transpose();
  }
  DeviationTracker track("projection:" + phi.name, tol);
  const PHomFunction f = phi.apply(P);
  for (const Vector& x : dirs) {
    const double lhs = f(x);
    const double rhs = f(projector * x);
    track.record(lhs, rhs, absSum({lhs, rhs}), [&] {
      json w;
      w["body"] = toJson(P);
      w["x"] = toJson(x);
      return w.dump();
    });
  }
  return track.report();
}

std::vector<OperatorKind> fitBasis(Domain domain, bool includeJ) {
  std::vector<OperatorKind> basis{{Family::M, Sign::Plus}, {Family::M, Sign::Minus}};
  if (domain == Domain::Kn) {
    basis.push_back({Family::Mstar, Sign::Plus});
    basis.push_back({Family::Mstar, Sign::Minus});
  }
  basis.push_back({Family::I, Sign::Plus});
  basis.push_back({Family::I, Sign::Minus});
  if (includeJ) {
    basis.push_back({Family::J, Sign::Plus});
    basis.push_back({Family::J, Sign::Minus});
  }
  return basis;
}

FitResult fitClassification(const BlackBoxValuation& phi, std::span<const Body> bodies, std::span<const Vector> dirs,
                            Domain domain, bool includeJ) {
  const std::vector<OperatorKind> basis = fitBasis(domain, includeJ);
  const Index cols = static_cast<Index>(basis.size());
  const Index rows = static_cast<Index>(bodies.size() * dirs.size());
  if (rows < cols) throw RankDeficientError("not enough samples for the fit basis");
  for (const Body& K : bodies) {
    if (!K.hasTriangulation()) throw GeometryError("fit bodies must be triangulated");
    if (domain == Domain::Kno && !originIn(K)) throw GeometryError("Kno fit requires bodies containing the origin");
  }

  Matrix design(rows, cols);
  Vector target(rows);
  Index row = 0;
  for (const Body& K : bodies) {
    std::vector<PHomFunction> columns;
    for (const OperatorKind& k : basis) columns.push_back(bind(k, K, phi.p));
    const PHomFunction value = phi.apply(K);
    for (const Vector& u : dirs) {
      for (Index c = 0; c < cols; ++c) design(row, c) = columns[static_cast<std::size_t>(c)](u);
      target(row) = value(u);
      ++row;
    }
  }

  Vector colScale = design.colwise().norm().transpose();
  for (Index c = 0; c < cols; ++c)
    if (colScale(c) == 0.0)
      throw RankDeficientError("basis operator " + operatorName(basis[static_cast<std::size_t>(c)]) +
                               " vanishes on every sample");
  const Matrix scaled = design * colScale.cwiseInverse().asDiagonal();
  Eigen::FullPivHouseholderQR<Matrix> qr(scaled);
  qr.setThreshold(1e-10);
  if (qr.rank() < cols)
    throw RankDeficientError("design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                             std::to_string(cols) + ")");
  const Vector solution = qr.solve(target).cwiseQuotient(colScale);

  FitResult fit;
  fit.domain = domain;
  fit.p = phi.p;
  fit.coefficients.assign(solution.data(), solution.data() + solution.size());
  for (const OperatorKind& k : basis) fit.basis.push_back(operatorName(k));
  fit.residual = std::sqrt((design * solution - target).squaredNorm() / double(rows));
  for (Index c = 0; c < cols; ++c) {
    const double d = solution(c);
    const OperatorKind k = basis[static_cast<std::size_t>(c)];
    if (k.family == Family::J && std::abs(d) > 1e-6)
      fit.warnings.push_back("J coefficient " + operatorName(k) + " = " + std::to_string(d) +
                             " should vanish for a sublinear combination");
    else if (k.family != Family::J && d < -1e-6)
      fit.warnings.push_back("coefficient of " + operatorName(k) + " is negative (" + std::to_string(d) + ")");
  }
  return fit;
}

DiscontinuityTable discontinuityDemo(double p, std::span<const double> epsilons) {
  const Vector e1 = Vector::Unit(2, 0);
  const Body limit = referenceBody<double>(ReferenceBody::SegmentOriginE1, 2);
  std::vector<Vector> dirs;
  for (int k = 0; k < 720; ++k) {
    const double t = 2.0 * M_PI * k / 720.0;
    dirs.push_back(Vector{{std::cos(t), std::sin(t)}});
  }
  DiscontinuityTable table;
  for (double eps : epsilons) {
    if (!(eps > 0.0)) throw GeometryError("epsilons must be positive");
    Matrix a(2, 2), b(2, 2);
    a << -eps, 1.0, 0.0, 0.0;
    b << 0.0, 0.0, -eps, eps;
    const Body K = minkowskiSum(simplexBody<double>(a), simplexBody<double>(b));
    const double value = evalI(Sign::Plus, K, e1, p) - evalE(Sign::Plus, K, e1, p);
    table.rows.push_back({eps, value, hausdorffSampled<double>(K, limit, dirs)});
  }
  table.limitValue = evalI(Sign::Plus, limit, e1, p) - evalE(Sign::Plus, limit, e1, p);
  return table;
}

// ---------------------------------------------------------------------------
// Suites

std::optional<Suite> parseSuite(std::string_view name) {
  if (name == "valuation") return Suite::Valuation;
  if (name == "covariance") return Suite::Covariance;
  if (name == "scaling") return Suite::Scaling;
  if (name == "functional") return Suite::Functional;
  if (name == "projection") return Suite::Projection;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void valuationSuite(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  for (const OperatorKind& kind : builtinOperators(cfg.n)) {
    const BlackBoxValuation phi = builtinValuation(kind, cfg.n, cfg.p);
    std::vector<CheckReport> parts;
    for (int c = 0; c < 50; ++c) {
      const std::uint64_t s = mix(cfg.seed, 1000 + c);
      const Body K = randomBody(cfg.n, s);
      const auto dirs = randomDirections(cfg.n, cfg.directions, mix(s, 1));
      CheckReport r = checkValuationSplit(phi, K, randomSplittingPlane(K, mix(s, 2)), dirs, cfg.tol);
      r.seed = s;
      parts.push_back(std::move(r));
    }
    out.push_back(mergeReports("valuation_split:" + phi.name, parts));

    parts.clear();
    for (int c = 0; c < 10; ++c) {
      const std::uint64_t s = mix(cfg.seed, 2000 + c);
      const Body K = randomBody(cfg.n, s);
      const std::vector<Hyperplane<double>> planes{randomSplittingPlane(K, mix(s, 3)),
                                                    randomSplittingPlane(K, mix(s, 4))};
      std::vector<RegionPiece> pieces;
      if (c % 2 == 0) {
        pieces = {{{{0, Side::Plus}}}, {{{0, Side::Minus}, {1, Side::Plus}}}, {{{0, Side::Minus}, {1, Side::Minus}}}};
      } else {
        pieces = {{{{0, Side::Plus}}}, {{{1, Side::Plus}}}, {{{0, Side::Minus}, {1, Side::Minus}}}};
      }
      const auto dirs = randomDirections(cfg.n, cfg.directions, mix(s, 5));
      CheckReport r = checkInclusionExclusion(phi, K, planes, pieces, dirs, cfg.tol);
      r.seed = s;
      parts.push_back(std::move(r));
    }
    out.push_back(mergeReports("inclusion_exclusion:" + phi.name, parts));
  }
}

void covarianceSuite(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  for (const OperatorKind& kind : builtinOperators(cfg.n)) {
    const BlackBoxValuation phi = builtinValuation(kind, cfg.n, cfg.p);
    std::vector<CheckReport> parts;
    for (int c = 0; c < 30; ++c) {
      const std::uint64_t s = mix(cfg.seed, 3000 + c);
      const Body K = randomBody(cfg.n, s);
      const LinearMap<double> map = randomSlMap<double>(cfg.n, 5, s);
      CheckReport r = checkSlCovariance(phi, K, map, randomDirections(cfg.n, cfg.directions, mix(s, 1)), cfg.tol);
      r.seed = s;
      parts.push_back(std::move(r));
    }
    out.push_back(mergeReports("sl_covariance:" + phi.name, parts));
  }
}

double homogeneityDegree(Family family, Index n, double p) {
  return family == Family::M || family == Family::Mstar ? double(n) + p : p;
}

void scalingSuite(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  Matrix diag = Matrix::Identity(cfg.n, cfg.n);
  diag(0, 0) = 2.0;
  const LinearMap<double> stretch(diag);
  const std::vector<double> scales{0.5, 1.5, 3.0};
  for (const OperatorKind& kind : builtinOperators(cfg.n)) {
    const BlackBoxValuation phi = builtinValuation(kind, cfg.n, cfg.p);
    std::vector<CheckReport> parts;
    std::vector<CheckReport> homog;
    for (int c = 0; c < 11; ++c) {
      const std::uint64_t s = mix(cfg.seed, 4000 + c);
      const Body K = randomBody(cfg.n, s);
      const LinearMap<double> map = c == 0 ? stretch : randomPositiveMap(cfg.n, s);
      const auto dirs = randomDirections(cfg.n, cfg.directions, mix(s, 1));
      CheckReport r = checkGlScaling(phi, K, map, dirs, cfg.tol);
      r.seed = s;
      parts.push_back(std::move(r));
      CheckReport h = checkHomogeneity(phi, K, scales, homogeneityDegree(kind.family, cfg.n, cfg.p), dirs, cfg.tol);
      h.seed = s;
      homog.push_back(std::move(h));
    }
    out.push_back(mergeReports("gl_scaling:" + phi.name, parts));
    out.push_back(mergeReports("homogeneity:" + phi.name, homog));
  }
}

void functionalSuite(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const std::vector<WeightedOperator> both{{1.0, {Family::M, Sign::Plus}}, {1.0, {Family::M, Sign::Minus}}};
  std::vector<BlackBoxValuation> candidates{builtinValuation({Family::M, Sign::Plus}, cfg.n, cfg.p),
                                            builtinValuation({Family::M, Sign::Minus}, cfg.n, cfg.p),
                                            linearCombination(both, cfg.n, cfg.p)};
  candidates.back().name = "Mpp+Mpm";
  for (const BlackBoxValuation& phi : candidates) {
    for (double lambda : {0.25, 0.5, 0.75}) {
      std::vector<CheckReport> parts;
      for (double s : {0.7, 1.0, 1.3}) {
        const auto xs = randomDirections(cfg.n, cfg.directions, mix(cfg.seed, 5000));
        parts.push_back(checkFunctionalEquation(phi, cfg.n, lambda, s, xs, cfg.tol));
      }
      char label[32];
      std::snprintf(label, sizeof label, ":lambda=%g", lambda);
      CheckReport merged = mergeReports("functional_equation:" + phi.name + label, parts);
      merged.seed = cfg.seed;
      out.push_back(std::move(merged));
    }
  }
}

void projectionSuite(const SuiteConfig& cfg, std::vector<CheckReport>& out) {
  const auto dirs = randomDirections(cfg.n, 50, mix(cfg.seed, 6000));
  const Body segment = referenceBody<double>(ReferenceBody::SegmentOriginE1, cfg.n);
  CheckReport seg = checkProjection(builtinValuation({Family::I, Sign::Plus}, cfg.n, cfg.p), segment, dirs, cfg.tol);
  seg.seed = cfg.seed;
  out.push_back(seg);

  // Lower-dimensional bodies whose affine hull contains o.
  for (const OperatorKind& kind : builtinOperators(cfg.n)) {
    const BlackBoxValuation phi = builtinValuation(kind, cfg.n, cfg.p);
    std::vector<CheckReport> parts;
    for (int c = 0; c < 20; ++c) {
      const std::uint64_t s = mix(cfg.seed, 7000 + c);
      const Body flat = embed(randomBody(cfg.n - 1, s), cfg.n);
      const Vector t = -flat.simplex(0).vertices().rowwise().mean();
      const Body P = c % 2 == 0 ? flat : translate(flat, t);
      const LinearMap<double> tilt = randomSlMap<double>(cfg.n, 4, s);
      CheckReport r = checkProjection(phi, applyMap(P, tilt), randomDirections(cfg.n, cfg.directions, mix(s, 1)),
                                      cfg.tol);
      r.seed = s;
      parts.push_back(std::move(r));
    }
    out.push_back(mergeReports("projection:" + phi.name, parts));
  }
}

}  // namespace

std::vector<CheckReport> runSuite(Suite suite, const SuiteConfig& config) {
  if (config.n < 2) throw GeometryError("suites need n >= 2");
  if (!(config.p > 1.0)) throw OperatorError("suites need p > 1");
  std::vector<CheckReport> out;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Valuation) valuationSuite(config, out);
  if (all || suite == Suite::Covariance) covarianceSuite(config, out);
  if (all || suite == Suite::Scaling) scalingSuite(config, out);
  if (all || suite == Suite::Functional) functionalSuite(config, out);
  if (all || suite == Suite::Projection) projectionSuite(config, out);
  return out;
}

}  // namespace lpval
