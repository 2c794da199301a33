#include "lpval/operators.hpp"

#include "lpval/moment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <utility>

namespace lpval {

namespace {

constexpr std::array<std::pair<std::string_view, OperatorKind>, 12> kNames{{
    {"Ipp", {Family::I, Sign::Plus}},      {"Ipm", {Family::I, Sign::Minus}},
    {"Jpp", {Family::J, Sign::Plus}},      {"Jpm", {Family::J, Sign::Minus}},
    {"Mpp", {Family::M, Sign::Plus}},      {"Mpm", {Family::M, Sign::Minus}},
    {"Mpps", {Family::Mstar, Sign::Plus}}, {"Mpms", {Family::Mstar, Sign::Minus}},
    {"Epp", {Family::E, Sign::Plus}},      {"Epm", {Family::E, Sign::Minus}},
    {"Fpp", {Family::F, Sign::Plus}},      {"Fpm", {Family::F, Sign::Minus}},
}};

void checkP(double p) {
  if (!(p > 1.0)) throw OperatorError("operators require p > 1");
}

void checkDim(const Body& K, const Vector& u) {
  if (K.ambientDim() != u.size()) throw OperatorError("dimension mismatch");
}

Vector oriented(Sign sign, const Vector& u) { return sign == Sign::Plus ? u : Vector(-u); }

double positivePower(double t, double p) { return t > 0.0 ? std::pow(t, p) : 0.0; }

double faceSum(const std::vector<Matrix>& faces, const Vector& u, double p, bool useMax) {
  double total = 0.0;
  for (const Matrix& face : faces) {
    const Vector values = face.transpose() * u;
    total += positivePower(useMax ? values.maxCoeff() : values.minCoeff(), p);
  }
  return 0.5 * total;
}

}  // namespace

std::string operatorName(OperatorKind kind) {
  for (const auto& [name, k] : kNames)
    if (k == kind) return std::string(name);
  throw OperatorError("unknown operator kind");
}

std::optional<OperatorKind> parseOperator(std::string_view name) {
  for (const auto& [n, k] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

std::vector<OperatorKind> builtinOperators(Index n) {
  std::vector<OperatorKind> out;
  for (const auto& [name, k] : kNames)
    if (n == 2 || (k.family != Family::E && k.family != Family::F)) out.push_back(k);
  return out;
}

bool isSupportPower(Family family) { return family != Family::J && family != Family::F; }

PHomFunction::PHomFunction(Index n, double p, Rule rule) : n_(n), p_(p), rule_(std::move(rule)) {
  if (!rule_) throw OperatorError("p-homogeneous function needs an evaluation rule");
}

PHomFunction PHomFunction::zero(Index n, double p) {
  return PHomFunction(n, p, [](const Vector&) { return 0.0; });
}

double PHomFunction::operator()(const Vector& u) const {
  if (u.size() != n_) throw OperatorError("dimension mismatch");
  return rule_(u);
}

double evalI(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  return positivePower(support(K, oriented(sign, u)), p);
}

// min_{x in K} <x,u>_+ = (min_{x in K} <x,u>)_+ = (-h(K,-u))_+
double evalJ(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  return positivePower(-support(K, Vector(-oriented(sign, u))), p);
}

double evalM(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  if (!K.hasTriangulation()) throw OperatorError("moment operators require a triangulation");
  return momentPlusBody(K, oriented(sign, u), MomentParams<double>(p, K.ambientDim()));
}

// Integrates over the origin cones directly instead of subtracting
// M(K) from M(K_o); both describe int_{K_o \ K}.
double evalMstar(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  if (!K.hasTriangulation()) throw OperatorError("moment operators require a triangulation");
  const Body cones = originComplement(K);
  if (cones.isEmpty()) return 0.0;
  return momentPlusBody(cones, oriented(sign, u), MomentParams<double>(p, K.ambientDim()));
}

std::vector<Matrix> zeroSupportFaces(const Body& K) {
  if (K.ambientDim() != 2) throw OperatorError("E and F operators are defined for n = 2 only");
  if (K.isEmpty()) throw OperatorError("empty body");
  const double eps = tol::kZeroSupport * std::max(diameter(K), K.scale());
  std::vector<Vector> normals;
  for (Index i = 0; i < K.vertexCount(); ++i) {
    const Vector v = K.vertex(i);
    const double len = v.norm();
    if (len <= eps) continue;
    const Vector w = Vector{{-v(1) / len, v(0) / len}};
    for (const Vector& cand : {w, Vector(-w)}) {
      if (std::abs(support(K, cand)) > eps) continue;
      const bool seen = std::any_of(normals.begin(), normals.end(),
                                    [&](const Vector& other) { return (other - cand).norm() <= tol::kZeroSupport; });
      if (!seen) normals.push_back(cand);
    }
  }
  std::vector<Matrix> faces;
  for (const Vector& nrm : normals) {
    const Eigen::RowVectorXd values = nrm.transpose() * K.vertices();
    const double h = values.maxCoeff();
    std::vector<Index> members;
    for (Index i = 0; i < K.vertexCount(); ++i)
      if (values(i) >= h - eps) members.push_back(i);
    Matrix face(2, static_cast<Index>(members.size()));
    for (std::size_t j = 0; j < members.size(); ++j) face.col(static_cast<Index>(j)) = K.vertex(members[j]);
    faces.push_back(std::move(face));
  }
  return faces;
}

double evalE(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  return faceSum(zeroSupportFaces(K), oriented(sign, u), p, true);
}

double evalF(Sign sign, const Body& K, const Vector& u, double p) {
  checkP(p);
  checkDim(K, u);
  return faceSum(zeroSupportFaces(K), oriented(sign, u), p, false);
}

double evaluate(OperatorKind kind, const Body& K, const Vector& u, double p) {
  switch (kind.family) {
    case Family::I: return evalI(kind.sign, K, u, p);
    case Family::J: return evalJ(kind.sign, K, u, p);
    case Family::M: return evalM(kind.sign, K, u, p);
    case Family::Mstar: return evalMstar(kind.sign, K, u, p);
    case Family::E: return evalE(kind.sign, K, u, p);
    case Family::F: return evalF(kind.sign, K, u, p);
  }
  throw OperatorError("unknown operator family");
}

PHomFunction bind(OperatorKind kind, const Body& K, double p) {
  checkP(p);
  const Index n = K.ambientDim();
  const Sign sign = kind.sign;
  switch (kind.family) {
    case Family::I:
    case Family::J:
    case Family::M: {
      if (kind.family == Family::M && !K.hasTriangulation())
        throw OperatorError("moment operators require a triangulation");
      auto body = std::make_shared<const Body>(K);
      return PHomFunction(n, p, [kind, body, p](const Vector& u) { return evaluate(kind, *body, u, p); });
    }
    case Family::Mstar: {
      if (!K.hasTriangulation()) throw OperatorError("moment operators require a triangulation");
      auto cones = std::make_shared<const Body>(originComplement(K));
      return PHomFunction(n, p, [sign, cones, p, n](const Vector& u) {
        if (cones->isEmpty()) return 0.0;
        return momentPlusBody(*cones, oriented(sign, u), MomentParams<double>(p, n));
      });
    }
    case Family::E:
    case Family::F: {
      auto faces = std::make_shared<const std::vector<Matrix>>(zeroSupportFaces(K));
      const bool useMax = kind.family == Family::E;
      return PHomFunction(n, p, [sign, faces, p, useMax](const Vector& u) {
        return faceSum(*faces, oriented(sign, u), p, useMax);
      });
    }
  }
  throw OperatorError("unknown operator family");
}

PHomFunction lpCombine(std::span<const LpTerm> terms) {
  if (terms.empty()) throw OperatorError("lp_combine needs at least one term");
  const Index n = terms.front().f.dim();
  const double p = terms.front().f.p();
  std::vector<std::pair<double, PHomFunction>> weighted;
  for (const LpTerm& t : terms) {
    if (t.f.dim() != n || t.f.p() != p) throw OperatorError("lp_combine terms differ in (n, p)");
    if (t.coef < 0.0) throw OperatorError("lp_combine coefficients must be nonnegative");
    weighted.emplace_back(std::pow(t.coef, p), t.f);
  }
  auto shared = std::make_shared<const decltype(weighted)>(std::move(weighted));
  return PHomFunction(n, p, [shared](const Vector& u) {
    double total = 0.0;
    for (const auto& [w, f] : *shared) total += w * f(u);
    return total;
  });
}

}  // namespace lpval
