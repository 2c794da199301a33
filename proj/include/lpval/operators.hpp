#pragma once

// SL(n)-covariant L_p Minkowski valuations on polytopes, evaluated as the
// p-homogeneous function u -> h(Phi K, u)^p (or Phi K itself for the J and F
// families, which are not support functions).

#include "lpval/geometry.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lpval {

enum class Family { I, J, M, Mstar, E, F };
enum class Sign { Plus, Minus };

struct OperatorKind {
  Family family;
  Sign sign;

  friend bool operator==(const OperatorKind&, const OperatorKind&) = default;
};

/// "Ipp", "Ipm", "Jpp", ..., "Mpps", "Mpms", "Epp", ..., "Fpm".
std::string operatorName(OperatorKind kind);
std::optional<OperatorKind> parseOperator(std::string_view name);

/// The operators available in dimension n (E and F exist only for n = 2).
std::vector<OperatorKind> builtinOperators(Index n);

/// Operators whose h^p-values are support functions of convex bodies.
bool isSupportPower(Family family);

/// An element of C_p(R^n): a p-homogeneous function evaluated by a stored rule.
class PHomFunction {
 public:
  using Rule = std::function<double(const Vector&)>;

  PHomFunction(Index n, double p, Rule rule);
  static PHomFunction zero(Index n, double p);

  double operator()(const Vector& u) const;
  Index dim() const { return n_; }
  double p() const { return p_; }

 private:
  Index n_;
  double p_;
  Rule rule_;
};

double evalI(Sign sign, const Body& K, const Vector& u, double p);
double evalJ(Sign sign, const Body& K, const Vector& u, double p);
double evalM(Sign sign, const Body& K, const Vector& u, double p);
double evalMstar(Sign sign, const Body& K, const Vector& u, double p);
double evalE(Sign sign, const Body& K, const Vector& u, double p);
double evalF(Sign sign, const Body& K, const Vector& u, double p);

double evaluate(OperatorKind kind, const Body& K, const Vector& u, double p);

/// Binds an operator to a body. Per-body work (the origin cone for M*, the
/// zero-support faces for E and F) is done once here.
PHomFunction bind(OperatorKind kind, const Body& K, double p);

struct LpTerm {
  double coef;
  PHomFunction f;
};

/// u -> sum coef_i^p f_i(u), the h^p form of coef_1 K_1 +_p coef_2 K_2 +_p ...
PHomFunction lpCombine(std::span<const LpTerm> terms);

/// Faces F(K,v) of a polygon for unit normals v with h(K,v) = 0, listed as
/// vertex sets. Normals whose face is {o} are omitted since their summands vanish.
std::vector<Matrix> zeroSupportFaces(const Body& K);

}  // namespace lpval
