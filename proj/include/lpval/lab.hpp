#pragma once

// Numerical checks of valuation identities: splits, inclusion-exclusion,
// SL(n)/GL(n) covariance, homogeneity, the shear functional equation, the
// projection property, coefficient recovery and the discontinuity witness.

#include "lpval/geometry.hpp"
#include "lpval/operators.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpval {

enum class Domain { Kno, Kn };

std::string domainName(Domain d);
std::optional<Domain> parseDomain(std::string_view name);

/// A valuation seen only through its values. Binding to a body returns the
/// function u -> Phi(K)(u) in h^p scale.
struct BlackBoxValuation {
  std::string name;
  Index n = 0;
  double p = 2.0;
  Domain domain = Domain::Kn;
  std::function<PHomFunction(const Body&)> apply;

  double operator()(const Body& K, const Vector& u) const { return apply(K)(u); }
};

BlackBoxValuation builtinValuation(OperatorKind kind, Index n, double p);

struct WeightedOperator {
  double weight;  // h^p scale
  OperatorKind kind;
};

/// Phi = sum weight_i Op_i in h^p scale.
BlackBoxValuation linearCombination(std::span<const WeightedOperator> terms, Index n, double p);

BlackBoxValuation zeroValuation(Index n, double p);

struct CheckReport {
  std::string name;
  std::int64_t cases = 0;
  double max_abs_deviation = 0.0;
  double max_rel_deviation = 0.0;
  bool passed = true;
  std::string worst_case;  // serialized JSON of the worst inputs
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

struct FitResult {
  std::vector<double> coefficients;  // d_i, h^p scale
  std::vector<std::string> basis;
  double residual = 0.0;
  Domain domain = Domain::Kno;
  double p = 2.0;
  std::vector<std::string> warnings;

  /// c_i = d_i^(1/p); NaN where d_i < 0.
  std::vector<double> minkowskiCoefficients() const;
};

class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Folds case deviations into a report. A case passes when
/// |lhs - rhs| <= tol * scale, scale being the sum of the magnitudes of the
/// terms on both sides.
class DeviationTracker {
 public:
  DeviationTracker(std::string name, double tol, std::uint64_t seed = 0);
  void record(double lhs, double rhs, double scale, const std::function<std::string()>& describe);
  CheckReport report() const { return report_; }

 private:
  CheckReport report_;
  double worstRel_ = 0.0;
};

/// Merges several reports of one check into a single aggregate.
CheckReport mergeReports(std::string name, std::span<const CheckReport> parts);

// ---------------------------------------------------------------------------
// Seeded inputs

std::vector<Vector> randomDirections(Index n, int count, std::uint64_t seed);

/// A triangulated body: random simplex, affine image of a cube, or a
/// translate of T^n, chosen and shaped by the seed.
Body randomBody(Index n, std::uint64_t seed);

/// randomBody translated so that it contains the origin in its interior.
Body randomBodyContainingOrigin(Index n, std::uint64_t seed);

/// A hyperplane through a random interior point of K with a random normal.
Hyperplane<double> randomSplittingPlane(const Body& K, std::uint64_t seed);

/// A linear map with positive determinant, roughly well conditioned.
LinearMap<double> randomPositiveMap(Index n, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Checks

CheckReport checkValuationSplit(const BlackBoxValuation& phi, const Body& K, const Hyperplane<double>& H,
                                std::span<const Vector> dirs, double tol);

enum class Side { Plus, Minus };

/// A piece parent ∩ H_i^{side} over some of the planes.
struct RegionPiece {
  std::vector<std::pair<std::size_t, Side>> cuts;
};

/// Phi(P1 ∪ P2 ∪ P3) = sum Phi(Pi) - sum Phi(Pi ∩ Pj) + Phi(P1 ∩ P2 ∩ P3) for
/// pieces cut from `parent` by `planes`. The pieces must cover the parent.
CheckReport checkInclusionExclusion(const BlackBoxValuation& phi, const Body& parent,
                                    std::span<const Hyperplane<double>> planes, std::span<const RegionPiece> pieces,
                                    std::span<const Vector> dirs, double tol);

/// Body cut from `parent` by the given plane sides; conflicting sides of the
/// same plane select the slice.
Body regionBody(const Body& parent, std::span<const Hyperplane<double>> planes,
                std::span<const std::pair<std::size_t, Side>> cuts);

CheckReport checkSlCovariance(const BlackBoxValuation& phi, const Body& K, const LinearMap<double>& map,
                              std::span<const Vector> dirs, double tol);

CheckReport checkGlScaling(const BlackBoxValuation& phi, const Body& P, const LinearMap<double>& map,
                           std::span<const Vector> dirs, double tol);

CheckReport checkHomogeneity(const BlackBoxValuation& phi, const Body& K, std::span<const double> scales,
                             double expectedDegree, std::span<const Vector> dirs, double tol);

CheckReport checkFunctionalEquation(const BlackBoxValuation& phi, Index n, double lambda, double s,
                                    std::span<const Vector> xs, double tol);

CheckReport checkProjection(const BlackBoxValuation& phi, const Body& P, std::span<const Vector> dirs, double tol);

/// Least-squares recovery of d_i over {Mpp, Mpm, Ipp, Ipm} (Kno) or
/// {Mpp, Mpm, Mpps, Mpms, Ipp, Ipm} (Kn), optionally extended by {Jpp, Jpm}.
FitResult fitClassification(const BlackBoxValuation& phi, std::span<const Body> bodies, std::span<const Vector> dirs,
                            Domain domain, bool includeJ = false);

std::vector<OperatorKind> fitBasis(Domain domain, bool includeJ);

struct DiscontinuityRow {
  double epsilon;
  double value;
  double hausdorff;
};

struct DiscontinuityTable {
  std::vector<DiscontinuityRow> rows;
  double limitValue = 0.0;
};

/// (Ipp - Epp)(K_eps)(e1) for K_eps = [-eps e1, e1] + [-eps e2, eps e2] and at [o, e1].
DiscontinuityTable discontinuityDemo(double p, std::span<const double> epsilons);

// ---------------------------------------------------------------------------
// Suites

enum class Suite { Valuation, Covariance, Scaling, Functional, Projection, All };

std::optional<Suite> parseSuite(std::string_view name);

struct SuiteConfig {
  Index n = 3;
  double p = 2.0;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  int directions = 20;
};

/// Runs the property checks over the built-in operators and seeded inputs.
std::vector<CheckReport> runSuite(Suite suite, const SuiteConfig& config);

}  // namespace lpval
