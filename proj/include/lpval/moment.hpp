#pragma once

// Exact integration of <x,u>_+^p over simplices and triangulated bodies.
//
// On a simplex S whose vertex values b_i = <v_i,u> are all nonnegative,
//   int_S <x,u>^p dx = n! vol(S) Gamma(p+1)/Gamma(p+n+1) [b_0,...,b_n] t^(p+n)
// (Hermite-Genocchi). Simplices straddling <x,u> = 0 are first clipped.

#include "lpval/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <type_traits>
#include <vector>

namespace lpval {

template <typename Scalar>
struct MomentParams {
  Scalar p;
  Index n;

  MomentParams(Scalar p_, Index n_) : p(p_), n(n_) {
    if (!(p > Scalar(1))) throw IntegrationError("moment exponent must satisfy p > 1");
    if (n < 1) throw IntegrationError("ambient dimension must be at least 1");
  }
};

struct McEstimate {
  double value = 0.0;
  double standardError = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};

/// Gamma(p+1) / Gamma(p+1+n) as 1 / prod_{k=1..n} (p+k).
template <typename Scalar>
Scalar fallingRatio(Scalar p, Index n) {
  if (!(p > Scalar(-1))) throw IntegrationError("falling_ratio needs p > -1");
  if (n < 0) throw IntegrationError("falling_ratio needs n >= 0");
  Scalar prod(1);
  for (Index k = 1; k <= n; ++k) prod *= p + Scalar(k);
  return Scalar(1) / prod;
}

/// Divided difference [b_0,...,b_m] of t^q at nonnegative nodes. Nodes closer
/// than 1e-7 (relative to the largest) are merged at their mean and treated
/// as confluent. The arithmetic runs in at least long double precision since
/// distinct-but-close nodes cancel heavily.
template <typename Scalar>
Scalar dividedDifferencePower(std::span<const Scalar> nodes, Scalar q) {
  using Work = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
  if (nodes.empty()) throw IntegrationError("divided difference needs at least one node");
  const std::size_t m = nodes.size() - 1;
  if (!(q > Scalar(m))) throw IntegrationError("exponent too small for confluency order");
  std::vector<Work> x;
  x.reserve(nodes.size());
  for (Scalar b : nodes) {
    if (b < Scalar(0)) throw IntegrationError("divided difference node is negative");
    x.push_back(Work(b));
  }
  std::sort(x.begin(), x.end());

  const Work top = x.back();
  const Work cluster = Work(tol::kNodeCluster) * top;
  for (std::size_t i = 0; i <= m;) {
    std::size_t j = i;
    Work sum = 0;
    while (j <= m && x[j] - x[i] <= cluster) sum += x[j++];
    const Work mean = sum / Work(j - i);
    for (std::size_t k = i; k < j; ++k) x[k] = mean;
    i = j;
  }

  const Work qw = Work(q);
  // g^(k)(t) / k!
  auto taylor = [&](Work t, std::size_t k) {
    Work coef = 1;
    for (std::size_t i = 0; i < k; ++i) coef *= (qw - Work(i)) / Work(i + 1);
    const Work e = qw - Work(k);
    if (t == Work(0)) return e > Work(0) ? Work(0) : (e == Work(0) ? coef : Work(0));
    return coef * std::pow(t, e);
  };

  // table[i] holds [x_i, ..., x_{i+level}].
  std::vector<Work> table(m + 1);
  for (std::size_t i = 0; i <= m; ++i) table[i] = taylor(x[i], 0);
  for (std::size_t level = 1; level <= m; ++level) {
    for (std::size_t i = 0; i + level <= m; ++i) {
      const Work lo = x[i];
      const Work hi = x[i + level];
      table[i] = hi == lo ? taylor(lo, level) : (table[i + 1] - table[i]) / (hi - lo);
    }
  }
  return Scalar(table[0]);
}

namespace detail {

template <typename Scalar>
Scalar momentOnNonnegativeSide(const Simplex<Scalar>& s, const VectorX<Scalar>& u, Scalar p) {
  using Work = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
  const Index n = s.ambientDim();
  std::vector<Work> b(static_cast<std::size_t>(n + 1));
  for (Index i = 0; i <= n; ++i) b[static_cast<std::size_t>(i)] = std::max(Work(0), Work(s.vertices().col(i).dot(u)));
  const Work absDet = std::abs(Work(s.edges().determinant()));
  if (absDet == Work(0)) return Scalar(0);
  const Work dd = dividedDifferencePower<Work>(b, Work(p) + Work(n));
  return Scalar(absDet * fallingRatio<Work>(Work(p), n) * dd);
}

}  // namespace detail

/// int_S <x,u>_+^p dx for a full-dimensional simplex S.
template <typename Scalar>
Scalar momentPlusSimplex(const Simplex<Scalar>& s, const VectorX<Scalar>& u, const MomentParams<Scalar>& params) {
  const Index n = s.ambientDim();
  if (u.size() != n || params.n != n) throw IntegrationError("dimension mismatch");
  if (s.order() != n) throw IntegrationError("simplex is not full-dimensional");
  if (s.isDegenerate()) throw IntegrationError("full-dimensional simplex has no volume");
  if (u.isZero(0)) return Scalar(0);

  const VectorX<Scalar> values = s.vertices().transpose() * u;
  if (values.maxCoeff() <= Scalar(0)) return Scalar(0);
  if (values.minCoeff() >= Scalar(0)) return detail::momentOnNonnegativeSide(s, u, params.p);

  const ClipResult<Scalar> pieces = clip(simplexBody<Scalar>(s.vertices()), Hyperplane<Scalar>(u, Scalar(0)));
  Scalar total(0);
  for (std::size_t i = 0; i < pieces.plus.cells().size(); ++i) {
    const Simplex<Scalar> leaf = pieces.plus.simplex(i);
    if (leaf.order() == n) total += detail::momentOnNonnegativeSide(leaf, u, params.p);
  }
  return total;
}

/// Sum over the full-dimensional, nondegenerate cells of K.
template <typename Scalar>
Scalar momentPlusBody(const BasicBody<Scalar>& K, const VectorX<Scalar>& u, const MomentParams<Scalar>& params) {
  if (!K.hasTriangulation()) throw IntegrationError("moment requires a triangulation");
  if (K.ambientDim() != u.size() || K.ambientDim() != params.n) throw IntegrationError("dimension mismatch");
  Scalar total(0);
  for (std::size_t i = 0; i < K.cells().size(); ++i) {
    if (static_cast<Index>(K.cells()[i].size()) != K.ambientDim() + 1) continue;
    const Simplex<Scalar> s = K.simplex(i);
    if (s.isDegenerate()) continue;
    total += momentPlusSimplex(s, u, params);
  }
  return total;
}

/// Rejection-sampling estimate of int_K <x,u>_+^p dx from the bounding box.
template <typename Scalar>
McEstimate mcMoment(const BasicBody<Scalar>& K, const VectorX<Scalar>& u, const MomentParams<Scalar>& params,
                    std::int64_t samples, std::uint64_t seed) {
  if (!K.hasTriangulation()) throw IntegrationError("Monte Carlo moment requires a triangulation");
  if (samples < 1000) throw IntegrationError("Monte Carlo moment needs at least 1000 samples");
  const Index n = K.ambientDim();
  McEstimate est;
  est.samples = samples;
  est.seed = seed;
  if (K.isEmpty()) return est;

  struct Cached {
    VectorX<Scalar> base;
    MatrixX<Scalar> inverse;
  };
  std::vector<Cached> cells;
  for (std::size_t i = 0; i < K.cells().size(); ++i) {
    if (static_cast<Index>(K.cells()[i].size()) != n + 1) continue;
    const Simplex<Scalar> s = K.simplex(i);
    if (s.isDegenerate()) continue;
    cells.push_back({s.vertices().col(0), s.edges().inverse()});
  }
  if (cells.empty()) return est;

  const VectorX<Scalar> lo = K.vertices().rowwise().minCoeff();
  const VectorX<Scalar> hi = K.vertices().rowwise().maxCoeff();
  const double boxVolume = double((hi - lo).prod());

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  VectorX<Scalar> x(n);
  double sum = 0.0;
  double sumSq = 0.0;
  for (std::int64_t k = 0; k < samples; ++k) {
    for (Index i = 0; i < n; ++i) x(i) = lo(i) + Scalar(unit(rng)) * (hi(i) - lo(i));
    bool inside = false;
    for (const Cached& c : cells) {
      const VectorX<Scalar> lambda = c.inverse * (x - c.base);
      if (lambda.minCoeff() >= Scalar(-1e-12) && lambda.sum() <= Scalar(1 + 1e-12)) {
        inside = true;
        break;
      }
    }
    if (!inside) continue;
    const double t = double(x.dot(u));
    if (t <= 0.0) continue;
    const double f = std::pow(t, double(params.p));
    sum += f;
    sumSq += f * f;
  }
  const double count = double(samples);
  const double mean = sum / count;
  const double var = std::max(0.0, (sumSq - count * mean * mean) / (count - 1.0));
  est.value = boxVolume * mean;
  est.standardError = boxVolume * std::sqrt(var / count);
  return est;
}

}  // namespace lpval
