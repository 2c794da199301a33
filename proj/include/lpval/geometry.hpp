#pragma once

// Convex polytopes in V-representation with optional simplicial
// triangulations, plus the linear maps and hyperplane splits used to
// exercise valuation identities.

#include "lpval/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <utility>

namespace lpval {

template <typename Scalar>
class LinearMap {
 public:
  using MatrixType = MatrixX<Scalar>;
  using VectorType = VectorX<Scalar>;

  explicit LinearMap(MatrixType entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
      throw GeometryError("linear map must be a nonempty square matrix");
    det_ = entries_.determinant();
  }

  static LinearMap identity(Index n) { return LinearMap(MatrixType::Identity(n, n)); }

  Index dim() const { return entries_.rows(); }
  const MatrixType& matrix() const { return entries_; }
  Scalar det() const { return det_; }

  VectorType operator()(const VectorType& x) const { return entries_ * x; }
  VectorType transposeApply(const VectorType& x) const { return entries_.transpose() * x; }

  friend LinearMap operator*(const LinearMap& a, const LinearMap& b) {
    return LinearMap(a.entries_ * b.entries_);
  }

 private:
  MatrixType entries_;
  Scalar det_{};
};

/// The plane {x : <x, normal> = offset}; the plus side is <x, normal> >= offset.
template <typename Scalar>
class Hyperplane {
 public:
  using VectorType = VectorX<Scalar>;

  Hyperplane(VectorType normal, Scalar offset = Scalar(0))
      : normal_(std::move(normal)), offset_(offset) {
    if (!(normal_.norm() > Scalar(0))) throw GeometryError("hyperplane normal must be nonzero");
  }

  const VectorType& normal() const { return normal_; }
  Scalar offset() const { return offset_; }
  Index dim() const { return normal_.size(); }

  Scalar signedDistance(const VectorType& x) const { return normal_.dot(x) - offset_; }

 private:
  VectorType normal_;
  Scalar offset_;
};

template <typename Scalar>
class Simplex {
 public:
  using MatrixType = MatrixX<Scalar>;

  /// Columns are the k+1 vertices.
  explicit Simplex(MatrixType vertices) : vertices_(std::move(vertices)) {
    if (vertices_.cols() < 1 || vertices_.cols() > vertices_.rows() + 1)
      throw GeometryError("simplex needs between 1 and n+1 vertices");
  }

  Index ambientDim() const { return vertices_.rows(); }
  Index order() const { return vertices_.cols() - 1; }
  const MatrixType& vertices() const { return vertices_; }

  MatrixType edges() const {
    return vertices_.rightCols(order()).colwise() - vertices_.col(0);
  }

  /// n-dimensional volume; zero unless the simplex is full-dimensional.
  Scalar volume() const {
    if (order() != ambientDim()) return Scalar(0);
    return std::abs(edges().determinant()) / factorial(order());
  }

  /// k-dimensional measure from the Gram determinant.
  Scalar measure() const {
    if (order() == 0) return Scalar(1);
    const MatrixType e = edges();
    const Scalar gram = (e.transpose() * e).determinant();
    return std::sqrt(std::max(gram, Scalar(0))) / factorial(order());
  }

  bool isDegenerate() const {
    if (order() == 0) return false;
    const MatrixType e = edges();
    const Scalar scale = e.colwise().norm().maxCoeff();
    if (!(scale > Scalar(0))) return true;
    Eigen::JacobiSVD<MatrixType> svd(e);
    return svd.singularValues().minCoeff() <= Scalar(tol::kRank) * scale;
  }

  static Scalar factorial(Index k) {
    Scalar f(1);
    for (Index i = 2; i <= k; ++i) f *= Scalar(i);
    return f;
  }

 private:
  MatrixType vertices_;
};

template <typename Scalar>
class BasicBody {
 public:
  using MatrixType = MatrixX<Scalar>;
  using VectorType = VectorX<Scalar>;

  BasicBody() = default;

  /// Vertices are columns. The vertex list alone determines support queries;
  /// the triangulation, when present, is used for measures and clipping.
  BasicBody(Index n, MatrixType vertices, std::optional<std::vector<Cell>> cells = std::nullopt)
      : n_(n), vertices_(std::move(vertices)), cells_(std::move(cells)) {
    if (n_ < 1) throw GeometryError("ambient dimension must be at least 1");
    if (vertices_.cols() > 0 && vertices_.rows() != n_)
      throw GeometryError("vertex dimension does not match ambient dimension");
    if (vertices_.cols() == 0) vertices_.resize(n_, 0);
    if (cells_) {
      for (const Cell& c : *cells_) {
        if (c.empty() || static_cast<Index>(c.size()) > n_ + 1)
          throw GeometryError("triangulation cell has invalid size");
        for (Index i : c)
          if (i < 0 || i >= vertices_.cols())
            throw GeometryError("triangulation index out of range");
      }
    }
  }

  static BasicBody empty(Index n) { return BasicBody(n, MatrixType(n, 0), std::vector<Cell>{}); }

  Index ambientDim() const { return n_; }
  Index vertexCount() const { return vertices_.cols(); }
  bool isEmpty() const { return vertices_.cols() == 0; }
  const MatrixType& vertices() const { return vertices_; }
  VectorType vertex(Index i) const { return vertices_.col(i); }

  bool hasTriangulation() const { return cells_.has_value(); }
  const std::vector<Cell>& cells() const {
    if (!cells_) throw GeometryError("body has no triangulation");
    return *cells_;
  }

  Simplex<Scalar> simplex(std::size_t i) const {
    const Cell& c = cells().at(i);
    MatrixType v(n_, static_cast<Index>(c.size()));
    for (std::size_t j = 0; j < c.size(); ++j) v.col(static_cast<Index>(j)) = vertices_.col(c[j]);
    return Simplex<Scalar>(std::move(v));
  }

  /// Largest vertex norm, the reference scale for relative tolerances.
  Scalar scale() const {
    if (isEmpty()) return Scalar(0);
    return vertices_.colwise().norm().maxCoeff();
  }

 private:
  Index n_ = 0;
  MatrixType vertices_;
  std::optional<std::vector<Cell>> cells_;
};

using Body = BasicBody<double>;

template <typename Scalar>
struct ClipResult {
  BasicBody<Scalar> plus;
  BasicBody<Scalar> minus;
  BasicBody<Scalar> slice;
};

enum class ReferenceBody { StandardSimplex, FacetSimplex, SegmentOriginE1, SegmentE1TwoE1, Triangle112, Box };

// ---------------------------------------------------------------------------
// Basic queries

template <typename Scalar>
void requireSameDim(const BasicBody<Scalar>& K, Index n) {
  if (K.ambientDim() != n) throw GeometryError("dimension mismatch");
}

template <typename Scalar>
Scalar support(const BasicBody<Scalar>& K, const VectorX<Scalar>& u) {
  requireSameDim(K, u.size());
  if (K.isEmpty()) throw GeometryError("support of an empty body");
  return (u.transpose() * K.vertices()).maxCoeff();
}

template <typename Scalar>
Scalar diameter(const BasicBody<Scalar>& K) {
  Scalar d(0);
  for (Index i = 0; i < K.vertexCount(); ++i)
    for (Index j = i + 1; j < K.vertexCount(); ++j)
      d = std::max(d, (K.vertices().col(i) - K.vertices().col(j)).norm());
  return d;
}

/// Affine dimension of the vertex set; -1 for the empty body.
template <typename Scalar>
Index dimension(const BasicBody<Scalar>& K) {
  if (K.isEmpty()) return -1;
  if (K.vertexCount() == 1) return 0;
  const Scalar scale = K.scale();
  if (!(scale > Scalar(0))) return 0;
  const MatrixX<Scalar> diff = K.vertices().rightCols(K.vertexCount() - 1).colwise() - K.vertices().col(0);
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(diff);
  const auto& s = svd.singularValues();
  return static_cast<Index>((s.array() > Scalar(tol::kRank) * scale).count());
}

/// Dimension of the linear span of the vertices (affine hull of K and o).
template <typename Scalar>
Index linearRank(const BasicBody<Scalar>& K) {
  if (K.isEmpty()) return 0;
  const Scalar scale = K.scale();
  if (!(scale > Scalar(0))) return 0;
  Eigen::JacobiSVD<MatrixX<Scalar>> svd(K.vertices());
  return static_cast<Index>((svd.singularValues().array() > Scalar(tol::kRank) * scale).count());
}

template <typename Scalar>
Scalar volume(const BasicBody<Scalar>& K) {
  Scalar v(0);
  for (std::size_t i = 0; i < K.cells().size(); ++i) v += K.simplex(i).volume();
  return v;
}

namespace detail {

// Barycentric membership of a point in a (possibly lower-dimensional) simplex.
template <typename Scalar>
bool simplexContains(const Simplex<Scalar>& s, const VectorX<Scalar>& x, Scalar scale) {
  const Index n = s.ambientDim();
  const Index m = s.vertices().cols();
  MatrixX<Scalar> a(n + 1, m);
  a.topRows(n) = s.vertices();
  a.row(n).setOnes();
  VectorX<Scalar> b(n + 1);
  b.head(n) = x;
  b(n) = Scalar(1);
  const VectorX<Scalar> lambda = a.colPivHouseholderQr().solve(b);
  const Scalar eps = Scalar(tol::kRank) * std::max(scale, Scalar(1));
  if ((a * lambda - b).norm() > eps) return false;
  return lambda.minCoeff() >= -Scalar(tol::kRank);
}

}  // namespace detail

template <typename Scalar>
bool originIn(const BasicBody<Scalar>& K) {
  const VectorX<Scalar> o = VectorX<Scalar>::Zero(K.ambientDim());
  const Scalar scale = K.scale();
  for (std::size_t i = 0; i < K.cells().size(); ++i)
    if (detail::simplexContains(K.simplex(i), o, scale)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Linear images and constructors

template <typename Scalar>
BasicBody<Scalar> applyMap(const BasicBody<Scalar>& K, const LinearMap<Scalar>& phi) {
  requireSameDim(K, phi.dim());
  std::optional<std::vector<Cell>> cells;
  if (K.hasTriangulation()) cells = K.cells();
  return BasicBody<Scalar>(K.ambientDim(), phi.matrix() * K.vertices(), std::move(cells));
}

template <typename Scalar>
BasicBody<Scalar> scale(const BasicBody<Scalar>& K, Scalar s) {
  std::optional<std::vector<Cell>> cells;
  if (K.hasTriangulation()) cells = K.cells();
  return BasicBody<Scalar>(K.ambientDim(), s * K.vertices(), std::move(cells));
}

/// -K
template <typename Scalar>
BasicBody<Scalar> reflect(const BasicBody<Scalar>& K) {
  return scale(K, Scalar(-1));
}

template <typename Scalar>
BasicBody<Scalar> translate(const BasicBody<Scalar>& K, const VectorX<Scalar>& t) {
  requireSameDim(K, t.size());
  std::optional<std::vector<Cell>> cells;
  if (K.hasTriangulation()) cells = K.cells();
  MatrixX<Scalar> v = K.vertices().colwise() + t;
  return BasicBody<Scalar>(K.ambientDim(), std::move(v), std::move(cells));
}

/// Pairwise vertex sums; no triangulation is attached.
template <typename Scalar>
BasicBody<Scalar> minkowskiSum(const BasicBody<Scalar>& K, const BasicBody<Scalar>& L) {
  if (K.ambientDim() != L.ambientDim()) throw GeometryError("dimension mismatch");
  MatrixX<Scalar> v(K.ambientDim(), K.vertexCount() * L.vertexCount());
  Index c = 0;
  for (Index i = 0; i < K.vertexCount(); ++i)
    for (Index j = 0; j < L.vertexCount(); ++j) v.col(c++) = K.vertices().col(i) + L.vertices().col(j);
  return BasicBody<Scalar>(K.ambientDim(), std::move(v));
}

template <typename Scalar>
BasicBody<Scalar> embed(const BasicBody<Scalar>& K, Index nTarget) {
  if (nTarget < K.ambientDim()) throw GeometryError("cannot embed into a smaller dimension");
  MatrixX<Scalar> v = MatrixX<Scalar>::Zero(nTarget, K.vertexCount());
  v.topRows(K.ambientDim()) = K.vertices();
  std::optional<std::vector<Cell>> cells;
  if (K.hasTriangulation()) cells = K.cells();
  return BasicBody<Scalar>(nTarget, std::move(v), std::move(cells));
}

/// A simplex as a one-cell body.
template <typename Scalar>
BasicBody<Scalar> simplexBody(const MatrixX<Scalar>& vertices) {
  Cell c(static_cast<std::size_t>(vertices.cols()));
  std::iota(c.begin(), c.end(), Index(0));
  return BasicBody<Scalar>(vertices.rows(), vertices, std::vector<Cell>{c});
}

/// The shear maps splitting T^n along the plane with normal
/// lambda e1 - (1 - lambda) e2: phi covers the plus side, psi the minus side.
template <typename Scalar>
std::pair<LinearMap<Scalar>, LinearMap<Scalar>> shearPair(Scalar lambda, Index n) {
  if (!(lambda > Scalar(0) && lambda < Scalar(1))) throw GeometryError("lambda must lie in (0,1)");
  if (n < 2) throw GeometryError("shear pair needs n >= 2");
  MatrixX<Scalar> phi = MatrixX<Scalar>::Identity(n, n);
  MatrixX<Scalar> psi = MatrixX<Scalar>::Identity(n, n);
  phi(0, 1) = Scalar(1) - lambda;
  phi(1, 1) = lambda;
  psi(0, 0) = Scalar(1) - lambda;
  psi(1, 0) = lambda;
  return {LinearMap<Scalar>(std::move(phi)), LinearMap<Scalar>(std::move(psi))};
}

template <typename Scalar>
Hyperplane<Scalar> shearPlane(Scalar lambda, Index n) {
  VectorX<Scalar> normal = VectorX<Scalar>::Zero(n);
  normal(0) = lambda;
  normal(1) = lambda - Scalar(1);
  return Hyperplane<Scalar>(std::move(normal), Scalar(0));
}

/// Product of elementary shears with off-diagonal entries uniform in [-2, 2].
template <typename Scalar>
LinearMap<Scalar> randomSlMap(Index n, int shears, std::uint64_t seed) {
  if (n < 2) throw GeometryError("random SL map needs n >= 2");
  if (shears < 0) throw GeometryError("shear count must be nonnegative");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::uniform_real_distribution<double> entry(-2.0, 2.0);
  MatrixX<Scalar> m = MatrixX<Scalar>::Identity(n, n);
  for (int s = 0; s < shears; ++s) {
    const Index i = pick(rng);
    Index j = pick(rng);
    while (j == i) j = pick(rng);
    MatrixX<Scalar> e = MatrixX<Scalar>::Identity(n, n);
    e(i, j) = Scalar(entry(rng));
    m = m * e;
  }
  return LinearMap<Scalar>(std::move(m));
}

/// Kuhn triangulation of the box prod [lo_i, hi_i].
template <typename Scalar>
BasicBody<Scalar> box(const VectorX<Scalar>& lo, const VectorX<Scalar>& hi) {
  const Index n = lo.size();
  if (n < 1 || hi.size() != n) throw GeometryError("box bounds have mismatched dimension");
  if (n > 10) throw GeometryError("box triangulation limited to n <= 10");
  for (Index i = 0; i < n; ++i)
    if (!(hi(i) > lo(i))) throw GeometryError("box bounds must satisfy lo < hi");
  const Index corners = Index(1) << n;
  MatrixX<Scalar> v(n, corners);
  for (Index mask = 0; mask < corners; ++mask)
    for (Index i = 0; i < n; ++i) v(i, mask) = (mask >> i) & 1 ? hi(i) : lo(i);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index(0));
  std::vector<Cell> cells;
  do {
    Cell c{0};
    Index mask = 0;
    for (Index axis : perm) {
      mask |= Index(1) << axis;
      c.push_back(mask);
    }
    cells.push_back(std::move(c));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return BasicBody<Scalar>(n, std::move(v), std::move(cells));
}

/// Named bodies: T^n, the facet conv{e1..en}, [o,e1], [e1,2e1],
/// conv{e1,e2,e1+e2} and axis boxes. Box params: none for [0,1]^n, (a,b)
/// for [a,b]^n, or 2n values lo_1,hi_1,...,lo_n,hi_n.
template <typename Scalar>
BasicBody<Scalar> referenceBody(ReferenceBody name, Index n, std::span<const Scalar> params = {}) {
  if (n < 1) throw GeometryError("ambient dimension must be at least 1");
  using M = MatrixX<Scalar>;
  switch (name) {
    case ReferenceBody::StandardSimplex: {
      M v = M::Zero(n, n + 1);
      v.rightCols(n).setIdentity();
      return simplexBody(v);
    }
    case ReferenceBody::FacetSimplex:
      return simplexBody<Scalar>(M::Identity(n, n));
    case ReferenceBody::SegmentOriginE1: {
      M v = M::Zero(n, 2);
      v(0, 1) = Scalar(1);
      return simplexBody(v);
    }
    case ReferenceBody::SegmentE1TwoE1: {
      M v = M::Zero(n, 2);
      v(0, 0) = Scalar(1);
      v(0, 1) = Scalar(2);
      return simplexBody(v);
    }
    case ReferenceBody::Triangle112: {
      if (n < 2) throw GeometryError("triangle_112 needs n >= 2");
      M v = M::Zero(n, 3);
      v(0, 0) = Scalar(1);
      v(1, 1) = Scalar(1);
      v(0, 2) = Scalar(1);
      v(1, 2) = Scalar(1);
      return simplexBody(v);
    }
    case ReferenceBody::Box: {
      VectorX<Scalar> lo = VectorX<Scalar>::Zero(n);
      VectorX<Scalar> hi = VectorX<Scalar>::Ones(n);
      if (params.size() == 2) {
        lo.setConstant(params[0]);
        hi.setConstant(params[1]);
      } else if (params.size() == static_cast<std::size_t>(2 * n)) {
        for (Index i = 0; i < n; ++i) {
          lo(i) = params[static_cast<std::size_t>(2 * i)];
          hi(i) = params[static_cast<std::size_t>(2 * i + 1)];
        }
      } else if (!params.empty()) {
        throw GeometryError("box expects 0, 2 or 2n parameters");
      }
      return box(lo, hi);
    }
  }
  throw GeometryError("unknown reference body");
}

// ---------------------------------------------------------------------------
// Clipping

namespace detail {

template <typename Scalar>
class CellSplitter {
 public:
  CellSplitter(const BasicBody<Scalar>& K, const Hyperplane<Scalar>& H) : n_(K.ambientDim()) {
    const Index m = K.vertexCount();
    Scalar reach = std::abs(H.offset());
    for (Index i = 0; i < m; ++i) {
      points_.push_back(K.vertices().col(i));
      dist_.push_back(H.signedDistance(points_.back()));
      reach = std::max(reach, std::abs(H.normal().dot(points_.back())));
    }
    const Scalar snap = Scalar(tol::kClip) * reach;
    for (Scalar& d : dist_)
      if (std::abs(d) <= snap) d = Scalar(0);
  }

  void split(const Cell& cell, std::vector<Cell>& plus, std::vector<Cell>& minus) {
    const auto neg = std::find_if(cell.begin(), cell.end(), [&](Index i) { return dist_[i] < 0; });
    const auto pos = std::find_if(cell.begin(), cell.end(), [&](Index i) { return dist_[i] > 0; });
    if (neg == cell.end()) plus.push_back(cell);
    if (pos == cell.end()) minus.push_back(cell);
    if (neg == cell.end() || pos == cell.end()) return;
    // Subdividing the crossing edge at the plane removes one vertex from
    // each side; recurse until every cell lies in a closed halfspace.
    const Index x = crossing(*neg, *pos);
    Cell lower = cell;
    Cell upper = cell;
    lower[static_cast<std::size_t>(pos - cell.begin())] = x;
    upper[static_cast<std::size_t>(neg - cell.begin())] = x;
    split(upper, plus, minus);
    split(lower, plus, minus);
  }

  Scalar distance(Index i) const { return dist_[static_cast<std::size_t>(i)]; }
  Index originalCount() const { return originals_; }
  void setOriginalCount(Index m) { originals_ = m; }

  /// Body on the used vertices of `cells` plus any original vertex accepted by `keep`.
  template <typename Keep>
  BasicBody<Scalar> assemble(const std::vector<Cell>& cells, Keep keep) const {
    if (cells.empty()) return BasicBody<Scalar>::empty(n_);
    std::set<Index> used;
    for (const Cell& c : cells) used.insert(c.begin(), c.end());
    for (Index i = 0; i < originals_; ++i)
      if (keep(dist_[static_cast<std::size_t>(i)])) used.insert(i);
    std::map<Index, Index> remap;
    MatrixX<Scalar> v(n_, static_cast<Index>(used.size()));
    Index k = 0;
    for (Index i : used) {
      v.col(k) = points_[static_cast<std::size_t>(i)];
      remap[i] = k++;
    }
    std::vector<Cell> out;
    out.reserve(cells.size());
    for (const Cell& c : cells) {
      Cell r;
      r.reserve(c.size());
      for (Index i : c) r.push_back(remap.at(i));
      out.push_back(std::move(r));
    }
    return BasicBody<Scalar>(n_, std::move(v), std::move(out));
  }

 private:
  Index crossing(Index a, Index b) {
    const auto key = std::minmax(a, b);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    const Index lo = key.first;
    const Index hi = key.second;
    const Scalar dl = dist_[static_cast<std::size_t>(lo)];
    const Scalar dh = dist_[static_cast<std::size_t>(hi)];
    const Scalar t = dl / (dl - dh);
    points_.push_back(points_[static_cast<std::size_t>(lo)] +
                      t * (points_[static_cast<std::size_t>(hi)] - points_[static_cast<std::size_t>(lo)]));
    dist_.push_back(Scalar(0));
    const Index id = static_cast<Index>(points_.size()) - 1;
    cache_.emplace(key, id);
    return id;
  }

  Index n_;
  Index originals_ = 0;
  std::vector<VectorX<Scalar>> points_;
  std::vector<Scalar> dist_;
  std::map<std::pair<Index, Index>, Index> cache_;
};

}  // namespace detail

/// Splits a triangulated body into K ∩ H+, K ∩ H- and K ∩ H. Each cell is cut
/// by repeatedly subdividing an edge that crosses the plane, so every new
/// vertex is an original vertex or an edge/plane intersection.
template <typename Scalar>
ClipResult<Scalar> clip(const BasicBody<Scalar>& K, const Hyperplane<Scalar>& H) {
  requireSameDim(K, H.dim());
  if (!K.hasTriangulation()) throw GeometryError("clip requires a triangulation");
  const Index n = K.ambientDim();
  if (K.isEmpty()) return {BasicBody<Scalar>::empty(n), BasicBody<Scalar>::empty(n), BasicBody<Scalar>::empty(n)};

  detail::CellSplitter<Scalar> splitter(K, H);
  splitter.setOriginalCount(K.vertexCount());

  bool allOnPlane = true;
  for (Index i = 0; i < K.vertexCount(); ++i) allOnPlane = allOnPlane && splitter.distance(i) == Scalar(0);
  if (allOnPlane) return {K, K, K};

  std::vector<Cell> plus;
  std::vector<Cell> minus;
  for (const Cell& c : K.cells()) splitter.split(c, plus, minus);

  // Slice cells are the facets of one side's cells that lie in the plane.
  std::set<Cell> sliceSet;
  const std::vector<Cell>& source = plus.empty() ? minus : plus;
  for (const Cell& c : source) {
    Cell onPlane;
    for (Index i : c)
      if (splitter.distance(i) == Scalar(0)) onPlane.push_back(i);
    if (!onPlane.empty() && onPlane.size() + 1 == c.size()) {
      std::sort(onPlane.begin(), onPlane.end());
      sliceSet.insert(std::move(onPlane));
    }
  }
  std::vector<Cell> sliceCells(sliceSet.begin(), sliceSet.end());

  ClipResult<Scalar> out;
  out.plus = splitter.assemble(plus, [](Scalar d) { return d >= Scalar(0); });
  out.minus = splitter.assemble(minus, [](Scalar d) { return d <= Scalar(0); });
  out.slice = splitter.assemble(sliceCells, [](Scalar d) { return d == Scalar(0); });
  return out;
}

// ---------------------------------------------------------------------------
// Convex hull with the origin

namespace detail {

// Unit normal of the hyperplane (in R^r) through r points, oriented away from `inside`.
template <typename Scalar>
VectorX<Scalar> facetNormal(const MatrixX<Scalar>& pts, const VectorX<Scalar>& inside) {
  const Index r = pts.rows();
  VectorX<Scalar> normal(r);
  if (r == 1) {
    normal(0) = Scalar(1);
  } else {
    const MatrixX<Scalar> diff = pts.rightCols(r - 1).colwise() - pts.col(0);
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(diff, Eigen::ComputeFullU);
    normal = svd.matrixU().col(r - 1);
  }
  if (normal.dot(inside - pts.col(0)) > Scalar(0)) normal = -normal;
  return normal;
}

}  // namespace detail

/// Triangulated closure of K_o \ K, where K_o = conv(K ∪ {o}). The cells are
/// cones from o over the boundary faces of K that are visible from o; when o
/// lies outside aff K the whole triangulation of K is coned.
template <typename Scalar>
BasicBody<Scalar> originComplement(const BasicBody<Scalar>& K) {
  const Index n = K.ambientDim();
  if (K.isEmpty()) throw GeometryError("hull of an empty body");
  if (!K.hasTriangulation()) throw GeometryError("hull_with_origin requires a triangulation");
  if (originIn(K)) return BasicBody<Scalar>::empty(n);

  const Index d = dimension(K);
  const Index r = linearRank(K);
  const Index m = K.vertexCount();
  MatrixX<Scalar> verts(n, m + 1);
  verts.leftCols(m) = K.vertices();
  verts.col(m).setZero();
  const Index origin = m;

  std::set<Cell> cones;
  if (r == d + 1) {
    for (const Cell& c : K.cells()) {
      if (static_cast<Index>(c.size()) != d + 1) continue;
      Cell cone = c;
      cone.push_back(origin);
      cones.insert(std::move(cone));
    }
  } else {
    // o ∈ aff K: work in coordinates of the linear span, where K is full-dimensional.
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(K.vertices(), Eigen::ComputeThinU);
    const MatrixX<Scalar> basis = svd.matrixU().leftCols(r);
    const MatrixX<Scalar> w = basis.transpose() * K.vertices();
    const Scalar eps = Scalar(tol::kRank) * K.scale();
    for (std::size_t ci = 0; ci < K.cells().size(); ++ci) {
      const Cell& c = K.cells()[ci];
      if (static_cast<Index>(c.size()) != r + 1) continue;
      MatrixX<Scalar> cellPts(r, r + 1);
      for (Index j = 0; j <= r; ++j) cellPts.col(j) = w.col(c[static_cast<std::size_t>(j)]);
      if (Simplex<Scalar>(cellPts).isDegenerate()) continue;
      for (Index drop = 0; drop <= r; ++drop) {
        Cell facet;
        MatrixX<Scalar> pts(r, r);
        for (Index j = 0, k = 0; j <= r; ++j) {
          if (j == drop) continue;
          facet.push_back(c[static_cast<std::size_t>(j)]);
          pts.col(k++) = cellPts.col(j);
        }
        const VectorX<Scalar> normal = detail::facetNormal<Scalar>(pts, cellPts.col(drop));
        const Scalar offset = normal.dot(pts.col(0));
        if (offset >= -eps) continue;
        if (((normal.transpose() * w).array() - offset).maxCoeff() > eps) continue;
        std::sort(facet.begin(), facet.end());
        facet.push_back(origin);
        cones.insert(std::move(facet));
      }
    }
  }
  return BasicBody<Scalar>(n, std::move(verts), std::vector<Cell>(cones.begin(), cones.end()));
}

/// K_o = conv(K ∪ {o}), triangulated as K's cells plus the origin cones.
template <typename Scalar>
BasicBody<Scalar> hullWithOrigin(const BasicBody<Scalar>& K) {
  const BasicBody<Scalar> complement = originComplement(K);
  if (complement.isEmpty()) return K;
  // complement's vertex list is K's vertices followed by o.
  std::vector<Cell> cells = K.cells();
  cells.insert(cells.end(), complement.cells().begin(), complement.cells().end());
  return BasicBody<Scalar>(K.ambientDim(), complement.vertices(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Distances

/// max_u |h(K,u) - h(L,u)| over the given unit directions.
template <typename Scalar>
Scalar hausdorffSampled(const BasicBody<Scalar>& K, const BasicBody<Scalar>& L,
                        std::span<const VectorX<Scalar>> dirs) {
  if (dirs.empty()) throw GeometryError("direction set is empty");
  Scalar worst(0);
  for (const auto& u : dirs) {
    if (std::abs(u.norm() - Scalar(1)) > Scalar(1e-9)) throw GeometryError("direction is not a unit vector");
    worst = std::max(worst, std::abs(support(K, u) - support(L, u)));
  }
  return worst;
}

}  // namespace lpval
