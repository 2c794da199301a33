#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace lpval {

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vector = VectorX<double>;
using Matrix = MatrixX<double>;
using Index = Eigen::Index;

/// Vertex indices of one simplex of a triangulation.
using Cell = std::vector<Index>;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OperatorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
// Affine rank and barycentric membership, relative to the largest vertex norm.
inline constexpr double kRank = 1e-10;
// Signed distances this small (relative) are snapped onto the cutting plane.
inline constexpr double kClip = 1e-12;
// Zero-support detection for the planar face operators, relative to diameter.
inline constexpr double kZeroSupport = 1e-9;
// Node clustering for confluent divided differences.
inline constexpr double kNodeCluster = 1e-7;
}  // namespace tol

}  // namespace lpval
