#pragma once

#include "strength/enumeration.hpp"
#include "strength/exactnum.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace strength {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
struct ProjectionResult {
  Scalar distance_squared;
  Vec<Scalar> closest_point;
  Scalar tau;
  Vec<Scalar> a_hat;
};

// Distance from C to H1 = {a.x = b} inside H2 = {c.x = d}, for a centroid C on H2.
template <typename Scalar>
ProjectionResult<Scalar> weak_cd(const Vec<Scalar>& a, const Scalar& b, const Vec<Scalar>& c, const Scalar& d,
                                 const Vec<Scalar>& C) {
  if (a.size() != c.size() || a.size() != C.size()) throw std::invalid_argument("weak_cd dimension mismatch");
  const Scalar zero(0);
  const Scalar s = c.dot(c);
  if (s == zero) throw std::invalid_argument("weak_cd: affine hull normal is zero");
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (c.dot(C) != d) throw std::invalid_argument("weak_cd: centroid is not on the affine hull");
  }
  const Scalar q = a.dot(a);
  const Scalar r = a.dot(c);
  const Scalar det = q * s - r * r;
  if (det == zero) throw std::domain_error("weak_cd: hyperplane is parallel to the affine hull");
  const Scalar slack = b - a.dot(C);
  ProjectionResult<Scalar> out;
  out.a_hat = a * s - c * r;
  out.tau = slack / det;
  out.distance_squared = s * slack * slack / det;
  out.closest_point = C + out.a_hat * out.tau;
  return out;
}

ExactVector to_exact(const std::vector<Rational>& v);
Eigen::VectorXd to_double(const ExactVector& v);

enum class HullMode { Convex, Affine };

struct HullOptions {
  double gap_tolerance = 1e-10;
  int max_iterations = 100000;
  int threads = 1;
  // Refuse point sets larger than this instead of sampling them.
  std::size_t max_points = 50'000'000;
};

struct HullDistanceResult {
  double distance_squared = 0.0;
  bool infinite = false;  // no incident points
  // (point index, weight); convex weights in Convex mode, affine ones otherwise.
  std::vector<std::pair<std::size_t, double>> weights;
  double certificate_gap = 0.0;
  int iterations = 0;
  bool used_fallback = false;
};

// Squared distance from C to conv(points) (Wolfe's min-norm point) or to
// aff(points) (orthogonal projection).
HullDistanceResult hull_distance(const ExtremePointSet& points, const Eigen::VectorXd& C, HullMode mode,
                                 const HullOptions& options = {});

struct AngleResult {
  BigInt numerator;            // a1_hat . a2_hat
  BigInt denominator_squared;  // |a1_hat|^2 |a2_hat|^2
  double theta = 0.0;          // pi - phi, radians
};

// Interior angle between two facets inside the hyperplane c.x = d.
AngleResult interior_angle_first_principles(const IntVector& a1, const IntVector& a2, const IntVector& c);

IntVector to_int_vector(const std::vector<Rational>& v);

}  // namespace strength
