#include "doctest.h"
#include "strength/enumeration.hpp"
#include "strength/geometry.hpp"

#include <cmath>
#include <numbers>

using namespace strength;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

struct Instance {
  ExtremePointSet all;
  Hyperplane facet;
  ExtremePointSet on;
  ExactVector C;
};

Instance make(Family f, int n, FacetKind kind, int k, CombConfig comb = {}) {
  auto all = enumerate(f, n);
  auto h = build_facet(all.indexer(), {f, n, kind, k, comb});
  auto on = incident_points(all, h);
  auto C = centroid(all);
  return {std::move(all), std::move(h), std::move(on), std::move(C)};
}

ProjectionResult<Rational> weak_of(const Instance& in) {
  auto hull = affine_hull_equations(in.all.indexer());
  return weak_cd<Rational>(to_exact(in.facet.a), in.facet.b, to_exact(hull[0].a), hull[0].b, in.C);
}

}  // namespace

TEST_CASE("weak_cd worked examples on STHGP(3)") {
  auto sub = make(Family::STHGP, 3, FacetKind::Subtour, 2);
  auto r = weak_of(sub);
  CHECK(r.distance_squared == q(7, 80));
  auto hull = affine_hull_equations(sub.all.indexer());
  ExactVector c = to_exact(hull[0].a);
  CHECK(r.a_hat.dot(c) == 0);
  CHECK(to_exact(sub.facet.a).dot(r.closest_point) == sub.facet.b);
  CHECK(c.dot(r.closest_point) == hull[0].b);

  CHECK(weak_of(make(Family::STHGP, 3, FacetKind::NonNegativity, 2)).distance_squared == q(7, 24));
  CHECK(weak_of(make(Family::STHGP, 3, FacetKind::NonNegativity, 3)).distance_squared == q(7, 48));
}

TEST_CASE("weak_cd edge cases") {
  ExactVector a(3), c(3), C(3);
  a << Rational(1), Rational(0), Rational(0);
  c << Rational(1), Rational(1), Rational(1);
  C << q(1, 3), q(1, 3), q(1, 3);
  auto r = weak_cd<Rational>(a, q(1, 3), c, Rational(1), C);
  CHECK(r.distance_squared == 0);
  CHECK(r.closest_point == C);
  CHECK_THROWS_AS(weak_cd<Rational>(c, Rational(1), c, Rational(1), C), std::domain_error);
  ExactVector zero = ExactVector::Constant(3, Rational(0));
  CHECK_THROWS_AS(weak_cd<Rational>(a, Rational(0), zero, Rational(0), C), std::invalid_argument);
  CHECK_THROWS_AS(weak_cd<Rational>(a, Rational(0), c, Rational(2), C), std::invalid_argument);
  // Double instantiation gives the same number.
  Eigen::VectorXd ad(3), cd(3), Cd(3);
  ad << 1, 2, 0;
  cd << 1, 1, 1;
  Cd << 1.0 / 3, 1.0 / 3, 1.0 / 3;
  ExactVector ae(3);
  ae << Rational(1), Rational(2), Rational(0);
  auto rd = weak_cd<double>(ad, 0.0, cd, 1.0, Cd);
  auto re = weak_cd<Rational>(ae, Rational(0), c, Rational(1), C);
  CHECK(rd.distance_squared == doctest::Approx(to_double(re.distance_squared).value).epsilon(1e-14));
}

TEST_CASE("hull distance: trivial sets") {
  ExtremePointSet one{EdgeIndexer(Family::TSP, 4)};
  std::vector<std::uint16_t> e{0, 2, 5};
  one.add(e);
  Eigen::VectorXd C = Eigen::VectorXd::Constant(6, 0.25);
  auto r = hull_distance(one, C, HullMode::Convex);
  CHECK(r.distance_squared == doctest::Approx(3 * 0.75 * 0.75 + 3 * 0.0625));
  ExtremePointSet none{EdgeIndexer(Family::TSP, 4)};
  CHECK(hull_distance(none, C, HullMode::Convex).infinite);
}

TEST_CASE("hull distance on TSP(5) subtour and the smallest comb") {
  auto sub = make(Family::TSP, 5, FacetKind::Subtour, 2);
  CHECK(sub.on.size() == 6);
  auto r = hull_distance(sub.on, to_double(sub.C), HullMode::Convex);
  CHECK(std::fabs(r.distance_squared - 0.5) <= 1e-7);
  CHECK(r.certificate_gap <= 1e-10);
  double total = 0;
  for (auto [i, w] : r.weights) {
    CHECK(w >= 0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0));

  CombConfig smallest;
  auto comb = make(Family::TSP, 6, FacetKind::Comb3, 0, smallest);
  auto a = hull_distance(comb.on, to_double(comb.C), HullMode::Affine);
  CHECK(std::fabs(a.distance_squared - 128.0 / 105.0) <= 1e-7);
  CHECK(a.certificate_gap <= 1e-10);
  auto n = hull_distance(comb.on, to_double(comb.C), HullMode::Convex);
  CHECK(std::fabs(n.distance_squared - a.distance_squared) <= 1e-9);

  CombConfig wide;
  wide.h = 1;
  wide.o = 1;
  auto comb8 = make(Family::TSP, 8, FacetKind::Comb3, 0, wide);
  auto w8 = hull_distance(comb8.on, to_double(comb8.C), HullMode::Affine);
  auto n8 = hull_distance(comb8.on, to_double(comb8.C), HullMode::Convex);
  CHECK(n8.distance_squared > w8.distance_squared + 1e-6);
}

TEST_CASE("affine hull distance equals weak_cd on STHGP facets") {
  for (int n = 3; n <= 6; ++n)
    for (int k = 2; k <= n; ++k) {
      for (FacetKind kind : {FacetKind::Subtour, FacetKind::NonNegativity}) {
        if (kind == FacetKind::Subtour && k == n) continue;
        auto in = make(Family::STHGP, n, kind, k);
        double weak = to_double(weak_of(in).distance_squared).value;
        auto r = hull_distance(in.on, to_double(in.C), HullMode::Affine);
        CHECK(std::fabs(r.distance_squared - weak) <= 1e-9 * weak);
      }
    }
}

TEST_CASE("first-principles angle") {
  EdgeIndexer idx(Family::STHGP, 4);
  IntVector c = to_int_vector(affine_hull_equations(idx)[0].a);
  IntVector a1 = to_int_vector(build_subtour(idx, 0b0011).a);
  IntVector a2 = to_int_vector(build_subtour(idx, 0b1100).a);
  auto r = interior_angle_first_principles(a1, a2, c);
  // Projections carry a factor alpha(4) = 31 relative to the reduced form -33/60.
  CHECK(r.numerator == 31 * -33);
  CHECK(r.denominator_squared == BigInt(31 * 31) * 3600);
  CHECK(r.theta == doctest::Approx(std::numbers::pi - std::acos(-33.0 / 60.0)));
  auto same = interior_angle_first_principles(a1, a1, c);
  CHECK(same.theta == doctest::Approx(std::numbers::pi));
  CHECK_THROWS_AS(interior_angle_first_principles(c, a1, c), std::domain_error);
}
