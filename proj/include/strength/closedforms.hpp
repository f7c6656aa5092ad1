#pragma once

#include "strength/enumeration.hpp"
#include "strength/exactnum.hpp"

#include <vector>

namespace strength {

class AttachTable;
class LogCombinatorics;

// d = ratio * sqrt(radicand); d^2 is exact.
struct RootForm {
  Rational ratio;
  Rational radicand;
  Rational squared() const { return ratio * ratio * radicand; }
  double value() const;
};

// TSP

BigInt tsp_tour_count(int n);
BigInt tsp_tours_with_edge(int n);
BigInt tsp_subtour_incident(int n, int k);
Rational tsp_centroid(int n);
Rational tsp_nonneg_epr(int n);
Rational tsp_subtour_epr(int n, int k);
Rational tsp_nonneg_cd2(int n);

struct TspSubtourCd {
  Rational cd2;
  // Closest-point coordinates: inside S, across the cut, outside S.
  Rational alpha, beta, gamma;
};
TspSubtourCd tsp_subtour_cd2(int n, int k);

// Numerator and denominator polynomials of the comb distance, expanded under the distinct
// i, j, k tooth convention.
struct CombPolynomials {
  BigInt A;
  BigInt B;
  int a_terms = 0;  // monomials in A, constant part excluded
  int b_terms = 0;
};
CombPolynomials comb3_polynomials(const CombConfig& c);
Rational tsp_comb3_cd2(const CombConfig& c);
// b_i = t_i = 1, o = n - h - 6.
Rational tsp_comb3_reduced_cd2(int n, int h);
Rational tsp_comb3_small_limit(int h);

// STHGP

struct SthgpTreeCount {
  BigInt trees;                // t_n
  BigInt rooted;               // h_n = E[X_n^{n-1}]
  std::vector<BigInt> by_edges;  // index i: trees with i edges
};
SthgpTreeCount sthgp_tree_count(int n);
BigInt sthgp_trees_with_edge(int n, int k);  // g(n, k)
Rational sthgp_centroid(int n, int edge_size);
Rational sthgp_nonneg_epr(int n, int k);

enum class EprMethod { Direct, Fast };
constexpr int kDirectEprLimit = 60;
BigInt sthgp_subtour_incident(int n, int k);
// Reuses the attachment table across calls, e.g. over a window of k.
BigInt sthgp_subtour_incident(int n, int k, AttachTable& attach);
Rational sthgp_subtour_epr(int n, int k, EprMethod method = EprMethod::Fast);
LogScalar sthgp_subtour_epr_log(LogCombinatorics& tables, int n, int k);

BigInt sthgp_b(int n);
BigInt sthgp_c(int n);
BigInt sthgp_d(int n);
BigInt sthgp_alpha(int n);
BigInt sthgp_gamma(int n, int k);
BigInt sthgp_beta(int n, int k);
BigInt sthgp_mu(int n, int k);
BigInt sthgp_t(int n, int k);
BigInt sthgp_w(int n, int p, int q, int r);

struct SthgpScalars {
  BigInt alpha, beta, gamma, b, c, d, mu, t;
};
SthgpScalars sthgp_scalars(int n, int k);

RootForm sthgp_nonneg_cd(int n, int k);
RootForm sthgp_subtour_cd(int n, int k);

struct AngleForm {
  BigInt numerator;
  BigInt denominator_squared;
  double cos_phi = 0.0;
  double theta = 0.0;  // radians
};
bool valid_angle_tuple(int n, int p, int q, int r);
AngleForm sthgp_subtour_angle(int n, int p, int q, int r);

struct PartialSums {
  Rational sum_inside;  // edges meeting S in at least two vertices
  Rational sum_rest;    // all other edges
  Rational total() const { return sum_inside + sum_rest; }
};
PartialSums sthgp_cd2_partial_sums(int n, int k);

// STGP

struct StgpCounts {
  BigInt total;
  BigInt incident;
};
StgpCounts stgp_tree_counts(int n, int k);
Rational stgp_centroid(int n);
Rational stgp_subtour_epr(int n, int k);
Rational stgp_subtour_cd2(int n, int k);

struct StgpDelta {
  Rational dx_inside, dx_outside, sum_inside, sum_outside;
};
StgpDelta stgp_delta_components(int n, int k);

}  // namespace strength
