#include "strength/validation.hpp"

#include "strength/analysis.hpp"
#include "strength/closedforms.hpp"
#include "strength/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>
#include <string_view>
#include <unordered_map>

namespace strength {

namespace {

struct Facet {
  FacetKind kind;
  int k;
};

std::vector<Facet> facets_of(Family f, int n) {
  std::vector<Facet> out;
  if (f == Family::TSP) {
    if (n >= 3) out.push_back({FacetKind::NonNegativity, 2});
    for (int k = 2; k <= n - 2; ++k) out.push_back({FacetKind::Subtour, k});
  } else {
    if (f == Family::STHGP)
      for (int k = 2; k <= n; ++k) out.push_back({FacetKind::NonNegativity, k});
    for (int k = 2; k <= n - 1; ++k) out.push_back({FacetKind::Subtour, k});
  }
  return out;
}

std::string where(Family f, int n, const Facet& fc) {
  std::ostringstream os;
  os << to_string(f) << " n=" << n << " " << to_string(fc.kind);
  if (f != Family::TSP || fc.kind != FacetKind::NonNegativity) os << " k=" << fc.k;
  return os.str();
}

std::string range_name(const std::string& what, Family f, int lo, int hi) {
  return what + " " + to_string(f) + " n=" + std::to_string(lo) + ".." + std::to_string(hi);
}

void fail(CheckResult& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

Rational ratio_of(std::uint64_t a, std::size_t b) {
  return Rational(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(b)));
}

BigInt expected_count(Family f, int n) {
  switch (f) {
    case Family::TSP: return tsp_tour_count(n);
    case Family::STGP: {
      if (n == 1) return 1;
      BigInt r;
      mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(n - 2));
      return r;
    }
    case Family::STHGP: return sthgp_tree_count(n).trees;
  }
  return 0;
}

Rational closed_epr(Family f, int n, const Facet& fc, EprMethod method = EprMethod::Fast) {
  if (f == Family::STHGP && fc.kind == FacetKind::Subtour) return sthgp_subtour_epr(n, fc.k, method);
  return indicator(f, n, fc.kind, fc.k, Measure::EPR).form.ratio;
}

Rational closed_cd2(Family f, int n, const Facet& fc) { return indicator(f, n, fc.kind, fc.k, Measure::CD2).form.ratio; }

bool normal_equals_weak(Family f) { return f != Family::STHGP; }

double rel_dev(double got, double want) { return want == 0.0 ? std::fabs(got) : std::fabs(got - want) / std::fabs(want); }

// Returns the first pair of identical points, via a 64-bit hash of each
// bitset with a full comparison on collision.
bool find_duplicate(const ExtremePointSet& pts, std::size_t& a, std::size_t& b) {
  std::unordered_multimap<std::size_t, std::size_t> seen;
  seen.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto bits = pts.bitset(i);
    std::size_t h = std::hash<std::string_view>{}(
        std::string_view(reinterpret_cast<const char*>(bits.data()), bits.size()));
    auto [lo, hi] = seen.equal_range(h);
    for (auto it = lo; it != hi; ++it) {
      if (pts.bitset(it->second) == bits) {
        a = it->second;
        b = i;
        return true;
      }
    }
    seen.emplace(h, i);
  }
  return false;
}

}  // namespace

int default_max_n(Family f) {
  switch (f) {
    case Family::TSP: return 10;
    case Family::STGP: return 8;
    case Family::STHGP: return 8;
  }
  return 0;
}

CheckResult check_counts(Family f, int n_lo, int n_hi) {
  CheckResult r;
  r.name = range_name("count", f, n_lo, n_hi);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto pts = enumerate(f, n);
    ++r.cases;
    BigInt want = expected_count(f, n);
    if (BigInt(static_cast<unsigned long>(pts.size())) != want) {
      fail(r, to_string(f) + " n=" + std::to_string(n) + ": enumerated " + std::to_string(pts.size()) +
                  ", formula " + to_string(want));
      r.max_deviation = std::max(r.max_deviation, 1.0);
    }
    std::size_t a = 0, b = 0;
    if (find_duplicate(pts, a, b))
      fail(r, to_string(f) + " n=" + std::to_string(n) + ": points " + std::to_string(a) + " and " +
                  std::to_string(b) + " coincide");
  }
  return r;
}

CheckResult check_epr(Family f, int n_lo, int n_hi) {
  CheckResult r;
  r.name = range_name("epr", f, n_lo, n_hi);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto pts = enumerate(f, n);
    for (const auto& fc : facets_of(f, n)) {
      auto h = build_facet(pts.indexer(), {f, n, fc.kind, fc.k, {}});
      Rational counted = ratio_of(count_incident(pts, h), pts.size());
      std::vector<Rational> forms{closed_epr(f, n, fc)};
      if (f == Family::STHGP && fc.kind == FacetKind::Subtour) forms.push_back(closed_epr(f, n, fc, EprMethod::Direct));
      for (const auto& want : forms) {
        ++r.cases;
        if (want != counted) {
          r.max_deviation = std::max(r.max_deviation, std::fabs(to_double(want - counted).value));
          fail(r, where(f, n, fc) + ": counted " + counted.str() + ", closed form " + want.str());
        }
      }
    }
  }
  return r;
}

CheckResult check_centroids(Family f, int n_lo, int n_hi) {
  CheckResult r;
  r.name = range_name("centroid", f, n_lo, n_hi);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto pts = enumerate(f, n);
    auto C = centroid(pts);
    const auto& idx = pts.indexer();
    for (int e = 0; e < idx.m(); ++e) {
      Rational want = f == Family::TSP    ? tsp_centroid(n)
                      : f == Family::STGP ? stgp_centroid(n)
                                          : sthgp_centroid(n, std::popcount(idx.mask(e)));
      ++r.cases;
      if (C(e) != want) {
        r.max_deviation = std::max(r.max_deviation, std::fabs(to_double(C(e) - want).value));
        fail(r, to_string(f) + " n=" + std::to_string(n) + " edge " + idx.label(e) + ": " + C(e).str() +
                    " vs " + want.str());
      }
    }
  }
  return r;
}

CheckResult check_weak_cd_exact(Family f, int n_lo, int n_hi) {
  CheckResult r;
  r.name = range_name("weak cd exact", f, n_lo, n_hi);
  if (f == Family::TSP) {
    r.informational = true;
    r.detail = "not applicable: the TSP affine hull has n equations";
    return r;
  }
  for (int n = n_lo; n <= n_hi; ++n) {
    auto pts = enumerate(f, n);
    auto C = centroid(pts);
    auto hull = affine_hull_equations(pts.indexer());
    ExactVector c = to_exact(hull[0].a);
    for (const auto& fc : facets_of(f, n)) {
      auto h = build_facet(pts.indexer(), {f, n, fc.kind, fc.k, {}});
      Rational got = weak_cd<Rational>(to_exact(h.a), h.b, c, hull[0].b, C).distance_squared;
      Rational want = closed_cd2(f, n, fc);
      ++r.cases;
      if (got != want) {
        r.max_deviation = std::max(r.max_deviation, rel_dev(to_double(got).value, to_double(want).value));
        fail(r, where(f, n, fc) + ": projection " + got.str() + ", closed form " + want.str());
      }
    }
  }
  return r;
}

CheckResult check_qp_cd(Family f, int n_lo, int n_hi, int threads) {
  CheckResult r;
  r.name = range_name("qp cd", f, n_lo, n_hi);
  HullOptions opt;
  opt.threads = threads;
  for (int n = n_lo; n <= n_hi; ++n) {
    if (f == Family::TSP && n < 4) continue;
    auto pts = enumerate(f, n);
    Eigen::VectorXd C = to_double(centroid(pts));
    for (const auto& fc : facets_of(f, n)) {
      auto h = build_facet(pts.indexer(), {f, n, fc.kind, fc.k, {}});
      auto on = incident_points(pts, h);
      const double want = to_double(closed_cd2(f, n, fc)).value;
      const double tol = f == Family::STHGP && fc.kind == FacetKind::NonNegativity && fc.k == n ? kQpToleranceNk
                                                                                                 : kQpTolerance;
      std::vector<HullMode> modes{HullMode::Affine};
      if (normal_equals_weak(f)) modes.push_back(HullMode::Convex);
      for (HullMode mode : modes) {
        auto res = hull_distance(on, C, mode, opt);
        double dev = rel_dev(res.distance_squared, want);
        ++r.cases;
        r.max_deviation = std::max(r.max_deviation, dev);
        if (res.infinite || dev > tol) {
          std::ostringstream os;
          os << where(f, n, fc) << (mode == HullMode::Convex ? " convex" : " affine") << ": qp "
             << res.distance_squared << ", closed form " << want;
          fail(r, os.str());
        }
      }
    }
  }
  return r;
}

CheckResult check_normal_weak_pattern(int threads) {
  CheckResult r;
  r.name = "normal vs weak pattern";
  HullOptions opt;
  opt.threads = threads;
  constexpr double kSame = 1e-7, kDiff = 1e-6;

  struct ClassStat {
    std::string name;
    bool stated_equal;
    int cases = 0, equal = 0, differ = 0;
  };
  std::vector<ClassStat> stats{{"tsp nonneg", true},   {"tsp subtour", true},   {"stgp subtour", true},
                               {"sthgp nonneg", false}, {"sthgp subtour", false}, {"tsp comb", false}};
  auto record = [&](std::size_t cls, double normal, double weak) {
    double dev = rel_dev(normal, weak);
    ++stats[cls].cases;
    if (dev <= kSame) ++stats[cls].equal;
    if (dev > kDiff) ++stats[cls].differ;
  };

  auto run_family = [&](Family f, int n_lo, int n_hi) {
    for (int n = n_lo; n <= n_hi; ++n) {
      auto pts = enumerate(f, n);
      Eigen::VectorXd C = to_double(centroid(pts));
      for (const auto& fc : facets_of(f, n)) {
        auto h = build_facet(pts.indexer(), {f, n, fc.kind, fc.k, {}});
        auto on = incident_points(pts, h);
        double normal = hull_distance(on, C, HullMode::Convex, opt).distance_squared;
        double weak = to_double(closed_cd2(f, n, fc)).value;
        std::size_t cls = f == Family::TSP    ? (fc.kind == FacetKind::NonNegativity ? 0 : 1)
                          : f == Family::STGP ? 2
                                              : (fc.kind == FacetKind::NonNegativity ? 3 : 4);
        record(cls, normal, weak);
      }
    }
  };
  run_family(Family::TSP, 4, 8);
  run_family(Family::STGP, 3, 8);
  run_family(Family::STHGP, 3, 7);
  for (int n = 6; n <= 8; ++n) {
    auto pts = enumerate(Family::TSP, n);
    Eigen::VectorXd C = to_double(centroid(pts));
    for (const auto& c : comb_configs(n)) {
      auto h = build_facet(pts.indexer(), {Family::TSP, n, FacetKind::Comb3, 0, c});
      auto on = incident_points(pts, h);
      record(5, hull_distance(on, C, HullMode::Convex, opt).distance_squared, to_double(tsp_comb3_cd2(c)).value);
    }
  }

  std::ostringstream os;
  std::string mismatched;
  for (const auto& s : stats) {
    r.cases += static_cast<std::uint64_t>(s.cases);
    bool ok = s.stated_equal ? s.equal == s.cases : s.differ > 0;
    os << s.name << ": " << s.equal << "/" << s.cases << " equal, " << s.differ << " differ (stated "
       << (s.stated_equal ? "equal" : "different") << ")" << (ok ? "" : " MISMATCH") << (&s == &stats.back() ? "" : "; ");
    if (!ok) mismatched += (mismatched.empty() ? "" : ", ") + s.name;
  }
  r.passed = mismatched.empty();
  r.detail = os.str();
  if (!r.passed) r.detail = "not reproduced for " + mismatched + ". " + r.detail;
  return r;
}

CheckResult check_combs(int n_lo, int n_hi) {
  CheckResult r;
  r.name = "comb formula vs affine qp n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi);
  for (int n = n_lo; n <= n_hi; ++n) {
    auto pts = enumerate(Family::TSP, n);
    Eigen::VectorXd C = to_double(centroid(pts));
    for (const auto& c : comb_configs(n)) {
      auto h = build_facet(pts.indexer(), {Family::TSP, n, FacetKind::Comb3, 0, c});
      auto on = incident_points(pts, h);
      double want = to_double(tsp_comb3_cd2(c)).value;
      double got = hull_distance(on, C, HullMode::Affine).distance_squared;
      double dev = rel_dev(got, want);
      ++r.cases;
      r.max_deviation = std::max(r.max_deviation, dev);
      if (dev > kQpTolerance) {
        std::ostringstream os;
        os << "comb " << c.str() << ": qp " << got << ", formula " << want;
        fail(r, os.str());
      }
    }
  }
  return r;
}

CheckResult check_comb_reduced(int max_n) {
  CheckResult r;
  r.name = "comb reduced form n<=" + std::to_string(max_n) + " and limits";
  for (int n = 6; n <= max_n; ++n) {
    for (int h = 0; h <= n - 6; ++h) {
      CombConfig c;
      c.h = h;
      c.o = n - h - 6;
      ++r.cases;
      if (tsp_comb3_cd2(c) != tsp_comb3_reduced_cd2(n, h))
        fail(r, "n=" + std::to_string(n) + " h=" + std::to_string(h) + ": reduced form differs");
    }
  }
  const Rational stated[] = {Rational(8, 3), Rational(25, 9), Rational(36, 13), Rational(49, 18), Rational(8, 3)};
  for (int h = 0; h <= 4; ++h) {
    ++r.cases;
    // Ratio of the leading n coefficients of the reduced form.
    Rational lead(BigInt(2 * (h + 4) * (h + 4)), BigInt(h * h + 5 * h + 12));
    if (tsp_comb3_small_limit(h) != stated[h] || lead != stated[h])
      fail(r, "limit at h=" + std::to_string(h) + " is " + lead.str());
    double far = to_double(tsp_comb3_reduced_cd2(100000000, h)).value;
    r.max_deviation = std::max(r.max_deviation, rel_dev(far, to_double(stated[h]).value));
  }
  if (r.max_deviation > 1e-6) fail(r, "reduced form does not approach its limit");
  return r;
}

CheckResult check_angles(int n_lo, int n_hi) {
  CheckResult r;
  r.name = "angles n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi);
  std::uint64_t identical = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    EdgeIndexer idx(Family::STHGP, n);
    IntVector c = to_int_vector(affine_hull_equations(idx)[0].a);
    BigInt alpha = sthgp_alpha(n);
    for (int rr = 0; rr <= n; ++rr)
      for (int p = 0; p + rr <= n; ++p)
        for (int q = 0; p + q + rr <= n; ++q) {
          if (!valid_angle_tuple(n, p, q, rr)) continue;
          // S1 = {1..p+r}, S2 = {p+1..p+q+r}.
          std::uint32_t s1 = (1u << (p + rr)) - 1;
          std::uint32_t s2 = ((1u << (q + rr)) - 1) << p;
          auto fp = interior_angle_first_principles(to_int_vector(build_subtour(idx, s1).a),
                                                    to_int_vector(build_subtour(idx, s2).a), c);
          auto cf = sthgp_subtour_angle(n, p, q, rr);
          ++r.cases;
          if (fp.numerator == alpha * cf.numerator && fp.denominator_squared == alpha * alpha * cf.denominator_squared) {
            ++identical;
          } else {
            fail(r, "(" + std::to_string(n) + "," + std::to_string(p) + "," + std::to_string(q) + "," +
                        std::to_string(rr) + "): closed form " + to_string(cf.numerator) + "/sqrt(" +
                        to_string(cf.denominator_squared) + ") differs");
          }
        }
  }
  if (r.passed) r.detail = std::to_string(identical) + " of " + std::to_string(r.cases) + " tuples identical";
  return r;
}

CheckResult check_complementary_angles(int max_half) {
  CheckResult r;
  r.name = "complementary angles m=2.." + std::to_string(max_half);
  double prev = 1.0;
  for (int m = 2; m <= max_half; ++m) {
    double c = sthgp_subtour_angle(2 * m, m, m, 0).cos_phi;
    ++r.cases;
    if (!(c < prev) || c <= -1.0) fail(r, "f(" + std::to_string(2 * m) + ",m,m,0) not decreasing above -1");
    prev = c;
  }
  r.max_deviation = prev + 1.0;
  std::ostringstream os;
  os << "f(" << 2 * max_half << "," << max_half << "," << max_half << ",0) = " << prev;
  if (r.passed) r.detail = os.str();
  return r;
}

CheckResult check_partial_sums(int n_lo, int n_hi) {
  CheckResult r;
  r.name = "partial sums n=" + std::to_string(n_lo) + ".." + std::to_string(n_hi);
  for (int n = n_lo; n <= n_hi; ++n)
    for (int k = 2; k < n; ++k) {
      ++r.cases;
      if (sthgp_cd2_partial_sums(n, k).total() != sthgp_subtour_cd(n, k).squared())
        fail(r, "n=" + std::to_string(n) + " k=" + std::to_string(k) + ": sums differ from d_w^2");
    }
  return r;
}

std::vector<CheckResult> run_validation(const ValidationOptions& o) {
  std::vector<CheckResult> out;
  auto has = [&](Family f) { return std::find(o.families.begin(), o.families.end(), f) != o.families.end(); };
  auto want = [&](const char* m) { return o.measure.empty() || o.measure == m; };
  if (o.angles_only) {
    out.push_back(check_angles(3, o.max_n > 0 ? o.max_n : 15));
    return out;
  }
  for (Family f : o.families) {
    const int hi = o.max_n > 0 ? o.max_n : default_max_n(f);
    const int lo = f == Family::TSP ? 3 : 2;
    if (want("count")) out.push_back(check_counts(f, lo, hi));
    if (want("epr")) out.push_back(check_epr(f, lo, hi));
    if (want("centroid")) out.push_back(check_centroids(f, lo, hi));
    if (want("cd")) {
      if (o.mode != ValidationMode::Qp && f != Family::TSP) out.push_back(check_weak_cd_exact(f, 3, hi));
      if (o.mode != ValidationMode::Exact) {
        const int qp_hi = std::min(hi, f == Family::STHGP ? 7 : 8);
        out.push_back(check_qp_cd(f, f == Family::TSP ? 4 : 3, qp_hi, o.threads));
      }
    }
  }
  if (has(Family::TSP) && want("cd")) {
    if (o.mode != ValidationMode::Exact) {
      const int hi = std::min(o.max_n > 0 ? o.max_n : default_max_n(Family::TSP), 9);
      if (hi >= 6) out.push_back(check_combs(6, hi));
    }
    out.push_back(check_comb_reduced(30));
  }
  if (has(Family::STHGP) && o.measure.empty()) {
    out.push_back(check_angles(3, 15));
    out.push_back(check_complementary_angles(40));
    out.push_back(check_partial_sums(3, 100));
  }
  if (o.families.size() == 3 && o.measure.empty() && o.mode == ValidationMode::Both) {
    auto p = check_normal_weak_pattern(o.threads);
    p.informational = true;
    out.push_back(p);
  }
  return out;
}

}  // namespace strength
