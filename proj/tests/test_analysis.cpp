#include "doctest.h"
#include "strength/analysis.hpp"

using namespace strength;

namespace {

Rational q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

}  // namespace

TEST_CASE("sweep rows") {
  auto s = sweep(Family::STHGP, 10, Measure::EPR);
  REQUIRE(s.rows.size() == 8);
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(s.rows[i].k == static_cast<int>(i) + 2);
    CHECK(s.rows[i].value.exact);
  }
  CHECK(s.rows[1].value.form.ratio == sthgp_subtour_epr(10, 3));

  auto tsp = sweep(Family::TSP, 10, Measure::CD2);
  REQUIRE(tsp.rows.size() == 7);
  for (std::size_t i = 0; i < tsp.rows.size(); ++i)
    CHECK(tsp.rows[i].value.form.ratio == tsp.rows[tsp.rows.size() - 1 - i].value.form.ratio);

  auto stgp = sweep(Family::STGP, 100, Measure::CD2);
  CHECK(stgp.rows.size() == 98);
  CHECK(stgp.rows.front().value.form.ratio == stgp_subtour_cd2(100, 2));

  auto nn = sweep(Family::STHGP, 6, Measure::CD, {FacetKind::NonNegativity});
  CHECK(nn.rows.size() == 5);
  CHECK(nn.rows.back().k == 6);
  CHECK(nn.rows.front().value.exact_str() == sthgp_nonneg_cd(6, 2).ratio.str() + "*sqrt(" +
                                                 sthgp_nonneg_cd(6, 2).radicand.str() + ")");

  auto tnn = sweep(Family::TSP, 6, Measure::CD2, {FacetKind::NonNegativity});
  REQUIRE(tnn.rows.size() == 1);
  CHECK(tnn.rows[0].value.form.ratio == q(4, 15));

  CHECK_THROWS(sweep(Family::STGP, 6, Measure::EPR, {FacetKind::NonNegativity}));
  CHECK(sweep_range(Family::TSP, 4, FacetKind::Subtour) == std::vector<int>{2});
}

TEST_CASE("sweep in log domain tracks the exact values") {
  SweepOptions opt;
  opt.log_threshold = 20;
  for (Measure m : {Measure::EPR, Measure::CD}) {
    auto logged = sweep(Family::STHGP, 40, m, opt);
    auto exact = sweep(Family::STHGP, 40, m);
    REQUIRE(logged.rows.size() == exact.rows.size());
    for (std::size_t i = 0; i < exact.rows.size(); ++i) {
      CHECK_FALSE(logged.rows[i].value.exact);
      CHECK(logged.rows[i].value.exact_str().empty());
      CHECK(logged.rows[i].value.log10() == doctest::Approx(exact.rows[i].value.log10()).epsilon(1e-9));
    }
  }
}

TEST_CASE("threaded sweeps match serial ones") {
  SweepOptions one, three;
  three.threads = 3;
  auto a = sweep(Family::STHGP, 25, Measure::EPR, one);
  auto b = sweep(Family::STHGP, 25, Measure::EPR, three);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value.exact_str() == b.rows[i].value.exact_str());
  one.log_threshold = three.log_threshold = 10;
  a = sweep(Family::STHGP, 25, Measure::EPR, one);
  b = sweep(Family::STHGP, 25, Measure::EPR, three);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value.log10() == b.rows[i].value.log10());
}

TEST_CASE("compare and ties") {
  auto a = IndicatorValue::from_log(LogScalar::from_log(-5.0));
  auto b = IndicatorValue::from_log(LogScalar::from_log(-5.0 + 1e-12));
  auto c = IndicatorValue::from_log(LogScalar::from_log(-4.0));
  bool tie = false;
  CHECK(compare(a, b, &tie) == 0);
  CHECK(tie);
  tie = false;
  CHECK(compare(a, c, &tie) == -1);
  CHECK_FALSE(tie);
  CHECK(compare(IndicatorValue::from_exact(q(1, 3)), IndicatorValue::from_exact(q(1, 2))) == -1);
  CHECK(relative_strength(Measure::EPR, IndicatorValue::from_exact(q(1, 3)), IndicatorValue::from_exact(q(1, 2))) ==
        Relation::Weaker);
  CHECK(relative_strength(Measure::CD, IndicatorValue::from_exact(q(1, 3)), IndicatorValue::from_exact(q(1, 2))) ==
        Relation::Stronger);
}

TEST_CASE("strongest STHGP subtours sit at the top of the range") {
  for (int n : {10, 20}) {
    auto s = sweep(Family::STHGP, n, Measure::EPR);
    std::vector<std::size_t> order(s.rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return compare(s.rows[x].value, s.rows[y].value) > 0; });
    CHECK(s.rows[order[0]].k == n - 1);
    CHECK(s.rows[order[1]].k == n - 2);
  }
}

TEST_CASE("weakest STHGP subtours") {
  CHECK(weakest_subtour(10, Measure::EPR).k == 4);
  CHECK(weakest_subtour(10, Measure::CD).k == 5);
  CHECK(weakest_subtour(10, Measure::CD2).k == 5);
  auto e = weakest_subtour(100, Measure::EPR);
  CHECK(e.k == 35);
  CHECK_FALSE(e.tie);
  CHECK_FALSE(e.exact_window);
  CHECK(weakest_subtour(100, Measure::CD).k == 45);
  SweepOptions opt;
  opt.log_threshold = 50;
  auto w = weakest_subtour(100, Measure::EPR, opt);
  CHECK(w.k == 35);
  CHECK(w.exact_window);
  CHECK(w.window_lo == 32);
  CHECK(w.window_hi == 38);
  CHECK(weakest_subtour(100, Measure::CD, opt).k == 45);
  CHECK_THROWS(weakest_subtour(3, Measure::EPR));
}

TEST_CASE("disagreement matrix") {
  for (int n = 4; n <= 60; n += (n < 16 ? 1 : 11)) {
    auto d = disagreement_matrix(n);
    REQUIRE(d.ks.size() == static_cast<std::size_t>(n - 2));
    for (std::size_t i = 0; i < d.ks.size(); ++i) {
      CHECK_FALSE(d.disagree[i][i]);
      for (std::size_t j = 0; j < d.ks.size(); ++j) CHECK(d.disagree[i][j] == d.disagree[j][i]);
    }
  }
  auto d10 = disagreement_matrix(10);
  CHECK(d10.at(4, 5));
  CHECK(d10.fraction() > 0.0);
  CHECK_FALSE(d10.any_tie);
  for (int n : {10, 20, 40}) CHECK(disagreement_matrix(n).fraction() < 0.25);
}

TEST_CASE("reflected curves") {
  auto epr = reflect_compare(10, Measure::EPR);
  REQUIRE(epr.size() == 4);
  CHECK(epr.front().k == 2);
  CHECK(epr.back().k == 5);
  for (const auto& r : epr) CHECK(compare(r.reflected, r.value) >= 0);
  CHECK(compare(epr.back().reflected, epr.back().value) == 0);
  for (const auto& r : reflect_compare(10, Measure::CD)) CHECK(compare(r.reflected, r.value) <= 0);
  auto odd = reflect_compare(11, Measure::CD);
  CHECK(odd.back().k == 5);
  CHECK_THROWS(reflect_compare(4, Measure::EPR));
}
