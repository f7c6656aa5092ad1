#include "strength/analysis.hpp"

#include "strength/combinatorics.hpp"
#include "strength/log_combinatorics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <stdexcept>
#include <thread>

namespace strength {

namespace {

constexpr double kLogTie = 1e-9;

// Runs body(i) for i in [0, count) on up to `threads` workers.
template <typename Body>
void parallel_for(int count, int threads, Body body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string to_string(Measure m) {
  switch (m) {
    case Measure::EPR: return "epr";
    case Measure::CD2: return "cd2";
    case Measure::CD: return "cd";
  }
  return "?";
}

Measure parse_measure(const std::string& text) {
  if (text == "epr") return Measure::EPR;
  if (text == "cd2") return Measure::CD2;
  if (text == "cd") return Measure::CD;
  throw std::invalid_argument("unknown measure: " + text);
}

IndicatorValue IndicatorValue::from_exact(const Rational& v) { return from_root({v, Rational(1)}); }

IndicatorValue IndicatorValue::from_root(const RootForm& r) {
  IndicatorValue out;
  out.exact = true;
  out.form = r;
  if (r.ratio.is_zero()) {
    out.log = LogScalar::zero();
  } else {
    out.log = LogScalar::from_exact(r.ratio);
    if (r.radicand != 1) {
      out.log *= LogScalar::from_log(0.5 * (log_abs(r.radicand.num()) - log_abs(r.radicand.den())));
    }
  }
  return out;
}

IndicatorValue IndicatorValue::from_log(const LogScalar& v) {
  IndicatorValue out;
  out.log = v;
  return out;
}

std::string IndicatorValue::exact_str() const {
  if (!exact) return "";
  if (form.radicand == 1) return form.ratio.str();
  if (form.ratio == 1) return "sqrt(" + form.radicand.str() + ")";
  return form.ratio.str() + "*sqrt(" + form.radicand.str() + ")";
}

double IndicatorValue::to_double() const {
  if (exact) return form.radicand == 1 ? strength::to_double(form.ratio).value : form.value();
  return log.to_double();
}

double IndicatorValue::log10() const { return log.log10(); }

int compare(const IndicatorValue& a, const IndicatorValue& b, bool* tie) {
  if (a.exact && b.exact) {
    // Both non-negative, so compare squares.
    Rational sa = a.form.squared(), sb = b.form.squared();
    return sa < sb ? -1 : sb < sa ? 1 : 0;
  }
  if (a.log.is_zero() || b.log.is_zero()) {
    if (a.log.is_zero() && b.log.is_zero()) return 0;
    return a.log.is_zero() ? -1 : 1;
  }
  double d = a.log.log_magnitude() - b.log.log_magnitude();
  if (std::fabs(d) <= kLogTie) {
    if (tie) *tie = true;
    return 0;
  }
  return d < 0 ? -1 : 1;
}

std::vector<int> sweep_range(Family f, int n, FacetKind facet) {
  std::vector<int> ks;
  int lo = 2, hi = 1;
  if (facet == FacetKind::Subtour) {
    hi = f == Family::TSP ? n - 2 : n - 1;
  } else if (facet == FacetKind::NonNegativity) {
    if (f == Family::STHGP) hi = n;
    if (f == Family::TSP && n >= 4) hi = 2;  // one row, the edge size
  }
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

IndicatorValue indicator(Family f, int n, FacetKind facet, int k, Measure m) {
  auto root = [&](const Rational& cd2) { return m == Measure::CD2 ? IndicatorValue::from_exact(cd2)
                                                                    : IndicatorValue::from_root({Rational(1), cd2}); };
  auto from_form = [&](const RootForm& r) {
    return m == Measure::CD2 ? IndicatorValue::from_exact(r.squared()) : IndicatorValue::from_root(r);
  };
  if (facet == FacetKind::Subtour) {
    switch (f) {
      case Family::TSP:
        return m == Measure::EPR ? IndicatorValue::from_exact(tsp_subtour_epr(n, k)) : root(tsp_subtour_cd2(n, k).cd2);
      case Family::STGP:
        return m == Measure::EPR ? IndicatorValue::from_exact(stgp_subtour_epr(n, k)) : root(stgp_subtour_cd2(n, k));
      case Family::STHGP:
        return m == Measure::EPR ? IndicatorValue::from_exact(sthgp_subtour_epr(n, k)) : from_form(sthgp_subtour_cd(n, k));
    }
  }
  if (facet == FacetKind::NonNegativity) {
    if (f == Family::STHGP)
      return m == Measure::EPR ? IndicatorValue::from_exact(sthgp_nonneg_epr(n, k)) : from_form(sthgp_nonneg_cd(n, k));
    if (f == Family::TSP) return m == Measure::EPR ? IndicatorValue::from_exact(tsp_nonneg_epr(n)) : root(tsp_nonneg_cd2(n));
  }
  throw std::invalid_argument("no closed form for " + to_string(f) + " " + to_string(facet));
}

SweepResult sweep(Family f, int n, Measure m, const SweepOptions& options) {
  SweepResult out;
  out.family = f;
  out.n = n;
  out.measure = m;
  out.facet = options.facet;
  auto ks = sweep_range(f, n, options.facet);
  if (ks.empty()) throw std::invalid_argument("no facets of this kind for n = " + std::to_string(n));
  out.rows.resize(ks.size());

  const bool log_domain = n > options.log_threshold;
  std::unique_ptr<LogCombinatorics> tables;
  const bool log_epr = log_domain && f == Family::STHGP && options.facet == FacetKind::Subtour && m == Measure::EPR;
  if (log_epr) {
    tables = std::make_unique<LogCombinatorics>(n);
    tables->prepare(n);
  }
  parallel_for(static_cast<int>(ks.size()), options.threads, [&](int i) {
    const int k = ks[i];
    out.rows[i].k = k;
    if (log_epr) {
      out.rows[i].value = IndicatorValue::from_log(sthgp_subtour_epr_log(*tables, n, k));
      return;
    }
    IndicatorValue v = indicator(f, n, options.facet, k, m);
    if (log_domain) v = IndicatorValue::from_log(v.log);
    out.rows[i].value = v;
  });
  return out;
}

Relation relative_strength(Measure m, const IndicatorValue& v1, const IndicatorValue& v2, bool* tie) {
  int c = compare(v1, v2, tie);
  if (m != Measure::EPR) c = -c;
  return static_cast<Relation>(c);
}

WeakestResult weakest_subtour(int n, Measure m, const SweepOptions& options, bool exact_window) {
  if (n < 4) throw std::invalid_argument("weakest_subtour needs n >= 4");
  SweepOptions opt = options;
  opt.facet = FacetKind::Subtour;
  SweepResult s = sweep(Family::STHGP, n, m, opt);

  auto pick = [&](const std::vector<SweepRow>& rows, WeakestResult& out) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      bool tie = false;
      if (relative_strength(m, rows[i].value, rows[best].value, &tie) == Relation::Weaker) best = i;
      out.tie = out.tie || tie;
    }
    out.k = rows[best].k;
    out.tied_with.clear();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == best) continue;
      if (relative_strength(m, rows[i].value, rows[best].value) == Relation::Same) out.tied_with.push_back(rows[i].k);
    }
    if (!out.tied_with.empty()) out.tie = true;
  };

  WeakestResult out;
  pick(s.rows, out);
  const bool logged = !s.rows.front().value.exact;
  if (!logged || !exact_window) return out;

  // Exact re-check on k* +- 3.
  out.window_lo = std::max(2, out.k - 3);
  out.window_hi = std::min(n - 1, out.k + 3);
  std::vector<SweepRow> window;
  AttachTable attach;
  for (int k = out.window_lo; k <= out.window_hi; ++k) {
    IndicatorValue v;
    if (m == Measure::EPR) {
      v = IndicatorValue::from_exact(Rational(BigInt(n) * sthgp_subtour_incident(n, k, attach), poisson_moment(n, n - 1)));
    } else {
      v = indicator(Family::STHGP, n, FacetKind::Subtour, k, m);
    }
    window.push_back({k, v});
  }
  WeakestResult exact;
  pick(window, exact);
  out.k = exact.k;
  out.tie = exact.tie;
  out.tied_with = exact.tied_with;
  out.exact_window = true;
  return out;
}

bool DisagreementMatrix::at(int k1, int k2) const {
  auto i = std::find(ks.begin(), ks.end(), k1) - ks.begin();
  auto j = std::find(ks.begin(), ks.end(), k2) - ks.begin();
  if (i >= static_cast<long>(ks.size()) || j >= static_cast<long>(ks.size())) throw std::out_of_range("k outside matrix");
  return disagree[i][j];
}

double DisagreementMatrix::fraction() const {
  if (ks.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& row : disagree) count += std::count(row.begin(), row.end(), true);
  return static_cast<double>(count) / static_cast<double>(ks.size() * ks.size());
}

DisagreementMatrix disagreement_matrix(int n, const SweepOptions& options) {
  if (n < 4) throw std::invalid_argument("disagreement_matrix needs n >= 4");
  SweepOptions opt = options;
  opt.facet = FacetKind::Subtour;
  SweepResult epr = sweep(Family::STHGP, n, Measure::EPR, opt);
  SweepResult cd = sweep(Family::STHGP, n, Measure::CD2, opt);
  DisagreementMatrix out;
  out.n = n;
  for (const auto& r : epr.rows) out.ks.push_back(r.k);
  const std::size_t size = out.ks.size();
  out.disagree.assign(size, std::vector<bool>(size, false));
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) {
      bool tie = false;
      Relation a = relative_strength(Measure::EPR, epr.rows[i].value, epr.rows[j].value, &tie);
      Relation b = relative_strength(Measure::CD2, cd.rows[i].value, cd.rows[j].value, &tie);
      out.any_tie = out.any_tie || tie;
      out.disagree[i][j] = out.disagree[j][i] = a != b;
    }
  }
  return out;
}

std::vector<ReflectRow> reflect_compare(int n, Measure m, const SweepOptions& options) {
  if (n < 5) throw std::invalid_argument("reflect_compare needs n >= 5");
  SweepOptions opt = options;
  opt.facet = FacetKind::Subtour;
  SweepResult s = sweep(Family::STHGP, n, m, opt);
  auto at = [&](int k) { return s.rows[k - s.rows.front().k].value; };
  std::vector<ReflectRow> out;
  for (int k = 2; 2 * k <= n; ++k) out.push_back({k, at(k), at(n - k)});
  return out;
}

}  // namespace strength
