#pragma once

#include "strength/closedforms.hpp"
#include "strength/enumeration.hpp"
#include "strength/exactnum.hpp"

#include <string>
#include <vector>

namespace strength {

enum class Measure { EPR, CD2, CD };

std::string to_string(Measure m);
Measure parse_measure(const std::string& text);

// One indicator value. Exact values are ratio * sqrt(radicand) (radicand 1
// for EPR and CD2); log-domain values only carry the LogScalar.
struct IndicatorValue {
  bool exact = false;
  RootForm form{Rational(0), Rational(1)};
  LogScalar log;

  static IndicatorValue from_exact(const Rational& v);
  static IndicatorValue from_root(const RootForm& r);
  static IndicatorValue from_log(const LogScalar& v);

  std::string exact_str() const;  // empty when not exact
  double to_double() const;
  double log10() const;
};

// Order of two values of the same measure: -1, 0 or +1. Log-domain values
// closer than 1e-9 relative compare equal and set *tie.
int compare(const IndicatorValue& a, const IndicatorValue& b, bool* tie = nullptr);

struct SweepOptions {
  FacetKind facet = FacetKind::Subtour;
  int log_threshold = 200;  // n above this switches to log domain
  int threads = 1;
};

struct SweepRow {
  int k = 0;
  IndicatorValue value;
};

struct SweepResult {
  Family family = Family::STHGP;
  int n = 0;
  Measure measure = Measure::EPR;
  FacetKind facet = FacetKind::Subtour;
  std::vector<SweepRow> rows;
};

// Range of k a sweep covers; empty if the family has no such facet.
std::vector<int> sweep_range(Family f, int n, FacetKind facet);

IndicatorValue indicator(Family f, int n, FacetKind facet, int k, Measure m);

SweepResult sweep(Family f, int n, Measure m, const SweepOptions& options = {});

struct WeakestResult {
  int k = 0;
  bool tie = false;            // another k reached the same value
  std::vector<int> tied_with;
  bool exact_window = false;   // confirmed by exact values around the float argmin
  int window_lo = 0, window_hi = 0;
};

// Weakest STHGP subtour: smallest EPR, or largest CD. Ties go to the smaller k.
WeakestResult weakest_subtour(int n, Measure m, const SweepOptions& options = {}, bool exact_window = true);

enum class Relation { Weaker = -1, Same = 0, Stronger = 1 };

// How k1 ranks against k2 under the measure (EPR: larger is stronger;
// CD: smaller is stronger).
Relation relative_strength(Measure m, const IndicatorValue& v1, const IndicatorValue& v2, bool* tie = nullptr);

struct DisagreementMatrix {
  int n = 0;
  std::vector<int> ks;
  std::vector<std::vector<bool>> disagree;  // indexed like ks
  bool any_tie = false;

  bool at(int k1, int k2) const;
  double fraction() const;  // disagreeing cells over all cells
};

DisagreementMatrix disagreement_matrix(int n, const SweepOptions& options = {});

struct ReflectRow {
  int k = 0;
  IndicatorValue value;     // at k
  IndicatorValue reflected; // at n - k
};

std::vector<ReflectRow> reflect_compare(int n, Measure m, const SweepOptions& options = {});

}  // namespace strength
