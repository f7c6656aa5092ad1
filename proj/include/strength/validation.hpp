#pragma once

#include "strength/enumeration.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace strength {

// Cross-checks of the closed forms against enumeration and the geometry
// oracles. Shared by the validate command and the acceptance suite.

struct CheckResult {
  std::string name;
  bool passed = true;
  bool informational = false;  // reported, never fails a run
  std::uint64_t cases = 0;
  double max_deviation = 0.0;
  std::string detail;  // first failure, or notes
};

// Relative tolerance of the QP checks, and its relaxation for STHGP
// non-negativity with n = k, where the distances are tiny.
constexpr double kQpTolerance = 1e-7;
constexpr double kQpToleranceNk = 1e-5;

CheckResult check_counts(Family f, int n_lo, int n_hi);
CheckResult check_epr(Family f, int n_lo, int n_hi);
CheckResult check_centroids(Family f, int n_lo, int n_hi);
// Closed-form weak CD against the exact projection (STHGP, STGP).
CheckResult check_weak_cd_exact(Family f, int n_lo, int n_hi);
// Closed-form CD against hull_distance. Weak forms go against the affine
// hull of the incident points; forms where normal and weak agree also go
// against their convex hull.
CheckResult check_qp_cd(Family f, int n_lo, int n_hi, int threads = 1);
// Observed normal-vs-weak pattern against the stated one: equal for TSP
// non-negativity and subtours and STGP subtours, different for every other
// class (STHGP subtours and non-negativity, 3-toothed combs).
CheckResult check_normal_weak_pattern(int threads = 1);
// General comb formula on every configuration against the affine projection.
CheckResult check_combs(int n_lo, int n_hi);
// Reduced h-form against the general formula, and the n -> infinity limits.
CheckResult check_comb_reduced(int max_n);
CheckResult check_angles(int n_lo, int n_hi);
CheckResult check_complementary_angles(int max_half);
CheckResult check_partial_sums(int n_lo, int n_hi);

enum class ValidationMode { Both, Exact, Qp };

struct ValidationOptions {
  std::vector<Family> families{Family::TSP, Family::STGP, Family::STHGP};
  int max_n = 0;  // 0: per-family default
  std::string measure;  // empty, "count", "epr", "centroid", "cd"
  ValidationMode mode = ValidationMode::Both;
  bool angles_only = false;
  int threads = 1;
};

// Default largest n per family for enumeration-backed checks.
int default_max_n(Family f);

std::vector<CheckResult> run_validation(const ValidationOptions& options);

}  // namespace strength
