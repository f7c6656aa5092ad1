// Acceptance suite: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include "strength/analysis.hpp"
#include "strength/cli.hpp"
#include "strength/closedforms.hpp"
#include "strength/enumeration.hpp"
#include "strength/validation.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

using namespace strength;

namespace {

struct Outcome {
  bool passed = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      notes.push_back("FAILED " + what);
    }
  }
  void add(const CheckResult& r) {
    if (!r.passed) {
      passed = false;
      notes.push_back("FAILED " + r.name + ": " + r.detail);
    } else {
      std::ostringstream os;
      os << r.name << " (" << r.cases << " cases, max dev " << r.max_deviation << ")";
      notes.push_back(os.str());
    }
  }
};

Outcome counting() {
  Outcome o;
  o.add(check_counts(Family::TSP, 3, 10));
  o.add(check_counts(Family::STGP, 2, 8));
  o.add(check_counts(Family::STHGP, 2, 8));
  const unsigned long spot[] = {4, 29, 311};
  for (int n = 3; n <= 5; ++n) {
    auto pts = enumerate(Family::STHGP, n);
    o.require(pts.size() == spot[n - 3], "t_" + std::to_string(n) + " = " + std::to_string(spot[n - 3]));
  }
  return o;
}

Outcome epr() {
  Outcome o;
  o.add(check_epr(Family::TSP, 3, 9));
  o.add(check_epr(Family::STHGP, 2, 8));
  o.add(check_epr(Family::STGP, 2, 8));
  return o;
}

Outcome centroids() {
  Outcome o;
  o.add(check_centroids(Family::TSP, 3, 9));
  o.add(check_centroids(Family::STHGP, 2, 8));
  o.add(check_centroids(Family::STGP, 2, 8));
  return o;
}

Outcome centroid_distance() {
  Outcome o;
  o.add(check_weak_cd_exact(Family::STHGP, 3, 8));
  o.add(check_weak_cd_exact(Family::STGP, 3, 8));
  o.add(check_qp_cd(Family::TSP, 4, 8));
  o.add(check_qp_cd(Family::STGP, 3, 8));
  o.add(check_qp_cd(Family::STHGP, 3, 7));
  auto pattern = check_normal_weak_pattern();
  if (pattern.passed) pattern.detail.clear();
  o.add(pattern);
  return o;
}

Outcome combs() {
  Outcome o;
  o.add(check_combs(6, 9));
  for (int n = 6; n <= 9; ++n) {
    // n+1 choose n-6 configurations
    BigInt want;
    mpz_bin_uiui(want.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(n - 6));
    o.require(BigInt(static_cast<unsigned long>(comb_configs(n).size())) == want,
              "configuration count at n=" + std::to_string(n));
  }
  o.add(check_comb_reduced(30));
  return o;
}

Outcome angles() {
  Outcome o;
  o.add(check_angles(3, 15));
  o.add(check_complementary_angles(40));
  return o;
}

Outcome partial_sums() {
  Outcome o;
  o.add(check_partial_sums(3, 100));
  return o;
}

Outcome weakest() {
  Outcome o;
  struct Case {
    int n, epr, cd, threshold;
  };
  // n = 100 twice: exact, and log domain with the exact window.
  const Case cases[] = {{10, 4, 5, 200}, {100, 35, 45, 200}, {100, 35, 45, 50}, {1000, 342, 434, 200}};
  for (const auto& c : cases) {
    SweepOptions opt;
    opt.log_threshold = c.threshold;
    auto e = weakest_subtour(c.n, Measure::EPR, opt);
    auto d = weakest_subtour(c.n, Measure::CD2, opt);
    std::string where = "n=" + std::to_string(c.n) + (c.n > c.threshold ? " log+window" : " exact");
    o.require(e.k == c.epr && d.k == c.cd, where + ": got (" + std::to_string(e.k) + "," + std::to_string(d.k) + ")");
    o.require(!e.tie && !d.tie, where + ": no ties");
    if (c.n > c.threshold) o.require(e.exact_window && d.exact_window, where + ": window confirmation");
    o.notes.push_back(where + ": (" + std::to_string(e.k) + "," + std::to_string(d.k) + ")");
  }
  return o;
}

Outcome curves() {
  Outcome o;
  bool symmetric = true;
  for (int n = 4; n <= 60; ++n)
    for (int k = 2; k <= n - 2; ++k)
      symmetric = symmetric && tsp_subtour_epr(n, k) == tsp_subtour_epr(n, n - k) &&
                  tsp_subtour_cd2(n, k).cd2 == tsp_subtour_cd2(n, n - k).cd2;
  o.require(symmetric, "tsp k <-> n-k symmetry, n=4..60");

  for (int n : {10, 20, 50}) {
    for (Measure m : {Measure::EPR, Measure::CD}) {
      bool dominant = true;
      for (const auto& r : reflect_compare(n, m)) {
        if (2 * r.k == n) continue;
        dominant = dominant && relative_strength(m, r.reflected, r.value) == Relation::Stronger;
      }
      o.require(dominant, "reflected " + to_string(m) + " dominance at n=" + std::to_string(n));
    }
  }

  for (int n : {10, 20}) {
    for (Measure m : {Measure::EPR, Measure::CD2}) {
      auto s = sweep(Family::STHGP, n, m);
      std::vector<SweepRow> rows = s.rows;
      std::stable_sort(rows.begin(), rows.end(), [&](const SweepRow& a, const SweepRow& b) {
        return relative_strength(m, a.value, b.value) == Relation::Stronger;
      });
      o.require(rows[0].k == n - 1 && rows[1].k == n - 2,
                "strongest " + to_string(m) + " subtours at n=" + std::to_string(n));
    }
  }

  Rational prev(0);
  bool rising = true;
  for (int n = 4; n <= 1000; n += 2) {
    Rational v = tsp_subtour_cd2(n, n / 2).cd2;
    rising = rising && prev < v && v < Rational(2);
    prev = v;
  }
  o.require(rising, "tsp cd2 at k=n/2 increasing below 2, even n <= 1000");
  o.notes.push_back("tsp cd2 at n=1000, k=500: " + std::to_string(to_double(prev).value));
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Outcome determinism() {
  Outcome o;
  auto dir = std::filesystem::temp_directory_path() / ("strength-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "sweep.csv").string();
  const std::vector<std::vector<std::string>> configs{
      {"sweep", "--family", "sthgp", "--n", "300", "--measure", "epr", "--threads", "2", "--out", path},
      {"sweep", "--family", "sthgp", "--n", "60", "--measure", "cd", "--threads", "2", "--out", path},
      {"sweep", "--family", "tsp", "--n", "40", "--measure", "cd2", "--out", path},
      {"sweep", "--family", "stgp", "--n", "100", "--measure", "dx", "--out", path},
      {"sweep", "--disagreement", "--n", "20", "--out", path}};
  for (const auto& args : configs) {
    std::ostringstream out, err;
    std::string runs[2];
    for (auto& run : runs) {
      int rc = run_cli(args, out, err);
      o.require(rc == 0, "exit status of sweep: " + err.str());
      run = slurp(path);
    }
    std::string what = args[1] + " " + args[2] + " " + args[3] + " " + args[4];
    o.require(!runs[0].empty() && runs[0] == runs[1], "byte-identical output for " + what);
  }
  std::filesystem::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"counting identities", counting},
      {"extreme point ratios", epr},
      {"centroids", centroids},
      {"centroid distances", centroid_distance},
      {"3-toothed combs", combs},
      {"subtour angles", angles},
      {"partial sums", partial_sums},
      {"weakest subtours", weakest},
      {"curve properties", curves},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    if (!o.passed) ++failed;
    std::printf("%s %d %s (%.1f s)\n", o.passed ? "PASS" : "FAIL", id, criteria[i].first.c_str(), dt.count());
    for (const auto& note : o.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
