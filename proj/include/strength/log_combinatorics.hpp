#pragma once

#include <vector>

namespace strength {

// Natural-log versions of the counting tables, for n far beyond exact reach.
// Zero entries are stored as -inf.
class LogCombinatorics {
 public:
  explicit LogCombinatorics(int max_n);

  int max_n() const { return max_n_; }
  double log_stirling2(int n, int k) const;
  double log_binomial(int n, int k) const;
  double log_moment(int lambda, int k);
  double log_attach(int i, int j);

  // Fills every lazy table needed for subtour sums up to n, so later
  // lookups are read-only and safe from several threads.
  void prepare(int n);

 private:
  void ensure_moments(int lambda);
  void ensure_attach(int i);

  int max_n_;
  std::vector<std::vector<double>> s2_;
  std::vector<double> log_fact_;
  std::vector<std::vector<double>> moments_;
  std::vector<std::vector<double>> attach_;
};

}  // namespace strength
