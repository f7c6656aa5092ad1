#include "strength/log_combinatorics.hpp"

#include "strength/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace strength {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = a > b ? a : b;
  double lo = a > b ? b : a;
  return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace

LogCombinatorics::LogCombinatorics(int max_n) : max_n_(max_n) {
  if (max_n < 0) throw std::invalid_argument("negative table size");
  s2_.resize(max_n + 1);
  s2_[0] = {0.0};
  for (int n = 1; n <= max_n; ++n) {
    auto& row = s2_[n];
    const auto& prev = s2_[n - 1];
    row.assign(n + 1, kNegInf);
    for (int k = 1; k <= n; ++k) {
      double stay = k < n ? std::log(static_cast<double>(k)) + prev[k] : kNegInf;
      row[k] = log_add(stay, prev[k - 1]);
    }
  }
  log_fact_.resize(max_n + 2);
  for (int i = 0; i <= max_n + 1; ++i) log_fact_[i] = std::lgamma(i + 1.0);
  moments_.resize(max_n + 1);
}

double LogCombinatorics::log_stirling2(int n, int k) const {
  if (n < 0 || n > max_n_) throw std::out_of_range("stirling table index");
  if (k < 0 || k > n) return kNegInf;
  return s2_[n][k];
}

double LogCombinatorics::log_binomial(int n, int k) const {
  if (n < 0 || n > max_n_ + 1) throw std::out_of_range("binomial table index");
  if (k < 0 || k > n) return kNegInf;
  return log_fact_[n] - log_fact_[k] - log_fact_[n - k];
}

void LogCombinatorics::ensure_moments(int lambda) {
  if (lambda < 0 || lambda > max_n_) throw std::out_of_range("moment table index");
  auto& row = moments_[lambda];
  if (!row.empty()) return;
  row.assign(lambda + 1, kNegInf);
  if (lambda == 0) {
    row[0] = 0.0;
    return;
  }
  double ll = std::log(static_cast<double>(lambda));
  std::vector<double> terms;
  for (int k = 0; k <= lambda; ++k) {
    terms.assign(k + 1, kNegInf);
    for (int i = 0; i <= k; ++i) terms[i] = s2_[k][i] + i * ll;
    row[k] = log_sum_exp(terms);
  }
}

double LogCombinatorics::log_moment(int lambda, int k) {
  ensure_moments(lambda);
  if (k < 0 || k > lambda) throw std::out_of_range("moment order beyond table");
  return moments_[lambda][k];
}

void LogCombinatorics::ensure_attach(int i) {
  if (attach_.empty()) {
    std::vector<double> r0(max_n_ + 1, kNegInf);
    r0[0] = 0.0;
    attach_.push_back(std::move(r0));
    std::vector<double> r1(max_n_ + 1, kNegInf);
    r1[0] = 0.0;
    for (int j = 1; j <= max_n_; ++j) r1[j] = log_moment(j, j) - std::log(static_cast<double>(j));
    attach_.push_back(std::move(r1));
  }
  std::vector<double> terms;
  while (static_cast<int>(attach_.size()) <= i) {
    int a = static_cast<int>(attach_.size());
    const auto& prev = attach_[a - 1];
    const auto& r1 = attach_[1];
    // Only i + j <= max_n is ever needed.
    int jmax = max_n_ - a;
    std::vector<double> row(max_n_ + 1, kNegInf);
    row[0] = 0.0;
    for (int j = 1; j <= jmax; ++j) {
      terms.assign(j + 1, kNegInf);
      for (int m = 0; m <= j; ++m) terms[m] = log_binomial(j, m) + prev[j - m] + r1[m];
      row[j] = log_sum_exp(terms);
    }
    attach_.push_back(std::move(row));
  }
}

double LogCombinatorics::log_attach(int i, int j) {
  if (i < 0 || j < 0 || j > max_n_) throw std::out_of_range("attach table index");
  ensure_attach(i);
  if (i >= 2 && i + j > max_n_) throw std::out_of_range("attach entry outside computed triangle");
  return attach_[i][j];
}

void LogCombinatorics::prepare(int n) {
  if (n > max_n_) throw std::out_of_range("prepare beyond table size");
  for (int lambda = 0; lambda <= n; ++lambda) ensure_moments(lambda);
  ensure_attach(std::max(n - 2, 1));
}

}  // namespace strength
