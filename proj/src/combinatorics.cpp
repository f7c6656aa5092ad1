#include "strength/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace strength {

namespace {

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::vector<std::vector<BigInt>>& stirling_rows() {
  static std::vector<std::vector<BigInt>> rows{{BigInt(1)}};
  return rows;
}

std::map<long, MomentTable>& moment_cache() {
  static std::map<long, MomentTable> cache;
  return cache;
}

AttachTable& attach_cache() {
  static AttachTable table;
  return table;
}

}  // namespace

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial with negative n");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("stirling2 with negative argument");
  if (k > n) return 0;
  std::lock_guard lock(cache_mutex());
  auto& rows = stirling_rows();
  while (static_cast<int>(rows.size()) <= n) {
    const auto& prev = rows.back();
    int r = static_cast<int>(rows.size());
    std::vector<BigInt> row(r + 1);
    row[0] = 0;
    for (int j = 1; j <= r; ++j) {
      BigInt v = prev.size() > static_cast<size_t>(j) ? BigInt(prev[j] * j) : BigInt(0);
      v += prev[j - 1];
      row[j] = v;
    }
    rows.push_back(std::move(row));
  }
  return rows[n][k];
}

BigInt bell(int n) {
  BigInt total = 0;
  for (int k = 0; k <= n; ++k) total += stirling2(n, k);
  return total;
}

MomentTable::MomentTable(long lambda) : lambda_(lambda) {
  if (lambda < 0) throw std::invalid_argument("negative Poisson parameter");
  moments_.emplace_back(1);
}

const BigInt& MomentTable::moment(int k) {
  if (k < 0) throw std::invalid_argument("negative moment order");
  while (static_cast<int>(moments_.size()) <= k) {
    int top = static_cast<int>(moments_.size()) - 1;
    BigInt sum = 0;
    BigInt c = 1;
    for (int j = 0; j <= top; ++j) {
      sum += c * moments_[j];
      c = c * (top - j) / (j + 1);
    }
    moments_.push_back(sum * lambda_);
  }
  return moments_[k];
}

BigInt poisson_moment(long lambda, int k) {
  std::lock_guard lock(cache_mutex());
  auto& cache = moment_cache();
  auto it = cache.try_emplace(lambda, lambda).first;
  return it->second.moment(k);
}

BigInt poisson_moment_stirling(long lambda, int k) {
  BigInt total = 0;
  BigInt p = 1;
  for (int i = 0; i <= k; ++i) {
    total += stirling2(k, i) * p;
    p *= lambda;
  }
  return total;
}

BigInt moment_shifted(long lambda, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("negative moment order");
  BigInt total = 0;
  for (int j = 0; j <= n; ++j) total += binomial(n, j) * poisson_moment(lambda, m + j);
  return total;
}

// Column j holds E(i, j) = i * E[(X_j + i)^{j-1}] for every stored row i,
// evaluated by Horner in i over the coefficients C(j-1,p) E[X_j^p].
void AttachTable::fill_column(int j, int from_row, int to_row) {
  auto& col = cols_[j];
  col.resize(to_row + 1);
  if (j == 0) {
    for (int i = from_row; i <= to_row; ++i) col[i] = 1;
    return;
  }
  MomentTable moments(j);
  std::vector<BigInt> coef(j);
  BigInt c = 1;
  for (int p = 0; p < j; ++p) {
    coef[p] = c * moments.moment(p);
    c = c * (j - 1 - p) / (p + 1);
  }
  for (int i = from_row; i <= to_row; ++i) {
    if (i == 0) {
      col[i] = 0;
      continue;
    }
    BigInt acc = coef[0];
    for (int p = 1; p < j; ++p) {
      mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
      acc += coef[p];
    }
    col[i] = acc * i;
  }
}

void AttachTable::ensure(int i, int j) {
  const int rows = cols_.empty() ? 0 : static_cast<int>(cols_[0].size());
  if (i >= rows) {
    for (int jj = 0; jj < static_cast<int>(cols_.size()); ++jj) fill_column(jj, rows, i);
  }
  const int target_rows = std::max(rows, i + 1);
  while (static_cast<int>(cols_.size()) <= j) {
    cols_.emplace_back();
    fill_column(static_cast<int>(cols_.size()) - 1, 0, target_rows - 1);
  }
}

const BigInt& AttachTable::get(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("negative attach index");
  ensure(i, j);
  return cols_[j][i];
}

BigInt edge_attach(int i, int j) {
  static std::mutex m;
  std::lock_guard lock(m);
  return attach_cache().get(i, j);
}

}  // namespace strength
