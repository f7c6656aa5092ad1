#pragma once

#include "strength/exactnum.hpp"

#include <vector>

namespace strength {

// C(n, k); zero outside 0 <= k <= n.
BigInt binomial(long n, long k);

// Stirling numbers of the second kind, memoized in a shared table.
BigInt stirling2(int n, int k);
BigInt bell(int n);

// k-th raw moments of a Poisson(lambda) variable, grown on demand with
// E[X^{k+1}] = lambda * sum_j C(k,j) E[X^j].
class MomentTable {
 public:
  explicit MomentTable(long lambda);
  long lambda() const { return lambda_; }
  const BigInt& moment(int k);
  int size() const { return static_cast<int>(moments_.size()); }

 private:
  long lambda_;
  std::vector<BigInt> moments_;
};

// Shared-cache moment E[X_lambda^k].
BigInt poisson_moment(long lambda, int k);
// sum_i S2(k,i) lambda^i, independent of the cache.
BigInt poisson_moment_stirling(long lambda, int k);
// E[X^m (X+1)^n].
BigInt moment_shifted(long lambda, int m, int n);

// Attachment counts E(i, j): ways to hang j new vertices off a tree with
// i edges. Closed form i * E[(X_j + i)^{j-1}], stored by column.
class AttachTable {
 public:
  const BigInt& get(int i, int j);

 private:
  void ensure(int i, int j);
  void fill_column(int j, int from_row, int to_row);
  std::vector<std::vector<BigInt>> cols_;
};

BigInt edge_attach(int i, int j);

}  // namespace strength
