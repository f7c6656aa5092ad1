#include "doctest.h"
#include "strength/combinatorics.hpp"
#include "strength/enumeration.hpp"
#include "strength/log_combinatorics.hpp"

#include <cmath>
#include <vector>

using namespace strength;

namespace {

// Count set partitions of n items into k blocks with restricted growth strings.
long count_partitions(int n, int k) {
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<int> a(n, 0);
  long count = 0;
  auto rec = [&](auto&& self, int pos, int max_block) -> void {
    if (pos == n) {
      if (max_block + 1 == k) ++count;
      return;
    }
    for (int b = 0; b <= max_block + 1; ++b) {
      a[pos] = b;
      self(self, pos + 1, std::max(max_block, b));
    }
  };
  a[0] = 0;
  rec(rec, 1, 0);
  return count;
}

}  // namespace

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(100, 50) == BigInt("100891344545564193334812497256"));
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(3, -1) == 0);
}

TEST_CASE("stirling numbers against partition enumeration") {
  CHECK(stirling2(0, 0) == 1);
  CHECK(stirling2(4, 2) == 7);
  CHECK(stirling2(3, 5) == 0);
  for (int n = 1; n <= 9; ++n)
    for (int k = 0; k <= n; ++k) CHECK(stirling2(n, k) == count_partitions(n, k));
}

TEST_CASE("bell numbers") {
  CHECK(bell(0) == 1);
  CHECK(bell(3) == 5);
  CHECK(bell(5) == 52);
  for (int n = 1; n <= 10; ++n) {
    long total = 0;
    for (int k = 0; k <= n; ++k) total += count_partitions(n, k);
    CHECK(bell(n) == total);
  }
}

TEST_CASE("poisson moments") {
  CHECK(poisson_moment(5, 0) == 1);
  CHECK(poisson_moment(3, 2) == 12);
  CHECK(poisson_moment(2, 3) == 22);
  CHECK(poisson_moment(7, 1) == 7);
  // Series oracle: sum_i i^k lambda^i e^-lambda / i!.
  for (int lambda = 1; lambda <= 8; ++lambda)
    for (int k = 0; k <= 8; ++k) {
      long double s = k == 0 ? std::exp(-static_cast<long double>(lambda)) : 0.0L;
      for (int i = 1; i < 200; ++i)
        s += std::exp(k * std::log(static_cast<long double>(i)) + i * std::log(static_cast<long double>(lambda)) -
                      lambda - std::lgamma(i + 1.0L));
      double exact = to_double(poisson_moment(lambda, k)).value;
      CHECK(std::fabs(static_cast<double>(s) - exact) <= 1e-9 * exact);
    }
  // Recurrence route and Stirling-sum route.
  for (int lambda = 1; lambda <= 40; lambda += 3)
    for (int k = 0; k <= 40; ++k) CHECK(poisson_moment(lambda, k) == poisson_moment_stirling(lambda, k));
}

TEST_CASE("shifted moments") {
  CHECK(moment_shifted(4, 3, 0) == poisson_moment(4, 3));
  CHECK(moment_shifted(3, 1, 1) == 15);
  for (int lambda = 1; lambda <= 12; ++lambda)
    for (int n = 0; n <= 12; ++n) CHECK(moment_shifted(lambda, 0, n) * lambda == poisson_moment(lambda, n + 1));
}

TEST_CASE("edge attachment recurrence") {
  CHECK(edge_attach(7, 0) == 1);
  CHECK(edge_attach(0, 3) == 0);
  CHECK(edge_attach(1, 3) == 19);
  for (int j = 1; j <= 12; ++j) CHECK(edge_attach(1, j) * j == poisson_moment(j, j));
}

TEST_CASE("E(1,j) counts trees whose root lies in exactly one edge") {
  for (int j = 1; j <= 6; ++j) {
    auto pts = enumerate(Family::STHGP, j + 1);
    const auto& idx = pts.indexer();
    long count = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      int deg = 0;
      for (auto e : pts.point(i)) deg += idx.mask(e) & 1u;
      if (deg == 1) ++count;
    }
    CHECK(edge_attach(1, j) == count);
  }
}

TEST_CASE("E(i,j) equals a sum over vertex-to-edge assignments") {
  for (int i = 2; i <= 4; ++i)
    for (int j = 0; j <= 6; ++j) {
      // Every function from j vertices to i edges, weighted by E(1, block size).
      BigInt total = 0;
      long functions = 1;
      for (int t = 0; t < j; ++t) functions *= i;
      for (long f = 0; f < functions; ++f) {
        std::vector<int> sizes(i, 0);
        long x = f;
        for (int t = 0; t < j; ++t, x /= i) ++sizes[x % i];
        BigInt prod = 1;
        for (int s : sizes) prod *= edge_attach(1, s);
        total += prod;
      }
      CHECK(edge_attach(i, j) == total);
    }
}

TEST_CASE("log tables track exact tables") {
  LogCombinatorics lc(120);
  for (int n : {10, 57, 120})
    for (int k = 1; k <= n; k += 7) CHECK(lc.log_stirling2(n, k) == doctest::Approx(log_abs(stirling2(n, k))).epsilon(1e-13));
  for (int lambda : {5, 60, 120})
    for (int k = 0; k <= lambda; k += 5)
      CHECK(lc.log_moment(lambda, k) == doctest::Approx(log_abs(poisson_moment(lambda, k))).epsilon(1e-13));
  for (int i = 1; i <= 30; i += 4)
    for (int j = 0; j <= 60; j += 6)
      CHECK(lc.log_attach(i, j) == doctest::Approx(log_abs(edge_attach(i, j))).epsilon(1e-12));
  CHECK(std::isinf(lc.log_stirling2(5, 0)));
}
