#include "strength/closedforms.hpp"

#include "strength/combinatorics.hpp"
#include "strength/log_combinatorics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace strength {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

BigInt factorial(long n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

BigInt ipow(const BigInt& base, long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

BigInt two_pow(long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return r;
}

}  // namespace

double RootForm::value() const {
  return to_double(ratio).value * std::sqrt(to_double(radicand).value);
}

// ---- TSP ----

BigInt tsp_tour_count(int n) {
  require(n >= 3, "tsp_tour_count: n >= 3 required");
  return factorial(n - 1) / 2;
}

BigInt tsp_tours_with_edge(int n) {
  require(n >= 3, "tsp_tours_with_edge: n >= 3 required");
  return factorial(n - 2);
}

// Tours crossing the cut exactly twice: k!(n-k)!/2.
BigInt tsp_subtour_incident(int n, int k) {
  require(k >= 2 && k <= n - 2, "tsp subtour: 2 <= k <= n-2 required");
  return factorial(k) * factorial(n - k) / 2;
}

Rational tsp_centroid(int n) {
  require(n >= 3, "tsp_centroid: n >= 3 required");
  return Rational(2, n - 1);
}

Rational tsp_nonneg_epr(int n) {
  require(n >= 3, "tsp_nonneg_epr: n >= 3 required");
  return Rational(n - 3, n - 1);
}

Rational tsp_subtour_epr(int n, int k) {
  require(k >= 2 && k <= n - 2, "tsp subtour: 2 <= k <= n-2 required");
  return Rational(BigInt(n), binomial(n, k));
}

Rational tsp_nonneg_cd2(int n) {
  require(n >= 4, "tsp_nonneg_cd2: n >= 4 required");
  return Rational(BigInt(4), BigInt(n - 1) * (n - 3));
}

TspSubtourCd tsp_subtour_cd2(int n, int k) {
  require(k >= 2 && k <= n - 2, "tsp subtour: 2 <= k <= n-2 required");
  TspSubtourCd out;
  out.cd2 = Rational(BigInt(2) * (k - 1) * (n - 2) * (n - k - 1), BigInt(k) * (n - 1) * (n - k));
  out.alpha = Rational(2, k);
  out.beta = Rational(2, k * (n - k));
  out.gamma = Rational(2, n - k);
  return out;
}

// Comb polynomials. Each template is a signed monomial over the tooth
// variables b_i, t_i (slots i, j, k stand for distinct teeth) and h, o.
// A template expands over every injective slot assignment, keeping each
// distinct monomial once.

namespace {

constexpr const char* kCombA =
    "+ bi ti, +2 bi bj, +3 bi tj, +2 ti tj, + bi h, +2 ti h, +2 bi o, + ti o, + h o";

constexpr const char* kCombB =
    "+ bi^2 ti^2, +2 bi^2 ti tj, +4 bi^2 bj^2, +2 bi^2 bj bk, +2 bi^2 bj tk, +9 bi^2 tj^2, +8 bi^2 tj tk,"
    "+2 bi ti^2 bj, +4 ti^2 tj^2, +8 ti^2 bj bk, +2 ti^2 bj tk, +2 ti^2 tj tk, +12 bi ti bj tj,"
    "+8 bi ti bj^2, +4 bi ti bj bk, +4 bi ti bj tk, +4 bi ti tj tk, +8 bi ti tj^2, + bi^2 h^2,"
    "+4 ti^2 h^2, +2 bi ti h^2, +2 ti tj h^2, +2 bi^2 bj h, +2 bi^2 tj h, +4 bi tj tk h, +2 bi ti^2 h,"
    "+4 bi ti bj h, +4 bi ti tj h, +8 ti^2 bj h, +2 ti^2 tj h, +2 bi ti o^2,"
    "+4 bi^2 o^2, +2 bi bj o^2, + ti^2 o^2, +2 bi h o^2, + h^2 o^2, +2 bi^2 ti o, +2 bi^2 bj o,"
    "+8 bi^2 tj o, +2 ti^2 bj o, +2 ti^2 tj o, +4 bi bj tk o, +4 bi ti bj o, +4 bi ti tj o,"
    "+4 bi ti h o, +2 bi^2 h o, +4 bi tj h o, +2 ti^2 h o, +2 ti h^2 o, - bi^2 ti, - bi ti^2,"
    "-4 bi^2 bj, -9 bi^2 tj, -9 ti^2 bj, -4 ti^2 tj, -6 bi bj bk, -10 bi ti bj, -10 bi ti tj,"
    "-12 bi bj tk, -12 bi tj tk, -6 ti tj tk, - bi h^2, -4 ti h^2, - h^2 o, - bi^2 h, -4 bi bj h,"
    "-4 ti^2 h, -10 bi tj h, -4 bi ti h, -6 ti tj h, -4 bi o^2, - ti o^2, - h o^2, -4 bi^2 o, - ti^2 o,"
    "-4 bi ti o, -6 bi bj o, -10 bi tj o, -4 ti tj o, -4 bi h o, -4 ti h o, +4 bi bj, + bi ti,"
    "+9 bi tj, +4 ti tj, + bi h, +4 ti h, +4 bi o, + ti o, + h o";

// Variables: b1 b2 b3 t1 t2 t3 h o.
using Monomial = std::array<int, 8>;

struct Factor {
  char var;   // 'b', 't', 'h', 'o'
  int slot;   // 0..2 for i/j/k, -1 for h and o
  int power;
};

struct Template {
  long coefficient;
  std::vector<Factor> factors;
};

std::vector<Template> parse_templates(const std::string& text) {
  std::vector<Template> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ',')) {
    std::stringstream ts(item);
    std::string tok;
    ts >> tok;
    Template t;
    long sign = tok[0] == '-' ? -1 : 1;
    t.coefficient = sign * (tok.size() > 1 ? std::stol(tok.substr(1)) : 1);
    while (ts >> tok) {
      Factor f{tok[0], -1, 1};
      std::size_t pos = 1;
      if (f.var == 'b' || f.var == 't') {
        f.slot = tok[1] - 'i';
        pos = 2;
      }
      if (pos < tok.size() && tok[pos] == '^') f.power = std::stoi(tok.substr(pos + 1));
      t.factors.push_back(f);
    }
    out.push_back(std::move(t));
  }
  return out;
}

struct Expansion {
  BigInt value;
  int terms = 0;
};

Expansion expand(const std::vector<Template>& templates, const CombConfig& c) {
  std::array<BigInt, 8> vars = {c.b[0], c.b[1], c.b[2], c.t[0], c.t[1], c.t[2], c.h, c.o};
  Expansion out;
  std::array<int, 3> perm = {0, 1, 2};
  for (const auto& t : templates) {
    std::set<Monomial> monomials;
    // Injective slot -> tooth maps are the prefixes of all permutations.
    std::array<int, 3> p = perm;
    do {
      Monomial m{};
      for (const auto& f : t.factors) {
        int v = f.var == 'b' ? p[f.slot] : f.var == 't' ? 3 + p[f.slot] : f.var == 'h' ? 6 : 7;
        m[v] += f.power;
      }
      monomials.insert(m);
    } while (std::next_permutation(p.begin(), p.end()));
    for (const auto& m : monomials) {
      BigInt term = t.coefficient;
      for (int v = 0; v < 8; ++v)
        if (m[v] > 0) term *= ipow(vars[v], m[v]);
      out.value += term;
    }
    out.terms += static_cast<int>(monomials.size());
  }
  return out;
}

const std::vector<Template>& templates_a() {
  static const std::vector<Template> t = parse_templates(kCombA);
  return t;
}

const std::vector<Template>& templates_b() {
  static const std::vector<Template> t = parse_templates(kCombB);
  return t;
}

}  // namespace

CombPolynomials comb3_polynomials(const CombConfig& c) {
  require(c.valid(), "comb: invalid configuration");
  CombPolynomials out;
  Expansion a = expand(templates_a(), c);
  Expansion b = expand(templates_b(), c);
  out.A = a.value - 5 * (c.n() - 1);
  out.B = b.value;
  out.a_terms = a.terms;
  out.b_terms = b.terms;
  return out;
}

Rational tsp_comb3_cd2(const CombConfig& c) {
  require(c.valid(), "comb: invalid configuration");
  const int n = c.n();
  require(n >= 6, "comb: n >= 6 required");
  CombPolynomials poly = comb3_polynomials(c);
  if (poly.B == 0) throw std::domain_error("comb: degenerate denominator");
  return Rational(BigInt(2) * (n - 2) * poly.A * poly.A, BigInt(n - 1) * poly.B);
}

Rational tsp_comb3_reduced_cd2(int n, int h) {
  require(h >= 0 && n >= h + 6, "comb: n >= h + 6 required");
  BigInt H = h;
  BigInt f2 = H * H + 5 * H + 12;
  BigInt f1 = 2 * H * H * H + 17 * H * H + 59 * H + 96;
  BigInt f0 = H * H * H * H + 12 * H * H * H + 65 * H * H + 174 * H + 228;
  BigInt lin = (H + 4) * n - (H * H + 6 * H + 16);
  BigInt N = n;
  return Rational(2 * (N - 2) * lin * lin, (N - 1) * (f2 * N * N - f1 * N + f0));
}

Rational tsp_comb3_small_limit(int h) {
  require(h >= 0, "comb: h >= 0 required");
  BigInt H = h;
  return Rational(2 * H * H + 16 * H + 32, H * H + 5 * H + 12);
}

// ---- STHGP ----

SthgpTreeCount sthgp_tree_count(int n) {
  require(n >= 1, "sthgp_tree_count: n >= 1 required");
  SthgpTreeCount out;
  out.rooted = poisson_moment(n, n - 1);
  out.trees = exact_div(out.rooted, BigInt(n));
  out.by_edges.assign(n, BigInt(0));
  if (n == 1) {
    out.by_edges[0] = 1;
    return out;
  }
  for (int i = 1; i <= n - 1; ++i) out.by_edges[i] = stirling2(n - 1, i) * ipow(BigInt(n), i - 1);
  return out;
}

BigInt sthgp_trees_with_edge(int n, int k) {
  require(k >= 1 && k <= n, "sthgp_trees_with_edge: 1 <= k <= n required");
  return exact_div(BigInt(k) * poisson_moment(n, n - k), BigInt(n));
}

Rational sthgp_centroid(int n, int edge_size) {
  return Rational(sthgp_trees_with_edge(n, edge_size), sthgp_tree_count(n).trees);
}

Rational sthgp_nonneg_epr(int n, int k) {
  require(k >= 2 && k <= n, "sthgp nonneg: 2 <= k <= n required");
  return Rational(1) - Rational(BigInt(k) * poisson_moment(n, n - k), poisson_moment(n, n - 1));
}

namespace {

void check_subtour(int n, int k) { require(k >= 2 && k <= n - 1, "subtour: 2 <= k <= n-1 required"); }

// Nested-sum count: the induced subtree on S plus outside vertices hung
// off it, each term multiplied out directly.
BigInt subtour_incident_direct(int n, int k) {
  BigInt total = 0;
  const int m = n - k;
  std::vector<BigInt> vk(m + 1);
  for (int p = 0; p <= m; ++p) vk[p] = poisson_moment(k, p);
  for (int i = 0; i <= k - 1; ++i) {
    BigInt s2 = stirling2(k - 1, i);
    if (s2 == 0) continue;
    BigInt outer = 0;
    for (int j = 1; j <= m; ++j) {
      BigInt inner = 0;
      for (int p = 0; p <= j; ++p) inner += binomial(j, p) * vk[p] * ipow(BigInt(i), j - p);
      outer += binomial(m, j) * j * poisson_moment(m, m - j) * inner;
    }
    total += s2 * ipow(BigInt(k), i) * outer;
  }
  return exact_div(total, BigInt(k) * m);
}

BigInt subtour_incident_fast(int n, int k, AttachTable& attach) {
  attach.get(k - 1, n - k);
  std::vector<BigInt> weight(n - k + 1);
  BigInt c = 1;
  for (int m = 0; m <= n - k; ++m) {
    weight[m] = c * sthgp_trees_with_edge(n - m, k);
    c = c * (n - k - m) / (m + 1);
  }
  BigInt total = 0;
  BigInt kpow = 1;
  for (int i = 1; i <= k - 1; ++i) {
    kpow *= k;
    BigInt inner = 0;
    for (int m = 0; m <= n - k; ++m) inner += weight[m] * attach.get(i, m);
    total += stirling2(k - 1, i) * kpow * inner;
  }
  return exact_div(total, BigInt(k));
}

}  // namespace

BigInt sthgp_subtour_incident(int n, int k) {
  AttachTable attach;
  return sthgp_subtour_incident(n, k, attach);
}

BigInt sthgp_subtour_incident(int n, int k, AttachTable& attach) {
  check_subtour(n, k);
  return subtour_incident_fast(n, k, attach);
}

Rational sthgp_subtour_epr(int n, int k, EprMethod method) {
  check_subtour(n, k);
  BigInt count;
  if (method == EprMethod::Direct) {
    if (n > kDirectEprLimit) throw ResourceGuardError("direct EPR method is limited to n <= 60");
    count = subtour_incident_direct(n, k);
  } else {
    AttachTable attach;
    count = subtour_incident_fast(n, k, attach);
  }
  return Rational(BigInt(n) * count, poisson_moment(n, n - 1));
}

LogScalar sthgp_subtour_epr_log(LogCombinatorics& tables, int n, int k) {
  check_subtour(n, k);
  require(n <= tables.max_n(), "log tables too small for n");
  const double log_k = std::log(static_cast<double>(k));
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(k) * (n - k + 1));
  std::vector<double> log_g(n - k + 1);
  for (int m = 0; m <= n - k; ++m)
    log_g[m] = log_k - std::log(static_cast<double>(n - m)) + tables.log_moment(n - m, n - m - k);
  for (int i = 1; i <= k - 1; ++i) {
    const double head = tables.log_stirling2(k - 1, i) + i * log_k;
    for (int m = 0; m <= n - k; ++m) {
      double e = tables.log_attach(i, m);
      if (std::isinf(e)) continue;
      terms.push_back(head + tables.log_binomial(n - k, m) + log_g[m] + e);
    }
  }
  const double log_count = log_sum_exp(terms) - log_k;
  const double log_epr = std::log(static_cast<double>(n)) + log_count - tables.log_moment(n, n - 1);
  return LogScalar::from_log(log_epr);
}

BigInt sthgp_b(int n) { return n == 0 ? BigInt(0) : BigInt(n) * two_pow(n - 1); }
BigInt sthgp_c(int n) { return two_pow(n) - 1; }
BigInt sthgp_d(int n) { return sthgp_b(n) - sthgp_c(n); }

BigInt sthgp_alpha(int n) {
  // sum_{i>=2} C(n,i)(i-1)^2 = 2^{n-2}(n^2 - 3n + 4) - 1
  if (n < 2) return 0;
  return two_pow(n - 2) * (BigInt(n) * n - 3 * n + 4) - 1;
}

BigInt sthgp_gamma(int n, int k) { return two_pow(n - k) * sthgp_alpha(k); }

BigInt sthgp_beta(int n, int k) { return sthgp_gamma(n, k) + sthgp_b(n - k) * sthgp_d(k); }

BigInt sthgp_mu(int n, int k) {
  BigInt beta = sthgp_beta(n, k);
  return sthgp_alpha(n) * sthgp_gamma(n, k) - beta * beta;
}

BigInt sthgp_t(int n, int k) { return moment_shifted(n, 1, n - 2) - moment_shifted(n, k, n - k - 1); }

BigInt sthgp_w(int n, int p, int q, int r) {
  require(p >= 0 && q >= 0 && r >= 0 && p + q + r <= n, "w: invalid (p,q,r)");
  return two_pow(n - p - q - r) * (two_pow(p + q) * sthgp_alpha(r) + sthgp_d(p) * sthgp_d(q) +
                                   sthgp_b(p) * sthgp_b(q) * sthgp_c(r) + sthgp_b(p + q) * sthgp_d(r));
}

SthgpScalars sthgp_scalars(int n, int k) {
  require(k >= 0 && k <= n, "sthgp_scalars: 0 <= k <= n required");
  SthgpScalars s;
  s.alpha = sthgp_alpha(n);
  s.gamma = sthgp_gamma(n, k);
  s.beta = sthgp_beta(n, k);
  s.b = sthgp_b(n);
  s.c = sthgp_c(n);
  s.d = sthgp_d(n);
  s.mu = s.alpha * s.gamma - s.beta * s.beta;
  if (n >= 2 && k >= 1 && k <= n - 1) s.t = sthgp_t(n, k);
  return s;
}

RootForm sthgp_nonneg_cd(int n, int k) {
  require(k >= 2 && k <= n, "sthgp nonneg: 2 <= k <= n required");
  BigInt alpha = sthgp_alpha(n);
  BigInt rest = alpha - BigInt(k - 1) * (k - 1);
  if (rest <= 0) throw std::domain_error("sthgp nonneg: degenerate radicand");
  return {Rational(BigInt(k) * poisson_moment(n, n - k), poisson_moment(n, n - 1)), Rational(alpha, rest)};
}

RootForm sthgp_subtour_cd(int n, int k) {
  check_subtour(n, k);
  BigInt mu = sthgp_mu(n, k);
  if (mu <= 0) throw std::domain_error("sthgp subtour: mu <= 0");
  return {Rational(BigInt(n - k) * sthgp_t(n, k), poisson_moment(n, n - 1)), Rational(sthgp_alpha(n), mu)};
}

bool valid_angle_tuple(int n, int p, int q, int r) {
  if (p < 0 || q < 0 || r < 0) return false;
  if (p == 0 && q == 0) return false;
  if (p + r < 2 || q + r < 2) return false;
  if (p + q + r > n) return false;
  return p + r <= n - 1 && q + r <= n - 1;
}

AngleForm sthgp_subtour_angle(int n, int p, int q, int r) {
  require(valid_angle_tuple(n, p, q, r), "angle: invalid (n,p,q,r)");
  AngleForm out;
  out.numerator = sthgp_alpha(n) * sthgp_w(n, p, q, r) - sthgp_beta(n, p + r) * sthgp_beta(n, q + r);
  out.denominator_squared = sthgp_mu(n, p + r) * sthgp_mu(n, q + r);
  // cos = N / sqrt(D2), through logs so huge n stays finite.
  const int sign = sgn(out.numerator);
  double cos_phi = 0.0;
  if (sign != 0) {
    const double lg = log_abs(out.numerator) - 0.5 * log_abs(out.denominator_squared);
    cos_phi = sign * std::exp(lg);
  }
  cos_phi = std::max(-1.0, std::min(1.0, cos_phi));
  out.cos_phi = cos_phi;
  out.theta = M_PI - std::acos(cos_phi);
  return out;
}

PartialSums sthgp_cd2_partial_sums(int n, int k) {
  check_subtour(n, k);
  const BigInt alpha = sthgp_alpha(n);
  const BigInt beta = sthgp_beta(n, k);
  const BigInt mu = sthgp_mu(n, k);
  const Rational tau(BigInt(n - k) * sthgp_t(n, k), mu * poisson_moment(n, n - 1));
  const Rational tau2 = tau * tau;
  const BigInt N = n;
  const BigInt K = k;

  const Rational a2 = Rational(BigInt((K * K - 3 * K + 4) * two_pow(n - 2) - two_pow(n - k)));
  const Rational ab = Rational(BigInt(((2 - K) * N + K - 4) * two_pow(n - 1) - (N - K - 2) * two_pow(n - k)));
  const BigInt cubic = K * K * K - 2 * N * K * K + (N * N - N + 3) * K + N * N - 3 * N + 4;
  const Rational b2 = Rational(BigInt((N * N - 3 * N + 4) * two_pow(n - 2))) - Rational(cubic) * pow2(n - k - 2);

  PartialSums out;
  out.sum_inside = tau2 * (a2 * Rational(BigInt(alpha * alpha)) + ab * Rational(BigInt(alpha * beta)) + b2 * Rational(BigInt(beta * beta)));
  out.sum_rest = tau2 * Rational(BigInt(beta * beta)) *
                 (Rational(sthgp_alpha(n - k)) + Rational(BigInt(K * (N - K) * (N - K + 1))) * pow2(n - k - 2));
  return out;
}

// ---- STGP ----

StgpCounts stgp_tree_counts(int n, int k) {
  check_subtour(n, k);
  return {ipow(BigInt(n), n - 2), ipow(BigInt(k), k - 1) * ipow(BigInt(n), n - k - 1)};
}

Rational stgp_centroid(int n) {
  require(n >= 2, "stgp_centroid: n >= 2 required");
  return Rational(2, n);
}

Rational stgp_subtour_epr(int n, int k) {
  check_subtour(n, k);
  return pow(Rational(k, n), k - 1);
}

Rational stgp_subtour_cd2(int n, int k) {
  check_subtour(n, k);
  return Rational(BigInt(2) * (k - 1) * (n - 1) * (n - k), BigInt(k) * n * (n + k - 1));
}

StgpDelta stgp_delta_components(int n, int k) {
  check_subtour(n, k);
  StgpDelta d;
  d.dx_inside = Rational(2 * (n - k), k * n);
  d.dx_outside = Rational(BigInt(-2 * (k - 1)), BigInt(n) * (n + k - 1));
  d.sum_inside = Rational(BigInt(2) * (k - 1) * (n - k) * (n - k), BigInt(k) * n * n);
  d.sum_outside = Rational(BigInt(2) * (k - 1) * (k - 1) * (n - k), BigInt(n) * n * (n + k - 1));
  return d;
}

}  // namespace strength
