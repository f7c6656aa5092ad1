#include "strength/exactnum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace strength {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational: " + text);
  }
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  v_ /= o.v_;
  return *this;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational pow(const Rational& base, long exponent) {
  if (exponent < 0) return Rational(1) / pow(base, -exponent);
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(n, d);
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow2(long e) {
  BigInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

BigInt exact_div(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("division by zero");
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::logic_error("inexact integer division");
  BigInt q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

std::string to_string(const BigInt& v) { return v.get_str(); }

namespace {

size_t bit_length(const BigInt& v) {
  return v == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace

DoubleConversion to_double(const Rational& x) {
  DoubleConversion out;
  if (x.is_zero()) return out;
  BigInt a = abs(x.num());
  BigInt b = x.den();
  // Scale so the integer quotient carries 55..56 significant bits, then round.
  long shift = 55 - (static_cast<long>(bit_length(a)) - static_cast<long>(bit_length(b)));
  BigInt num = a, den = b;
  if (shift > 0) mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), static_cast<unsigned long>(shift));
  if (shift < 0) mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(-shift));
  BigInt q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  bool sticky = r != 0;
  long extra = static_cast<long>(bit_length(q)) - 53;
  BigInt mant = q;
  long exp2 = -shift;
  if (extra > 0) {
    BigInt low;
    mpz_tdiv_r_2exp(low.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(extra));
    mpz_tdiv_q_2exp(mant.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(extra));
    exp2 += extra;
    BigInt half;
    mpz_ui_pow_ui(half.get_mpz_t(), 2, static_cast<unsigned long>(extra - 1));
    bool round_up = low > half || (low == half && (sticky || mpz_odd_p(mant.get_mpz_t())));
    if (round_up) mant += 1;
  }
  double m = mant.get_d();  // at most 54 bits, exact
  double v = std::ldexp(m, static_cast<int>(std::clamp<long>(exp2, -100000, 100000)));
  if (std::isinf(v)) out.overflow = true;
  out.value = x.sign() < 0 ? -v : v;
  return out;
}

DoubleConversion to_double(const BigInt& x) { return to_double(Rational(x)); }

double log_abs(const BigInt& x) {
  if (x == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

double log_abs(const Rational& x) { return log_abs(x.num()) - log_abs(x.den()); }

double log_ratio(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("log_ratio with zero denominator");
  if (num <= 0 || den < 0) throw std::domain_error("log_ratio needs positive arguments");
  return (log_abs(num) - log_abs(den)) / std::log(10.0);
}

double log_ratio(const Rational& num, const Rational& den) {
  if (den.is_zero()) throw std::domain_error("log_ratio with zero denominator");
  if (num.sign() <= 0 || den.sign() < 0) throw std::domain_error("log_ratio needs positive arguments");
  return (log_abs(num) - log_abs(den)) / std::log(10.0);
}

LogScalar LogScalar::from_log(double log_magnitude, int sign) {
  LogScalar s;
  if (sign == 0 || (std::isinf(log_magnitude) && log_magnitude < 0)) return s;
  s.sign_ = sign > 0 ? 1 : -1;
  s.logm_ = log_magnitude;
  return s;
}

LogScalar LogScalar::from_double(double v) {
  if (v == 0.0) return {};
  return from_log(std::log(std::fabs(v)), v > 0 ? 1 : -1);
}

LogScalar LogScalar::from_exact(const BigInt& v) {
  if (v == 0) return {};
  return from_log(log_abs(v), sgn(v));
}

LogScalar LogScalar::from_exact(const Rational& v) {
  if (v.is_zero()) return {};
  return from_log(log_abs(v), v.sign());
}

double LogScalar::log10() const {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return logm_ / std::log(10.0);
}

double LogScalar::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(logm_);
}

LogScalar& LogScalar::operator*=(const LogScalar& o) {
  if (sign_ == 0 || o.sign_ == 0) return *this = LogScalar{};
  sign_ *= o.sign_;
  logm_ += o.logm_;
  return *this;
}

LogScalar& LogScalar::operator/=(const LogScalar& o) {
  if (o.sign_ == 0) throw std::domain_error("division by zero");
  if (sign_ == 0) return *this;
  sign_ *= o.sign_;
  logm_ -= o.logm_;
  return *this;
}

LogScalar& LogScalar::operator+=(const LogScalar& o) {
  if (o.sign_ == 0) return *this;
  if (sign_ == 0) return *this = o;
  double hi = std::max(logm_, o.logm_);
  double lo = std::min(logm_, o.logm_);
  int hi_sign = logm_ >= o.logm_ ? sign_ : o.sign_;
  if (sign_ == o.sign_) {
    logm_ = hi + std::log1p(std::exp(lo - hi));
    return *this;
  }
  if (hi == lo) return *this = LogScalar{};
  logm_ = hi + std::log1p(-std::exp(lo - hi));
  sign_ = hi_sign;
  return *this;
}

LogScalar& LogScalar::operator-=(const LogScalar& o) { return *this += -o; }

double log_ratio(const LogScalar& num, const LogScalar& den) {
  if (den.is_zero()) throw std::domain_error("log_ratio with zero denominator");
  if (num.is_zero() || num.sign() != den.sign()) throw std::domain_error("log_ratio needs a positive ratio");
  return (num.log_magnitude() - den.log_magnitude()) / std::log(10.0);
}

double log_sum_exp(std::span<const double> logs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double v : logs) hi = std::max(hi, v);
  if (std::isinf(hi)) return hi;
  double acc = 0.0;
  for (double v : logs) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

BigInt exact_dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("exact_dot size mismatch");
  BigInt total = 0;
  __int128 acc = 0;
  const __int128 limit = static_cast<__int128>(1) << 120;
  auto flush = [&] {
    bool neg = acc < 0;
    unsigned __int128 mag = neg ? -static_cast<unsigned __int128>(acc) : static_cast<unsigned __int128>(acc);
    const std::uint64_t words[2] = {static_cast<std::uint64_t>(mag), static_cast<std::uint64_t>(mag >> 64)};
    BigInt part;
    mpz_import(part.get_mpz_t(), 2, -1, sizeof(std::uint64_t), 0, 0, words);
    if (neg) part = -part;
    total += part;
    acc = 0;
  };
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += static_cast<__int128>(a[i]) * b[i];
    if (acc > limit || acc < -limit) flush();
  }
  flush();
  return total;
}

}  // namespace strength
