#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

namespace strength {

using BigInt = mpz_class;

// Normalized rational backed by GMP. Division by zero throws instead of trapping.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : v_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const BigInt& v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

  static Rational parse(const std::string& text);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  std::string str() const;  // "p/q", or "p" when q == 1

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, long exponent);
Rational abs(const Rational& x);

// 2^e as a rational; e may be negative.
Rational pow2(long e);

BigInt exact_div(const BigInt& num, const BigInt& den);  // throws unless den | num
std::string to_string(const BigInt& v);

struct DoubleConversion {
  double value = 0.0;
  bool overflow = false;
};

// Round-to-nearest-even conversion. Overflow saturates to +-inf with the flag set.
DoubleConversion to_double(const Rational& x);
DoubleConversion to_double(const BigInt& x);

// Natural log of |x| for x != 0; works far outside the double range.
double log_abs(const BigInt& x);
double log_abs(const Rational& x);

// log10(num / den) for positive num and den.
double log_ratio(const BigInt& num, const BigInt& den);
double log_ratio(const Rational& num, const Rational& den);

// Signed value stored as sign and natural-log magnitude.
class LogScalar {
 public:
  LogScalar() = default;
  static LogScalar from_log(double log_magnitude, int sign = 1);
  static LogScalar from_double(double v);
  static LogScalar from_exact(const BigInt& v);
  static LogScalar from_exact(const Rational& v);
  static LogScalar zero() { return {}; }

  int sign() const { return sign_; }
  double log_magnitude() const { return logm_; }
  double log10() const;
  double to_double() const;
  bool is_zero() const { return sign_ == 0; }

  LogScalar& operator*=(const LogScalar& o);
  LogScalar& operator/=(const LogScalar& o);
  LogScalar& operator+=(const LogScalar& o);
  LogScalar& operator-=(const LogScalar& o);
  friend LogScalar operator*(LogScalar a, const LogScalar& b) { return a *= b; }
  friend LogScalar operator/(LogScalar a, const LogScalar& b) { return a /= b; }
  friend LogScalar operator+(LogScalar a, const LogScalar& b) { return a += b; }
  friend LogScalar operator-(LogScalar a, const LogScalar& b) { return a -= b; }
  friend LogScalar operator-(LogScalar a) { a.sign_ = -a.sign_; return a; }

 private:
  int sign_ = 0;
  double logm_ = 0.0;
};

// log10(num / den) for log-domain values of matching sign.
double log_ratio(const LogScalar& num, const LogScalar& den);

// log(sum exp(v_i)) over non-negative terms; -inf entries are skipped.
double log_sum_exp(std::span<const double> logs);

using ExactVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// Exact dot product of two int64 vectors (accumulated in 128 bits per chunk).
BigInt exact_dot(const IntVector& a, const IntVector& b);

}  // namespace strength

namespace Eigen {
template <>
struct NumTraits<strength::Rational> : GenericNumTraits<strength::Rational> {
  using Real = strength::Rational;
  using NonInteger = strength::Rational;
  using Nested = strength::Rational;
  using Literal = strength::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
