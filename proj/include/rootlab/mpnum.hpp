#pragma once

// Scalar realizations shared by every iteration formula.
//
// Four value types satisfy one arithmetic contract (+ - * /, unary -,
// construction of constants "like" an existing value):
//   BigReal / BigComplex  arbitrary precision, MPFR backed, precision in decimal digits
//   HwComplex             std::complex<double>, non-finite values propagate
//   Rational / GaussRational  exact, used by the invariant suites and the series engine
// Scalar<T> carries the per-type predicates the methods need.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "rootlab/errors.hpp"

namespace rootlab {

inline constexpr int kDefaultDigits = 2048;

// ---------------------------------------------------------------------------
// Exact rationals

using Rational = mpq_class;

/// Parses "7", "-3/4", "0.35", "1e-3", "-2.5E+2" into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

/// Exact complex rational p + q i.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }
  GaussRational(long v) : re_(v) {}  // NOLINT: implicit by design of the literal tables

  /// "re+imi" style literal: "0.5", "-1+i", "i", "2i", "(1+i)/2" is not accepted;
  /// use "1/2+1/2i".
  static GaussRational parse(std::string_view text);

  const Rational& real() const noexcept { return re_; }
  const Rational& imag() const noexcept { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend GaussRational operator-(const GaussRational& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string str() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussRational& q);

/// Division that reports an exact zero divisor as DomainError instead of aborting.
Rational checked_div(const Rational& a, const Rational& b);

// ---------------------------------------------------------------------------
// Arbitrary precision

/// Binary precision backing a decimal digit count (a few guard bits included).
mpfr_prec_t digits_to_bits(int digits);

class BigReal {
 public:
  explicit BigReal(int digits = kDefaultDigits);
  BigReal(const BigReal& other);
  BigReal(BigReal&& other) noexcept;
  BigReal& operator=(const BigReal& other);
  BigReal& operator=(BigReal&& other) noexcept;
  ~BigReal();

  static BigReal from_int(long v, int digits);
  static BigReal from_double(double v, int digits);
  static BigReal from_rational(const Rational& q, int digits);
  /// Decimal or scientific literal; throws UsageError on trailing garbage.
  static BigReal parse(std::string_view text, int digits);

  int digits() const noexcept { return digits_; }
  mpfr_srcptr get() const noexcept { return v_; }
  mpfr_ptr get() noexcept { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); meaningless for zero.
  long exponent2() const { return mpfr_get_exp(v_); }

  BigReal& operator+=(const BigReal& o);
  BigReal& operator-=(const BigReal& o);
  BigReal& operator*=(const BigReal& o);
  BigReal& operator/=(const BigReal& o);

  friend BigReal operator+(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a, const BigReal& b);
  friend BigReal operator*(const BigReal& a, const BigReal& b);
  friend BigReal operator/(const BigReal& a, const BigReal& b);
  friend BigReal operator-(const BigReal& a);

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b);

  /// `sig` significant digits; fixed notation for moderate exponents, else d.ddde±k.
  std::string format(int sig) const;
  /// Enough digits that parse(format_exact(), digits()) reproduces the value bit for bit.
  std::string format_exact() const;
  /// d.ddde±k with `sig` significant digits.
  std::string format_sci(int sig) const;
  /// 0.ddde-k with mantissa in [0.1, 1), the layout of published error tables.
  std::string format_table(int sig) const;
  /// Decimal mantissa digits and exponent with value = 0.DIGITS × 10^exp10.
  std::pair<std::string, long> decimal_digits(int sig) const;

 private:
  mpfr_t v_;
  int digits_;
};

std::ostream& operator<<(std::ostream& os, const BigReal& x);

BigReal const_pi(int digits);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal abs(const BigReal& x);
BigReal pow_int(const BigReal& x, long n);
BigReal atan2(const BigReal& y, const BigReal& x);
BigReal hypot(const BigReal& x, const BigReal& y);
BigReal root_n(const BigReal& x, unsigned long n);

class BigComplex {
 public:
  explicit BigComplex(int digits = kDefaultDigits) : re_(digits), im_(digits) {}
  BigComplex(BigReal re, BigReal im);
  explicit BigComplex(BigReal re);

  static BigComplex from_gauss(const GaussRational& q, int digits);
  static BigComplex from_hw(std::complex<double> z, int digits);
  static BigComplex parse(std::string_view text, int digits);

  const BigReal& real() const noexcept { return re_; }
  const BigReal& imag() const noexcept { return im_; }
  int digits() const noexcept { return re_.digits(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  std::complex<double> to_hw() const { return {re_.to_double(), im_.to_double()}; }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o);
  BigComplex& operator/=(const BigComplex& o);

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string format(int sig) const;

 private:
  BigReal re_;
  BigReal im_;
};

std::ostream& operator<<(std::ostream& os, const BigComplex& z);

BigComplex exp(const BigComplex& z);
BigComplex log(const BigComplex& z);  // principal branch
BigComplex sin(const BigComplex& z);
BigComplex cos(const BigComplex& z);
BigComplex sqrt(const BigComplex& z);  // principal branch
BigReal abs(const BigComplex& z);      // hypot(re, im)
BigReal arg(const BigComplex& z);
BigComplex pow_int(const BigComplex& z, long n);

using HwComplex = std::complex<double>;

// ---------------------------------------------------------------------------
// Scalar contract

/// Per-realization predicates and constant construction. `like` supplies the
/// context (precision, series order) for constants.
template <class T>
struct Scalar;

template <>
struct Scalar<BigReal> {
  static bool is_zero(const BigReal& x) { return x.is_zero(); }
  static bool is_finite(const BigReal& x) { return x.is_finite(); }
  static BigReal constant(const GaussRational& q, const BigReal& like);
  static BigReal pi(const BigReal& like) { return const_pi(like.digits()); }
  static double magnitude(const BigReal& x) { return std::abs(x.to_double()); }
};

template <>
struct Scalar<BigComplex> {
  static bool is_zero(const BigComplex& x) { return x.is_zero(); }
  static bool is_finite(const BigComplex& x) { return x.is_finite(); }
  static BigComplex constant(const GaussRational& q, const BigComplex& like) {
    return BigComplex::from_gauss(q, like.digits());
  }
  static BigComplex pi(const BigComplex& like) { return BigComplex(const_pi(like.digits())); }
  static double magnitude(const BigComplex& x) { return abs(x).to_double(); }
};

template <>
struct Scalar<HwComplex> {
  static bool is_zero(const HwComplex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
  static bool is_finite(const HwComplex& x) {
    return std::isfinite(x.real()) && std::isfinite(x.imag());
  }
  static HwComplex constant(const GaussRational& q, const HwComplex&) {
    return {q.real().get_d(), q.imag().get_d()};
  }
  static HwComplex pi(const HwComplex&) { return {3.14159265358979323846, 0.0}; }
  static double magnitude(const HwComplex& x) { return std::abs(x); }
};

template <>
struct Scalar<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static bool is_finite(const Rational&) { return true; }
  static Rational constant(const GaussRational& q, const Rational&);
  static Rational pi(const Rational&) { throw DomainError("pi has no exact rational realization"); }
  static double magnitude(const Rational& x) { return std::abs(x.get_d()); }
};

template <>
struct Scalar<GaussRational> {
  static bool is_zero(const GaussRational& x) { return x.is_zero(); }
  static bool is_finite(const GaussRational&) { return true; }
  static GaussRational constant(const GaussRational& q, const GaussRational&) { return q; }
  static GaussRational pi(const GaussRational&) {
    throw DomainError("pi has no exact rational realization");
  }
  static double magnitude(const GaussRational& x) { return std::sqrt(x.norm().get_d()); }
};

/// Integer constant in the context of `like`.
template <class T>
T make_int(long v, const T& like) {
  return Scalar<T>::constant(GaussRational(v), like);
}

/// x^n for n >= 0 by repeated squaring; works for every realization.
template <class T>
T power(const T& x, unsigned n) {
  T result = make_int<T>(1, x);
  T base = x;
  while (n != 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n != 0) base = base * base;
  }
  return result;
}

}  // namespace rootlab
