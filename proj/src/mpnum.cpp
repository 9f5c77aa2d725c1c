#include "rootlab/mpnum.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace rootlab {

namespace {

std::string trim(std::string_view text) {
  std::string out;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) out.push_back(ch);
  }
  return out;
}

// sign? digits [. digits] [(e|E) sign? digits]
Rational parse_decimal(std::string_view s) {
  if (s.empty()) throw UsageError("empty number");
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string mantissa;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      mantissa.push_back(ch);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw UsageError("malformed number '" + std::string(s) + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw UsageError("malformed number '" + std::string(s) + "'");
    ++pos;
    std::string exp_text(s.substr(pos));
    if (exp_text.empty()) throw UsageError("malformed exponent in '" + std::string(s) + "'");
    std::size_t used = 0;
    long e = 0;
    try {
      e = std::stol(exp_text, &used);
    } catch (const std::exception&) {
      throw UsageError("malformed exponent in '" + std::string(s) + "'");
    }
    if (used != exp_text.size()) throw UsageError("malformed exponent in '" + std::string(s) + "'");
    scale += e;
  }
  mpz_class m(mantissa, 10);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(scale)));
  Rational q = scale >= 0 ? Rational(m * ten_pow) : Rational(m, ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return parse_decimal(s);
  Rational num = parse_decimal(std::string_view(s).substr(0, slash));
  Rational den = parse_decimal(std::string_view(s).substr(slash + 1));
  if (sgn(den) == 0) throw UsageError("zero denominator in '" + s + "'");
  return num / den;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational checked_div(const Rational& a, const Rational& b) {
  if (sgn(b) == 0) throw DomainError("division by exact zero");
  return a / b;
}

// ---------------------------------------------------------------------------
// GaussRational

GaussRational GaussRational::parse(std::string_view text) {
  std::string s = trim(text);
  if (s.empty()) throw UsageError("empty complex literal");
  if (s.back() != 'i') return {parse_rational(s), 0};
  s.pop_back();
  // Split at the last sign that is not leading and not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E' && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_text = split == std::string::npos ? s : s.substr(split);
  Rational im;
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else {
    im = parse_rational(im_text);
  }
  Rational re = re_text.empty() ? Rational(0) : parse_rational(re_text);
  return {re, im};
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) {
  if (o.is_zero()) throw DomainError("division by exact zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  Rational den = o.norm();
  Rational re = (re_ * o.re_ + im_ * o.im_) / den;
  Rational im = (im_ * o.re_ - re_ * o.im_) / den;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::string GaussRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string im_part;
  if (im_ == 1) {
    im_part = "i";
  } else if (im_ == -1) {
    im_part = "-i";
  } else {
    im_part = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return im_part;
  return re_.get_str() + (sgn(im_) > 0 ? "+" : "") + im_part;
}

std::ostream& operator<<(std::ostream& os, const GaussRational& q) { return os << q.str(); }

// ---------------------------------------------------------------------------
// BigReal

mpfr_prec_t digits_to_bits(int digits) {
  if (digits < 1) throw DomainError("precision must be at least one digit");
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

BigReal::BigReal(int digits) : digits_(digits) {
  mpfr_init2(v_, digits_to_bits(digits));
  mpfr_set_zero(v_, 1);
}

BigReal::BigReal(const BigReal& other) : digits_(other.digits_) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
    digits_ = other.digits_;
  }
  return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
  mpfr_swap(v_, other.v_);
  std::swap(digits_, other.digits_);
  return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::from_int(long v, int digits) {
  BigReal r(digits);
  mpfr_set_si(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::from_double(double v, int digits) {
  BigReal r(digits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

BigReal BigReal::from_rational(const Rational& q, int digits) {
  BigReal r(digits);
  mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
  return r;
}

BigReal BigReal::parse(std::string_view text, int digits) {
  std::string s = trim(text);
  BigReal r(digits);
  if (s.empty() || mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    throw UsageError("malformed number '" + s + "'");
  }
  return r;
}

namespace {

// Raises the precision of `x` in place if `digits` exceeds it (exact).
void widen(mpfr_ptr v, int& digits, int other_digits) {
  if (other_digits > digits) {
    mpfr_prec_round(v, digits_to_bits(other_digits), MPFR_RNDN);
    digits = other_digits;
  }
}

}  // namespace

BigReal& BigReal::operator+=(const BigReal& o) {
  widen(v_, digits_, o.digits_);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
  widen(v_, digits_, o.digits_);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
  widen(v_, digits_, o.digits_);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
  if (o.is_zero()) throw DomainError("division by exact zero");
  widen(v_, digits_, o.digits_);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.digits_, b.digits_));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.digits_, b.digits_));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
  BigReal r(std::max(a.digits_, b.digits_));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
  if (b.is_zero()) throw DomainError("division by exact zero");
  BigReal r(std::max(a.digits_, b.digits_));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigReal operator-(const BigReal& a) {
  BigReal r(a.digits_);
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

std::pair<std::string, long> BigReal::decimal_digits(int sig) const {
  if (!is_finite()) throw DomainError("cannot format a non-finite value");
  if (is_zero()) return {std::string(static_cast<std::size_t>(sig), '0'), 0};
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(sig), v_, MPFR_RNDN);
  std::string digits(raw);
  mpfr_free_str(raw);
  if (!digits.empty() && digits[0] == '-') digits.erase(0, 1);
  return {digits, static_cast<long>(e)};
}

std::string BigReal::format_table(int sig) const {
  if (is_zero()) return "0";
  auto [digits, e] = decimal_digits(sig);
  return std::string(sign() < 0 ? "-" : "") + "0." + digits + "e" + std::to_string(e);
}

std::string BigReal::format_sci(int sig) const {
  if (is_zero()) return "0";
  auto [digits, e] = decimal_digits(sig);
  std::string out = sign() < 0 ? "-" : "";
  out += digits[0];
  if (digits.size() > 1) out += "." + digits.substr(1);
  long k = e - 1;
  out += (k < 0 ? "e-" : "e+") + std::to_string(std::labs(k));
  return out;
}

std::string BigReal::format(int sig) const {
  if (is_zero()) return "0";
  auto [digits, e] = decimal_digits(sig);
  std::string sign_text = sign() < 0 ? "-" : "";
  if (e > 0 && e <= sig) {
    std::string head = digits.substr(0, static_cast<std::size_t>(e));
    std::string tail = digits.substr(static_cast<std::size_t>(e));
    return sign_text + head + (tail.empty() ? "" : "." + tail);
  }
  if (e <= 0 && e >= -4) {
    return sign_text + "0." + std::string(static_cast<std::size_t>(-e), '0') + digits;
  }
  return format_sci(sig);
}

std::string BigReal::format_exact() const {
  auto n = static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_)));
  return format_sci(n);
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  if (!x.is_finite()) return os << mpfr_get_d(x.get(), MPFR_RNDN);
  return os << x.format(std::min(x.digits(), 20));
}

BigReal const_pi(int digits) {
  BigReal r(digits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

BigReal exp(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_exp(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal log(const BigReal& x) {
  if (x.sign() <= 0) throw DomainError("ln of a non-positive real");
  BigReal r(x.digits());
  mpfr_log(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal sin(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_sin(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal cos(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_cos(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal sqrt(const BigReal& x) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative real");
  BigReal r(x.digits());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal abs(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal pow_int(const BigReal& x, long n) {
  if (n < 0 && x.is_zero()) throw DomainError("negative power of zero");
  BigReal r(x.digits());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
  BigReal r(std::max(x.digits(), y.digits()));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal hypot(const BigReal& x, const BigReal& y) {
  BigReal r(std::max(x.digits(), y.digits()));
  mpfr_hypot(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

BigReal root_n(const BigReal& x, unsigned long n) {
  if (x.sign() < 0) throw DomainError("real root of a negative number");
  BigReal r(x.digits());
  mpfr_rootn_ui(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

BigReal Scalar<BigReal>::constant(const GaussRational& q, const BigReal& like) {
  if (!q.is_real()) throw DomainError("complex constant in a real context: " + q.str());
  return BigReal::from_rational(q.real(), like.digits());
}

Rational Scalar<Rational>::constant(const GaussRational& q, const Rational&) {
  if (!q.is_real()) throw DomainError("complex constant in a real context: " + q.str());
  return q.real();
}

// ---------------------------------------------------------------------------
// BigComplex

BigComplex::BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) {
  int d = std::max(re_.digits(), im_.digits());
  if (re_.digits() != d) re_ += BigReal(d);
  if (im_.digits() != d) im_ += BigReal(d);
}

BigComplex::BigComplex(BigReal re) : re_(std::move(re)), im_(re_.digits()) {}

BigComplex BigComplex::from_gauss(const GaussRational& q, int digits) {
  return {BigReal::from_rational(q.real(), digits), BigReal::from_rational(q.imag(), digits)};
}

BigComplex BigComplex::from_hw(std::complex<double> z, int digits) {
  return {BigReal::from_double(z.real(), digits), BigReal::from_double(z.imag(), digits)};
}

BigComplex BigComplex::parse(std::string_view text, int digits) {
  return from_gauss(GaussRational::parse(text), digits);
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  if (a.im_.is_zero() && b.im_.is_zero()) {
    return {a.re_ * b.re_, BigReal(std::max(a.digits(), b.digits()))};
  }
  return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
  if (b.is_zero()) throw DomainError("division by exact zero");
  if (b.im_.is_zero()) return {a.re_ / b.re_, a.im_ / b.re_};
  BigReal den = b.re_ * b.re_ + b.im_ * b.im_;
  return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
}

std::string BigComplex::format(int sig) const {
  if (im_.is_zero()) return re_.format(sig);
  std::string im_text = im_.format(sig);
  if (re_.is_zero()) return im_text + "i";
  return re_.format(sig) + (im_.sign() > 0 ? "+" : "") + im_text + "i";
}

std::ostream& operator<<(std::ostream& os, const BigComplex& z) {
  return os << z.format(std::min(z.digits(), 20));
}

BigComplex exp(const BigComplex& z) {
  BigReal m = exp(z.real());
  if (z.imag().is_zero()) return BigComplex(m);
  BigReal s(z.digits());
  BigReal c(z.digits());
  mpfr_sin_cos(s.get(), c.get(), z.imag().get(), MPFR_RNDN);
  return {m * c, m * s};
}

BigComplex log(const BigComplex& z) {
  if (z.is_zero()) throw DomainError("ln of zero");
  if (z.imag().is_zero() && z.real().sign() > 0) return BigComplex(log(z.real()));
  return {log(abs(z)), arg(z)};
}

namespace {

BigReal sinh_of(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_sinh(r.get(), x.get(), MPFR_RNDN);
  return r;
}

BigReal cosh_of(const BigReal& x) {
  BigReal r(x.digits());
  mpfr_cosh(r.get(), x.get(), MPFR_RNDN);
  return r;
}

}  // namespace

BigComplex sin(const BigComplex& z) {
  if (z.imag().is_zero()) return BigComplex(sin(z.real()));
  return {sin(z.real()) * cosh_of(z.imag()), cos(z.real()) * sinh_of(z.imag())};
}

BigComplex cos(const BigComplex& z) {
  if (z.imag().is_zero()) return BigComplex(cos(z.real()));
  return {cos(z.real()) * cosh_of(z.imag()), -(sin(z.real()) * sinh_of(z.imag()))};
}

BigComplex sqrt(const BigComplex& z) {
  const int d = z.digits();
  if (z.is_zero()) return BigComplex(d);
  if (z.imag().is_zero() && z.real().sign() > 0) return BigComplex(sqrt(z.real()));
  BigReal r = abs(z);
  BigReal two = BigReal::from_int(2, d);
  if (z.real().sign() >= 0) {
    BigReal s = sqrt((r + z.real()) / two);
    return {s, z.imag() / (two * s)};
  }
  BigReal t = sqrt((r - z.real()) / two);
  BigReal re = abs(z.imag()) / (two * t);
  return {re, z.imag().sign() < 0 ? -t : t};
}

BigReal abs(const BigComplex& z) { return hypot(z.real(), z.imag()); }

BigReal arg(const BigComplex& z) { return atan2(z.imag(), z.real()); }

BigComplex pow_int(const BigComplex& z, long n) {
  if (n < 0) {
    BigComplex one = BigComplex::from_gauss(GaussRational(1), z.digits());
    return one / power(z, static_cast<unsigned>(-n));
  }
  return power(z, static_cast<unsigned>(n));
}

}  // namespace rootlab
