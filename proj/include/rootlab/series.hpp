#pragma once

// Truncated power series in the error variable e with exact coefficients.
//
// A series stores coefficients 0..N (N = working order) together with the
// largest index up to which they are known exactly ("accurate order").
// Accuracy tracking is valuation aware: multiplying by a factor that vanishes
// to order v only needs the other factor through N - v, so a chain of
// quotients by small-valuation series keeps the full working order where the
// algebra allows it.
//
// Plugging e ↦ TruncSeries into the scalar contract lets the iteration
// formulas in methods.hpp run unchanged on a symbolic error and produce the
// error equation e_{n+1}(e) of one step.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/methods.hpp"
#include "rootlab/mpnum.hpp"

namespace rootlab {

inline constexpr int kDefaultSeriesOrder = 9;

template <class C>
class TruncSeries {
 public:
  /// The zero series of working order `order`, exact through `order`.
  explicit TruncSeries(int order = kDefaultSeriesOrder)
      : coeffs_(static_cast<std::size_t>(order) + 1), accurate_(order) {}

  TruncSeries(std::vector<C> coeffs, int accurate) : coeffs_(std::move(coeffs)), accurate_(accurate) {
    if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
    accurate_ = std::min(accurate_, order());
    normalize();
  }

  static TruncSeries constant(const C& value, int order) {
    TruncSeries s(order);
    s.coeffs_[0] = value;
    return s;
  }

  /// The series "e" itself.
  static TruncSeries variable(int order) {
    TruncSeries s(order);
    if (order >= 1) s.coeffs_[1] = C(1);
    return s;
  }

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  int accurate_order() const noexcept { return accurate_; }
  const std::vector<C>& coeffs() const noexcept { return coeffs_; }
  const C& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

  /// Index of the lowest nonzero known coefficient; accurate_order()+1 when
  /// every known coefficient vanishes.
  int valuation() const {
    for (int k = 0; k <= accurate_; ++k) {
      if (!Scalar<C>::is_zero(coeffs_[static_cast<std::size_t>(k)])) return k;
    }
    return accurate_ + 1;
  }

  /// True when every known coefficient vanishes.
  bool is_zero() const { return valuation() > accurate_; }

  TruncSeries& operator+=(const TruncSeries& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    accurate_ = std::min(accurate_, o.accurate_);
    normalize();
    return *this;
  }

  TruncSeries& operator-=(const TruncSeries& o) {
    check_order(o);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    accurate_ = std::min(accurate_, o.accurate_);
    normalize();
    return *this;
  }

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator-(TruncSeries a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    a.check_order(b);
    const int n = a.order();
    const int va = a.valuation();
    const int vb = b.valuation();
    TruncSeries r(n);
    r.accurate_ = std::min({n, a.accurate_ + vb, b.accurate_ + va});
    for (int i = va; i <= n; ++i) {
      const C& ai = a.coeffs_[static_cast<std::size_t>(i)];
      if (Scalar<C>::is_zero(ai)) continue;
      for (int j = vb; i + j <= n; ++j) {
        const C& bj = b.coeffs_[static_cast<std::size_t>(j)];
        if (Scalar<C>::is_zero(bj)) continue;
        r.coeffs_[static_cast<std::size_t>(i + j)] += ai * bj;
      }
    }
    r.normalize();
    return r;
  }

  /// Quotient num/den. The result keeps coefficients through
  /// min(acc(num) - v(den), acc(den) + v(num) - 2 v(den)).
  friend TruncSeries operator/(const TruncSeries& num, const TruncSeries& den) {
    num.check_order(den);
    const int n = num.order();
    const int vd = den.valuation();
    if (vd > den.accurate_) throw DomainError("series division by zero");
    const int vn = num.valuation();
    if (vn < vd) {
      throw ValuationError("series quotient with valuation(den)=" + std::to_string(vd) +
                           " > valuation(num)=" + std::to_string(vn));
    }
    const int acc = std::min({n, num.accurate_ - vd, den.accurate_ + vn - 2 * vd});
    TruncSeries r(n);
    r.accurate_ = std::max(acc, -1);
    // Shift both by vd; the shifted denominator has an invertible constant term.
    const C& lead = den.coeffs_[static_cast<std::size_t>(vd)];
    const C inv_lead = C(1) / lead;
    for (int k = 0; k + vd <= n; ++k) {
      C acc_k = num.coeffs_[static_cast<std::size_t>(k + vd)];
      for (int j = 0; j < k; ++j) {
        if (k - j + vd > n) continue;
        const C& d = den.coeffs_[static_cast<std::size_t>(k - j + vd)];
        if (Scalar<C>::is_zero(d)) continue;
        acc_k -= r.coeffs_[static_cast<std::size_t>(j)] * d;
      }
      r.coeffs_[static_cast<std::size_t>(k)] = acc_k * inv_lead;
    }
    r.normalize();
    return r;
  }

  /// Exact equality of the known coefficients and accuracy.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.accurate_ == b.accurate_ && a.coeffs_ == b.coeffs_;
  }

  std::string str() const {
    std::string out;
    for (int k = 0; k <= accurate_; ++k) {
      const C& c = coeffs_[static_cast<std::size_t>(k)];
      if (Scalar<C>::is_zero(c)) continue;
      if (!out.empty()) out += " + ";
      out += "(" + to_text(c) + ")e^" + std::to_string(k);
    }
    if (out.empty()) out = "0";
    return out + " + O(e^" + std::to_string(accurate_ + 1) + ")";
  }

 private:
  // Coefficients past the accurate order carry no information; keep them zero.
  void normalize() {
    for (int k = std::max(accurate_ + 1, 0); k <= order(); ++k) coeffs_[static_cast<std::size_t>(k)] = C(0);
  }

  void check_order(const TruncSeries& o) const {
    if (o.order() != order()) throw DomainError("series of different working orders");
  }

  static std::string to_text(const Rational& q) { return q.get_str(); }
  static std::string to_text(const GaussRational& q) { return q.str(); }

  std::vector<C> coeffs_;
  int accurate_;
};

template <class C>
TruncSeries<C> ts_add(const TruncSeries<C>& a, const TruncSeries<C>& b) { return a + b; }
template <class C>
TruncSeries<C> ts_sub(const TruncSeries<C>& a, const TruncSeries<C>& b) { return a - b; }
template <class C>
TruncSeries<C> ts_mul(const TruncSeries<C>& a, const TruncSeries<C>& b) { return a * b; }
template <class C>
TruncSeries<C> ts_div(const TruncSeries<C>& a, const TruncSeries<C>& b) { return a / b; }

template <class C>
struct Scalar<TruncSeries<C>> {
  static bool is_zero(const TruncSeries<C>& x) { return x.is_zero(); }
  static bool is_finite(const TruncSeries<C>&) { return true; }
  static TruncSeries<C> constant(const GaussRational& q, const TruncSeries<C>& like) {
    return TruncSeries<C>::constant(Scalar<C>::constant(q, C(0)), like.order());
  }
  static TruncSeries<C> pi(const TruncSeries<C>&) {
    throw DomainError("pi has no exact series realization");
  }
};

using Series = TruncSeries<GaussRational>;

/// Normalized Taylor data of f about a simple root x*: f(x* + e) / f'(x*) =
/// e + c2 e^2 + ... + cM e^M. c1 = 1 is implicit.
struct FunctionModel {
  std::vector<GaussRational> c;  // c[0] holds c2

  /// c_k for k >= 1 (c_1 = 1, 0 beyond the stored range).
  GaussRational coeff(int k) const;
  std::string str() const;
};

/// Σ c_k inner^k (c_1 = 1), truncated at the inner series' working order.
Series ts_compose(const FunctionModel& outer, const Series& inner);
/// Σ k c_k inner^(k-1): the derivative of the model evaluated on `inner`.
Series ts_compose_derivative(const FunctionModel& outer, const Series& inner);

/// The model as a problem over series, usable by every method step.
struct SeriesProblem {
  FunctionModel model;

  Series value(const Series& x) const { return ts_compose(model, x); }
  std::pair<Series, Series> value_and_derivative(const Series& x) const {
    return {ts_compose(model, x), ts_compose_derivative(model, x)};
  }
};

/// Error series e_{n+1}(e) of one step of `method` on `model`, at working order `order`.
Series expand_method(const MethodSpec& method, const FunctionModel& model,
                     int order = kDefaultSeriesOrder);

/// Error series of z_n, the output of the two-point (kt4) sub-step.
Series expand_kt4_substep(const FunctionModel& model, int order = kDefaultSeriesOrder);

/// Random model with nonzero c2..c_last drawn as p/q, |p|, q <= 9. Draws where
/// 2c2^2 - c3 or c2^2 - c3 vanishes are rejected: both factor the leading
/// coefficient of some catalog methods.
FunctionModel random_model(std::uint64_t seed, int last = 8);

/// Raised when an expansion contradicts the asserted order.
class OrderViolation : public Error {
 public:
  OrderViolation(int k, FunctionModel model, GaussRational coefficient, std::string what);

  int k() const noexcept { return k_; }
  const FunctionModel& model() const noexcept { return model_; }
  const GaussRational& coefficient() const noexcept { return coefficient_; }

 private:
  int k_;
  FunctionModel model_;
  GaussRational coefficient_;
};

struct OrderReport {
  MethodSpec method;
  int expected = 0;
  int vanished_through = 0;     // largest k with R_0..R_k exactly zero in every trial
  GaussRational leading_coeff;  // R_{vanished_through+1} of the witness trial
  FunctionModel witness;        // model of the witness trial (trial 0)
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> trial_seeds;
  int working_order = 0;

  bool certified() const { return vanished_through + 1 == expected; }
  /// Human readable block.
  std::string text() const;
  /// One CSV record: method,expected,vanished_through,leading_coeff,trials,seeds
  std::string record() const;
  static std::string record_header();
};

/// Certifies that `method` has convergence order exactly `expected` on
/// `trials` random models. Throws OrderViolation on the first trial that
/// disagrees.
OrderReport verify_order(const MethodSpec& method, int expected, int trials, std::uint64_t seed);

/// Derivatives at the origin of the weight functions of the three-parameter family.
struct WeightConditions {
  GaussRational J00, J10, J20, J01, J30, G0, G1;

  bool operator==(const WeightConditions&) const = default;
  /// The values required for order eight: (1, 2, 8, 2, 36, 1, 1).
  static WeightConditions required();
  std::string str() const;
};

WeightConditions check_weight_conditions(const GaussRational& a, const GaussRational& b,
                                         const GaussRational& c);

/// Taylor data of generic weights J(t,u) = J00 + J10 t + J20 t^2/2 + J30 t^3/6 + J01 u
/// and G(s) = G0 + G1 s, for probing how each condition feeds the error equation.
struct WeightTaylor {
  GaussRational J00{1}, J10{2}, J20{8}, J01{2}, J30{36}, G0{1}, G1{1};
};

/// Error series of the three-point scheme with polynomial weights `w`.
Series expand_weighted_scheme(const WeightTaylor& w, const FunctionModel& model,
                              int order = kDefaultSeriesOrder);

}  // namespace rootlab
