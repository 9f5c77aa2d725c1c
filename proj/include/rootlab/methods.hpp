#pragma once

// Catalog of one-step iteration maps.
//
// Every formula is written once as a template over the scalar contract of
// mpnum.hpp, so the same code runs in big-float table reproduction,
// hardware-precision basin scans, exact-rational invariant checks and
// symbolic error-series expansion.

#include <concepts>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/mpnum.hpp"

namespace rootlab {

enum class MethodId { newton, kt4, kt8naive, family, chun_lee, neta, sharma, bcst };

/// Function and derivative evaluations spent by one step.
struct EvalCount {
  int f = 0;
  int df = 0;

  int total() const { return f + df; }
  EvalCount& operator+=(const EvalCount& o) {
    f += o.f;
    df += o.df;
    return *this;
  }
  bool operator==(const EvalCount&) const = default;
};

struct MethodSpec {
  MethodId id = MethodId::newton;
  GaussRational a{0}, b{0}, c{0};  // family weights J(t,u; a, b), G(s; c)
  Rational neta_A{0};
  Rational sharma_alpha{1};
  // Chun-Lee's beta and gamma cancel in the step; kept so that can be checked.
  Rational chun_beta{0}, chun_gamma{0};
  // bcst: first step x - v(1 + v^power), t^4 coefficient of the last weight.
  unsigned bcst_power = 5;
  Rational bcst_t4{5};
  std::string alias;  // display name for catalog aliases ("m1", ...)

  static MethodSpec newton();
  static MethodSpec kt4();
  static MethodSpec kt8naive();
  static MethodSpec family(GaussRational a, GaussRational b, GaussRational c);
  static MethodSpec m1();
  static MethodSpec m2();
  static MethodSpec chun_lee();
  static MethodSpec neta(Rational A = 0);
  static MethodSpec sharma(Rational alpha = 1);
  static MethodSpec bcst();

  /// Catalog id, or the alias when one is set.
  std::string name() const;
  /// Full description including parameters.
  std::string describe() const;
  int expected_order() const;
  EvalCount evals_per_step() const;

  /// Same map (aliases ignored).
  bool same_map(const MethodSpec& o) const;
};

/// newton, kt4, kt8naive, family, m1..m6, chun-lee, neta, sharma, bcst.
MethodSpec parse_method(std::string_view id);
/// M1..M6 in table order.
std::vector<MethodSpec> compared_methods();
/// Every catalog entry with its default parameters.
std::vector<MethodSpec> catalog();

/// A problem supplies f alone and (f, f') at one point.
template <class P, class T>
concept ProblemFor = requires(const P& p, const T& x) {
  { p.value(x) } -> std::convertible_to<T>;
  { p.value_and_derivative(x) } -> std::convertible_to<std::pair<T, T>>;
};

/// Where a step ended: after the full update, or early at an exact sub-step zero.
enum class StepExit { full, root_at_x, root_at_y, root_at_z };

template <class T>
struct StepResult {
  T next;
  EvalCount evals;
  StepExit exit = StepExit::full;
};

/// num / den, raising StepBreakdown on a zero or non-finite denominator.
template <class T>
  requires requires(const T& x) { Scalar<T>::is_zero(x); }
T checked_quotient(const T& num, const T& den, const char* substep) {
  if (Scalar<T>::is_zero(den)) throw StepBreakdown(substep, "zero denominator");
  if (!Scalar<T>::is_finite(den)) throw StepBreakdown(substep, "non-finite denominator");
  return num / den;
}

// gmpxx expression templates do not deduce T; this overload materializes them.
inline Rational checked_quotient(const Rational& num, const Rational& den, const char* substep) {
  return checked_quotient<Rational>(num, den, substep);
}

/// J(t, u) = (1 + a t + (2+b) u + (2a+1) t^2 + 4a t^3) / (1 + (a-2) t + b u + t^2).
template <class T>
T weight_J(const T& t, const T& u, const T& a, const T& b) {
  const T one = make_int<T>(1, t);
  const T two = make_int<T>(2, t);
  const T t2 = t * t;
  const T num = one + a * t + (two + b) * u + (two * a + one) * t2 + make_int<T>(4, t) * a * t2 * t;
  const T den = one + (a - two) * t + b * u + t2;
  return checked_quotient(num, den, "weight J");
}

/// G(s) = (1 + c s) / (1 + (c-1) s).
template <class T>
T weight_G(const T& s, const T& c) {
  const T one = make_int<T>(1, s);
  return checked_quotient(one + c * s, one + (c - one) * s, "weight G");
}

/// f[x, y] = (f(x) - f(y)) / (x - y).
template <class T, class P>
  requires ProblemFor<P, T>
T divided_difference(const P& f, const T& x, const T& y) {
  return checked_quotient(f.value(x) - f.value(y), x - y, "divided difference");
}

/// One step of a catalog method. Constants and parameters are converted
/// into the scalar context once, at construction.
template <class T>
class Stepper {
 public:
  Stepper(const MethodSpec& spec, const T& like)
      : spec_(spec),
        one_(make_int<T>(1, like)),
        two_(make_int<T>(2, like)),
        bcst_t4_(Scalar<T>::constant(GaussRational(spec.bcst_t4), like)),
        half_(Scalar<T>::constant(GaussRational(Rational(1, 2)), like)),
        a_(Scalar<T>::constant(spec.a, like)),
        b_(Scalar<T>::constant(spec.b, like)),
        c_(Scalar<T>::constant(spec.c, like)),
        neta_A_(Scalar<T>::constant(GaussRational(spec.neta_A), like)),
        alpha_(Scalar<T>::constant(GaussRational(spec.sharma_alpha), like)),
        beta_(Scalar<T>::constant(GaussRational(spec.chun_beta), like)),
        gamma_(Scalar<T>::constant(GaussRational(spec.chun_gamma), like)) {}

  const MethodSpec& spec() const noexcept { return spec_; }

  template <class P>
    requires ProblemFor<P, T>
  StepResult<T> operator()(const P& f, const T& x) const {
    return three_point(f, x, [this](const T& t, const T& u, const T& s) -> T {
      return weight_J(t, u, a_, b_) * weight_G(s, c_);
    });
  }

  /// The three-point scheme with an arbitrary weight product W(t, u, s):
  /// x+ = z - f(z)/f'(x) * W. Only used directly for the family; exposed so
  /// the series engine can probe weight conditions.
  template <class P, class Weight>
  StepResult<T> weighted_three_point(const P& f, const T& x, Weight&& weight) const {
    return family_step(f, x, weight);
  }

 private:
  template <class P, class Weight>
  StepResult<T> three_point(const P& f, const T& x, Weight&& family_weight) const {
    switch (spec_.id) {
      case MethodId::newton: return newton(f, x);
      case MethodId::kt4: return kt4(f, x);
      case MethodId::kt8naive: return kt8naive(f, x);
      case MethodId::family: return family_step(f, x, family_weight);
      case MethodId::chun_lee: return chun_lee(f, x);
      case MethodId::neta: return neta(f, x);
      case MethodId::sharma: return sharma(f, x);
      case MethodId::bcst: return bcst(f, x);
    }
    throw DomainError("unknown method id");
  }

  static T sq(const T& v) { return v * v; }

  template <class P>
  StepResult<T> newton(const P& f, const T& x) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return {x, {1, 1}, StepExit::root_at_x};
    return {x - checked_quotient(fx, dfx, "y"), {1, 1}};
  }

  // Shared first two sub-steps of kt4, kt8naive and the family.
  struct TwoPoint {
    T fx, dfx, ratio, y, fy, z;
  };

  template <class P>
  std::optional<StepResult<T>> two_point(const P& f, const T& x, std::optional<TwoPoint>& out) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return StepResult<T>{x, {1, 1}, StepExit::root_at_x};
    T ratio = checked_quotient(fx, dfx, "y");
    T y = x - ratio;
    T fy = f.value(y);
    if (Scalar<T>::is_zero(fy)) return StepResult<T>{y, {2, 1}, StepExit::root_at_y};
    T z = y - checked_quotient(fx * fy, sq(fx - fy), "z") * ratio;
    out.emplace(TwoPoint{std::move(fx), std::move(dfx), std::move(ratio), std::move(y), std::move(fy),
                         std::move(z)});
    return std::nullopt;
  }

  template <class P>
  StepResult<T> kt4(const P& f, const T& x) const {
    std::optional<TwoPoint> tp;
    if (auto early = two_point(f, x, tp)) return *early;
    return {tp->z, {2, 1}};
  }

  template <class P>
  StepResult<T> kt8naive(const P& f, const T& x) const {
    std::optional<TwoPoint> tp;
    if (auto early = two_point(f, x, tp)) return *early;
    auto [fz, dfz] = f.value_and_derivative(tp->z);
    if (Scalar<T>::is_zero(fz)) return {tp->z, {3, 2}, StepExit::root_at_z};
    return {tp->z - checked_quotient(fz, dfz, "x"), {3, 2}};
  }

  template <class P, class Weight>
  StepResult<T> family_step(const P& f, const T& x, Weight& weight) const {
    std::optional<TwoPoint> tp;
    if (auto early = two_point(f, x, tp)) return *early;
    T fz = f.value(tp->z);
    if (Scalar<T>::is_zero(fz)) return {tp->z, {3, 1}, StepExit::root_at_z};
    const T t = checked_quotient(tp->fy, tp->fx, "x");
    const T u = checked_quotient(fz, tp->fx, "x");
    const T s = checked_quotient(fz, tp->fy, "x");
    return {tp->z - checked_quotient(fz, tp->dfx, "x") * weight(t, u, s), {3, 1}};
  }

  template <class P>
  StepResult<T> chun_lee(const P& f, const T& x) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return {x, {1, 1}, StepExit::root_at_x};
    const T y = x - checked_quotient(fx, dfx, "y");
    const T fy = f.value(y);
    if (Scalar<T>::is_zero(fy)) return {y, {2, 1}, StepExit::root_at_y};
    const T t = checked_quotient(fy, fx, "z");
    const T z = y - checked_quotient(fy, dfx, "z") * checked_quotient(one_, sq(one_ - t), "z");
    const T fz = f.value(z);
    if (Scalar<T>::is_zero(fz)) return {z, {3, 1}, StepExit::root_at_z};
    // Chun-Lee name f(z)/f(x) "s" and f(z)/f(y) "u".
    const T s = checked_quotient(fz, fx, "x");
    const T u = checked_quotient(fz, fy, "x");
    const T H = -beta_ - gamma_ + t + half_ * t * t - half_ * t * t * t;
    const T J = beta_ + half_ * s;
    const T P_ = gamma_ + half_ * u;
    const T w = one_ - H - J - P_;
    return {z - checked_quotient(fz, dfx, "x") * checked_quotient(one_, sq(w), "x"), {3, 1}};
  }

  template <class P>
  StepResult<T> neta(const P& f, const T& x) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return {x, {1, 1}, StepExit::root_at_x};
    const T y = x - checked_quotient(fx, dfx, "y");
    const T fy = f.value(y);
    if (Scalar<T>::is_zero(fy)) return {y, {2, 1}, StepExit::root_at_y};
    const T z = y - checked_quotient(fx + neta_A_ * fy, fx + (neta_A_ - two_) * fy, "z") *
                        checked_quotient(fy, dfx, "z");
    const T fz = f.value(z);
    if (Scalar<T>::is_zero(fz)) return {z, {3, 1}, StepExit::root_at_z};
    const T Fy = fy - fx;
    const T Fz = fz - fx;
    const T inv_dfx = checked_quotient(one_, dfx, "x");
    const T zeta_y = checked_quotient(checked_quotient(y - x, Fy, "x") - inv_dfx, Fy, "x");
    const T zeta_z = checked_quotient(checked_quotient(z - x, Fz, "x") - inv_dfx, Fz, "x");
    const T delta2 = -checked_quotient(zeta_y - zeta_z, Fy - Fz, "x");
    const T delta1 = zeta_y + delta2 * Fy;
    const T fx2 = fx * fx;
    return {y + delta1 * fx2 + delta2 * fx2 * fx, {3, 1}};
  }

  template <class P>
  StepResult<T> sharma(const P& f, const T& x) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return {x, {1, 1}, StepExit::root_at_x};
    const T y = x - checked_quotient(fx, dfx, "y");
    const T fy = f.value(y);
    if (Scalar<T>::is_zero(fy)) return {y, {2, 1}, StepExit::root_at_y};
    const T z = y - checked_quotient(fy, dfx, "z") * checked_quotient(fx, fx - two_ * fy, "z");
    const T fz = f.value(z);
    if (Scalar<T>::is_zero(fz)) return {z, {3, 1}, StepExit::root_at_z};
    // Sharma-Sharma name f(z)/f(x) "t".
    const T t = checked_quotient(fz, fx, "x");
    const T w = one_ + checked_quotient(t, one_ + alpha_ * t, "x");
    const T fxy = checked_quotient(fx - fy, x - y, "x");
    const T fxz = checked_quotient(fx - fz, x - z, "x");
    const T fyz = checked_quotient(fy - fz, y - z, "x");
    return {z - checked_quotient(fxy * fz, fxz * fyz, "x") * w, {3, 1}};
  }

  template <class P>
  StepResult<T> bcst(const P& f, const T& x) const {
    auto [fx, dfx] = f.value_and_derivative(x);
    if (Scalar<T>::is_zero(fx)) return {x, {1, 1}, StepExit::root_at_x};
    const T v = checked_quotient(fx, dfx, "y");
    const T y = x - v * (one_ + power(v, spec_.bcst_power));
    const T fy = f.value(y);
    if (Scalar<T>::is_zero(fy)) return {y, {2, 1}, StepExit::root_at_y};
    const T t = checked_quotient(fy, fx, "z");
    const T z = y - checked_quotient(fy, dfx, "z") * checked_quotient(one_, sq(one_ - t), "z");
    const T fz = f.value(z);
    if (Scalar<T>::is_zero(fz)) return {z, {3, 1}, StepExit::root_at_z};
    const T s = checked_quotient(fz, fy, "x");
    const T u = checked_quotient(fz, fx, "x");
    const T t2 = t * t;
    const T num = one_ + t2 + bcst_t4_ * t2 * t2 + s;
    return {z - checked_quotient(fz, dfx, "x") * checked_quotient(num, sq(one_ - t - u), "x"), {3, 1}};
  }

  MethodSpec spec_;
  T one_, two_, bcst_t4_, half_;
  T a_, b_, c_;
  T neta_A_, alpha_, beta_, gamma_;
};

/// One step of `spec` from x; constants are taken in the context of x.
template <class T, class P>
  requires ProblemFor<P, T>
StepResult<T> step(const MethodSpec& spec, const P& f, const T& x) {
  return Stepper<T>(spec, x)(f, x);
}

}  // namespace rootlab
