#pragma once

// Benchmark problems: four smooth test functions with analytic derivatives and
// six complex polynomials with closed-form roots.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/mpnum.hpp"

namespace rootlab {

enum class FunctionId { f1, f2, f3, f4 };

struct TestFunction {
  FunctionId id = FunctionId::f1;
  std::string name;
  std::string formula;
  std::string root_text;  // exact description of x*
  std::string x0_text;    // initial guess as a decimal

  BigReal root(int digits) const;
  BigReal x0(int digits) const;

  template <class T>
  T value(const T& x) const;
  template <class T>
  std::pair<T, T> value_and_derivative(const T& x) const;
};

/// f1..f4; UsageError otherwise.
TestFunction test_function(std::string_view id);
std::vector<TestFunction> test_functions();

template <class T>
T TestFunction::value(const T& x) const {
  const T one = make_int<T>(1, x);
  const T two = make_int<T>(2, x);
  const T x2 = x * x;
  switch (id) {
    case FunctionId::f1:
      return log(one + x2) + exp(x2 - make_int<T>(3, x) * x) * sin(x);
    case FunctionId::f2:
      return one + exp(two + x - x2) + x2 * x - cos(one + x);
    case FunctionId::f3: {
      const T half_pi = Scalar<T>::pi(x) / two;
      return (one + x2) * cos(half_pi * x) + log(x2 + two * x + two) / (one + x2);
    }
    case FunctionId::f4:
      return x2 * x2 + sin(Scalar<T>::pi(x) / x2) - make_int<T>(5, x);
  }
  throw DomainError("unknown test function");
}

template <class T>
std::pair<T, T> TestFunction::value_and_derivative(const T& x) const {
  const T one = make_int<T>(1, x);
  const T two = make_int<T>(2, x);
  const T three = make_int<T>(3, x);
  const T x2 = x * x;
  switch (id) {
    case FunctionId::f1: {
      const T e = exp(x2 - three * x);
      const T s = sin(x);
      const T q = one + x2;
      return {log(q) + e * s, two * x / q + e * ((two * x - three) * s + cos(x))};
    }
    case FunctionId::f2: {
      const T e = exp(two + x - x2);
      return {one + e + x2 * x - cos(one + x), (one - two * x) * e + three * x2 + sin(one + x)};
    }
    case FunctionId::f3: {
      const T half_pi = Scalar<T>::pi(x) / two;
      const T c = cos(half_pi * x);
      const T s = sin(half_pi * x);
      const T q = one + x2;
      const T w = x2 + two * x + two;
      const T l = log(w);
      const T f = q * c + l / q;
      const T df = two * x * c - half_pi * q * s + ((two * x + two) / w * q - two * x * l) / (q * q);
      return {f, df};
    }
    case FunctionId::f4: {
      const T pi = Scalar<T>::pi(x);
      const T arg = pi / x2;
      const T x3 = x2 * x;
      return {x2 * x2 + sin(arg) - make_int<T>(5, x), make_int<T>(4, x) * x3 - two * pi / x3 * cos(arg)};
    }
  }
  throw DomainError("unknown test function");
}

/// A root given in closed form: a Gaussian rational, or a polar value
/// base^(1/n) * exp(i*pi*angle) with angle in (-1, 1].
struct RootSpec {
  enum class Kind { gauss, polar };
  Kind kind = Kind::gauss;
  GaussRational exact;
  Rational base{1};
  unsigned n = 1;
  Rational angle{0};

  static RootSpec from_gauss(GaussRational q);
  static RootSpec from_polar(Rational base, unsigned n, Rational angle);

  BigComplex value(int digits) const;
  std::string str() const;
};

struct TestPolynomial {
  std::string name;
  std::string formula;
  std::vector<GaussRational> coeffs;  // highest degree first
  std::vector<RootSpec> roots;        // ascending argument, ties by modulus

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  std::vector<BigComplex> roots_big(int digits) const;
  std::vector<HwComplex> roots_hw() const;
};

/// p1..p6; UsageError otherwise.
TestPolynomial test_polynomial(std::string_view id);
std::vector<TestPolynomial> test_polynomials();

/// Custom polynomial text: one complex coefficient per line, highest degree
/// first, then a line "roots" followed by one root per line. Blank lines and
/// '#' comments are ignored. Roots are reordered to the canonical order.
TestPolynomial parse_polynomial(std::string_view text, std::string name = "custom");
TestPolynomial load_polynomial(const std::string& path);

/// Sorts roots by ascending argument in (-pi, pi], ties by ascending modulus.
void sort_roots(std::vector<RootSpec>& roots);

/// (p(z), p'(z)) by Horner in one pass over coefficients realized in T.
template <class T>
std::pair<T, T> horner(const std::vector<T>& coeffs, const T& z) {
  T p = coeffs.front();
  T dp = z - z;
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    dp = dp * z + p;
    p = p * z + coeffs[k];
  }
  return {p, dp};
}

/// A polynomial bound to one scalar context; satisfies ProblemFor.
template <class T>
class PolyProblem {
 public:
  PolyProblem(const TestPolynomial& poly, const T& like) {
    coeffs_.reserve(poly.coeffs.size());
    for (const auto& q : poly.coeffs) coeffs_.push_back(Scalar<T>::constant(q, like));
  }

  T value(const T& z) const {
    T p = coeffs_.front();
    for (std::size_t k = 1; k < coeffs_.size(); ++k) p = p * z + coeffs_[k];
    return p;
  }
  std::pair<T, T> value_and_derivative(const T& z) const { return horner(coeffs_, z); }

 private:
  std::vector<T> coeffs_;
};

template <class T>
std::pair<T, T> poly_eval(const TestPolynomial& p, const T& z) {
  return PolyProblem<T>(p, z).value_and_derivative(z);
}

}  // namespace rootlab
