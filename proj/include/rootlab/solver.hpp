#pragma once

// Iteration driver: traces, error columns, COC/ACOC and efficiency indices.

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/methods.hpp"
#include "rootlab/mpnum.hpp"
#include "rootlab/problems.hpp"

namespace rootlab {

/// Modulus type of a scalar: BigReal for big floats, double for hardware complex.
template <class T>
using MagnitudeOf = decltype(abs(std::declval<const T&>()));

struct StopRule {
  int max_iters = 10;
  std::optional<double> residual_tol;  // stop once |f(x_n)| <= tol
  std::optional<double> step_tol;      // stop once |x_n - x_{n-1}| <= tol
};

template <class T>
struct IterationTrace {
  using Mag = MagnitudeOf<T>;

  MethodSpec method;
  std::vector<T> iterates;                  // x_0 .. x_n
  std::vector<Mag> residuals;               // |f(x_k)|
  std::optional<std::vector<Mag>> errors;   // |x_k - x*| when a root is known
  EvalCount evals{0, 0};

  int steps() const { return static_cast<int>(iterates.size()) - 1; }

  /// The trace restricted to x_0 .. x_n.
  IterationTrace prefix(int n) const {
    IterationTrace out = *this;
    const auto keep = static_cast<std::size_t>(n) + 1;
    if (keep < iterates.size()) {
      out.iterates.resize(keep);
      out.residuals.resize(keep);
      if (out.errors) out.errors->resize(keep);
    }
    return out;
  }
};

/// A step broke down; carries every completed iterate.
template <class T>
class SolveBreakdown : public StepBreakdown {
 public:
  SolveBreakdown(const StepBreakdown& cause, IterationTrace<T> trace)
      : StepBreakdown(cause.substep(), std::string(cause.what()) + " after " +
                                           std::to_string(trace.steps()) + " steps"),
        trace_(std::move(trace)) {}

  const IterationTrace<T>& trace() const noexcept { return trace_; }

 private:
  IterationTrace<T> trace_;
};

namespace detail {

inline bool at_most(const BigReal& x, double tol) { return x.to_double() <= tol; }
inline bool at_most(double x, double tol) { return x <= tol; }
inline bool is_zero(const BigReal& x) { return x.is_zero(); }
inline bool is_zero(double x) { return x == 0.0; }

}  // namespace detail

/// Iterates `method` from x0 until `stop` fires or f(x_n) is exactly zero.
template <class T, class P>
  requires ProblemFor<P, T>
IterationTrace<T> solve(const MethodSpec& method, const P& f, const T& x0, const StopRule& stop,
                        const std::optional<T>& root = std::nullopt) {
  if (stop.max_iters < 0) throw DomainError("max_iters must be non-negative");
  IterationTrace<T> trace;
  trace.method = method;
  if (root) trace.errors.emplace();
  auto record = [&](const T& x) {
    trace.iterates.push_back(x);
    trace.residuals.push_back(abs(f.value(x)));
    if (root) trace.errors->push_back(abs(x - *root));
  };
  record(x0);
  const Stepper<T> stepper(method, x0);
  for (int n = 0; n < stop.max_iters; ++n) {
    if (detail::is_zero(trace.residuals.back())) break;
    StepResult<T> r{x0, {0, 0}};
    try {
      r = stepper(f, trace.iterates.back());
    } catch (const StepBreakdown& e) {
      throw SolveBreakdown<T>(e, std::move(trace));
    }
    trace.evals.f += r.evals.f;
    trace.evals.df += r.evals.df;
    const T prev = trace.iterates.back();
    record(r.next);
    if (stop.residual_tol && detail::at_most(trace.residuals.back(), *stop.residual_tol)) break;
    if (stop.step_tol && detail::at_most(abs(r.next - prev), *stop.step_tol)) break;
  }
  return trace;
}

namespace detail {

template <class M>
M log_ratio(const M& num, const M& den) {
  using std::log;
  if (is_zero(num) || is_zero(den)) throw DegenerateTrace("zero term in order estimate");
  return log(num / den);
}

}  // namespace detail

/// ln(e_{n+1}/e_n) / ln(e_n/e_{n-1}) over the last three errors of the trace.
template <class T>
MagnitudeOf<T> coc(const IterationTrace<T>& trace) {
  if (!trace.errors) throw DegenerateTrace("COC needs a known root");
  const auto& e = *trace.errors;
  if (e.size() < 4) throw DegenerateTrace("COC needs three iterates beyond x0");
  const std::size_t n = e.size() - 2;
  return detail::log_ratio(e[n + 1], e[n]) / detail::log_ratio(e[n], e[n - 1]);
}

/// The same quotient over successive step sizes, using the last four iterates.
template <class T>
MagnitudeOf<T> acoc(const IterationTrace<T>& trace) {
  const auto& x = trace.iterates;
  if (x.size() < 4) throw DegenerateTrace("ACOC needs four iterates");
  const std::size_t n = x.size() - 2;
  const auto d2 = abs(x[n + 1] - x[n]);
  const auto d1 = abs(x[n] - x[n - 1]);
  const auto d0 = abs(x[n - 1] - x[n - 2]);
  return detail::log_ratio(d2, d1) / detail::log_ratio(d1, d0);
}

/// p^(1/k).
double efficiency_index(int evals_per_step, int order);

/// Mantissa digits (truncated) and exponent of a value printed as 0.ddd e-k.
struct TableNumber {
  std::string mantissa;  // significant digits, no point
  long exponent = 0;     // value = 0.mantissa * 10^exponent
  bool zero = false;

  static TableNumber of(const BigReal& x, int sig = 3);
  std::string str() const;  // "0.140e-3"
};

/// One (method, function) cell of the error table.
struct TableCell {
  MethodSpec method;
  std::string function;
  std::vector<BigReal> errors;  // |x_1 - x*| .. |x_n - x*|
  std::optional<BigReal> coc;
  std::optional<BigReal> acoc;
  std::optional<std::string> failure;

  /// method,function,e1_mant,e1_exp,...,coc,acoc
  std::string record() const;
  static std::string record_header(int iterations);
};

struct TableOptions {
  int digits = kDefaultDigits;
  int iterations = 3;  // printed error rows; COC uses errors 1..iterations
  unsigned threads = 1;
};

/// Runs one cell: `iterations` printed errors, COC from the last three of them,
/// ACOC from x_1 .. x_{iterations+1} (one extra step, so x_0 never enters).
TableCell table_cell(const MethodSpec& method, const TestFunction& f, const TableOptions& opt);

/// Every (method, function) pair in row-major function order.
std::vector<TableCell> error_table(const std::vector<MethodSpec>& methods,
                                   const std::vector<TestFunction>& functions, const TableOptions& opt);

/// Text block: one section per function, one column per method.
std::string format_error_table(const std::vector<TableCell>& cells, const std::vector<MethodSpec>& methods,
                               const std::vector<TestFunction>& functions, int iterations);

}  // namespace rootlab
