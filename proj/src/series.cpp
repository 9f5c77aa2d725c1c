#include "rootlab/series.hpp"

#include <random>
#include <sstream>

namespace rootlab {

GaussRational FunctionModel::coeff(int k) const {
  if (k == 1) return GaussRational(1);
  const auto idx = static_cast<std::size_t>(k - 2);
  if (k < 1 || idx >= c.size()) return GaussRational(0);
  return c[idx];
}

std::string FunctionModel::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i != 0) os << ", ";
    os << "c" << i + 2 << "=" << c[i].str();
  }
  return os.str();
}

namespace {

void require_no_constant_term(const Series& inner) {
  if (inner.valuation() < 1) {
    throw ValuationError("composition needs an inner series without constant term");
  }
}

int model_degree(const FunctionModel& m) { return static_cast<int>(m.c.size()) + 1; }

}  // namespace

Series ts_compose(const FunctionModel& outer, const Series& inner) {
  require_no_constant_term(inner);
  const int n = inner.order();
  const int deg = model_degree(outer);
  Series acc = Series::constant(outer.coeff(deg), n);
  for (int k = deg - 1; k >= 1; --k) {
    acc = acc * inner + Series::constant(outer.coeff(k), n);
  }
  return acc * inner;
}

Series ts_compose_derivative(const FunctionModel& outer, const Series& inner) {
  require_no_constant_term(inner);
  const int n = inner.order();
  const int deg = model_degree(outer);
  Series acc = Series::constant(outer.coeff(deg) * GaussRational(deg), n);
  for (int k = deg - 1; k >= 1; --k) {
    acc = acc * inner + Series::constant(outer.coeff(k) * GaussRational(k), n);
  }
  return acc;
}

Series expand_method(const MethodSpec& method, const FunctionModel& model, int order) {
  const SeriesProblem problem{model};
  const Series x = Series::variable(order);
  return Stepper<Series>(method, x)(problem, x).next;
}

Series expand_kt4_substep(const FunctionModel& model, int order) {
  return expand_method(MethodSpec::kt4(), model, order);
}

FunctionModel random_model(std::uint64_t seed, int last) {
  std::mt19937_64 rng(seed);
  // Modulo reduction keeps draws identical across standard libraries.
  auto draw = [&rng] {
    long p = 0;
    while (p == 0) p = static_cast<long>(rng() % 19) - 9;
    const long q = static_cast<long>(rng() % 9) + 1;
    Rational r(p, q);
    r.canonicalize();
    return GaussRational(r);
  };
  for (;;) {
    FunctionModel m;
    for (int k = 2; k <= last; ++k) m.c.push_back(draw());
    const GaussRational c2 = m.coeff(2);
    const GaussRational c3 = m.coeff(3);
    const GaussRational sq = c2 * c2;
    if (!(GaussRational(2) * sq - c3).is_zero() && !(sq - c3).is_zero()) return m;
  }
}

OrderViolation::OrderViolation(int k, FunctionModel model, GaussRational coefficient, std::string what)
    : Error(what + " (k=" + std::to_string(k) + ", coefficient " + coefficient.str() + ", model " +
            model.str() + ")"),
      k_(k),
      model_(std::move(model)),
      coefficient_(std::move(coefficient)) {}

std::string OrderReport::text() const {
  std::ostringstream os;
  os << "method:            " << method.describe() << "\n"
     << "expected order:    " << expected << "\n"
     << "vanished through:  R_" << vanished_through << "\n"
     << "leading R_" << vanished_through + 1 << ":      " << leading_coeff.str() << "\n"
     << "witness model:     " << witness.str() << "\n"
     << "trials:            " << trials << " (seed " << seed << ", working order " << working_order << ")\n"
     << "certified:         " << (certified() ? "yes" : "no") << "\n";
  return os.str();
}

std::string OrderReport::record_header() {
  return "method,expected,vanished_through,leading_coeff,trials,seeds";
}

std::string OrderReport::record() const {
  std::ostringstream os;
  os << method.name() << "," << expected << "," << vanished_through << "," << leading_coeff.str() << ","
     << trials << ",";
  for (std::size_t i = 0; i < trial_seeds.size(); ++i) {
    if (i != 0) os << ";";
    os << trial_seeds[i];
  }
  return os.str();
}

OrderReport verify_order(const MethodSpec& method, int expected, int trials, std::uint64_t seed) {
  if (trials < 1) throw DomainError("verify_order needs at least one trial");
  if (expected < 1) throw DomainError("expected order must be positive");
  constexpr int kMaxOrder = 32;

  OrderReport report;
  report.method = method;
  report.expected = expected;
  report.trials = trials;
  report.seed = seed;
  int order = expected + 1;

  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = seed + static_cast<std::uint64_t>(trial);
    FunctionModel model = random_model(trial_seed);
    Series err = expand_method(method, model, order);
    // Quotients by small-valuation series can eat into the working order.
    while (err.accurate_order() < expected) {
      order += 2;
      if (order > kMaxOrder) throw Error("series working order exhausted for " + method.describe());
      err = expand_method(method, model, order);
    }
    const int v = err.valuation();
    if (v < expected) {
      throw OrderViolation(v, std::move(model), err[v],
                           method.describe() + ": R_" + std::to_string(v) + " is nonzero below order " +
                               std::to_string(expected));
    }
    if (v > expected) {
      throw OrderViolation(expected, std::move(model), GaussRational(0),
                           method.describe() + ": R_" + std::to_string(expected) + " vanishes");
    }
    report.trial_seeds.push_back(trial_seed);
    if (trial == 0) {
      report.vanished_through = v - 1;
      report.leading_coeff = err[v];
      report.witness = model;
    }
  }
  report.working_order = order;
  return report;
}

WeightConditions WeightConditions::required() { return {1, 2, 8, 2, 36, 1, 1}; }

std::string WeightConditions::str() const {
  std::ostringstream os;
  os << "J00=" << J00 << " J10=" << J10 << " J20=" << J20 << " J01=" << J01 << " J30=" << J30
     << " G0=" << G0 << " G1=" << G1;
  return os.str();
}

WeightConditions check_weight_conditions(const GaussRational& a, const GaussRational& b,
                                         const GaussRational& c) {
  constexpr int kOrder = 3;
  const Series var = Series::variable(kOrder);
  const Series zero(kOrder);
  const Series sa = Series::constant(a, kOrder);
  const Series sb = Series::constant(b, kOrder);
  const Series sc = Series::constant(c, kOrder);

  const Series j_t = weight_J(var, zero, sa, sb);  // J(t, 0)
  const Series j_u = weight_J(zero, var, sa, sb);  // J(0, u)
  const Series g = weight_G(var, sc);

  WeightConditions w;
  w.J00 = j_t[0];
  w.J10 = j_t[1];
  w.J20 = j_t[2] * GaussRational(2);
  w.J30 = j_t[3] * GaussRational(6);
  w.J01 = j_u[1];
  w.G0 = g[0];
  w.G1 = g[1];
  return w;
}

Series expand_weighted_scheme(const WeightTaylor& w, const FunctionModel& model, int order) {
  const SeriesProblem problem{model};
  const Series x = Series::variable(order);
  const Stepper<Series> stepper(MethodSpec::m1(), x);
  auto k = [order](const GaussRational& q) { return Series::constant(q, order); };
  const GaussRational half(Rational(1, 2));
  const GaussRational sixth(Rational(1, 6));
  auto weight = [&](const Series& t, const Series& u, const Series& s) {
    const Series t2 = t * t;
    const Series J = k(w.J00) + k(w.J10) * t + k(w.J20 * half) * t2 + k(w.J30 * sixth) * t2 * t + k(w.J01) * u;
    const Series G = k(w.G0) + k(w.G1) * s;
    return J * G;
  };
  return stepper.weighted_three_point(problem, x, weight).next;
}

}  // namespace rootlab
