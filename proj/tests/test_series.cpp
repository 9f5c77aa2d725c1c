#include <chrono>

#include "doctest.h"
#include "rootlab/series.hpp"

using namespace rootlab;

namespace {

Series poly(std::vector<GaussRational> c, int order = 6) {
  c.resize(static_cast<std::size_t>(order) + 1);
  return Series(std::move(c), order);
}

GaussRational q(long p, long d = 1) { return GaussRational(Rational(p, d)); }

FunctionModel model(long c2, long c3, long c4 = 1, long c5 = 1, long c6 = 1, long c7 = 1, long c8 = 1) {
  FunctionModel m;
  for (long v : {c2, c3, c4, c5, c6, c7, c8}) m.c.push_back(q(v));
  return m;
}

}  // namespace

TEST_CASE("series products and differences") {
  CHECK(poly({1, 1}) * poly({1, -1}) == poly({1, 0, -1}));
  CHECK(poly({0, 1, 1}) * poly({0, 1, 1}) == poly({0, 0, 1, 2, 1}));
  CHECK(poly({1, 2, 3}) - poly({1, 2}) == poly({0, 0, 3}));
}

TEST_CASE("series quotients") {
  const Series geo = poly({1}) / poly({1, -1});
  for (int k = 0; k <= 6; ++k) CHECK(geo[k] == q(1));
  CHECK(geo.accurate_order() == 6);
  const Series shifted = poly({0, 0, 1, 1}) / poly({0, 1});
  CHECK(shifted[1] == q(1));
  CHECK(shifted[2] == q(1));
  CHECK(shifted[0].is_zero());
  CHECK(shifted.accurate_order() == 5);
  CHECK_THROWS_AS(poly({1}) / poly({0}), DomainError);
  CHECK_THROWS_AS(poly({0, 1}) / poly({0, 0, 1}), ValuationError);
}

TEST_CASE("valuation-aware accuracy") {
  const Series e = Series::variable(6);
  const Series e2 = e * e;
  CHECK(e2.accurate_order() == 6);
  // (e^3 + e^4) / e^2 keeps only terms through 6 - 2.
  const Series r = (e2 * e + e2 * e2) / e2;
  CHECK(r.accurate_order() == 4);
  CHECK(r[1] == q(1));
  CHECK(r[2] == q(1));
}

TEST_CASE("ring laws on random series") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const FunctionModel m1 = random_model(s, 7), m2 = random_model(s + 100, 7), m3 = random_model(s + 200, 7);
    auto as_series = [](const FunctionModel& m) {
      std::vector<GaussRational> c{m.coeff(2)};
      for (int k = 3; k <= 8; ++k) c.push_back(m.coeff(k));
      return Series(c, 6);
    };
    const Series a = as_series(m1), b = as_series(m2), c = as_series(m3);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) / b == a);
  }
}

TEST_CASE("f/f' through e^3") {
  FunctionModel m = model(3, 5);
  const Series e = Series::variable(6);
  SeriesProblem p{m};
  const auto [f, df] = p.value_and_derivative(e);
  const Series r = f / df;
  CHECK(r[1] == q(1));
  CHECK(r[2] == q(-3));
  CHECK(r[3] == q(2 * 9 - 2 * 5));
}

TEST_CASE("composition") {
  const FunctionModel m = model(2, -3, 5);
  const Series e = Series::variable(5);
  const Series id = ts_compose(m, e);
  CHECK(id[1] == q(1));
  CHECK(id[2] == q(2));
  CHECK(id[3] == q(-3));
  CHECK(id[4] == q(5));

  FunctionModel linear;
  const Series inner = poly({0, 0, 7}, 5);
  CHECK(ts_compose(linear, inner) == inner);
  CHECK_THROWS_AS(ts_compose(m, poly({1, 1}, 5)), ValuationError);
}

TEST_CASE("newton and kt4 error series") {
  const FunctionModel m = random_model(3);
  const Series en = expand_method(MethodSpec::newton(), m);
  CHECK(en.valuation() == 2);
  CHECK(en[2] == m.coeff(2));

  const Series ez = expand_method(MethodSpec::kt4(), m);
  const auto c2 = m.coeff(2), c3 = m.coeff(3);
  CHECK(ez.valuation() == 4);
  CHECK(ez[4] == GaussRational(2) * c2 * c2 * c2 - c2 * c3);
}

TEST_CASE("kt4 sub-step e^5 and e^6 coefficients") {
  // Frozen from tests/oracle/series_oracle.py (ez, order 9).
  for (std::uint64_t s = 0; s < 10; ++s) {
    const FunctionModel m = random_model(s);
    const auto c2 = m.coeff(2), c3 = m.coeff(3), c4 = m.coeff(4), c5 = m.coeff(5);
    const Series ez = expand_kt4_substep(m);
    const GaussRational e5 = GaussRational(-10) * c2 * c2 * c2 * c2 + GaussRational(14) * c2 * c2 * c3 -
                             GaussRational(2) * c2 * c4 - GaussRational(2) * c3 * c3;
    const GaussRational e6 = GaussRational(31) * c2 * c2 * c2 * c2 * c2 - GaussRational(72) * c2 * c2 * c2 * c3 +
                             GaussRational(21) * c2 * c2 * c4 + GaussRational(30) * c2 * c3 * c3 -
                             GaussRational(3) * c2 * c5 - GaussRational(7) * c3 * c4;
    CHECK(ez[5] == e5);
    CHECK(ez[6] == e6);
  }
}

TEST_CASE("family R8 as a function of (a, b, c)") {
  // Frozen from tests/oracle/series_oracle.py (family, order 9).
  const GaussRational a(Rational(1, 3)), b(Rational(-2)), c(Rational(3, 4));
  for (std::uint64_t s = 0; s < 5; ++s) {
    const FunctionModel m = random_model(s);
    const auto c2 = m.coeff(2), c3 = m.coeff(3), c4 = m.coeff(4);
    const Series r = expand_method(MethodSpec::family(a, b, c), m);
    CHECK(r.valuation() == 8);
    const GaussRational inner = (GaussRational(10) * a + GaussRational(4) * b + GaussRational(4) * c + 3) * c2 * c2 *
                                    c2 * c2 -
                                (GaussRational(2) * a + GaussRational(2) * b + GaussRational(4) * c + 4) * c2 * c2 * c3 +
                                c2 * c4 + c * c3 * c3;
    CHECK(r[8] == c2 * (GaussRational(2) * c2 * c2 - c3) * inner);
  }
}

TEST_CASE("verify_order on the catalog") {
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& m : catalog()) {
    CAPTURE(m.describe());
    const OrderReport r = verify_order(m, m.expected_order(), 20, 7);
    CHECK(r.certified());
    CHECK(r.vanished_through == m.expected_order() - 1);
    CHECK_FALSE(r.leading_coeff.is_zero());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
}

TEST_CASE("verify_order rejects a wrong assertion") {
  CHECK_THROWS_AS(verify_order(MethodSpec::kt4(), 8, 3, 1), OrderViolation);
  CHECK_THROWS_AS(verify_order(MethodSpec::m1(), 4, 3, 1), OrderViolation);
  try {
    verify_order(MethodSpec::kt4(), 8, 3, 1);
  } catch (const OrderViolation& v) {
    CHECK(v.k() == 4);
    CHECK_FALSE(v.coefficient().is_zero());
  }
}

TEST_CASE("random models are reproducible and non-degenerate") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const FunctionModel m = random_model(s);
    CHECK(m.c.size() == 7);
    for (const auto& c : m.c) {
      CHECK_FALSE(c.is_zero());
      CHECK(abs(c.real().get_num()) <= 9);
      CHECK(c.real().get_den() <= 9);
    }
    const auto c2 = m.coeff(2), c3 = m.coeff(3);
    CHECK_FALSE((GaussRational(2) * c2 * c2 - c3).is_zero());
    CHECK_FALSE((c2 * c2 - c3).is_zero());
    CHECK(random_model(s).c == m.c);
  }
}

TEST_CASE("weight conditions") {
  const auto required = WeightConditions::required();
  CHECK(check_weight_conditions(q(1, 2), q(1, 2), q(1, 2)) == required);
  CHECK(check_weight_conditions(GaussRational(Rational(1, 2), Rational(1, 2)), GaussRational(1, 1),
                                GaussRational(Rational(-1, 2), Rational(1, 2))) == required);
  CHECK(check_weight_conditions(q(-1), q(-1), q(-1)) == required);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const FunctionModel m = random_model(s, 4);
    CHECK(check_weight_conditions(m.coeff(2), m.coeff(3), m.coeff(4)) == required);
  }
}

TEST_CASE("violating one weight condition raises the predicted coefficient") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const FunctionModel m = random_model(s);
    const auto c2 = m.coeff(2), c3 = m.coeff(3);
    CHECK(expand_weighted_scheme(WeightTaylor{}, m).valuation() == 8);

    WeightTaylor j10;
    j10.J10 = 3;
    const Series r5 = expand_weighted_scheme(j10, m);
    CHECK(r5.valuation() == 5);
    CHECK(r5[5] == -c2 * c2 * (GaussRational(2) * c2 * c2 - c3));

    const GaussRational k = GaussRational(2) * c2 * c2 - c3;
    WeightTaylor j00;
    j00.J00 = 2;
    const Series r4 = expand_weighted_scheme(j00, m);
    CHECK(r4.valuation() == 4);
    CHECK(r4[4] == -(c2 * k));

    WeightTaylor g1;
    g1.G1 = 2;
    const Series r6 = expand_weighted_scheme(g1, m);
    CHECK(r6.valuation() == 6);
    CHECK(r6[6] == GaussRational(Rational(-1, 2)) * c2 * k * (GaussRational(-2) * c3 + GaussRational(4) * c2 * c2));

    WeightTaylor j30;
    j30.J30 = 0;
    const Series r7 = expand_weighted_scheme(j30, m);
    CHECK(r7.valuation() == 7);
    CHECK(r7[7] == GaussRational(6) * c2 * c2 * c2 * c2 * k);
  }
}
