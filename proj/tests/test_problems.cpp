#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rootlab/problems.hpp"
#include "rootlab/solver.hpp"

using namespace rootlab;

namespace {

BigReal tiny(const char* text, int digits) { return BigReal::parse(text, digits); }

}  // namespace

TEST_CASE("test function values at the roots") {
  const TestFunction f1 = test_function("f1");
  const auto [v1, d1] = f1.value_and_derivative(BigReal(60));
  CHECK(v1.is_zero());
  CHECK(d1 == BigReal::from_int(1, 60));

  const TestFunction f4 = test_function("f4");
  CHECK(abs(f4.value(f4.root(200))) < tiny("1e-190", 200));

  const TestFunction f2 = test_function("f2");
  CHECK(abs(f2.value(BigReal::from_int(-1, 60))) < tiny("1e-58", 60));
}

TEST_CASE("root residuals and simple roots") {
  for (const auto& f : test_functions()) {
    CAPTURE(f.name);
    const BigReal r = f.root(300);
    const auto [v, d] = f.value_and_derivative(r);
    CHECK(abs(v) < tiny("1e-290", 300));
    CHECK(abs(d) > tiny("1e-3", 300));
  }
}

TEST_CASE("analytic derivatives agree with central differences") {
  const int digits = 120;
  const BigReal h = tiny("1e-30", digits);
  const BigReal two = BigReal::from_int(2, digits);
  for (const auto& f : test_functions()) {
    for (const char* at : {"-1.3", "-0.4", "0.35", "0.9", "1.5", "2.2"}) {
      CAPTURE(f.name);
      CAPTURE(at);
      const BigReal x = BigReal::parse(at, digits);
      const BigReal fd = (f.value(x + h) - f.value(x - h)) / (two * h);
      const BigReal d = f.value_and_derivative(x).second;
      CHECK(abs(fd - d) <= tiny("1e-50", digits) * (BigReal::from_int(1, digits) + abs(d)));
    }
  }
}

TEST_CASE("complex evaluation matches real evaluation on the real line") {
  for (const auto& f : test_functions()) {
    const BigReal x = BigReal::parse("0.7", 80);
    const BigComplex z(x);
    const auto [vr, dr] = f.value_and_derivative(x);
    const auto [vc, dc] = f.value_and_derivative(z);
    CHECK(abs(vc.real() - vr) < tiny("1e-75", 80));
    CHECK(abs(vc.imag()) < tiny("1e-75", 80));
    CHECK(abs(dc.real() - dr) < tiny("1e-75", 80));
  }
}

TEST_CASE("unknown ids are usage errors") {
  CHECK_THROWS_AS(test_function("f9"), UsageError);
  CHECK_THROWS_AS(test_polynomial("p0"), UsageError);
}

TEST_CASE("polynomial roots in canonical order") {
  const auto p1 = test_polynomial("p1").roots_hw();
  REQUIRE(p1.size() == 2);
  CHECK(p1[0] == HwComplex(1, 0));
  CHECK(p1[1] == HwComplex(-1, 0));

  const auto p2 = test_polynomial("p2").roots_hw();
  CHECK(p2 == std::vector<HwComplex>{{0, 0}, {1, 0}, {-1, 0}});

  const auto p4 = test_polynomial("p4").roots_hw();
  CHECK(p4 == std::vector<HwComplex>{{0, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}});

  for (const auto& p : test_polynomials()) {
    CAPTURE(p.name);
    const auto roots = p.roots_big(60);
    CHECK(static_cast<int>(roots.size()) == p.degree());
    for (std::size_t k = 1; k < roots.size(); ++k) {
      const BigReal a0 = arg(roots[k - 1]), a1 = arg(roots[k]);
      const bool ordered = a0 < a1 || (abs(a0 - a1) < tiny("1e-40", 60) && abs(roots[k - 1]) <= abs(roots[k]));
      CHECK(ordered);
    }
  }
}

TEST_CASE("p4 root set") {
  const auto roots = test_polynomial("p4").roots;
  std::vector<GaussRational> expect{{1}, {0, 1}, {-1}, {0, -1}, {-1, 1}, {1, -1}};
  for (const auto& e : expect) {
    bool found = false;
    for (const auto& r : roots) found = found || (r.kind == RootSpec::Kind::gauss && r.exact == e);
    CHECK(found);
  }
}

TEST_CASE("every listed root is a zero") {
  for (const auto& p : test_polynomials()) {
    CAPTURE(p.name);
    for (const auto& r : p.roots_big(80)) {
      const auto [v, d] = poly_eval(p, r);
      CHECK(abs(v) < tiny("1e-70", 80));
      CHECK(abs(d) > tiny("1e-10", 80));
    }
  }
  const auto [v, d] = poly_eval(test_polynomial("p3"), GaussRational(0, 1));
  CHECK(v.is_zero());
  CHECK_FALSE(d.is_zero());
}

TEST_CASE("root products re-expand to the coefficients") {
  for (const auto& p : test_polynomials()) {
    CAPTURE(p.name);
    const auto roots = p.roots_big(40);
    std::vector<BigComplex> prod{BigComplex::from_gauss(p.coeffs.front(), 40)};
    for (const auto& r : roots) {
      std::vector<BigComplex> next(prod.size() + 1, BigComplex(40));
      for (std::size_t k = 0; k < prod.size(); ++k) {
        next[k] += prod[k];
        next[k + 1] -= prod[k] * r;
      }
      prod = std::move(next);
    }
    for (std::size_t k = 0; k < prod.size(); ++k) {
      CHECK(abs(prod[k] - BigComplex::from_gauss(p.coeffs[k], 40)) < tiny("1e-30", 40));
    }
  }
}

TEST_CASE("polynomial evaluation examples") {
  auto check = [](const char* id, long z, long p, long dp) {
    const auto [v, d] = poly_eval(test_polynomial(id), GaussRational(z));
    CHECK(v == GaussRational(p));
    CHECK(d == GaussRational(dp));
  };
  check("p1", 0, -1, 0);
  check("p2", 2, 6, 11);
  check("p5", 1, 0, 7);
  const auto [v, d] = poly_eval(test_polynomial("p2"), HwComplex(2, 0));
  CHECK(v == HwComplex(6, 0));
  CHECK(d == HwComplex(11, 0));
}

TEST_CASE("custom polynomial files") {
  const auto p = parse_polynomial("# z^2 + 1\n1\n0\n1\nroots\ni\n-i   # conjugate\n", "circle");
  CHECK(p.degree() == 2);
  CHECK(p.name == "circle");
  CHECK(p.roots_hw() == std::vector<HwComplex>{{0, -1}, {0, 1}});
  CHECK_THROWS_AS(parse_polynomial("1\n0\n1\nroots\ni\n"), UsageError);
  CHECK_THROWS_AS(parse_polynomial("0\n1\nroots\n1\n"), UsageError);
  CHECK_THROWS_AS(parse_polynomial("5\nroots\n"), UsageError);
  CHECK_THROWS_AS(parse_polynomial("1\nx\nroots\n1\n"), UsageError);

  const auto path = std::filesystem::temp_directory_path() / "rootlab_cubic.poly";
  {
    std::ofstream out(path);
    out << "1\n0\n-1\n0\nroots\n-1\n0\n1\n";
  }
  const auto q = load_polynomial(path.string());
  CHECK(q.name == "rootlab_cubic");
  CHECK(q.roots_hw() == test_polynomial("p2").roots_hw());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_polynomial("/nonexistent/x.poly"), UsageError);
}

TEST_CASE("every function converges under every order-4+ method within 6 iterations") {
  for (const auto& f : test_functions()) {
    for (const auto& m : catalog()) {
      if (m.expected_order() < 4) continue;
      CAPTURE(f.name);
      CAPTURE(m.describe());
      StopRule stop;
      stop.max_iters = 6;
      stop.residual_tol = 1e-300;
      const BigComplex root(f.root(2048));
      const auto trace = solve(m, f, BigComplex(f.x0(2048)), stop, std::optional<BigComplex>(root));
      CHECK(trace.errors->back() < tiny("1e-100", 2048));
    }
  }
}
