#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "rootlab/basins.hpp"

using namespace rootlab;

namespace {

BasinField uniform_field(int w, int h, int root, int iters, int roots = 1) {
  BasinField f;
  f.grid = GridSpec{-1, 1, -1, 1, w, h};
  f.method = MethodSpec::m1();
  f.poly = test_polynomial("p1");
  f.poly.roots.resize(static_cast<std::size_t>(roots), f.poly.roots.front());
  f.cells.assign(f.grid.size(), BasinCell{root, iters});
  return f;
}

}  // namespace

TEST_CASE("grid parsing and pixel centers") {
  const GridSpec g = GridSpec::parse("-3:3:-3:3:512:512");
  CHECK(g.width == 512);
  CHECK(g.center(0, 0) == HwComplex(-3 + 0.5 * 6.0 / 512, 3 - 0.5 * 6.0 / 512));
  CHECK(g.center(511, 511) == HwComplex(-3 + 511.5 * 6.0 / 512, 3 - 511.5 * 6.0 / 512));
  CHECK_THROWS_AS(GridSpec::parse("1:2:3"), UsageError);
  CHECK_THROWS_AS(GridSpec::parse("1:0:0:1:4:4"), UsageError);
  CHECK_THROWS_AS(GridSpec::parse("0:1:0:1:0:4"), UsageError);
}

TEST_CASE("linear polynomial converges everywhere") {
  TestPolynomial p = parse_polynomial("1\n0\nroots\n0\n", "z");
  BasinOptions opt;
  for (const char* id : {"newton", "kt4", "kt8naive", "m1", "m2", "m3", "m4", "m5"}) {
    CAPTURE(id);
    const auto field = render(parse_method(id), p, GridSpec::parse("-3:3:-3:3:32:32"), opt);
    const auto s = stats(field);
    CHECK(s.nonconvergent == 0);
    for (const auto& c : field.cells) CHECK(c.root == 0);
  }
}

TEST_CASE("bcst on a linear polynomial escapes from large seeds") {
  // The first sub-step is y = z - z(1 + z^5) = -z^6 for f(z) = z.
  TestPolynomial p = parse_polynomial("1\n0\nroots\n0\n", "z");
  const auto field = render(MethodSpec::bcst(), p, GridSpec::parse("-3:3:-3:3:32:32"));
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 32; ++i) {
      const double r = std::abs(field.grid.center(i, j));
      if (r < 0.8) CHECK(field.at(i, j).root == 0);
      if (r > 1.5) CHECK(field.at(i, j).root == kNoRoot);
    }
  }
}

TEST_CASE("capture before the first step") {
  const auto p1 = test_polynomial("p1");
  const Stepper<HwComplex> st(MethodSpec::m1(), HwComplex{});
  const PolyProblem<HwComplex> f(p1, HwComplex{});
  const auto out = classify_seed(st, f, p1.roots_hw(), HwComplex(1.0005, 0), BasinOptions{});
  CHECK(out.cell.root == 0);
  CHECK(out.cell.iters == 0);
}

TEST_CASE("nonconvergent counting conventions") {
  const auto p1 = test_polynomial("p1");
  const Stepper<HwComplex> st(MethodSpec::newton(), HwComplex{});
  const PolyProblem<HwComplex> f(p1, HwComplex{});
  // z = 0 has f'(0) = 0: breakdown on the first step.
  BasinOptions opt;
  auto out = classify_seed(st, f, p1.roots_hw(), HwComplex(0, 0), opt);
  CHECK(out.cell.root == kNoRoot);
  CHECK(out.cell.iters == 15);
  CHECK(out.steps == 0);
  opt.count = NonconvergentCount::performed;
  out = classify_seed(st, f, p1.roots_hw(), HwComplex(0, 0), opt);
  CHECK(out.cell.iters == 0);
  // Newton on the imaginary axis never leaves it.
  opt.count = NonconvergentCount::max_iters;
  out = classify_seed(st, f, p1.roots_hw(), HwComplex(0, 0.7), opt);
  CHECK(out.cell.root == kNoRoot);
  CHECK(out.steps == 15);
  // Escape guard.
  out = classify_seed(st, f, p1.roots_hw(), HwComplex(1e9, 0), opt);
  CHECK(out.steps == 0);
  CHECK(out.cell.root == kNoRoot);
}

TEST_CASE("statistics") {
  const auto all3 = stats(uniform_field(4, 4, 0, 3));
  CHECK(all3.ipp() == 3.0);
  CHECK(*all3.icc() == 3.0);
  CHECK(all3.nc_pct() == 0.0);
  CHECK(all3.decomposition_holds());

  const auto none = stats(uniform_field(4, 4, kNoRoot, 15));
  CHECK(none.nc_pct() == 100.0);
  CHECK_FALSE(none.icc().has_value());
  CHECK(none.decomposition_holds());

  BasinField mixed = uniform_field(3, 1, 0, 2);
  mixed.cells[2] = BasinCell{kNoRoot, 15};
  const auto s = stats(mixed);
  CHECK(s.ipp_exact() == Rational(19, 3));
  CHECK(*s.icc_exact() == Rational(2));
  CHECK(s.nc_fraction_exact() == Rational(1, 3));
  CHECK(s.decomposition_holds());
  CHECK(BasinStats::csv_header() == "method,poly,width,height,ipp,nc_pct,icc");
  CHECK(s.csv_record(mixed) == "m1,p1,3,1,6.333333,33.333333,2.000000");
  CHECK(none.csv_record(uniform_field(4, 4, kNoRoot, 15)).substr(0, 31) == "m1,p1,4,4,15.000000,100.000000,");
}

TEST_CASE("images") {
  const auto bright = ppm_bytes(uniform_field(2, 2, 0, 0));
  const std::string header = "P6\n2 2\n255\n";
  REQUIRE(bright.substr(0, header.size()) == header);
  for (std::size_t k = header.size(); k < bright.size(); k += 3) {
    CHECK(static_cast<unsigned char>(bright[k]) == 255);
    CHECK(static_cast<unsigned char>(bright[k + 1]) == 0);
    CHECK(static_cast<unsigned char>(bright[k + 2]) == 0);
  }
  const auto black = ppm_bytes(uniform_field(2, 2, kNoRoot, 15));
  for (std::size_t k = header.size(); k < black.size(); ++k) CHECK(black[k] == 0);
  CHECK(hsv_to_rgb(0.5, 1.0) == std::array<std::uint8_t, 3>{0, 255, 255});
  CHECK(hsv_to_rgb(1.0 / 3, 0.5) == std::array<std::uint8_t, 3>{0, 128, 0});
}

TEST_CASE("m1 on p1 shows two hue families") {
  const auto field = render(MethodSpec::m1(), test_polynomial("p1"), GridSpec::parse("-3:3:-3:3:64:64"));
  int left = 0, right = 0;
  for (const auto& c : field.cells) {
    left += c.root == 1;
    right += c.root == 0;
  }
  CHECK(left > 1500);
  CHECK(right > 1500);
  CHECK(field.at(10, 32).root == 1);
  CHECK(field.at(54, 32).root == 0);
}

TEST_CASE("determinism across thread counts") {
  BasinOptions one, four;
  four.threads = 4;
  const auto grid = GridSpec::parse("-2:2:-2:2:96:80");
  for (const char* id : {"m2", "m6"}) {
    const auto a = render(parse_method(id), test_polynomial("p4"), grid, one);
    const auto b = render(parse_method(id), test_polynomial("p4"), grid, four);
    CHECK(a.cells == b.cells);
    CHECK(ppm_bytes(a) == ppm_bytes(b));
    CHECK(stats(a).csv_record(a) == stats(b).csv_record(b));
  }
}

TEST_CASE("tolerance monotonicity") {
  const auto grid = GridSpec::parse("-3:3:-3:3:64:64");
  for (const char* poly : {"p1", "p4", "p5"}) {
    BasinOptions loose, tight;
    tight.capture_tol = 1e-4;
    loose.count = tight.count = NonconvergentCount::performed;
    const auto a = render(MethodSpec::m1(), test_polynomial(poly), grid, loose);
    const auto b = render(MethodSpec::m1(), test_polynomial(poly), grid, tight);
    for (std::size_t k = 0; k < a.cells.size(); ++k) {
      if (!a.cells[k].converged()) CHECK_FALSE(b.cells[k].converged());
    }
  }
}

TEST_CASE("hardware classification agrees with 64-digit classification") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const BasinOptions opt;
  for (const char* id : {"m1", "m6"}) {
    for (const char* poly : {"p1", "p4"}) {
      const auto p = test_polynomial(poly);
      const auto m = parse_method(id);
      const Stepper<HwComplex> st(m, HwComplex{});
      const PolyProblem<HwComplex> f(p, HwComplex{});
      const auto roots = p.roots_hw();
      int disagreements = 0, excused = 0;
      for (int k = 0; k < 1000; ++k) {
        const HwComplex z(u(rng), u(rng));
        const auto hw = classify_seed(st, f, roots, z, opt);
        const auto big = classify_big(m, p, z, 64, opt);
        if (hw.cell == big.cell) continue;
        // Terminal distance within 10 machine epsilons of the tolerance.
        const bool borderline = std::abs(hw.distance - opt.capture_tol) <= 10 * 2.220446049250313e-16 * 3.0;
        (borderline ? excused : disagreements) += 1;
      }
      CAPTURE(id);
      CAPTURE(poly);
      CHECK(disagreements == 0);
    }
  }
}

TEST_CASE("oracle subgrid for m1 on p2") {
  std::ifstream in(std::string(ROOTLAB_TEST_DATA) + "/basin_m1_p2_64.txt");
  REQUIRE(in.good());
  const auto field = render(MethodSpec::m1(), test_polynomial("p2"), GridSpec{});
  std::string line;
  int j = 0, mismatches = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string tok;
    int i = 0;
    while (row >> tok) {
      const auto colon = tok.find(':');
      const BasinCell expect{std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1))};
      mismatches += !(field.at(4 + 8 * i, 4 + 8 * j) == expect);
      ++i;
    }
    CHECK(i == 64);
    ++j;
  }
  CHECK(j == 64);
  CHECK(mismatches == 0);
}

TEST_CASE("sweep") {
  const auto grid = GridSpec::parse("-3:3:-3:3:48:48");
  const auto p6 = test_polynomial("p6");
  CHECK(sweep({}, p6, grid).empty());
  const GaussRational h(Rational(1, 2));
  const auto one = sweep({{h, h, h}}, p6, grid);
  REQUIRE(one.size() == 1);
  CHECK(one[0].field.cells == render(MethodSpec::m1(), p6, grid).cells);
  const auto fig = sweep({{-1, -1, -1}, {-1, -1, GaussRational(-1, 1)}, {GaussRational(Rational(-1, 2)), -1, GaussRational(-2, 1)}},
                         p6, grid);
  REQUIRE(fig.size() == 3);
  CHECK(fig[0].stats.csv_record(fig[0].field) != fig[1].stats.csv_record(fig[1].field));
  CHECK(fig[1].stats.csv_record(fig[1].field) != fig[2].stats.csv_record(fig[2].field));
  for (const auto& e : fig) CHECK(e.stats.decomposition_holds());
}
