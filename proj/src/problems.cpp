#include "rootlab/problems.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace rootlab {

namespace {

TestFunction make_function(FunctionId id, std::string name, std::string formula, std::string root,
                           std::string x0) {
  TestFunction f;
  f.id = id;
  f.name = std::move(name);
  f.formula = std::move(formula);
  f.root_text = std::move(root);
  f.x0_text = std::move(x0);
  return f;
}

// Reduces an angle (in units of pi) into (-1, 1].
Rational normalize_angle(Rational a) {
  while (a > 1) a -= 2;
  while (a <= -1) a += 2;
  a.canonicalize();
  return a;
}

std::string strip(std::string_view line) {
  const auto hash = line.find('#');
  if (hash != std::string_view::npos) line = line.substr(0, hash);
  const auto b = line.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = line.find_last_not_of(" \t\r");
  return std::string(line.substr(b, e - b + 1));
}

GaussRational gi(long re, long im = 0) { return {Rational(re), Rational(im)}; }

}  // namespace

BigReal TestFunction::root(int digits) const {
  if (id == FunctionId::f4) return sqrt(BigReal::from_int(2, digits));
  return BigReal::parse(root_text, digits);
}

BigReal TestFunction::x0(int digits) const { return BigReal::parse(x0_text, digits); }

TestFunction test_function(std::string_view id) {
  if (id == "f1") {
    return make_function(FunctionId::f1, "f1", "ln(1+x^2) + exp(x^2-3x) sin(x)", "0", "0.35");
  }
  if (id == "f2") {
    return make_function(FunctionId::f2, "f2", "1 + exp(2+x-x^2) + x^3 - cos(1+x)", "-1", "-0.3");
  }
  if (id == "f3") {
    return make_function(FunctionId::f3, "f3", "(1+x^2) cos(pi x/2) + ln(x^2+2x+2)/(1+x^2)", "-1", "-1.1");
  }
  if (id == "f4") {
    return make_function(FunctionId::f4, "f4", "x^4 + sin(pi/x^2) - 5", "sqrt(2)", "1.5");
  }
  throw UsageError("unknown test function '" + std::string(id) + "'");
}

std::vector<TestFunction> test_functions() {
  return {test_function("f1"), test_function("f2"), test_function("f3"), test_function("f4")};
}

RootSpec RootSpec::from_gauss(GaussRational q) {
  RootSpec r;
  r.kind = Kind::gauss;
  r.exact = std::move(q);
  return r;
}

RootSpec RootSpec::from_polar(Rational base, unsigned n, Rational angle) {
  if (base <= 0 || n == 0) throw DomainError("polar root needs a positive base and degree");
  RootSpec r;
  r.kind = Kind::polar;
  r.base = std::move(base);
  r.n = n;
  r.angle = normalize_angle(std::move(angle));
  return r;
}

BigComplex RootSpec::value(int digits) const {
  if (kind == Kind::gauss) return BigComplex::from_gauss(exact, digits);
  const BigReal r = root_n(BigReal::from_rational(base, digits), n);
  const BigReal zero(digits);
  if (angle == 0) return {r, zero};
  if (angle == 1) return {-r, zero};
  if (angle == Rational(1, 2)) return {zero, r};
  if (angle == Rational(-1, 2)) return {zero, -r};
  const BigReal theta = BigReal::from_rational(angle, digits) * const_pi(digits);
  return {r * cos(theta), r * sin(theta)};
}

std::string RootSpec::str() const {
  if (kind == Kind::gauss) return exact.str();
  std::string out = base.get_str();
  if (n != 1) out = "(" + out + ")^(1/" + std::to_string(n) + ")";
  if (angle != 0) out += " exp(" + angle.get_str() + " pi i)";
  return out;
}

std::vector<BigComplex> TestPolynomial::roots_big(int digits) const {
  std::vector<BigComplex> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.value(digits));
  return out;
}

std::vector<HwComplex> TestPolynomial::roots_hw() const {
  std::vector<HwComplex> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.value(40).to_hw());
  return out;
}

void sort_roots(std::vector<RootSpec>& roots) {
  constexpr int kDigits = 60;
  struct Keyed {
    BigReal arg;
    BigReal mod;
    RootSpec root;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(roots.size());
  for (auto& r : roots) {
    const BigComplex z = r.value(kDigits);
    BigReal a = r.kind == RootSpec::Kind::polar
                    ? BigReal::from_rational(r.angle, kDigits) * const_pi(kDigits)
                    : arg(z);
    keyed.push_back({std::move(a), abs(z), std::move(r)});
  }
  const BigReal eps = BigReal::parse("1e-40", kDigits);
  std::stable_sort(keyed.begin(), keyed.end(), [&](const Keyed& x, const Keyed& y) {
    if (abs(x.arg - y.arg) > eps) return x.arg < y.arg;
    return x.mod < y.mod;
  });
  roots.clear();
  for (auto& k : keyed) roots.push_back(std::move(k.root));
}

TestPolynomial test_polynomial(std::string_view id) {
  TestPolynomial p;
  p.name = std::string(id);
  auto g = [](long re, long im = 0) { return RootSpec::from_gauss(gi(re, im)); };
  if (id == "p1") {
    p.formula = "z^2 - 1";
    p.coeffs = {gi(1), gi(0), gi(-1)};
    p.roots = {g(1), g(-1)};
  } else if (id == "p2") {
    p.formula = "z^3 - z";
    p.coeffs = {gi(1), gi(0), gi(-1), gi(0)};
    p.roots = {g(0), g(1), g(-1)};
  } else if (id == "p3") {
    p.formula = "z(z^2+1)(z^2+4)";
    p.coeffs = {gi(1), gi(0), gi(5), gi(0), gi(4), gi(0)};
    p.roots = {g(0), g(0, 1), g(0, -1), g(0, 2), g(0, -2)};
  } else if (id == "p4") {
    p.formula = "(z^4-1)(z^2+2i)";
    p.coeffs = {gi(1), gi(0), gi(0, 2), gi(0), gi(-1), gi(0), gi(0, -2)};
    p.roots = {g(1), g(0, 1), g(-1), g(0, -1), g(-1, 1), g(1, -1)};
  } else if (id == "p5") {
    p.formula = "z^7 - 1";
    p.coeffs = {gi(1), gi(0), gi(0), gi(0), gi(0), gi(0), gi(0), gi(-1)};
    for (long k = 0; k < 7; ++k) p.roots.push_back(RootSpec::from_polar(1, 1, Rational(2 * k, 7)));
  } else if (id == "p6") {
    p.formula = "(10z^5-1)(z^5+10)";
    p.coeffs.assign(11, gi(0));
    p.coeffs[0] = gi(10);
    p.coeffs[5] = gi(99);
    p.coeffs[10] = gi(-10);
    for (long k = 0; k < 5; ++k) {
      p.roots.push_back(RootSpec::from_polar(Rational(1, 10), 5, Rational(2 * k, 5)));
      p.roots.push_back(RootSpec::from_polar(10, 5, Rational(2 * k + 1, 5)));
    }
  } else {
    throw UsageError("unknown polynomial '" + std::string(id) + "'");
  }
  sort_roots(p.roots);
  return p;
}

std::vector<TestPolynomial> test_polynomials() {
  std::vector<TestPolynomial> out;
  for (const char* id : {"p1", "p2", "p3", "p4", "p5", "p6"}) out.push_back(test_polynomial(id));
  return out;
}

TestPolynomial parse_polynomial(std::string_view text, std::string name) {
  TestPolynomial p;
  p.name = std::move(name);
  bool in_roots = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty()) continue;
    if (s == "roots") {
      if (in_roots) throw UsageError("line " + std::to_string(lineno) + ": repeated 'roots'");
      in_roots = true;
      continue;
    }
    try {
      auto q = GaussRational::parse(s);
      if (in_roots) {
        p.roots.push_back(RootSpec::from_gauss(std::move(q)));
      } else {
        p.coeffs.push_back(std::move(q));
      }
    } catch (const Error& e) {
      throw UsageError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (p.coeffs.size() < 2) throw UsageError("polynomial needs degree at least 1");
  if (p.coeffs.front().is_zero()) throw UsageError("leading coefficient is zero");
  if (static_cast<int>(p.roots.size()) != p.degree()) {
    throw UsageError("expected " + std::to_string(p.degree()) + " roots, got " + std::to_string(p.roots.size()));
  }
  p.formula = "custom degree " + std::to_string(p.degree());
  sort_roots(p.roots);
  return p;
}

TestPolynomial load_polynomial(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read polynomial file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (const auto dot = stem.find_last_of('.'); dot != std::string::npos && dot > 0) stem = stem.substr(0, dot);
  return parse_polynomial(buf.str(), stem);
}

}  // namespace rootlab
