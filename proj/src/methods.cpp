#include "rootlab/methods.hpp"

#include <algorithm>
#include <cctype>

namespace rootlab {

MethodSpec MethodSpec::newton() { return MethodSpec{}; }

MethodSpec MethodSpec::kt4() {
  MethodSpec m;
  m.id = MethodId::kt4;
  return m;
}

MethodSpec MethodSpec::kt8naive() {
  MethodSpec m;
  m.id = MethodId::kt8naive;
  return m;
}

MethodSpec MethodSpec::family(GaussRational a, GaussRational b, GaussRational c) {
  MethodSpec m;
  m.id = MethodId::family;
  m.a = std::move(a);
  m.b = std::move(b);
  m.c = std::move(c);
  return m;
}

MethodSpec MethodSpec::m1() {
  const GaussRational half(Rational(1, 2));
  MethodSpec m = family(half, half, half);
  m.alias = "m1";
  return m;
}

MethodSpec MethodSpec::m2() {
  const Rational half(1, 2);
  MethodSpec m = family(GaussRational(half, half), GaussRational(1, 1), GaussRational(-half, half));
  m.alias = "m2";
  return m;
}

MethodSpec MethodSpec::chun_lee() {
  MethodSpec m;
  m.id = MethodId::chun_lee;
  return m;
}

MethodSpec MethodSpec::neta(Rational A) {
  MethodSpec m;
  m.id = MethodId::neta;
  m.neta_A = std::move(A);
  return m;
}

MethodSpec MethodSpec::sharma(Rational alpha) {
  MethodSpec m;
  m.id = MethodId::sharma;
  m.sharma_alpha = std::move(alpha);
  return m;
}

MethodSpec MethodSpec::bcst() {
  MethodSpec m;
  m.id = MethodId::bcst;
  return m;
}

std::string MethodSpec::name() const {
  if (!alias.empty()) return alias;
  switch (id) {
    case MethodId::newton: return "newton";
    case MethodId::kt4: return "kt4";
    case MethodId::kt8naive: return "kt8naive";
    case MethodId::family: return "family";
    case MethodId::chun_lee: return "chun-lee";
    case MethodId::neta: return "neta";
    case MethodId::sharma: return "sharma";
    case MethodId::bcst: return "bcst";
  }
  return "?";
}

std::string MethodSpec::describe() const {
  std::string base = name();
  switch (id) {
    case MethodId::family:
      return base + "(a=" + a.str() + ", b=" + b.str() + ", c=" + c.str() + ")";
    case MethodId::neta: return base + "(A=" + neta_A.get_str() + ")";
    case MethodId::sharma: return base + "(alpha=" + sharma_alpha.get_str() + ")";
    case MethodId::bcst:
      if (bcst_power == 5 && bcst_t4 == 5) return base;
      return base + "(power=" + std::to_string(bcst_power) + ", t4=" + bcst_t4.get_str() + ")";
    default: return base;
  }
}

int MethodSpec::expected_order() const {
  switch (id) {
    case MethodId::newton: return 2;
    case MethodId::kt4: return 4;
    default: return 8;
  }
}

EvalCount MethodSpec::evals_per_step() const {
  switch (id) {
    case MethodId::newton: return {1, 1};
    case MethodId::kt4: return {2, 1};
    case MethodId::kt8naive: return {3, 2};
    default: return {3, 1};
  }
}

bool MethodSpec::same_map(const MethodSpec& o) const {
  if (id != o.id) return false;
  switch (id) {
    case MethodId::family: return a == o.a && b == o.b && c == o.c;
    case MethodId::neta: return neta_A == o.neta_A;
    case MethodId::sharma: return sharma_alpha == o.sharma_alpha;
    case MethodId::bcst: return bcst_power == o.bcst_power && bcst_t4 == o.bcst_t4;
    default: return true;
  }
}

MethodSpec parse_method(std::string_view id) {
  std::string key;
  for (char ch : id) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "newton") return MethodSpec::newton();
  if (key == "kt4") return MethodSpec::kt4();
  if (key == "kt8naive" || key == "kt8-naive") return MethodSpec::kt8naive();
  if (key == "family") {
    // Parameters default to a = b = c = 1/2; callers override them.
    MethodSpec m = MethodSpec::m1();
    m.alias.clear();
    return m;
  }
  if (key == "m1") return MethodSpec::m1();
  if (key == "m2") return MethodSpec::m2();
  if (key == "m3" || key == "chun-lee" || key == "chunlee") {
    MethodSpec m = MethodSpec::chun_lee();
    if (key == "m3") m.alias = "m3";
    return m;
  }
  if (key == "m4" || key == "neta") {
    MethodSpec m = MethodSpec::neta();
    if (key == "m4") m.alias = "m4";
    return m;
  }
  if (key == "m5" || key == "sharma") {
    MethodSpec m = MethodSpec::sharma();
    if (key == "m5") m.alias = "m5";
    return m;
  }
  if (key == "m6" || key == "bcst") {
    MethodSpec m = MethodSpec::bcst();
    if (key == "m6") m.alias = "m6";
    return m;
  }
  throw UsageError("unknown method '" + std::string(id) + "'");
}

std::vector<MethodSpec> compared_methods() {
  std::vector<MethodSpec> out;
  for (const char* id : {"m1", "m2", "m3", "m4", "m5", "m6"}) out.push_back(parse_method(id));
  return out;
}

std::vector<MethodSpec> catalog() {
  std::vector<MethodSpec> out{MethodSpec::newton(), MethodSpec::kt4(), MethodSpec::kt8naive()};
  for (auto& m : compared_methods()) out.push_back(std::move(m));
  return out;
}

}  // namespace rootlab
