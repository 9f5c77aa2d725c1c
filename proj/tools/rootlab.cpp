// rootlab: command-line entry point.
//
//   rootlab solve   --method m1 --problem f1 --iters 3
//   rootlab table   [--functions f1,f2] [--methods m1,m2]
//   rootlab verify  [--method m1 --expected 8] --trials 20 --seed 7
//   rootlab basin   --method m6 --poly p1 --out p1_m6.ppm --stats p1_m6.csv
//   rootlab stats   --poly p1
//   rootlab sweep   --poly p6 --out-dir fig7
//   rootlab weights --a -1 --b -1 --c -1
//
// Exit status: 0 success, 1 assertion failure, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rootlab/basins.hpp"
#include "rootlab/methods.hpp"
#include "rootlab/parallel.hpp"
#include "rootlab/problems.hpp"
#include "rootlab/series.hpp"
#include "rootlab/solver.hpp"

using namespace rootlab;

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;

struct MethodFlags {
  std::string id = "m1";
  std::optional<std::string> a, b, c;
  std::optional<std::string> A, alpha;
  std::optional<unsigned> bcst_power;
  std::optional<std::string> bcst_t4;

  void attach(CLI::App* app, bool with_id = true) {
    if (with_id) app->add_option("--method", id, "method id (newton, kt4, kt8naive, family, m1..m6, ...)");
    app->add_option("--a", a, "family parameter a (complex literal re+imi)");
    app->add_option("--b", b, "family parameter b");
    app->add_option("--c", c, "family parameter c");
    app->add_option("--A", A, "Neta parameter A");
    app->add_option("--alpha", alpha, "Sharma parameter alpha");
    app->add_option("--bcst-power", bcst_power, "bcst first-step exponent");
    app->add_option("--bcst-t4", bcst_t4, "bcst t^4 weight coefficient");
  }

  MethodSpec build(const std::string& which) const {
    MethodSpec m = parse_method(which);
    if (a || b || c) {
      if (m.id != MethodId::family) throw UsageError("--a/--b/--c apply to the family only");
      if (a) m.a = GaussRational::parse(*a);
      if (b) m.b = GaussRational::parse(*b);
      if (c) m.c = GaussRational::parse(*c);
      m.alias.clear();
    }
    if (A) {
      if (m.id != MethodId::neta) throw UsageError("--A applies to neta only");
      m.neta_A = parse_rational(*A);
    }
    if (alpha) {
      if (m.id != MethodId::sharma) throw UsageError("--alpha applies to sharma only");
      m.sharma_alpha = parse_rational(*alpha);
    }
    if (bcst_power || bcst_t4) {
      if (m.id != MethodId::bcst) throw UsageError("--bcst-* apply to bcst only");
      if (bcst_power) m.bcst_power = *bcst_power;
      if (bcst_t4) m.bcst_t4 = parse_rational(*bcst_t4);
    }
    return m;
  }
  MethodSpec build() const { return build(id); }
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// "m1..m6" expands to m1,m2,...,m6.
std::vector<MethodSpec> method_list(const std::string& text, const MethodFlags& flags) {
  std::vector<MethodSpec> out;
  for (const auto& item : split_list(text)) {
    const auto dots = item.find("..");
    if (dots != std::string::npos && item.size() > dots + 3 && item[0] == 'm' && item[dots + 2] == 'm') {
      const int lo = std::stoi(item.substr(1, dots - 1));
      const int hi = std::stoi(item.substr(dots + 3));
      for (int k = lo; k <= hi; ++k) out.push_back(flags.build("m" + std::to_string(k)));
    } else {
      out.push_back(flags.build(item));
    }
  }
  if (out.empty()) throw UsageError("empty method list");
  return out;
}

TestPolynomial polynomial_from(const std::string& poly, const std::string& poly_file) {
  if (!poly_file.empty()) return load_polynomial(poly_file);
  return test_polynomial(poly);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
  MethodFlags method;
  std::string problem = "f1";
  std::string poly;
  std::string poly_file;
  std::optional<std::string> x0;
  int digits = kDefaultDigits;
  int iters = 10;
  std::optional<double> residual_tol, step_tol;
  int show = 20;
};

template <class T, class P>
void print_trace(const IterationTrace<T>& trace, const P&, int show, std::ostream& os) {
  os << "method " << trace.method.describe() << ", " << trace.steps() << " steps, evals f=" << trace.evals.f
     << " f'=" << trace.evals.df << "\n";
  for (std::size_t n = 0; n < trace.iterates.size(); ++n) {
    os << "x" << n << " = " << trace.iterates[n].format(show) << "  |f| = " << trace.residuals[n].format_sci(3);
    if (trace.errors) os << "  |x-x*| = " << TableNumber::of((*trace.errors)[n]).str();
    os << "\n";
  }
  if (trace.errors && trace.iterates.size() >= 4) {
    try {
      os << "COC  = " << coc(trace).format(5) << "\n";
    } catch (const DegenerateTrace& e) {
      os << "COC  = n/a (" << e.what() << ")\n";
    }
  }
  if (trace.iterates.size() >= 4) {
    try {
      os << "ACOC = " << acoc(trace).format(5) << "\n";
    } catch (const DegenerateTrace& e) {
      os << "ACOC = n/a (" << e.what() << ")\n";
    }
  }
}

int run_solve(const SolveArgs& args) {
  const MethodSpec method = args.method.build();
  StopRule stop;
  stop.max_iters = args.iters;
  stop.residual_tol = args.residual_tol;
  stop.step_tol = args.step_tol;
  if (!args.poly.empty() || !args.poly_file.empty()) {
    const TestPolynomial p = polynomial_from(args.poly, args.poly_file);
    if (!args.x0) throw UsageError("--x0 is required for polynomials");
    const BigComplex x0 = BigComplex::parse(*args.x0, args.digits);
    const PolyProblem<BigComplex> f(p, x0);
    try {
      print_trace(solve(method, f, x0, stop), f, args.show, std::cout);
    } catch (const SolveBreakdown<BigComplex>& b) {
      print_trace(b.trace(), f, args.show, std::cout);
      std::cout << "breakdown: " << b.what() << "\n";
      return kExitAssertion;
    }
    return 0;
  }
  const TestFunction f = test_function(args.problem);
  const BigComplex x0 = args.x0 ? BigComplex::parse(*args.x0, args.digits) : BigComplex(f.x0(args.digits));
  const std::optional<BigComplex> root = BigComplex(f.root(args.digits));
  std::cout << f.name << "(x) = " << f.formula << ", x* = " << f.root_text << "\n";
  try {
    print_trace(solve(method, f, x0, stop, root), f, args.show, std::cout);
  } catch (const SolveBreakdown<BigComplex>& b) {
    print_trace(b.trace(), f, args.show, std::cout);
    std::cout << "breakdown: " << b.what() << "\n";
    return kExitAssertion;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct TableArgs {
  MethodFlags flags;
  std::string methods = "m1..m6";
  std::string functions = "f1,f2,f3,f4";
  int digits = kDefaultDigits;
  int iters = 3;
  unsigned threads = default_threads();
  std::string csv;
};

int run_table(const TableArgs& args) {
  const auto methods = method_list(args.methods, args.flags);
  std::vector<TestFunction> functions;
  for (const auto& id : split_list(args.functions)) functions.push_back(test_function(id));
  TableOptions opt;
  opt.digits = args.digits;
  opt.iterations = args.iters;
  opt.threads = args.threads;
  const auto cells = error_table(methods, functions, opt);
  std::cout << format_error_table(cells, methods, functions, args.iters);
  if (!args.csv.empty()) {
    std::string text = TableCell::record_header(args.iters) + "\n";
    for (const auto& c : cells) text += c.record() + "\n";
    write_text(args.csv, text);
  }
  for (const auto& c : cells) {
    if (c.failure) return kExitAssertion;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  MethodFlags flags;
  std::string method;  // empty: whole catalog
  std::optional<int> expected;
  int trials = 20;
  std::uint64_t seed = 1;
  std::string csv;
};

int run_verify(const VerifyArgs& args) {
  std::vector<MethodSpec> methods;
  if (args.method.empty()) {
    methods = catalog();
  } else {
    methods.push_back(args.flags.build(args.method));
  }
  int status = 0;
  std::string records = OrderReport::record_header() + "\n";
  for (const auto& m : methods) {
    const int expected = args.expected.value_or(m.expected_order());
    try {
      const OrderReport r = verify_order(m, expected, args.trials, args.seed);
      std::cout << r.text() << "vanished_through=" << r.vanished_through << "\n\n";
      records += r.record() + "\n";
    } catch (const OrderViolation& v) {
      std::cout << "FAILED " << m.describe() << ": " << v.what() << "\n\n";
      status = kExitAssertion;
    }
  }
  if (!args.csv.empty()) write_text(args.csv, records);
  return status;
}

// ---------------------------------------------------------------------------

struct BasinArgs {
  MethodFlags method;
  std::string methods = "m1..m6";
  std::string poly = "p1";
  std::string poly_file;
  std::string grid = "-3:3:-3:3:512:512";
  int max_iters = 15;
  double tol = 1e-3;
  std::string count = "max";
  unsigned threads = default_threads();
  std::string out;
  std::string stats;
  std::string out_dir;
  std::string params;
};

BasinOptions basin_options(const BasinArgs& args) {
  BasinOptions opt;
  opt.max_iters = args.max_iters;
  opt.capture_tol = args.tol;
  opt.threads = args.threads;
  if (args.count == "max") {
    opt.count = NonconvergentCount::max_iters;
  } else if (args.count == "performed") {
    opt.count = NonconvergentCount::performed;
  } else {
    throw UsageError("--count must be 'max' or 'performed'");
  }
  if (opt.max_iters < 0) throw UsageError("--max-iters must be non-negative");
  if (!(opt.capture_tol > 0)) throw UsageError("--tol must be positive");
  return opt;
}

void print_stats_line(const BasinStats& s, const BasinField& f, std::ostream& os) {
  os << std::left << std::setw(6) << f.poly.name << std::setw(10) << f.method.name() << std::fixed
     << std::setprecision(3) << std::setw(10) << s.ipp() << std::setw(10) << s.nc_pct();
  if (auto c = s.icc()) {
    os << std::setw(10) << *c;
  } else {
    os << std::setw(10) << "NONE";
  }
  os << "\n" << std::defaultfloat;
}

int run_basin(const BasinArgs& args) {
  const MethodSpec method = args.method.build();
  const TestPolynomial poly = polynomial_from(args.poly, args.poly_file);
  const GridSpec grid = GridSpec::parse(args.grid);
  const BasinField field = render(method, poly, grid, basin_options(args));
  const BasinStats s = stats(field);
  std::cout << "poly  method    I/P       NC(%)     IC/C\n";
  print_stats_line(s, field, std::cout);
  if (!args.out.empty()) write_image(field, args.out);
  if (!args.stats.empty()) write_text(args.stats, BasinStats::csv_header() + "\n" + s.csv_record(field) + "\n");
  return s.decomposition_holds() ? 0 : kExitAssertion;
}

int run_stats(const BasinArgs& args) {
  const auto methods = method_list(args.methods, args.method);
  const TestPolynomial poly = polynomial_from(args.poly, args.poly_file);
  const GridSpec grid = GridSpec::parse(args.grid);
  const BasinOptions opt = basin_options(args);
  std::string csv = BasinStats::csv_header() + "\n";
  std::cout << "poly  method    I/P       NC(%)     IC/C\n";
  int status = 0;
  for (const auto& m : methods) {
    const BasinField field = render(m, poly, grid, opt);
    const BasinStats s = stats(field);
    print_stats_line(s, field, std::cout);
    csv += s.csv_record(field) + "\n";
    if (!args.out_dir.empty()) {
      std::filesystem::create_directories(args.out_dir);
      write_image(field, args.out_dir + "/" + poly.name + "_" + m.name() + ".ppm");
    }
    if (!s.decomposition_holds()) status = kExitAssertion;
  }
  if (!args.stats.empty()) write_text(args.stats, csv);
  return status;
}

int run_sweep(const BasinArgs& args) {
  std::vector<std::array<GaussRational, 3>> params;
  const std::string spec = args.params.empty() ? "-1,-1,-1;-1,-1,-1+i;-1/2,-1,-2+i" : args.params;
  std::stringstream triples(spec);
  std::string triple;
  while (std::getline(triples, triple, ';')) {
    const auto parts = split_list(triple);
    if (parts.empty()) continue;
    if (parts.size() != 3) throw UsageError("each parameter triple needs a,b,c");
    params.push_back({GaussRational::parse(parts[0]), GaussRational::parse(parts[1]), GaussRational::parse(parts[2])});
  }
  const TestPolynomial poly = polynomial_from(args.poly, args.poly_file);
  const GridSpec grid = GridSpec::parse(args.grid);
  const auto entries = sweep(params, poly, grid, basin_options(args));
  std::string csv = "a,b,c,width,height,ipp,nc_pct,icc\n";
  int status = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    std::cout << "a=" << e.a.str() << " b=" << e.b.str() << " c=" << e.c.str() << ": ";
    print_stats_line(e.stats, e.field, std::cout);
    const std::string rec = e.stats.csv_record(e.field);
    csv += e.a.str() + "," + e.b.str() + "," + e.c.str() + rec.substr(rec.find(',', rec.find(',') + 1)) + "\n";
    if (!args.out_dir.empty()) {
      std::filesystem::create_directories(args.out_dir);
      write_image(e.field, args.out_dir + "/sweep_" + std::to_string(k) + ".ppm");
    }
    if (!e.stats.decomposition_holds()) status = kExitAssertion;
  }
  if (!args.stats.empty()) write_text(args.stats, csv);
  return status;
}

// ---------------------------------------------------------------------------

int run_weights(const MethodFlags& flags) {
  const GaussRational half(Rational(1, 2));
  const GaussRational a = flags.a ? GaussRational::parse(*flags.a) : half;
  const GaussRational b = flags.b ? GaussRational::parse(*flags.b) : half;
  const GaussRational c = flags.c ? GaussRational::parse(*flags.c) : half;
  const WeightConditions w = check_weight_conditions(a, b, c);
  std::cout << "a=" << a.str() << " b=" << b.str() << " c=" << c.str() << "\n" << w.str() << "\n";
  std::cout << "(" << w.J00.str() << "," << w.J10.str() << "," << w.J20.str() << "," << w.J01.str() << ","
            << w.J30.str() << "," << w.G0.str() << "," << w.G1.str() << ")\n";
  return w == WeightConditions::required() ? 0 : kExitAssertion;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rootlab: optimal eighth-order root-finding laboratory"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "iterate a method and print the trace");
  solve_args.method.attach(solve_cmd);
  solve_cmd->add_option("--problem", solve_args.problem, "test function f1..f4");
  solve_cmd->add_option("--poly", solve_args.poly, "test polynomial p1..p6");
  solve_cmd->add_option("--poly-file", solve_args.poly_file, "custom polynomial file");
  solve_cmd->add_option("--x0", solve_args.x0, "initial guess (complex literal)");
  solve_cmd->add_option("--digits", solve_args.digits, "working precision in decimal digits");
  solve_cmd->add_option("--iters", solve_args.iters, "maximum iterations");
  solve_cmd->add_option("--residual-tol", solve_args.residual_tol, "stop when |f(x)| <= tol");
  solve_cmd->add_option("--step-tol", solve_args.step_tol, "stop when |x_n - x_{n-1}| <= tol");
  solve_cmd->add_option("--show", solve_args.show, "significant digits shown per iterate");

  TableArgs table_args;
  auto* table_cmd = app.add_subcommand("table", "error / COC / ACOC table");
  table_args.flags.attach(table_cmd, false);
  table_cmd->add_option("--methods", table_args.methods, "comma list, ranges like m1..m6");
  table_cmd->add_option("--functions,--function", table_args.functions, "comma list of f1..f4");
  table_cmd->add_option("--digits", table_args.digits, "working precision");
  table_cmd->add_option("--iters", table_args.iters, "printed error rows");
  table_cmd->add_option("--threads", table_args.threads, "worker threads");
  table_cmd->add_option("--csv", table_args.csv, "machine-readable records");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "certify convergence order with exact series");
  verify_args.flags.attach(verify_cmd, false);
  verify_cmd->add_option("--method", verify_args.method, "method id (default: whole catalog)");
  verify_cmd->add_option("--expected", verify_args.expected, "asserted order");
  verify_cmd->add_option("--trials", verify_args.trials, "random models per method");
  verify_cmd->add_option("--seed", verify_args.seed, "base seed");
  verify_cmd->add_option("--csv", verify_args.csv, "machine-readable records");

  BasinArgs basin_args;
  auto attach_basin = [&](CLI::App* cmd) {
    cmd->add_option("--poly", basin_args.poly, "test polynomial p1..p6");
    cmd->add_option("--poly-file", basin_args.poly_file, "custom polynomial file");
    cmd->add_option("--grid", basin_args.grid, "x_min:x_max:y_min:y_max:width:height");
    cmd->add_option("--max-iters", basin_args.max_iters, "iteration budget per pixel");
    cmd->add_option("--tol", basin_args.tol, "capture tolerance");
    cmd->add_option("--count", basin_args.count, "nonconvergent iteration count: max or performed");
    cmd->add_option("--threads", basin_args.threads, "worker threads");
    cmd->add_option("--stats", basin_args.stats, "stats CSV path");
  };
  auto* basin_cmd = app.add_subcommand("basin", "render one basin image");
  basin_args.method.attach(basin_cmd);
  attach_basin(basin_cmd);
  basin_cmd->add_option("--out", basin_args.out, "PPM output path");

  auto* stats_cmd = app.add_subcommand("stats", "basin statistics for several methods on one polynomial");
  basin_args.method.attach(stats_cmd, false);
  attach_basin(stats_cmd);
  stats_cmd->add_option("--methods", basin_args.methods, "comma list, ranges like m1..m6");
  stats_cmd->add_option("--out-dir", basin_args.out_dir, "directory for PPM images");

  auto* sweep_cmd = app.add_subcommand("sweep", "family parameter sweep");
  attach_basin(sweep_cmd);
  sweep_cmd->add_option("--params", basin_args.params, "triples a,b,c separated by ';'");
  sweep_cmd->add_option("--out-dir", basin_args.out_dir, "directory for PPM images");

  MethodFlags weight_flags;
  auto* weights_cmd = app.add_subcommand("weights", "weight-function derivatives at the origin");
  weights_cmd->add_option("--a", weight_flags.a, "family parameter a");
  weights_cmd->add_option("--b", weight_flags.b, "family parameter b");
  weights_cmd->add_option("--c", weight_flags.c, "family parameter c");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*table_cmd) return run_table(table_args);
    if (*verify_cmd) return run_verify(verify_args);
    if (*basin_cmd) return run_basin(basin_args);
    if (*stats_cmd) return run_stats(basin_args);
    if (*sweep_cmd) return run_sweep(basin_args);
    if (*weights_cmd) return run_weights(weight_flags);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssertion;
  }
  return kExitUsage;
}
