#include "rootlab/solver.hpp"

#include <iomanip>
#include <sstream>

#include "rootlab/parallel.hpp"

namespace rootlab {

double efficiency_index(int evals_per_step, int order) {
  if (evals_per_step < 1) throw DomainError("evaluations per step must be positive");
  if (order < 1) throw DomainError("order must be positive");
  return std::pow(static_cast<double>(order), 1.0 / evals_per_step);
}

TableNumber TableNumber::of(const BigReal& x, int sig) {
  TableNumber t;
  if (x.is_zero()) {
    t.zero = true;
    return t;
  }
  // Extra guard digits, then cut: the table truncates instead of rounding.
  auto [digits, e] = abs(x).decimal_digits(sig + 10);
  t.mantissa = digits.substr(0, static_cast<std::size_t>(sig));
  t.exponent = e;
  return t;
}

std::string TableNumber::str() const {
  if (zero) return "0";
  return "0." + mantissa + "e" + std::to_string(exponent);
}

std::string TableCell::record_header(int iterations) {
  std::string out = "method,function";
  for (int k = 1; k <= iterations; ++k) {
    out += ",e" + std::to_string(k) + "_mantissa,e" + std::to_string(k) + "_exponent";
  }
  return out + ",coc,acoc";
}

std::string TableCell::record() const {
  std::ostringstream os;
  os << method.name() << "," << function;
  for (const auto& e : errors) {
    const auto t = TableNumber::of(e);
    os << ",0." << (t.zero ? "0" : t.mantissa) << "," << t.exponent;
  }
  os << "," << (coc ? coc->format(6) : "NA") << "," << (acoc ? acoc->format(6) : "NA");
  return os.str();
}

TableCell table_cell(const MethodSpec& method, const TestFunction& f, const TableOptions& opt) {
  if (opt.iterations < 3) throw DomainError("the error table needs at least three iterations");
  TableCell cell;
  cell.method = method;
  cell.function = f.name;
  // Complex family parameters leave the real line, so every cell runs in complex arithmetic.
  const BigComplex x0(f.x0(opt.digits));
  const BigComplex root(f.root(opt.digits));
  StopRule stop;
  stop.max_iters = opt.iterations + 1;
  try {
    const auto trace = solve<BigComplex>(method, f, x0, stop, std::optional<BigComplex>(root));
    const auto& e = *trace.errors;
    for (int k = 1; k <= opt.iterations && k < static_cast<int>(e.size()); ++k) {
      cell.errors.push_back(e[static_cast<std::size_t>(k)]);
    }
    if (trace.steps() < opt.iterations + 1) {
      cell.failure = "trace stopped after " + std::to_string(trace.steps()) + " steps";
      return cell;
    }
    cell.coc = coc(trace.prefix(opt.iterations));
    auto tail = trace;
    tail.iterates.erase(tail.iterates.begin());
    cell.acoc = acoc(tail);
  } catch (const SolveBreakdown<BigComplex>& b) {
    cell.failure = b.what();
  } catch (const DegenerateTrace& d) {
    cell.failure = d.what();
  }
  return cell;
}

std::vector<TableCell> error_table(const std::vector<MethodSpec>& methods,
                                   const std::vector<TestFunction>& functions, const TableOptions& opt) {
  std::vector<TableCell> cells(methods.size() * functions.size());
  parallel_for(cells.size(), opt.threads, 1, [&](std::size_t i) {
    cells[i] = table_cell(methods[i % methods.size()], functions[i / methods.size()], opt);
  });
  return cells;
}

std::string format_error_table(const std::vector<TableCell>& cells, const std::vector<MethodSpec>& methods,
                               const std::vector<TestFunction>& functions, int iterations) {
  constexpr int kLabel = 14;
  constexpr int kCol = 14;
  std::ostringstream os;
  os << std::left << std::setw(kLabel) << "";
  for (const auto& m : methods) os << std::setw(kCol) << m.name();
  os << "\n";
  for (std::size_t fi = 0; fi < functions.size(); ++fi) {
    os << functions[fi].name << ", x0=" << functions[fi].x0_text << "\n";
    auto cell = [&](std::size_t mi) -> const TableCell& { return cells[fi * methods.size() + mi]; };
    for (int k = 0; k < iterations; ++k) {
      os << std::setw(kLabel) << ("|x" + std::to_string(k + 1) + "-x*|");
      for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        const auto& c = cell(mi);
        const auto idx = static_cast<std::size_t>(k);
        os << std::setw(kCol) << (idx < c.errors.size() ? TableNumber::of(c.errors[idx]).str() : "-");
      }
      os << "\n";
    }
    os << std::setw(kLabel) << "COC";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      os << std::setw(kCol) << (cell(mi).coc ? cell(mi).coc->format(5) : "-");
    }
    os << "\n" << std::setw(kLabel) << "ACOC";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      os << std::setw(kCol) << (cell(mi).acoc ? cell(mi).acoc->format(5) : "-");
    }
    os << "\n";
    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
      if (cell(mi).failure) os << "  " << methods[mi].name() << ": " << *cell(mi).failure << "\n";
    }
  }
  return os.str();
}

}  // namespace rootlab
