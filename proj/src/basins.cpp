#include "rootlab/basins.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "rootlab/parallel.hpp"

namespace rootlab {

GridSpec GridSpec::parse(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 6) throw UsageError("grid must be x_min:x_max:y_min:y_max:width:height");
  GridSpec g;
  try {
    g.x_min = std::stod(parts[0]);
    g.x_max = std::stod(parts[1]);
    g.y_min = std::stod(parts[2]);
    g.y_max = std::stod(parts[3]);
    g.width = std::stoi(parts[4]);
    g.height = std::stoi(parts[5]);
  } catch (const std::exception&) {
    throw UsageError("malformed grid '" + std::string(text) + "'");
  }
  g.validate();
  return g;
}

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) throw UsageError("grid bounds must satisfy min < max");
  if (width < 1 || height < 1) throw UsageError("grid needs at least one pixel");
}

HwComplex GridSpec::center(int i, int j) const {
  const double dx = (x_max - x_min) / width;
  const double dy = (y_max - y_min) / height;
  return {x_min + (i + 0.5) * dx, y_max - (j + 0.5) * dy};
}

std::string GridSpec::str() const {
  std::ostringstream os;
  os << x_min << ":" << x_max << ":" << y_min << ":" << y_max << ":" << width << ":" << height;
  return os.str();
}

BasinField render(const MethodSpec& method, const TestPolynomial& poly, const GridSpec& grid,
                  const BasinOptions& opt) {
  grid.validate();
  if (poly.roots.empty()) throw DomainError("polynomial has no roots to classify against");
  BasinField field;
  field.grid = grid;
  field.method = method;
  field.poly = poly;
  field.max_iters = opt.max_iters;
  field.capture_tol = opt.capture_tol;
  field.cells.resize(grid.size());

  const HwComplex like{0.0, 0.0};
  const Stepper<HwComplex> stepper(method, like);
  const PolyProblem<HwComplex> f(poly, like);
  const std::vector<HwComplex> roots = poly.roots_hw();
  parallel_for(static_cast<std::size_t>(grid.height), opt.threads, 1, [&](std::size_t row) {
    const int j = static_cast<int>(row);
    for (int i = 0; i < grid.width; ++i) {
      field.cells[row * static_cast<std::size_t>(grid.width) + static_cast<std::size_t>(i)] =
          classify_seed(stepper, f, roots, grid.center(i, j), opt).cell;
    }
  });
  return field;
}

PixelOutcome classify_big(const MethodSpec& method, const TestPolynomial& poly, HwComplex z0, int digits,
                          const BasinOptions& opt) {
  const BigComplex z = BigComplex::from_hw(z0, digits);
  const Stepper<BigComplex> stepper(method, z);
  const PolyProblem<BigComplex> f(poly, z);
  return classify_seed(stepper, f, poly.roots_big(digits), z, opt);
}

namespace {

Rational ratio(std::uint64_t num, std::uint64_t den) {
  Rational q(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  q.canonicalize();
  return q;
}

}  // namespace

Rational BasinStats::ipp_exact() const {
  if (pixels == 0) throw DomainError("empty field");
  return ratio(iters_total, pixels);
}

Rational BasinStats::nc_fraction_exact() const {
  if (pixels == 0) throw DomainError("empty field");
  return ratio(nonconvergent, pixels);
}

std::optional<Rational> BasinStats::icc_exact() const {
  const std::uint64_t conv = pixels - nonconvergent;
  if (conv == 0) return std::nullopt;
  return ratio(iters_convergent, conv);
}

std::optional<Rational> BasinStats::nc_mean_exact() const {
  if (nonconvergent == 0) return std::nullopt;
  return ratio(iters_nonconvergent, nonconvergent);
}

std::optional<double> BasinStats::icc() const {
  if (auto q = icc_exact()) return q->get_d();
  return std::nullopt;
}

bool BasinStats::decomposition_holds() const {
  if (pixels == 0) return false;
  Rational q = nc_fraction_exact();
  q.canonicalize();
  Rational rhs = 0;
  if (auto m = nc_mean_exact()) rhs += q * *m;
  if (auto c = icc_exact()) rhs += (Rational(1) - q) * *c;
  Rational lhs = ipp_exact();
  lhs.canonicalize();
  rhs.canonicalize();
  return lhs == rhs;
}

std::string BasinStats::csv_header() { return "method,poly,width,height,ipp,nc_pct,icc"; }

std::string BasinStats::csv_record(const BasinField& field) const {
  std::ostringstream os;
  os << field.method.name() << "," << field.poly.name << "," << field.grid.width << "," << field.grid.height
     << std::fixed << std::setprecision(6) << "," << ipp() << "," << nc_pct() << ",";
  if (auto c = icc()) {
    os << *c;
  } else {
    os << "NONE";
  }
  return os.str();
}

BasinStats stats(const BasinField& field) {
  BasinStats s;
  s.pixels = field.cells.size();
  for (const auto& c : field.cells) {
    const auto it = static_cast<std::uint64_t>(c.iters);
    s.iters_total += it;
    if (c.converged()) {
      s.iters_convergent += it;
    } else {
      ++s.nonconvergent;
      s.iters_nonconvergent += it;
    }
  }
  return s;
}

std::array<std::uint8_t, 3> hsv_to_rgb(double h, double v) {
  const double h6 = (h - std::floor(h)) * 6.0;
  const int sector = static_cast<int>(h6) % 6;
  const double f = h6 - std::floor(h6);
  const double q = v * (1.0 - f);
  const double t = v * f;
  double r = 0, g = 0, b = 0;
  switch (sector) {
    case 0: r = v, g = t, b = 0; break;
    case 1: r = q, g = v, b = 0; break;
    case 2: r = 0, g = v, b = t; break;
    case 3: r = 0, g = q, b = v; break;
    case 4: r = t, g = 0, b = v; break;
    default: r = v, g = 0, b = q; break;
  }
  auto byte = [](double x) { return static_cast<std::uint8_t>(std::lround(std::clamp(x, 0.0, 1.0) * 255.0)); };
  return {byte(r), byte(g), byte(b)};
}

std::string ppm_bytes(const BasinField& field) {
  std::string out = "P6\n" + std::to_string(field.grid.width) + " " + std::to_string(field.grid.height) + "\n255\n";
  const std::size_t header = out.size();
  out.resize(header + 3 * field.cells.size());
  const double roots = static_cast<double>(field.poly.roots.size());
  std::size_t pos = header;
  for (const auto& c : field.cells) {
    std::array<std::uint8_t, 3> rgb{0, 0, 0};
    if (c.converged()) {
      const double v = std::max(0.25, 1.0 - static_cast<double>(c.iters) / (field.max_iters + 1));
      rgb = hsv_to_rgb(c.root / roots, v);
    }
    for (auto byte : rgb) out[pos++] = static_cast<char>(byte);
  }
  return out;
}

void write_image(const BasinField& field, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  const std::string bytes = ppm_bytes(field);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<SweepEntry> sweep(const std::vector<std::array<GaussRational, 3>>& params, const TestPolynomial& poly,
                              const GridSpec& grid, const BasinOptions& opt) {
  std::vector<SweepEntry> out;
  out.reserve(params.size());
  for (const auto& [a, b, c] : params) {
    SweepEntry e{a, b, c, {}, render(MethodSpec::family(a, b, c), poly, grid, opt)};
    e.stats = stats(e.field);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace rootlab
