#pragma once

// Basins of attraction: per-pixel iteration over a complex grid, root
// classification, statistics and PPM rendering.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rootlab/errors.hpp"
#include "rootlab/methods.hpp"
#include "rootlab/mpnum.hpp"
#include "rootlab/problems.hpp"

namespace rootlab {

struct GridSpec {
  double x_min = -3, x_max = 3, y_min = -3, y_max = 3;
  int width = 512, height = 512;

  /// "x_min:x_max:y_min:y_max:width:height".
  static GridSpec parse(std::string_view text);
  void validate() const;
  std::size_t size() const { return static_cast<std::size_t>(width) * static_cast<std::size_t>(height); }
  /// Center of pixel (i, j); row 0 is the top edge (y_max).
  HwComplex center(int i, int j) const;
  std::string str() const;
};

inline constexpr int kNoRoot = -1;

struct BasinCell {
  int root = kNoRoot;  // index into the polynomial's root list, or kNoRoot
  int iters = 0;

  bool converged() const { return root != kNoRoot; }
  bool operator==(const BasinCell&) const = default;
};

/// Iteration count recorded for a nonconvergent pixel: the full budget, or
/// only the steps performed before the orbit stopped.
enum class NonconvergentCount { max_iters, performed };

struct BasinOptions {
  int max_iters = 15;
  NonconvergentCount count = NonconvergentCount::max_iters;
  double capture_tol = 1e-3;
  double escape_radius = 1e8;
  unsigned threads = 1;
};

/// Outcome of one seed, with the distance to the nearest root when the orbit stopped.
struct PixelOutcome {
  BasinCell cell;
  int steps = 0;  // steps actually performed
  double distance = std::numeric_limits<double>::infinity();
};

/// Iterates one seed: capture is tested before the first step and after every
/// step; a non-finite iterate, |z| > escape_radius, or a step breakdown stops
/// the orbit as nonconvergent early. A nonconvergent pixel records max_iters or
/// the steps performed, per opt.count.
template <class T, class P>
PixelOutcome classify_seed(const Stepper<T>& stepper, const P& f, const std::vector<T>& roots, T z,
                           const BasinOptions& opt) {
  PixelOutcome out;
  auto nonconvergent = [&] {
    out.cell.root = kNoRoot;
    out.cell.iters = opt.count == NonconvergentCount::max_iters ? opt.max_iters : out.steps;
    return out;
  };
  for (int n = 0;; ++n) {
    out.steps = n;
    out.cell.iters = n;
    if (!Scalar<T>::is_finite(z) || !(Scalar<T>::magnitude(z) <= opt.escape_radius)) return nonconvergent();
    double best = std::numeric_limits<double>::infinity();
    int best_k = kNoRoot;
    for (std::size_t k = 0; k < roots.size(); ++k) {
      const double d = Scalar<T>::magnitude(z - roots[k]);
      if (d < best) {
        best = d;
        best_k = static_cast<int>(k);
      }
    }
    out.distance = best;
    if (best < opt.capture_tol) {
      out.cell.root = best_k;
      return out;
    }
    if (n == opt.max_iters) return nonconvergent();
    try {
      z = stepper(f, z).next;
    } catch (const StepBreakdown&) {
      return nonconvergent();
    }
  }
}

struct BasinField {
  GridSpec grid;
  MethodSpec method;
  TestPolynomial poly;
  int max_iters = 15;
  double capture_tol = 1e-3;
  std::vector<BasinCell> cells;  // row-major, row 0 at the top

  const BasinCell& at(int i, int j) const {
    return cells[static_cast<std::size_t>(j) * static_cast<std::size_t>(grid.width) + static_cast<std::size_t>(i)];
  }
};

/// Renders in hardware double complex; rows are distributed over threads and
/// written by index, so the field does not depend on scheduling.
BasinField render(const MethodSpec& method, const TestPolynomial& poly, const GridSpec& grid,
                  const BasinOptions& opt = {});

/// Classifies one seed at `digits` decimal digits.
PixelOutcome classify_big(const MethodSpec& method, const TestPolynomial& poly, HwComplex z0, int digits,
                          const BasinOptions& opt = {});

struct BasinStats {
  std::uint64_t pixels = 0;
  std::uint64_t nonconvergent = 0;
  std::uint64_t iters_total = 0;
  std::uint64_t iters_convergent = 0;
  std::uint64_t iters_nonconvergent = 0;

  Rational ipp_exact() const;
  Rational nc_fraction_exact() const;
  std::optional<Rational> icc_exact() const;
  std::optional<Rational> nc_mean_exact() const;

  double ipp() const { return ipp_exact().get_d(); }
  double nc_pct() const { return 100.0 * nc_fraction_exact().get_d(); }
  std::optional<double> icc() const;

  /// ipp = nc * mean(nonconvergent iters) + (1 - nc) * icc, in exact rationals.
  bool decomposition_holds() const;

  static std::string csv_header();  // method,poly,width,height,ipp,nc_pct,icc
  std::string csv_record(const BasinField& field) const;
};

BasinStats stats(const BasinField& field);

/// Binary P6: root k of r gets hue k/r at full saturation and value
/// max(0.25, 1 - iters/(max_iters+1)); nonconvergent pixels are black.
std::string ppm_bytes(const BasinField& field);
void write_image(const BasinField& field, const std::string& path);

/// RGB bytes for hue h in [0,1), saturation 1, value v.
std::array<std::uint8_t, 3> hsv_to_rgb(double h, double v);

struct SweepEntry {
  GaussRational a, b, c;
  BasinStats stats;
  BasinField field;
};

/// One family render per (a, b, c) triple.
std::vector<SweepEntry> sweep(const std::vector<std::array<GaussRational, 3>>& params, const TestPolynomial& poly,
                              const GridSpec& grid, const BasinOptions& opt = {});

}  // namespace rootlab
