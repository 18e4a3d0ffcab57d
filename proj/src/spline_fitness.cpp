#include "qigalab/spline_fitness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qigalab/detail/summation.hpp"
#include "qigalab/errors.hpp"

namespace qigalab {
namespace {

constexpr std::array<Knot, 15> kReferenceKnots{{
    {0, 0}, {10, 20}, {20, 40}, {30, 10}, {40, 25}, {56, 33}, {60, 80}, {65, 45},
    {80, 60}, {90, 20}, {100, 0}, {120, 20}, {150, 40}, {180, 20}, {200, 0},
}};

// Thomas algorithm. sub[0] and super[n-1] are ignored.
std::vector<double> solve_tridiagonal(std::vector<double> sub, std::vector<double> diag,
                                      std::vector<double> super, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double w = sub[i] / diag[i - 1];
    diag[i] -= w * super[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (rhs[i] - super[i] * x[i + 1]) / diag[i];
  }
  return x;
}

// Second derivatives M_i of the interpolant at each knot.
std::vector<double> solve_curvatures(const std::vector<Knot>& k, BoundaryCondition bc) {
  const std::size_t n = k.size();
  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = k[i + 1].x - k[i].x;
    slope[i] = (k[i + 1].y - k[i].y) / h[i];
  }

  std::vector<double> m(n, 0.0);
  if (bc == BoundaryCondition::Clamped) {
    std::vector<double> sub(n), diag(n), super(n), rhs(n);
    diag[0] = 2 * h[0];
    super[0] = h[0];
    rhs[0] = 6 * slope[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
      sub[i] = h[i - 1];
      diag[i] = 2 * (h[i - 1] + h[i]);
      super[i] = h[i];
      rhs[i] = 6 * (slope[i] - slope[i - 1]);
    }
    sub[n - 1] = h[n - 2];
    diag[n - 1] = 2 * h[n - 2];
    rhs[n - 1] = -6 * slope[n - 2];
    return solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));
  }

  // Interior unknowns M_1 .. M_{n-2}.
  const std::size_t u = n - 2;
  std::vector<double> sub(u), diag(u), super(u), rhs(u);
  for (std::size_t r = 0; r < u; ++r) {
    const std::size_t i = r + 1;
    sub[r] = h[i - 1];
    diag[r] = 2 * (h[i - 1] + h[i]);
    super[r] = h[i];
    rhs[r] = 6 * (slope[i] - slope[i - 1]);
  }
  if (bc == BoundaryCondition::NotAKnot) {
    // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1, substituted into the first row.
    const double h0 = h[0], h1 = h[1];
    diag[0] += h0 * (h0 + h1) / h1;
    super[0] -= h0 * h0 / h1;
    // Mirror image at the right end.
    const double ha = h[n - 2], hb = h[n - 3];
    diag[u - 1] += ha * (ha + hb) / hb;
    sub[u - 1] -= ha * ha / hb;
  }
  const auto interior =
      solve_tridiagonal(std::move(sub), std::move(diag), std::move(super), std::move(rhs));
  std::copy(interior.begin(), interior.end(), m.begin() + 1);
  if (bc == BoundaryCondition::NotAKnot) {
    m[0] = ((h[0] + h[1]) * m[1] - h[0] * m[2]) / h[1];
    m[n - 1] = ((h[n - 2] + h[n - 3]) * m[n - 2] - h[n - 2] * m[n - 3]) / h[n - 3];
  }
  return m;
}

}  // namespace

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "natural") return BoundaryCondition::Natural;
  if (name == "not-a-knot") return BoundaryCondition::NotAKnot;
  if (name == "clamped") return BoundaryCondition::Clamped;
  throw ParseError("unknown spline boundary condition \"" + std::string(name) +
                   "\" (expected natural, not-a-knot or clamped)");
}

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Natural: return "natural";
    case BoundaryCondition::NotAKnot: return "not-a-knot";
    case BoundaryCondition::Clamped: return "clamped";
  }
  return "?";
}

std::span<const Knot> reference_knots() { return kReferenceKnots; }

std::vector<Knot> read_knots(std::istream& in) {
  std::vector<Knot> knots;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    Knot k{};
    if (!(fields >> k.x)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("knot file line " + std::to_string(lineno) + ": expected `x y`");
    }
    std::string extra;
    if (!(fields >> k.y) || (fields >> extra)) {
      throw ParseError("knot file line " + std::to_string(lineno) + ": expected `x y`");
    }
    knots.push_back(k);
  }
  return knots;
}

std::vector<Knot> read_knots(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open knot file " + path.string());
  return read_knots(in);
}

SplineFitness::SplineFitness(std::vector<Knot> knots, BoundaryCondition bc)
    : knots_(std::move(knots)), bc_(bc) {
  if (knots_.size() < 4) throw std::invalid_argument("spline needs at least 4 knots");
  for (std::size_t i = 1; i < knots_.size(); ++i) {
    if (!(knots_[i].x > knots_[i - 1].x)) {
      throw std::invalid_argument("knot x coordinates must be strictly increasing");
    }
  }
  curvature_ = solve_curvatures(knots_, bc_);

  segments_.reserve(knots_.size() - 1);
  for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
    const double h = knots_[i + 1].x - knots_[i].x;
    const double mi = curvature_[i], mj = curvature_[i + 1];
    segments_.push_back({
        knots_[i].y,
        (knots_[i + 1].y - knots_[i].y) / h - h * (2 * mi + mj) / 6,
        mi / 2,
        (mj - mi) / (6 * h),
    });
  }
}

double SplineFitness::operator()(double x) const {
  if (!(x >= lo() && x <= hi())) {
    throw std::domain_error("spline evaluated outside [" + std::to_string(lo()) + ", " +
                            std::to_string(hi()) + "]");
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](double v, const Knot& k) { return v < k.x; });
  std::size_t i = static_cast<std::size_t>(it - knots_.begin());
  i = std::clamp<std::size_t>(i, 1, segments_.size()) - 1;
  const auto& s = segments_[i];
  const double t = x - knots_[i].x;
  return s.a + t * (s.b + t * (s.c + t * s.d));
}

SplineFitness build_spline(std::vector<Knot> knots, BoundaryCondition bc) {
  return SplineFitness(std::move(knots), bc);
}

double decode_value(std::uint64_t v, std::size_t bits, double lo, double hi) {
  if (bits == 0 || bits > 63) throw std::invalid_argument("decode supports 1..63 bits");
  const double denom = static_cast<double>((std::uint64_t{1} << bits) - 1);
  return lo + (hi - lo) * (static_cast<double>(v) / denom);
}

double decode(const BinaryChromosome& c, double lo, double hi) {
  return decode_value(c.value(), c.size(), lo, hi);
}

Maximum global_argmax(const SplineFitness& f, double grid_step) {
  if (!(grid_step > 0)) throw std::invalid_argument("grid step must be positive");
  const double lo = f.lo(), hi = f.hi();
  const auto steps = static_cast<std::size_t>(std::floor((hi - lo) / grid_step));

  Maximum best{lo, f(lo)};
  for (std::size_t k = 1; k <= steps + 1; ++k) {
    const double x = std::min(hi, lo + static_cast<double>(k) * grid_step);
    if (const double v = f(x); v > best.f) best = {x, v};
  }

  // Golden-section search on the bracket around the best grid point.
  constexpr double kInvPhi = 0.6180339887498949;
  double a = std::max(lo, best.x - grid_step);
  double b = std::min(hi, best.x + grid_step);
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-7) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (const double v = f(x); v >= best.f) best = {x, v};
  return best;
}

std::vector<double> fitness_landscape(const SplineFitness& f, std::size_t bits) {
  if (bits == 0) throw std::invalid_argument("bit length must be at least 1");
  if (bits > kMaxExhaustiveBits) {
    throw RefusalError("exhaustive sweep over 2^" + std::to_string(bits) +
                       " chromosomes exceeds the 2^" + std::to_string(kMaxExhaustiveBits) +
                       " cap");
  }
  const std::uint64_t count = std::uint64_t{1} << bits;
  std::vector<double> values(count);
  for (std::uint64_t v = 0; v < count; ++v) {
    values[v] = f(decode_value(v, bits, f.lo(), f.hi()));
  }
  return values;
}

double mean_fitness_exhaustive(const SplineFitness& f, std::size_t bits) {
  const auto values = fitness_landscape(f, bits);
  detail::CompensatedSum sum;
  for (double v : values) sum.add(v);
  return sum.value() / static_cast<double>(values.size());
}

FitnessFn decoded_fitness(const SplineFitness& f) {
  return [f](const BinaryChromosome& c) { return f(decode(c, f.lo(), f.hi())); };
}

}  // namespace qigalab
