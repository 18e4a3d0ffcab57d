#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "qigalab/chromosome.hpp"

namespace qigalab {

struct Knot {
  double x;
  double y;
};

enum class BoundaryCondition {
  Natural,   // S'' = 0 at both ends
  NotAKnot,  // S''' continuous across the second and the second-to-last knot
  Clamped,   // S' = 0 at both ends
};

BoundaryCondition parse_boundary_condition(std::string_view name);
std::string_view to_string(BoundaryCondition bc);

// The 15 interpolation knots of the reference landscape on [0, 200].
std::span<const Knot> reference_knots();

// Reads `x y` pairs, one per line; blank lines and `#` comments are skipped.
std::vector<Knot> read_knots(std::istream& in);
std::vector<Knot> read_knots(const std::filesystem::path& path);

/// Cubic interpolating spline over an ordered knot list.
///
/// Evaluation is restricted to [lo, hi], the span of the knots; there is no
/// extrapolation. Instances are immutable after construction.
class SplineFitness {
 public:
  // Throws std::invalid_argument for fewer than 4 knots or non-increasing x.
  explicit SplineFitness(std::vector<Knot> knots,
                         BoundaryCondition bc = BoundaryCondition::NotAKnot);

  // Throws std::domain_error outside [lo, hi].
  double operator()(double x) const;
  double eval(double x) const { return (*this)(x); }

  double lo() const noexcept { return knots_.front().x; }
  double hi() const noexcept { return knots_.back().x; }
  std::span<const Knot> knots() const noexcept { return knots_; }
  BoundaryCondition boundary_condition() const noexcept { return bc_; }

  // Second derivative at the knots, as solved for during construction.
  std::span<const double> knot_curvatures() const noexcept { return curvature_; }

 private:
  struct Segment {
    double a, b, c, d;  // a + b t + c t^2 + d t^3, t = x - x_i
  };

  std::vector<Knot> knots_;
  std::vector<double> curvature_;
  std::vector<Segment> segments_;
  BoundaryCondition bc_;
};

SplineFitness build_spline(std::vector<Knot> knots,
                           BoundaryCondition bc = BoundaryCondition::NotAKnot);

// x = lo + (hi - lo) * v / (2^m - 1), v the big-endian value of the bits.
double decode(const BinaryChromosome& c, double lo, double hi);
double decode_value(std::uint64_t v, std::size_t bits, double lo, double hi);

struct Maximum {
  double x;
  double f;
};

// Grid scan at `grid_step`, then golden-section refinement to 1e-6 in x
// around the best grid point.
Maximum global_argmax(const SplineFitness& f, double grid_step);

inline constexpr std::size_t kMaxExhaustiveBits = 24;

// f(decode(c)) for every c of `bits` bits, indexed by c's integer value.
// Throws RefusalError above kMaxExhaustiveBits.
std::vector<double> fitness_landscape(const SplineFitness& f, std::size_t bits);

// Mean of f(decode(c)) over all 2^bits chromosomes on [f.lo(), f.hi()].
double mean_fitness_exhaustive(const SplineFitness& f, std::size_t bits);

using FitnessFn = std::function<double(const BinaryChromosome&)>;

// f composed with decode over the spline's own domain.
FitnessFn decoded_fitness(const SplineFitness& f);

}  // namespace qigalab
