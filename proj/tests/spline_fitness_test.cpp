#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "qigalab/errors.hpp"
#include "qigalab/spline_fitness.hpp"

using namespace qigalab;

namespace {

std::vector<Knot> reference() {
  const auto k = reference_knots();
  return {k.begin(), k.end()};
}

const BoundaryCondition kAll[] = {BoundaryCondition::Natural, BoundaryCondition::NotAKnot,
                                  BoundaryCondition::Clamped};

// Values computed independently with scipy.interpolate.CubicSpline.
struct ScipyPoint {
  double x, natural, not_a_knot, clamped;
};
const ScipyPoint kScipy[] = {
    {5.0, 8.217279996971781, 3.3463640071627165, 5.800839826323891},
    {15.0, 35.34816000908466, 36.65363599283728, 35.99580086838054},
    {58.0, 61.20585344422329, 61.207251591725196, 61.20654079617228},
    {60.488, 80.83494960203105, 80.83468039331368, 80.8348211073636},
    {62.5, 70.2032396476071, 70.20267880769039, 70.20298914742982},
    {123.4, 24.474715783893085, 24.465055986716486, 24.397925724680885},
    {199.0, 1.0122856886939284, 0.8953892954047384, 0.08344054276555823},
};

// For a cubic, (f(x) - 2 f(x - h) + f(x - 2h)) / h^2 = f'' - h f''' exactly,
// so 2 D(h/2) - D(h) recovers the one-sided second derivative.
double left_second_derivative(const SplineFitness& f, double x, double h) {
  auto d = [&](double s) { return (f(x) - 2 * f(x - s) + f(x - 2 * s)) / (s * s); };
  return 2 * d(h / 2) - d(h);
}
double right_second_derivative(const SplineFitness& f, double x, double h) {
  auto d = [&](double s) { return (f(x) - 2 * f(x + s) + f(x + 2 * s)) / (s * s); };
  return 2 * d(h / 2) - d(h);
}

}  // namespace

TEST(SplineFitness, InterpolatesEveryKnot) {
  for (auto bc : kAll) {
    const SplineFitness f(reference(), bc);
    for (const auto& k : reference_knots()) EXPECT_NEAR(f(k.x), k.y, 1e-9) << to_string(bc);
  }
}

TEST(SplineFitness, MatchesScipyCubicSpline) {
  const SplineFitness natural(reference(), BoundaryCondition::Natural);
  const SplineFitness nak(reference(), BoundaryCondition::NotAKnot);
  const SplineFitness clamped(reference(), BoundaryCondition::Clamped);
  for (const auto& p : kScipy) {
    EXPECT_NEAR(natural(p.x), p.natural, 1e-9) << p.x;
    EXPECT_NEAR(nak(p.x), p.not_a_knot, 1e-9) << p.x;
    EXPECT_NEAR(clamped(p.x), p.clamped, 1e-9) << p.x;
  }
}

TEST(SplineFitness, SecondDerivativeContinuousAtInteriorKnots) {
  for (auto bc : kAll) {
    const SplineFitness f(reference(), bc);
    const auto knots = f.knots();
    for (std::size_t i = 1; i + 1 < knots.size(); ++i) {
      const double x = knots[i].x;
      const double jump =
          left_second_derivative(f, x, 0.02) - right_second_derivative(f, x, 0.02);
      EXPECT_LT(std::abs(jump), 1e-6) << to_string(bc) << " knot " << i;
    }
  }
}

TEST(SplineFitness, BoundaryConditionsHold) {
  const SplineFitness natural(reference(), BoundaryCondition::Natural);
  EXPECT_NEAR(natural.knot_curvatures().front(), 0.0, 1e-12);
  EXPECT_NEAR(natural.knot_curvatures().back(), 0.0, 1e-12);
  EXPECT_NEAR(right_second_derivative(natural, natural.lo(), 0.02), 0.0, 1e-6);

  const SplineFitness clamped(reference(), BoundaryCondition::Clamped);
  const double h = 1e-6;
  EXPECT_NEAR((clamped(h) - clamped(0.0)) / h, 0.0, 1e-4);
  EXPECT_NEAR((clamped(200.0) - clamped(200.0 - h)) / h, 0.0, 1e-4);
}

TEST(SplineFitness, CollinearKnotsGiveTheLine) {
  const std::vector<Knot> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  for (auto bc : {BoundaryCondition::Natural, BoundaryCondition::NotAKnot}) {
    const SplineFitness f(line, bc);
    EXPECT_NEAR(f(1.5), 1.5, 1e-12);
    EXPECT_NEAR(f(0.25), 0.25, 1e-12);
  }
}

TEST(SplineFitness, RejectsBadKnots) {
  EXPECT_THROW(SplineFitness({{0, 0}, {1, 1}, {2, 0}}), std::invalid_argument);
  EXPECT_THROW(SplineFitness({{0, 0}, {2, 1}, {1, 0}, {3, 3}}), std::invalid_argument);
  EXPECT_THROW(SplineFitness({{0, 0}, {1, 1}, {1, 0}, {3, 3}}), std::invalid_argument);
}

TEST(SplineFitness, RefusesToExtrapolate) {
  const SplineFitness f(reference());
  EXPECT_THROW(f(-0.001), std::domain_error);
  EXPECT_THROW(f(200.001), std::domain_error);
  EXPECT_NO_THROW(f(0.0));
  EXPECT_NO_THROW(f(200.0));
}

TEST(SplineFitness, BoundaryConditionNames) {
  for (auto bc : kAll) EXPECT_EQ(parse_boundary_condition(to_string(bc)), bc);
  EXPECT_THROW(parse_boundary_condition("periodic"), std::invalid_argument);
}

TEST(ReadKnots, SkipsCommentsAndBlankLines) {
  std::istringstream in("# header\n0 1\n\n 1 2  # trailing\n2 0\n3 5\n");
  const auto knots = read_knots(in);
  ASSERT_EQ(knots.size(), 4u);
  EXPECT_EQ(knots[1].x, 1.0);
  EXPECT_EQ(knots[1].y, 2.0);
}

TEST(ReadKnots, RejectsMalformedLines) {
  std::istringstream one_value("0 1\n1\n");
  EXPECT_THROW(read_knots(one_value), ParseError);
  std::istringstream junk("0 1\n1 2 3\n");
  EXPECT_THROW(read_knots(junk), ParseError);
}

TEST(ReadKnots, BundledFileMatchesBuiltInKnots) {
  const auto knots = read_knots(std::filesystem::path(QIGALAB_DATA_DIR) / "reference_knots.txt");
  const auto builtin = reference_knots();
  ASSERT_EQ(knots.size(), builtin.size());
  for (std::size_t i = 0; i < knots.size(); ++i) {
    EXPECT_EQ(knots[i].x, builtin[i].x);
    EXPECT_EQ(knots[i].y, builtin[i].y);
  }
}

TEST(Decode, Examples) {
  EXPECT_NEAR(decode(BinaryChromosome::parse("01001101011011001110"), 0, 200), 60.4886, 5e-4);
  EXPECT_EQ(decode(BinaryChromosome(20), 0, 200), 0.0);
  EXPECT_EQ(decode(BinaryChromosome::parse(std::string(20, '1')), 0, 200), 200.0);
  EXPECT_DOUBLE_EQ(decode_value(317134, 20, 0, 200), 200.0 * 317134 / 1048575);
}

TEST(Decode, StrictlyIncreasingInTheIntegerValue) {
  double previous = -1.0;
  for (std::uint64_t v = 0; v < (1u << 20); ++v) {
    const double x = decode_value(v, 20, 0, 200);
    ASSERT_GT(x, previous) << v;
    previous = x;
  }
}

TEST(GlobalArgmax, ReferenceLandscape) {
  const SplineFitness f(reference());
  const auto best = global_argmax(f, 0.01);
  EXPECT_NEAR(best.x, 60.488, 0.05);
  EXPECT_NEAR(best.f, 80.834, 0.5);
}

TEST(GlobalArgmax, EndpointMaximum) {
  const SplineFitness f({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, BoundaryCondition::Natural);
  const auto best = global_argmax(f, 0.01);
  EXPECT_NEAR(best.x, 3.0, 1e-9);
  EXPECT_NEAR(best.f, 3.0, 1e-9);
}

TEST(GlobalArgmax, NoDenseGridPointIsHigher) {
  for (auto bc : kAll) {
    const SplineFitness f({{0, 0}, {1, 1}, {2, 0}, {3, -1}}, bc);
    const auto best = global_argmax(f, 0.01);
    double brute = -INFINITY;
    for (int i = 0; i <= 30000; ++i) brute = std::max(brute, f(i * 1e-4));
    EXPECT_GE(best.f, brute - 1e-9) << to_string(bc);
    EXPECT_NEAR(f(best.x), best.f, 1e-12);
  }
  // scipy: not-a-knot peak of this spline is 1.02640 at x = 0.8453.
  const auto nak = global_argmax(SplineFitness({{0, 0}, {1, 1}, {2, 0}, {3, -1}}), 0.01);
  EXPECT_NEAR(nak.x, 0.8453, 1e-3);
  EXPECT_NEAR(nak.f, 1.02640, 1e-5);
}

TEST(MeanFitness, MatchesScipyAverage) {
  const SplineFitness nak(reference(), BoundaryCondition::NotAKnot);
  EXPECT_NEAR(mean_fitness_exhaustive(nak, 20), 25.068882329928798, 1e-9);
  EXPECT_NEAR(mean_fitness_exhaustive(nak, 10), 25.044435525108028, 1e-9);
  const SplineFitness natural(reference(), BoundaryCondition::Natural);
  EXPECT_NEAR(mean_fitness_exhaustive(natural, 20), 25.211599045976794, 1e-9);
  const SplineFitness clamped(reference(), BoundaryCondition::Clamped);
  EXPECT_NEAR(mean_fitness_exhaustive(clamped, 10), 25.01767718285315, 1e-9);
}

TEST(MeanFitness, ConstantSpline) {
  const SplineFitness f({{0, 7}, {1, 7}, {2, 7}, {5, 7}}, BoundaryCondition::Natural);
  EXPECT_NEAR(mean_fitness_exhaustive(f, 8), 7.0, 1e-12);
}

TEST(MeanFitness, CoarseAndFineEncodingsAgree) {
  const SplineFitness f(reference());
  EXPECT_NEAR(mean_fitness_exhaustive(f, 10), mean_fitness_exhaustive(f, 20), 0.2);
}

TEST(MeanFitness, RefusesAboveTheCap) {
  const SplineFitness f(reference());
  EXPECT_THROW(mean_fitness_exhaustive(f, kMaxExhaustiveBits + 1), RefusalError);
  EXPECT_THROW(fitness_landscape(f, 64), RefusalError);
}

TEST(DecodedFitness, ComposesDecodeAndSpline) {
  const SplineFitness f(reference());
  const auto g = decoded_fitness(f);
  const auto c = BinaryChromosome::parse("01001101011011001110");
  EXPECT_EQ(g(c), f(decode(c, 0, 200)));
  const auto landscape = fitness_landscape(f, 20);
  EXPECT_EQ(landscape[c.value()], g(c));
}
