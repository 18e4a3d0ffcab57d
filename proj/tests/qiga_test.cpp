#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "qigalab/errors.hpp"
#include "qigalab/qiga.hpp"
#include "qigalab/schema.hpp"
#include "test_support.hpp"

using namespace qigalab;
using qigalab::testing::chi_square_p_value;
using qigalab::testing::random_quantum_chromosome;
using qigalab::testing::random_schema_text;

namespace {

constexpr double kPi = std::numbers::pi;
const double kHalfSqrt2 = std::sqrt(2.0) / 2;

FitnessFn reference_fitness() {
  static const SplineFitness f = [] {
    const auto k = reference_knots();
    return SplineFitness({k.begin(), k.end()});
  }();
  return decoded_fitness(f);
}

bool is_superposition(const QubitGene& g) {
  return std::abs(g.alpha() - kHalfSqrt2) < 1e-15 && std::abs(g.beta() - kHalfSqrt2) < 1e-15;
}

}  // namespace

TEST(QubitGene, RejectsNonUnitAmplitudes) {
  EXPECT_THROW(QubitGene(1.0, 0.1), std::invalid_argument);
  EXPECT_THROW(QubitGene(0.5, 0.5), std::invalid_argument);
  EXPECT_NO_THROW(QubitGene(0.6, -0.8));
  EXPECT_NO_THROW(QubitGene(-1.0, 0.0));
}

TEST(QubitGene, Probabilities) {
  const QubitGene g(0.5, std::sqrt(3.0) / 2);
  EXPECT_NEAR(g.probability_zero(), 0.25, 1e-15);
  EXPECT_NEAR(g.probability_one(), 0.75, 1e-15);
  EXPECT_NEAR(QubitGene::superposition().probability_one(), 0.5, 1e-15);
}

TEST(QuantumChromosome, Parse) {
  const auto q = QuantumChromosome::parse("0,1,h,0.6:-0.8");
  ASSERT_EQ(q.size(), 4u);
  EXPECT_EQ(q[0], QubitGene::zero());
  EXPECT_EQ(q[1], QubitGene::one());
  EXPECT_EQ(q[2], QubitGene::superposition());
  EXPECT_EQ(q[3].beta(), -0.8);
  EXPECT_THROW(QuantumChromosome::parse("0,2"), ParseError);
  EXPECT_THROW(QuantumChromosome::parse("0.5:0.5"), ParseError);
  EXPECT_THROW(QuantumChromosome::parse(""), ParseError);
}

TEST(QuantumPopulation, RequiresOneLength) {
  EXPECT_THROW(QuantumPopulation({QuantumChromosome(3, QubitGene::zero()),
                                  QuantumChromosome(4, QubitGene::zero())}),
               std::invalid_argument);
}

TEST(InitPopulation, UniformSuperposition) {
  const auto q = init_population(4, 6);
  ASSERT_EQ(q.size(), 4u);
  ASSERT_EQ(q.chromosome_length(), 6u);
  for (const auto& c : q) {
    for (const auto& g : c) EXPECT_TRUE(is_superposition(g));
  }
}

TEST(Observe, DeterministicGenes) {
  Rng rng(1);
  const auto q = QuantumChromosome::parse("1,0,0,1,1");
  for (int i = 0; i < 100; ++i) EXPECT_EQ(observe(q, rng).to_string(), "10011");
}

TEST(Observe, BitFrequency) {
  Rng rng(2);
  const QuantumChromosome q(1, QubitGene(0.5, std::sqrt(3.0) / 2));
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += observe(q, rng)[0];
  EXPECT_NEAR(ones / 10000.0, 0.75, 0.02);
}

TEST(Observe, FollowsTheSamplingDistribution) {
  Rng rng(3);
  for (const auto& q : {init_population(1, 5)[0], random_quantum_chromosome(rng, 5),
                        random_quantum_chromosome(rng, 5)}) {
    std::vector<std::size_t> counts(32, 0);
    for (int i = 0; i < 32000; ++i) ++counts[observe(q, rng).value()];
    EXPECT_GT(chi_square_p_value(counts, sampling_distribution(q)), 0.001);
  }
}

TEST(Observe, UniformCountsWithinFourSigma) {
  Rng rng(4);
  const auto q = init_population(1, 5)[0];
  std::vector<std::size_t> counts(32, 0);
  for (int i = 0; i < 32000; ++i) ++counts[observe(q, rng).value()];
  const double sigma = std::sqrt(32000 * (1.0 / 32) * (31.0 / 32));
  for (auto c : counts) EXPECT_NEAR(static_cast<double>(c), 1000.0, 4 * sigma);
}

TEST(Rotate, Examples) {
  const auto g = rotate(QubitGene::zero(), kPi / 2);
  EXPECT_NEAR(g.alpha(), 0.0, 1e-12);
  EXPECT_NEAR(g.beta(), 1.0, 1e-12);
  EXPECT_EQ(rotate(QubitGene::superposition(), 0.0), QubitGene::superposition());
  const auto h = rotate(QubitGene::superposition(), kPi / 4);
  EXPECT_NEAR(h.alpha(), 0.0, 1e-12);
  EXPECT_NEAR(h.beta(), 1.0, 1e-12);
  const auto back = rotate(rotate(QubitGene(0.6, 0.8), 0.3), -0.3);
  EXPECT_NEAR(back.alpha(), 0.6, 1e-15);
  EXPECT_NEAR(back.beta(), 0.8, 1e-15);
}

TEST(Rotate, PreservesNormalization) {
  Rng rng(5);
  QubitGene g = QubitGene::superposition();
  for (int i = 0; i < 1000000; ++i) {
    const QubitGene next = rotate(g, (uniform01(rng) - 0.5) * kPi);
    ASSERT_LT(std::abs(next.norm_error() - g.norm_error()), 1e-12);
    g = next;
  }
  EXPECT_LT(std::abs(g.norm_error()), 1e-9);
}

TEST(SignRule, AxisStatesStayProductive) {
  const QubitGene states[] = {QubitGene::zero(), QubitGene::one(), QubitGene(-1, 0),
                              QubitGene(0, -1)};
  for (const auto& g : states) {
    const int up = sign_for(SignRule::TowardOne, g);
    const int down = sign_for(SignRule::TowardZero, g);
    if (g.probability_one() < 1) {
      EXPECT_GT(rotate(g, up * 0.01).probability_one(), g.probability_one());
    } else {
      EXPECT_EQ(up, 0);
    }
    if (g.probability_zero() < 1) {
      EXPECT_GT(rotate(g, down * 0.01).probability_zero(), g.probability_zero());
    } else {
      EXPECT_EQ(down, 0);
    }
    EXPECT_EQ(sign_for(SignRule::SignOfProduct, g), 0);
    EXPECT_EQ(sign_for(SignRule::NegSignOfProduct, g), 0);
  }
}

TEST(SignRule, DirectionInEveryQuadrant) {
  for (int k = 0; k < 8; ++k) {
    const double angle = kPi / 8 + k * kPi / 4;
    const QubitGene g(std::cos(angle), std::sin(angle));
    EXPECT_GT(rotate(g, sign_for(SignRule::TowardOne, g) * 0.01).probability_one(),
              g.probability_one());
    EXPECT_GT(rotate(g, sign_for(SignRule::TowardZero, g) * 0.01).probability_zero(),
              g.probability_zero());
  }
  EXPECT_THROW(parse_sign_rule("up"), ParseError);
}

TEST(LookupDelta, StandardTable) {
  const auto table = RotationLookupTable::standard();
  const auto g = QubitGene::superposition();
  EXPECT_EQ(lookup_delta(0, 0, false, g, table), 0.0);
  EXPECT_EQ(lookup_delta(0, 0, true, g, table), 0.0);
  EXPECT_EQ(lookup_delta(0, 1, false, g, table), 0.0);
  EXPECT_NEAR(lookup_delta(0, 1, true, g, table), -0.05 * kPi, 1e-15);
  EXPECT_NEAR(lookup_delta(1, 0, false, g, table), -0.01 * kPi, 1e-15);
  EXPECT_NEAR(lookup_delta(1, 0, true, g, table), 0.025 * kPi, 1e-15);
  EXPECT_NEAR(lookup_delta(1, 1, false, g, table), 0.005 * kPi, 1e-15);
  EXPECT_NEAR(lookup_delta(1, 1, true, g, table), 0.025 * kPi, 1e-15);
  // Second quadrant: alpha < 0 < beta flips the sign.
  const QubitGene q2(-0.6, 0.8);
  EXPECT_NEAR(lookup_delta(1, 1, true, q2, table), -0.025 * kPi, 1e-15);
}

TEST(LookupDelta, ZeroTable) {
  const auto table = RotationLookupTable::zero();
  for (int x = 0; x < 2; ++x) {
    for (int b = 0; b < 2; ++b) {
      for (bool ge : {false, true}) {
        EXPECT_EQ(lookup_delta(x, b, ge, QubitGene(0.6, 0.8), table), 0.0);
      }
    }
  }
}

TEST(RotationLookupTable, RejectsOutOfRangeMagnitude) {
  RotationLookupTable t;
  EXPECT_THROW(t.set(0, 0, false, {-0.1, SignRule::TowardOne}), std::invalid_argument);
  EXPECT_THROW(t.set(0, 0, false, {2.0, SignRule::TowardOne}), std::invalid_argument);
  EXPECT_THROW(t.set(2, 0, false, {0.1, SignRule::TowardOne}), std::invalid_argument);
}

TEST(RotationLookupTable, WriteParseRoundTrip) {
  for (const auto& table : {RotationLookupTable::standard(), RotationLookupTable::zero()}) {
    std::stringstream text;
    table.write(text);
    EXPECT_EQ(RotationLookupTable::parse(text), table);
  }
}

TEST(RotationLookupTable, BundledFilesMatchBuiltIns) {
  const std::filesystem::path dir(QIGALAB_DATA_DIR);
  EXPECT_EQ(RotationLookupTable::load(dir / "standard_lookup_table.txt"),
            RotationLookupTable::standard());
  EXPECT_EQ(RotationLookupTable::load(dir / "zero_lookup_table.txt"),
            RotationLookupTable::zero());
}

TEST(RotationLookupTable, ParseErrors) {
  const std::string rows[] = {"0 0 0 0 zero", "0 0 1 0 zero", "0 1 0 0 zero",
                              "0 1 1 0 zero", "1 0 0 0 zero", "1 0 1 0 zero",
                              "1 1 0 0 zero"};
  std::string seven;
  for (const auto& r : rows) seven += r + "\n";
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return RotationLookupTable::parse(in);
  };
  EXPECT_NO_THROW(parse(seven + "1 1 1 0.5 toward_one\n"));
  EXPECT_NO_THROW(parse(seven + "1 1 true 0.5 toward_one # comment\n"));
  EXPECT_THROW(parse(seven), std::invalid_argument);
  EXPECT_THROW(parse(seven + "1 1 0 0 zero\n"), std::invalid_argument);
  EXPECT_THROW(parse(seven + "1 1 1 0.5 sideways\n"), std::invalid_argument);
  EXPECT_THROW(parse(seven + "1 1 1 0.7 toward_one\n"), std::invalid_argument);
  EXPECT_THROW(parse(seven + "1 1 1 0.5\n"), std::invalid_argument);
}

TEST(UpdatePopulation, ZeroTableLeavesStateUnchanged) {
  Rng rng(6);
  const auto q = init_population(10, 20);
  const auto p = observe(q, rng);
  std::vector<double> f(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) f[i] = reference_fitness()(p[i]);
  const StoredBest best{p[0], f[0]};
  EXPECT_EQ(update_population(q, p, f, best, RotationLookupTable::zero()), q);
}

TEST(UpdatePopulation, RaisesProbabilityTowardTheBestBitUntilSaturation) {
  RotationLookupTable table;
  const double delta = 0.01 * kPi;
  table.set(0, 1, false, {delta, SignRule::TowardOne});
  QuantumPopulation q({QuantumChromosome(1, QubitGene::superposition())});
  const std::vector<BinaryChromosome> observed{BinaryChromosome::parse("0")};
  const std::vector<double> fitness{0.0};
  const StoredBest best{BinaryChromosome::parse("1"), 1.0};
  double previous = q[0][0].probability_one();
  bool saturated = false;
  for (int i = 0; i < 200; ++i) {
    q = update_population(q, observed, fitness, best, table);
    const double p1 = q[0][0].probability_one();
    if (!saturated && p1 <= previous) saturated = true;
    if (saturated) {
      EXPECT_GE(p1, std::pow(std::cos(delta), 2) - 1e-12);
    } else {
      EXPECT_GT(p1, previous);
    }
    previous = p1;
  }
  EXPECT_TRUE(saturated);
}

TEST(UpdatePopulation, RejectsMismatchedInputs) {
  const auto q = init_population(2, 3);
  const std::vector<BinaryChromosome> one{BinaryChromosome(3)};
  const std::vector<BinaryChromosome> two{BinaryChromosome(3), BinaryChromosome(3)};
  const std::vector<double> f2{1, 2};
  const auto table = RotationLookupTable::standard();
  EXPECT_THROW(update_population(q, one, f2, {BinaryChromosome(3), 0}, table),
               std::invalid_argument);
  EXPECT_THROW(update_population(q, two, f2, {BinaryChromosome(4), 0}, table),
               std::invalid_argument);
}

TEST(RunQiga, Deterministic) {
  QigaConfig config;
  config.max_generations = 40;
  config.rng_seed = 9;
  const auto a = run_qiga(config, reference_fitness());
  const auto b = run_qiga(config, reference_fitness());
  ASSERT_EQ(a.size(), 41u);
  for (std::size_t t = 0; t < a.size(); ++t) {
    EXPECT_EQ(a[t].observed.population, b[t].observed.population);
    EXPECT_EQ(a[t].state, b[t].state);
  }
}

TEST(RunQiga, BestSoFarNeverDecreases) {
  QigaConfig config;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    config.rng_seed = seed;
    const auto history = run_qiga(config, reference_fitness());
    for (std::size_t t = 0; t < history.size(); ++t) {
      EXPECT_GE(history[t].best_so_far.fitness, history[t].observed.best_fitness);
      if (t > 0) {
        EXPECT_GE(history[t].best_so_far.fitness, history[t - 1].best_so_far.fitness);
      }
      EXPECT_EQ(reference_fitness()(history[t].best_so_far.chromosome),
                history[t].best_so_far.fitness);
    }
  }
}

TEST(RunQiga, GenerationZeroIsTheInitialState) {
  QigaConfig config;
  config.max_generations = 5;
  const auto history = run_qiga(config, reference_fitness());
  EXPECT_EQ(history[0].state, init_population(10, 20));
  EXPECT_EQ(history[0].best_so_far.fitness, history[0].observed.best_fitness);
}

TEST(RunQiga, ZeroTableKeepsUniformSuperposition) {
  QigaConfig config;
  config.lookup_table = RotationLookupTable::zero();
  config.max_generations = 50;
  for (const auto& g : run_qiga(config, reference_fitness())) {
    EXPECT_EQ(g.state, init_population(10, 20));
  }
}

TEST(RunQiga, StatesStayNormalized) {
  QigaConfig config;
  for (const auto& g : run_qiga(config, reference_fitness())) {
    for (const auto& c : g.state) {
      for (const auto& gene : c) ASSERT_LT(std::abs(gene.norm_error()), 1e-9);
    }
  }
}

TEST(SamplingDistribution, Uniform) {
  const auto d = sampling_distribution(init_population(1, 5)[0]);
  ASSERT_EQ(d.size(), 32u);
  for (double p : d) EXPECT_NEAR(p, 1.0 / 32, 1e-15);
}

TEST(SamplingDistribution, FirstGeneFixedCoversHalfTheDomain) {
  const auto low = sampling_distribution(QuantumChromosome::parse("0,h,h,h,h"));
  const auto high = sampling_distribution(QuantumChromosome::parse("1,h,h,h,h"));
  for (std::size_t v = 0; v < 32; ++v) {
    EXPECT_NEAR(low[v], v < 16 ? 1.0 / 16 : 0.0, 1e-15);
    EXPECT_NEAR(high[v], v < 16 ? 0.0 : 1.0 / 16, 1e-15);
  }
}

TEST(SamplingDistribution, LastGeneFixedGivesAComb) {
  const auto even = sampling_distribution(QuantumChromosome::parse("h,h,h,h,0"));
  const auto odd = sampling_distribution(QuantumChromosome::parse("h,h,h,h,1"));
  for (std::size_t v = 0; v < 32; ++v) {
    EXPECT_NEAR(even[v], v % 2 == 0 ? 1.0 / 16 : 0.0, 1e-15);
    EXPECT_NEAR(odd[v], v % 2 == 1 ? 1.0 / 16 : 0.0, 1e-15);
  }
}

TEST(SamplingDistribution, SumsToOne) {
  Rng rng(7);
  for (std::size_t m = 1; m <= kMaxSamplingBits; m += 3) {
    const auto d = sampling_distribution(random_quantum_chromosome(rng, m));
    double total = 0;
    for (double p : d) total += p;
    EXPECT_NEAR(total, 1.0, 1e-9) << m;
  }
  EXPECT_THROW(sampling_distribution(QuantumChromosome(kMaxSamplingBits + 1,
                                                       QubitGene::superposition())),
               RefusalError);
}

TEST(SamplingDistribution, AgreesWithMatchProbability) {
  Rng rng(8);
  for (int i = 0; i < 300; ++i) {
    const std::size_t m = 1 + uniform_index(rng, 12);
    const auto q = random_quantum_chromosome(rng, m);
    const auto s = Schema::parse(random_schema_text(rng, m));
    const auto d = sampling_distribution(q);
    double total = 0;
    for (std::uint64_t v = 0; v < d.size(); ++v) {
      if (matches(BinaryChromosome::from_value(v, m), s)) total += d[v];
    }
    EXPECT_NEAR(total, match_probability(q, s), 1e-12) << s.symbols();
  }
}
