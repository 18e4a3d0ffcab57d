#include "qigalab/sga.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qigalab {

std::vector<std::string> SgaConfig::validate() const {
  std::vector<std::string> errors;
  if (population_size < 1) errors.push_back("sga.population_size must be at least 1");
  if (chromosome_length < 2) errors.push_back("sga.chromosome_length must be at least 2");
  if (chromosome_length > 63) errors.push_back("sga.chromosome_length must be at most 63");
  if (max_generations < 1) errors.push_back("sga.max_generations must be at least 1");
  if (!(crossover_prob >= 0 && crossover_prob <= 1)) {
    errors.push_back("sga.crossover_prob must lie in [0, 1]");
  }
  if (!(mutation_prob >= 0 && mutation_prob <= 1)) {
    errors.push_back("sga.mutation_prob must lie in [0, 1]");
  }
  return errors;
}

std::size_t roulette_select_index(std::span<const double> fitness, Rng& rng) {
  if (fitness.empty()) throw std::invalid_argument("roulette selection over an empty population");
  double total = 0.0;
  for (double f : fitness) {
    if (!(f >= 0.0) || !std::isfinite(f)) {
      throw std::invalid_argument("roulette selection requires finite non-negative fitness");
    }
    total += f;
  }
  if (total == 0.0) return uniform_index(rng, fitness.size());

  const double target = uniform01(rng) * total;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    cumulative += fitness[i];
    if (target < cumulative) return i;
  }
  // Rounding left target at the very top: the last individual with mass wins.
  for (std::size_t i = fitness.size(); i-- > 0;) {
    if (fitness[i] > 0.0) return i;
  }
  return fitness.size() - 1;
}

const BinaryChromosome& roulette_select(std::span<const BinaryChromosome> population,
                                        std::span<const double> fitness, Rng& rng) {
  if (population.size() != fitness.size()) {
    throw std::invalid_argument("population and fitness sizes differ");
  }
  return population[roulette_select_index(fitness, rng)];
}

std::pair<BinaryChromosome, BinaryChromosome> crossover_at(const BinaryChromosome& a,
                                                           const BinaryChromosome& b,
                                                           std::size_t cut) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
  if (cut < 1 || cut >= a.size()) throw std::invalid_argument("crossover cut out of range");
  BinaryChromosome c1 = a, c2 = b;
  for (std::size_t i = cut; i < a.size(); ++i) std::swap(c1[i], c2[i]);
  return {std::move(c1), std::move(c2)};
}

std::pair<BinaryChromosome, BinaryChromosome> one_point_crossover(const BinaryChromosome& a,
                                                                  const BinaryChromosome& b,
                                                                  Rng& rng, double p_c) {
  if (a.size() != b.size()) throw std::invalid_argument("crossover parents differ in length");
  if (a.size() < 2) throw std::invalid_argument("crossover needs chromosomes of length >= 2");
  if (!bernoulli(rng, p_c)) return {a, b};
  const std::size_t cut = 1 + uniform_index(rng, a.size() - 1);
  return crossover_at(a, b, cut);
}

BinaryChromosome uniform_mutation(BinaryChromosome c, Rng& rng, double p_m) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (bernoulli(rng, p_m)) c[i] ^= 1U;
  }
  return c;
}

std::vector<GenerationSnapshot> run_sga(const SgaConfig& config, const FitnessFn& fitness) {
  if (auto errors = config.validate(); !errors.empty()) {
    throw std::invalid_argument("invalid SGA configuration: " + errors.front());
  }
  Rng rng(config.rng_seed);
  const std::size_t n = config.population_size;
  const std::size_t m = config.chromosome_length;

  auto evaluate = [&](const ClassicalPopulation& p) {
    std::vector<double> f;
    f.reserve(p.size());
    for (const auto& c : p) f.push_back(fitness(c));
    return f;
  };

  ClassicalPopulation population;
  population.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    BinaryChromosome c(m);
    for (std::size_t j = 0; j < m; ++j) c[j] = bernoulli(rng, 0.5) ? 1 : 0;
    population.push_back(std::move(c));
  }

  std::vector<GenerationSnapshot> history;
  history.reserve(config.max_generations + 1);
  history.push_back(make_snapshot(0, population, evaluate(population)));

  for (std::size_t t = 1; t <= config.max_generations; ++t) {
    const auto& previous = history.back();

    // Selection weights are floored at zero: roulette needs non-negative mass
    // and the spline objective undershoots slightly below zero near some knots.
    std::vector<double> weights(previous.fitness.size());
    std::transform(previous.fitness.begin(), previous.fitness.end(), weights.begin(),
                   [](double v) { return std::max(v, 0.0); });

    ClassicalPopulation parents;
    parents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      parents.push_back(roulette_select(previous.population, weights, rng));
    }

    // Consecutive pairs mate; an odd one out passes straight to mutation.
    ClassicalPopulation offspring;
    offspring.reserve(n);
    for (std::size_t i = 0; i + 1 < n; i += 2) {
      auto [c1, c2] = one_point_crossover(parents[i], parents[i + 1], rng, config.crossover_prob);
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
    }
    if (n % 2 == 1) offspring.push_back(parents.back());

    for (auto& c : offspring) c = uniform_mutation(std::move(c), rng, config.mutation_prob);

    auto f = evaluate(offspring);
    history.push_back(make_snapshot(t, std::move(offspring), std::move(f)));
  }
  return history;
}

}  // namespace qigalab
