#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qigalab/chromosome.hpp"
#include "qigalab/generation.hpp"
#include "qigalab/random.hpp"
#include "qigalab/spline_fitness.hpp"

namespace qigalab {

// Simple Genetic Algorithm: roulette-wheel selection, one-point crossover,
// per-bit mutation, full generational replacement. No elitism, no scaling.
struct SgaConfig {
  std::size_t population_size = 10;
  std::size_t chromosome_length = 20;
  double crossover_prob = 0.9;
  double mutation_prob = 0.005;
  std::size_t max_generations = 160;
  std::uint64_t rng_seed = 1;

  // Human-readable violations; empty when valid.
  std::vector<std::string> validate() const;
};

// Index drawn with probability fitness[i] / sum(fitness). All-zero fitness
// falls back to a uniform draw. Throws std::invalid_argument on a negative
// or non-finite value, or an empty list.
std::size_t roulette_select_index(std::span<const double> fitness, Rng& rng);
const BinaryChromosome& roulette_select(std::span<const BinaryChromosome> population,
                                        std::span<const double> fitness, Rng& rng);

// Exchanges the suffixes starting at `cut` (1 <= cut <= m - 1).
std::pair<BinaryChromosome, BinaryChromosome> crossover_at(const BinaryChromosome& a,
                                                           const BinaryChromosome& b,
                                                           std::size_t cut);

// With probability p_c, crossover_at a uniform cut in {1..m-1}; otherwise
// copies of the parents. Throws std::invalid_argument on a length mismatch
// or m < 2.
std::pair<BinaryChromosome, BinaryChromosome> one_point_crossover(const BinaryChromosome& a,
                                                                  const BinaryChromosome& b,
                                                                  Rng& rng, double p_c);

// Flips every bit independently with probability p_m.
BinaryChromosome uniform_mutation(BinaryChromosome c, Rng& rng, double p_m);

// One snapshot per generation, generation 0 being the random initial
// population. Throws std::invalid_argument when the config is invalid.
std::vector<GenerationSnapshot> run_sga(const SgaConfig& config, const FitnessFn& fitness);

}  // namespace qigalab
