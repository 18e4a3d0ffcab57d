#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qigalab/generation.hpp"
#include "qigalab/qubit.hpp"
#include "qigalab/random.hpp"
#include "qigalab/rotation_table.hpp"
#include "qigalab/spline_fitness.hpp"

namespace qigalab {

struct QigaConfig {
  std::size_t population_size = 10;
  std::size_t chromosome_length = 20;
  std::size_t max_generations = 160;
  RotationLookupTable lookup_table = RotationLookupTable::standard();
  std::uint64_t rng_seed = 1;

  std::vector<std::string> validate() const;
};

// Best individual seen so far and its fitness.
struct StoredBest {
  BinaryChromosome chromosome;
  double fitness = 0.0;
};

/// Rotates every gene of q toward or away from the stored best, per the
/// lookup table. `observed[i]` is the observation of `q[i]` and `fitness[i]`
/// its value; the f(x) >= f(b) key compares against `best.fitness`.
QuantumPopulation update_population(const QuantumPopulation& q,
                                    std::span<const BinaryChromosome> observed,
                                    std::span<const double> fitness, const StoredBest& best,
                                    const RotationLookupTable& table);

struct QigaGeneration {
  GenerationSnapshot observed;  // P(t)
  QuantumPopulation state;      // Q(t), after this generation's update
  StoredBest best_so_far;       // after storing the best of P(t)
};

// Generation 0: initialise Q(0), observe and evaluate P(0), store its best.
// Generation t >= 1: observe Q(t-1) into P(t), evaluate, rotate into Q(t)
// against the stored best, then store the best of P(t) if it improves.
std::vector<QigaGeneration> run_qiga(const QigaConfig& config, const FitnessFn& fitness);

}  // namespace qigalab
