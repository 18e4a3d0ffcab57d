#pragma once

#include <cstddef>
#include <vector>

#include "qigalab/chromosome.hpp"

namespace qigalab {

// One generation of a classical population together with its evaluation.
struct GenerationSnapshot {
  std::size_t generation = 0;
  ClassicalPopulation population;
  std::vector<double> fitness;  // parallel to population
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  std::size_t best_index = 0;
};

GenerationSnapshot make_snapshot(std::size_t generation, ClassicalPopulation population,
                                 std::vector<double> fitness);

}  // namespace qigalab
