#include "qigalab/generation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qigalab {

GenerationSnapshot make_snapshot(std::size_t generation, ClassicalPopulation population,
                                 std::vector<double> fitness) {
  if (fitness.empty() || fitness.size() != population.size()) {
    throw std::invalid_argument("snapshot needs one fitness value per individual");
  }
  GenerationSnapshot s;
  s.generation = generation;
  const auto best = std::max_element(fitness.begin(), fitness.end());
  s.best_index = static_cast<std::size_t>(best - fitness.begin());
  s.best_fitness = *best;
  s.mean_fitness =
      std::accumulate(fitness.begin(), fitness.end(), 0.0) / static_cast<double>(fitness.size());
  s.population = std::move(population);
  s.fitness = std::move(fitness);
  return s;
}

}  // namespace qigalab
