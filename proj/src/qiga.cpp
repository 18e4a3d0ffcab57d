#include "qigalab/qiga.hpp"

#include <stdexcept>

namespace qigalab {

std::vector<std::string> QigaConfig::validate() const {
  std::vector<std::string> errors;
  if (population_size < 1) errors.push_back("qiga.population_size must be at least 1");
  if (chromosome_length < 1) errors.push_back("qiga.chromosome_length must be at least 1");
  if (chromosome_length > 63) errors.push_back("qiga.chromosome_length must be at most 63");
  if (max_generations < 1) errors.push_back("qiga.max_generations must be at least 1");
  return errors;
}

QuantumPopulation update_population(const QuantumPopulation& q,
                                    std::span<const BinaryChromosome> observed,
                                    std::span<const double> fitness, const StoredBest& best,
                                    const RotationLookupTable& table) {
  if (observed.size() != q.size() || fitness.size() != q.size()) {
    throw std::invalid_argument("observed population does not match the quantum population");
  }
  if (best.chromosome.size() != q.chromosome_length()) {
    throw std::invalid_argument("stored best has the wrong chromosome length");
  }
  QuantumPopulation next = q;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (observed[i].size() != q.chromosome_length()) {
      throw std::invalid_argument("observed chromosome has the wrong length");
    }
    const bool fx_ge_fb = fitness[i] >= best.fitness;
    for (std::size_t j = 0; j < q.chromosome_length(); ++j) {
      auto& gene = next[i][j];
      gene = rotate(gene, lookup_delta(observed[i][j], best.chromosome[j], fx_ge_fb, gene, table));
    }
  }
  return next;
}

std::vector<QigaGeneration> run_qiga(const QigaConfig& config, const FitnessFn& fitness) {
  if (auto errors = config.validate(); !errors.empty()) {
    throw std::invalid_argument("invalid QIGA configuration: " + errors.front());
  }
  Rng rng(config.rng_seed);

  auto evaluate = [&](const ClassicalPopulation& p) {
    std::vector<double> f;
    f.reserve(p.size());
    for (const auto& c : p) f.push_back(fitness(c));
    return f;
  };

  std::vector<QigaGeneration> history;
  history.reserve(config.max_generations + 1);

  QuantumPopulation q = init_population(config.population_size, config.chromosome_length);
  auto p = observe(q, rng);
  auto f0 = evaluate(p);
  auto snapshot = make_snapshot(0, std::move(p), std::move(f0));
  StoredBest best{snapshot.population[snapshot.best_index], snapshot.best_fitness};
  history.push_back({std::move(snapshot), q, best});

  for (std::size_t t = 1; t <= config.max_generations; ++t) {
    p = observe(q, rng);
    auto f = evaluate(p);
    q = update_population(q, p, f, best, config.lookup_table);
    snapshot = make_snapshot(t, std::move(p), std::move(f));
    if (snapshot.best_fitness > best.fitness) {
      best = {snapshot.population[snapshot.best_index], snapshot.best_fitness};
    }
    history.push_back({std::move(snapshot), q, best});
  }
  return history;
}

}  // namespace qigalab
