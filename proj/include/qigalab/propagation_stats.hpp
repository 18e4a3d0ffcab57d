#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qigalab/chromosome.hpp"
#include "qigalab/qubit.hpp"
#include "qigalab/schema.hpp"

namespace qigalab {

// Statistics of L, the number of chromosomes of a quantum population whose
// observation matches a schema. L is a sum of independent Bernoulli variables
// with success probabilities p_i = M(q_i, S).
struct MatchCountStats {
  double expected = 0.0;
  double variance = 0.0;
  std::optional<std::vector<double>> pmf;  // P(L = k), k = 0..N
};

// M(q_i, S) for every chromosome of the population.
std::vector<double> match_probabilities(const QuantumPopulation& q, const Schema& s);

inline constexpr std::size_t kMaxOraclePopulation = 20;

// Literal subset-sum evaluations. Every w-element subset C of {1..N}
// contributes w (or w^2) times prod_{j in C} p_j prod_{k not in C} (1 - p_k).
// Cost is Theta(N 2^N); throws RefusalError for N > kMaxOraclePopulation.
double expected_matches_oracle(std::span<const double> p);
double variance_matches_oracle(std::span<const double> p);
double expected_matches_oracle(const QuantumPopulation& q, const Schema& s);
double variance_matches_oracle(const QuantumPopulation& q, const Schema& s);

// Closed forms: E(L) = sum p_i, V(L) = sum p_i (1 - p_i).
double expected_matches(std::span<const double> p);
double variance_matches(std::span<const double> p);
double expected_matches(const QuantumPopulation& q, const Schema& s);
double variance_matches(const QuantumPopulation& q, const Schema& s);

// Poisson-binomial distribution of L, O(N^2).
std::vector<double> match_count_pmf(std::span<const double> p);
std::vector<double> match_count_pmf(const QuantumPopulation& q, const Schema& s);

MatchCountStats match_count_stats(const QuantumPopulation& q, const Schema& s,
                                  bool with_pmf = false);

// Number of chromosomes in p that match s. Throws std::invalid_argument on
// any length mismatch.
std::size_t count_matches(std::span<const BinaryChromosome> p, const Schema& s);

}  // namespace qigalab
