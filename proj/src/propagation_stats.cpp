#include "qigalab/propagation_stats.hpp"

#include <bit>
#include <cstdint>
#include <string>

#include "qigalab/errors.hpp"

namespace qigalab {
namespace {

// sum_{w=0}^{N} w^power * sum_{|C| = w} prod_{j in C} p_j prod_{k not in C} (1 - p_k)
double subset_moment(std::span<const double> p, unsigned power) {
  const std::size_t n = p.size();
  if (n > kMaxOraclePopulation) {
    throw RefusalError("subset-sum oracle refuses N = " + std::to_string(n) + " (cap " +
                       std::to_string(kMaxOraclePopulation) + ")");
  }
  const std::uint64_t subsets = std::uint64_t{1} << n;
  double total = 0.0;
  for (std::size_t w = 0; w <= n; ++w) {
    double probability_of_w = 0.0;
    for (std::uint64_t c = 0; c < subsets; ++c) {
      if (static_cast<std::size_t>(std::popcount(c)) != w) continue;
      double term = 1.0;  // empty products stay 1
      for (std::size_t j = 0; j < n; ++j) {
        term *= ((c >> j) & 1U) ? p[j] : (1.0 - p[j]);
      }
      probability_of_w += term;
    }
    const double weight = power == 1 ? static_cast<double>(w) : static_cast<double>(w * w);
    total += weight * probability_of_w;
  }
  return total;
}

}  // namespace

std::vector<double> match_probabilities(const QuantumPopulation& q, const Schema& s) {
  std::vector<double> p;
  p.reserve(q.size());
  for (const auto& chromosome : q) p.push_back(match_probability(chromosome, s));
  return p;
}

double expected_matches_oracle(std::span<const double> p) { return subset_moment(p, 1); }

double variance_matches_oracle(std::span<const double> p) {
  const double mean = subset_moment(p, 1);
  return subset_moment(p, 2) - mean * mean;
}

double expected_matches_oracle(const QuantumPopulation& q, const Schema& s) {
  return expected_matches_oracle(match_probabilities(q, s));
}

double variance_matches_oracle(const QuantumPopulation& q, const Schema& s) {
  return variance_matches_oracle(match_probabilities(q, s));
}

double expected_matches(std::span<const double> p) {
  double sum = 0.0;
  for (double pi : p) sum += pi;
  return sum;
}

double variance_matches(std::span<const double> p) {
  double sum = 0.0;
  for (double pi : p) sum += pi * (1.0 - pi);
  return sum;
}

double expected_matches(const QuantumPopulation& q, const Schema& s) {
  return expected_matches(match_probabilities(q, s));
}

double variance_matches(const QuantumPopulation& q, const Schema& s) {
  return variance_matches(match_probabilities(q, s));
}

std::vector<double> match_count_pmf(std::span<const double> p) {
  std::vector<double> pmf(p.size() + 1, 0.0);
  pmf[0] = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // Fold chromosome i in; iterate downwards so pmf[k-1] is still the old value.
    for (std::size_t k = i + 1; k > 0; --k) {
      pmf[k] = pmf[k] * (1.0 - p[i]) + pmf[k - 1] * p[i];
    }
    pmf[0] *= 1.0 - p[i];
  }
  return pmf;
}

std::vector<double> match_count_pmf(const QuantumPopulation& q, const Schema& s) {
  return match_count_pmf(match_probabilities(q, s));
}

MatchCountStats match_count_stats(const QuantumPopulation& q, const Schema& s, bool with_pmf) {
  const auto p = match_probabilities(q, s);
  MatchCountStats stats{expected_matches(p), variance_matches(p), std::nullopt};
  if (with_pmf) stats.pmf = match_count_pmf(p);
  return stats;
}

std::size_t count_matches(std::span<const BinaryChromosome> p, const Schema& s) {
  std::size_t count = 0;
  for (const auto& c : p) {
    if (matches(c, s)) ++count;
  }
  return count;
}

}  // namespace qigalab
