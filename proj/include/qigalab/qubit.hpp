#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qigalab/chromosome.hpp"
#include "qigalab/random.hpp"

namespace qigalab {

/// Binary quantum gene: a real unit vector alpha|0> + beta|1>.
///
/// Observation yields 0 with probability alpha^2 and 1 with probability
/// beta^2. Amplitudes are real; the phase of a complex qubit plays no role
/// in the algorithm.
class QubitGene {
 public:
  static constexpr double kNormTolerance = 1e-9;

  // Throws std::invalid_argument if |alpha^2 + beta^2 - 1| > kNormTolerance.
  QubitGene(double alpha, double beta);

  static QubitGene superposition() noexcept;  // (sqrt(2)/2, sqrt(2)/2)
  static QubitGene zero() noexcept;           // |0>
  static QubitGene one() noexcept;            // |1>

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double probability_zero() const noexcept { return alpha_ * alpha_; }
  double probability_one() const noexcept { return beta_ * beta_; }
  double norm_error() const noexcept { return alpha_ * alpha_ + beta_ * beta_ - 1.0; }

  friend QubitGene rotate(const QubitGene& g, double theta) noexcept;
  friend bool operator==(const QubitGene&, const QubitGene&) = default;

 private:
  struct Unchecked {};
  constexpr QubitGene(Unchecked, double alpha, double beta) noexcept
      : alpha_(alpha), beta_(beta) {}

  double alpha_;
  double beta_;
};

// (alpha, beta) <- (alpha cos t - beta sin t, alpha sin t + beta cos t).
QubitGene rotate(const QubitGene& g, double theta) noexcept;

class QuantumChromosome {
 public:
  QuantumChromosome() = default;
  explicit QuantumChromosome(std::vector<QubitGene> genes) : genes_(std::move(genes)) {}
  QuantumChromosome(std::size_t length, const QubitGene& gene) : genes_(length, gene) {}

  /// Comma-separated gene list. Each token is `0` (|0>), `1` (|1>), `h`
  /// (equal superposition) or `alpha:beta`. Throws ParseError.
  static QuantumChromosome parse(std::string_view text);

  std::size_t size() const noexcept { return genes_.size(); }
  const QubitGene& operator[](std::size_t i) const noexcept { return genes_[i]; }
  QubitGene& operator[](std::size_t i) noexcept { return genes_[i]; }
  const std::vector<QubitGene>& genes() const noexcept { return genes_; }

  auto begin() const noexcept { return genes_.begin(); }
  auto end() const noexcept { return genes_.end(); }

  friend bool operator==(const QuantumChromosome&, const QuantumChromosome&) = default;

 private:
  std::vector<QubitGene> genes_;
};

// N quantum chromosomes of one common length.
class QuantumPopulation {
 public:
  QuantumPopulation() = default;
  // Throws std::invalid_argument on mixed chromosome lengths.
  explicit QuantumPopulation(std::vector<QuantumChromosome> chromosomes);

  std::size_t size() const noexcept { return chromosomes_.size(); }
  std::size_t chromosome_length() const noexcept {
    return chromosomes_.empty() ? 0 : chromosomes_.front().size();
  }
  const QuantumChromosome& operator[](std::size_t i) const noexcept { return chromosomes_[i]; }
  QuantumChromosome& operator[](std::size_t i) noexcept { return chromosomes_[i]; }

  auto begin() const noexcept { return chromosomes_.begin(); }
  auto end() const noexcept { return chromosomes_.end(); }

  friend bool operator==(const QuantumPopulation&, const QuantumPopulation&) = default;

 private:
  std::vector<QuantumChromosome> chromosomes_;
};

// N chromosomes of m genes, every gene in equal superposition.
QuantumPopulation init_population(std::size_t population_size, std::size_t chromosome_length);

// Samples each bit independently: 1 with probability beta^2.
BinaryChromosome observe(const QuantumChromosome& q, Rng& rng);
ClassicalPopulation observe(const QuantumPopulation& q, Rng& rng);

inline constexpr std::size_t kMaxSamplingBits = 20;

/// Probability of every bitstring under q's product distribution, indexed by
/// the bitstring's big-endian integer value. Throws RefusalError for more than
/// kMaxSamplingBits genes.
std::vector<double> sampling_distribution(const QuantumChromosome& q);

}  // namespace qigalab
