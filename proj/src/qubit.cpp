#include "qigalab/qubit.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "qigalab/errors.hpp"

namespace qigalab {
namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;

double parse_amplitude(std::string_view token, std::string_view whole) {
  double v = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("bad amplitude \"" + std::string(token) + "\" in quantum chromosome \"" +
                     std::string(whole) + "\"");
  }
  return v;
}

}  // namespace

QubitGene::QubitGene(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(std::abs(norm_error()) <= kNormTolerance)) {
    throw std::invalid_argument("qubit amplitudes must satisfy alpha^2 + beta^2 = 1");
  }
}

QubitGene QubitGene::superposition() noexcept { return {Unchecked{}, kHalfSqrt2, kHalfSqrt2}; }
QubitGene QubitGene::zero() noexcept { return {Unchecked{}, 1.0, 0.0}; }
QubitGene QubitGene::one() noexcept { return {Unchecked{}, 0.0, 1.0}; }

QubitGene rotate(const QubitGene& g, double theta) noexcept {
  if (theta == 0.0) return g;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {QubitGene::Unchecked{}, g.alpha_ * c - g.beta_ * s, g.alpha_ * s + g.beta_ * c};
}

QuantumChromosome QuantumChromosome::parse(std::string_view text) {
  std::vector<QubitGene> genes;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    std::string_view token = text.substr(pos, comma - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (token == "0") {
      genes.push_back(QubitGene::zero());
    } else if (token == "1") {
      genes.push_back(QubitGene::one());
    } else if (token == "h") {
      genes.push_back(QubitGene::superposition());
    } else if (auto colon = token.find(':'); colon != std::string_view::npos) {
      const double a = parse_amplitude(token.substr(0, colon), text);
      const double b = parse_amplitude(token.substr(colon + 1), text);
      try {
        genes.emplace_back(a, b);
      } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " (token \"" + std::string(token) + "\")");
      }
    } else {
      throw ParseError("bad gene token \"" + std::string(token) + "\" in quantum chromosome \"" +
                       std::string(text) + "\"");
    }
    pos = comma + 1;
  }
  return QuantumChromosome(std::move(genes));
}

QuantumPopulation::QuantumPopulation(std::vector<QuantumChromosome> chromosomes)
    : chromosomes_(std::move(chromosomes)) {
  for (const auto& q : chromosomes_) {
    if (q.size() != chromosomes_.front().size()) {
      throw std::invalid_argument("quantum population chromosomes must share one length");
    }
  }
}

QuantumPopulation init_population(std::size_t population_size, std::size_t chromosome_length) {
  if (population_size == 0 || chromosome_length == 0) {
    throw std::invalid_argument("population size and chromosome length must be at least 1");
  }
  return QuantumPopulation(std::vector<QuantumChromosome>(
      population_size, QuantumChromosome(chromosome_length, QubitGene::superposition())));
}

BinaryChromosome observe(const QuantumChromosome& q, Rng& rng) {
  BinaryChromosome c(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) {
    c[j] = bernoulli(rng, q[j].probability_one()) ? 1 : 0;
  }
  return c;
}

ClassicalPopulation observe(const QuantumPopulation& q, Rng& rng) {
  ClassicalPopulation p;
  p.reserve(q.size());
  for (const auto& chromosome : q) p.push_back(observe(chromosome, rng));
  return p;
}

std::vector<double> sampling_distribution(const QuantumChromosome& q) {
  if (q.size() > kMaxSamplingBits) {
    throw RefusalError("sampling distribution over " + std::to_string(q.size()) +
                       " genes exceeds the " + std::to_string(kMaxSamplingBits) + "-gene cap");
  }
  // Extend the table one gene at a time; gene j becomes the least significant
  // bit so far, which leaves the final table in big-endian index order.
  std::vector<double> probs{1.0};
  probs.reserve(std::size_t{1} << q.size());
  for (const auto& g : q) {
    std::vector<double> next(probs.size() * 2);
    for (std::size_t v = 0; v < probs.size(); ++v) {
      next[2 * v] = probs[v] * g.probability_zero();
      next[2 * v + 1] = probs[v] * g.probability_one();
    }
    probs = std::move(next);
  }
  return probs;
}

}  // namespace qigalab
