#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qigalab/chromosome.hpp"
#include "qigalab/qubit.hpp"
#include "qigalab/spline_fitness.hpp"

namespace qigalab {

/// A word over {0, 1, *}. `*` matches either allele.
///
/// Textual form elides trailing wildcards, so a 20-position schema with
/// fixed symbols only in its first five positions prints as "01001".
class Schema {
 public:
  static constexpr char kWildcard = '*';

  Schema() = default;

  // Throws ParseError for an empty string or characters outside {0,1,*}.
  static Schema parse(std::string_view text);
  // As parse(), then right-pads with wildcards to `length`. Throws
  // std::invalid_argument if the text is longer than `length`.
  static Schema parse(std::string_view text, std::size_t length);

  std::size_t size() const noexcept { return symbols_.size(); }
  char operator[](std::size_t i) const noexcept { return symbols_[i]; }
  bool is_fixed(std::size_t i) const noexcept { return symbols_[i] != kWildcard; }

  std::size_t order() const noexcept;
  std::size_t defining_length() const noexcept;

  Schema padded(std::size_t length) const;

  // Full-length rendering, wildcards included.
  const std::string& symbols() const noexcept { return symbols_; }
  // Trailing wildcards elided; an all-wildcard schema renders as "*".
  std::string to_string() const;

  friend bool operator==(const Schema&, const Schema&) = default;
  friend auto operator<=>(const Schema&, const Schema&) = default;

 private:
  explicit Schema(std::string symbols) : symbols_(std::move(symbols)) {}
  std::string symbols_;
};

// Length mismatches throw std::invalid_argument in every function below.
bool matches(const BinaryChromosome& c, const Schema& s);

// Probability that an observation of q matches s: the product over fixed
// positions of alpha^2 (for '0') or beta^2 (for '1').
double match_probability(const QuantumChromosome& q, const Schema& s);

inline constexpr std::size_t kMaxSchemaFreeBits = 24;

// Mean objective value over every chromosome of length m matching s.
// Throws RefusalError when the m - order(s) free positions exceed 2^24 chromosomes.
double schema_fitness(const Schema& s, const SplineFitness& f, std::size_t m);

// Same, looking values up in a precomputed fitness_landscape() of 2^s.size() entries.
double schema_fitness(const Schema& s, std::span<const double> landscape);

// All schemata of length m with 1 <= order <= max_order and
// defining_length <= max_defining_length, in lexicographic order.
std::vector<Schema> enumerate_schemata(std::size_t m, std::size_t max_order,
                                       std::size_t max_defining_length);

}  // namespace qigalab
