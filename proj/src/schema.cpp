#include "qigalab/schema.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qigalab/detail/summation.hpp"
#include "qigalab/errors.hpp"

namespace qigalab {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw std::invalid_argument(std::string(what) + ": length " + std::to_string(a) +
                                " does not match schema length " + std::to_string(b));
  }
}

struct BitMasks {
  std::uint64_t fixed_ones = 0;  // positions fixed to '1'
  std::uint64_t free = 0;        // wildcard positions
};

BitMasks masks_of(const Schema& s) {
  const std::size_t m = s.size();
  BitMasks out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::uint64_t bit = std::uint64_t{1} << (m - 1 - i);
    if (s[i] == '1') out.fixed_ones |= bit;
    if (s[i] == Schema::kWildcard) out.free |= bit;
  }
  return out;
}

// Calls fn(v) for every m-bit value v matching the masks.
template <typename Fn>
void for_each_match(const BitMasks& masks, Fn&& fn) {
  std::uint64_t sub = 0;
  do {
    fn(masks.fixed_ones | sub);
    sub = (sub - masks.free) & masks.free;
  } while (sub != 0);
}

}  // namespace

Schema Schema::parse(std::string_view text) {
  if (text.empty()) throw ParseError("schema text is empty");
  for (char c : text) {
    if (c != '0' && c != '1' && c != kWildcard) {
      throw ParseError("illegal character '" + std::string(1, c) + "' in schema \"" +
                       std::string(text) + "\"");
    }
  }
  return Schema(std::string(text));
}

Schema Schema::parse(std::string_view text, std::size_t length) {
  return parse(text).padded(length);
}

Schema Schema::padded(std::size_t length) const {
  if (symbols_.size() > length) {
    throw std::invalid_argument("schema \"" + symbols_ + "\" is longer than " +
                                std::to_string(length) + " positions");
  }
  std::string s = symbols_;
  s.resize(length, kWildcard);
  return Schema(std::move(s));
}

std::size_t Schema::order() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(symbols_.begin(), symbols_.end(), [](char c) { return c != kWildcard; }));
}

std::size_t Schema::defining_length() const noexcept {
  const auto first = symbols_.find_first_not_of(kWildcard);
  if (first == std::string::npos) return 0;
  return symbols_.find_last_not_of(kWildcard) - first;
}

std::string Schema::to_string() const {
  const auto last = symbols_.find_last_not_of(kWildcard);
  if (last == std::string::npos) return std::string(1, kWildcard);
  return symbols_.substr(0, last + 1);
}

bool matches(const BinaryChromosome& c, const Schema& s) {
  require_same_length(c.size(), s.size(), "chromosome");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.is_fixed(i) && c[i] != static_cast<std::uint8_t>(s[i] - '0')) return false;
  }
  return true;
}

double match_probability(const QuantumChromosome& q, const Schema& s) {
  require_same_length(q.size(), s.size(), "quantum chromosome");
  double p = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '0') {
      p *= q[i].probability_zero();
    } else if (s[i] == '1') {
      p *= q[i].probability_one();
    }
  }
  return p;
}

double schema_fitness(const Schema& s, std::span<const double> landscape) {
  const std::size_t m = s.size();
  if (m > 63 || landscape.size() != (std::size_t{1} << m)) {
    throw std::invalid_argument("fitness landscape size does not match schema length");
  }
  const auto masks = masks_of(s);
  detail::CompensatedSum sum;
  for_each_match(masks, [&](std::uint64_t v) { sum.add(landscape[v]); });
  return sum.value() / static_cast<double>(std::uint64_t{1} << std::popcount(masks.free));
}

double schema_fitness(const Schema& s, const SplineFitness& f, std::size_t m) {
  const Schema full = s.padded(m);
  const std::size_t free_bits = m - full.order();
  if (free_bits > kMaxSchemaFreeBits) {
    throw RefusalError("schema " + full.to_string() + " matches 2^" + std::to_string(free_bits) +
                       " chromosomes, above the 2^" + std::to_string(kMaxSchemaFreeBits) + " cap");
  }
  if (m > 63) throw RefusalError("schema fitness supports chromosomes of at most 63 bits");

  detail::CompensatedSum sum;
  for_each_match(masks_of(full),
                 [&](std::uint64_t v) { sum.add(f(decode_value(v, m, f.lo(), f.hi()))); });
  return sum.value() / static_cast<double>(std::uint64_t{1} << free_bits);
}

std::vector<Schema> enumerate_schemata(std::size_t m, std::size_t max_order,
                                       std::size_t max_defining_length) {
  if (max_order < 1) throw std::invalid_argument("max_order must be at least 1");
  std::vector<Schema> out;
  std::string word(m, Schema::kWildcard);

  // Fix the outermost positions first and last, then every admissible choice
  // of interior fixed positions, then every assignment of alleles.
  for (std::size_t first = 0; first < m; ++first) {
    const std::size_t last_bound = std::min(m - 1, first + max_defining_length);
    for (std::size_t last = first; last <= last_bound; ++last) {
      const std::size_t ends = (first == last) ? 1 : 2;
      if (ends > max_order) continue;
      const std::size_t interior = (last > first) ? last - first - 1 : 0;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
        const std::size_t order = ends + static_cast<std::size_t>(std::popcount(mask));
        if (order > max_order) continue;
        std::vector<std::size_t> fixed{first};
        for (std::size_t k = 0; k < interior; ++k) {
          if ((mask >> k) & 1U) fixed.push_back(first + 1 + k);
        }
        if (last != first) fixed.push_back(last);
        for (std::uint64_t alleles = 0; alleles < (std::uint64_t{1} << order); ++alleles) {
          std::fill(word.begin(), word.end(), Schema::kWildcard);
          for (std::size_t k = 0; k < order; ++k) {
            word[fixed[k]] = static_cast<char>('0' + ((alleles >> k) & 1U));
          }
          out.push_back(Schema::parse(word));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qigalab
