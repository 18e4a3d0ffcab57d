#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qigalab {

// Classical bitstring individual. Index 0 is the leftmost, most significant bit.
class BinaryChromosome {
 public:
  BinaryChromosome() = default;
  explicit BinaryChromosome(std::size_t length) : bits_(length, 0) {}
  explicit BinaryChromosome(std::vector<std::uint8_t> bits);

  // Parses a string of '0'/'1' characters. Throws ParseError otherwise.
  static BinaryChromosome parse(std::string_view text);
  // Big-endian m-bit rendering of value; requires value < 2^m.
  static BinaryChromosome from_value(std::uint64_t value, std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  std::uint8_t operator[](std::size_t i) const noexcept { return bits_[i]; }
  std::uint8_t& operator[](std::size_t i) noexcept { return bits_[i]; }

  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }

  // Unsigned big-endian integer value. Requires size() <= 64.
  std::uint64_t value() const;

  std::string to_string() const;

  friend bool operator==(const BinaryChromosome&, const BinaryChromosome&) = default;
  friend auto operator<=>(const BinaryChromosome&, const BinaryChromosome&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

using ClassicalPopulation = std::vector<BinaryChromosome>;

}  // namespace qigalab
