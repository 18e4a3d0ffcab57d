#include "qigalab/chromosome.hpp"

#include <stdexcept>

#include "qigalab/errors.hpp"

namespace qigalab {

BinaryChromosome::BinaryChromosome(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw std::invalid_argument("chromosome bits must be 0 or 1");
  }
}

BinaryChromosome BinaryChromosome::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ParseError("illegal character '" + std::string(1, c) + "' in bitstring \"" +
                       std::string(text) + "\"");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return BinaryChromosome(std::move(bits));
}

BinaryChromosome BinaryChromosome::from_value(std::uint64_t value, std::size_t length) {
  if (length > 64 || (length < 64 && (value >> length) != 0)) {
    throw std::invalid_argument("value does not fit in the requested bit length");
  }
  BinaryChromosome c(length);
  for (std::size_t i = 0; i < length; ++i) {
    c.bits_[length - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  }
  return c;
}

std::uint64_t BinaryChromosome::value() const {
  if (bits_.size() > 64) throw std::length_error("chromosome longer than 64 bits has no integer value");
  std::uint64_t v = 0;
  for (auto b : bits_) v = (v << 1) | b;
  return v;
}

std::string BinaryChromosome::to_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
  return s;
}

}  // namespace qigalab
