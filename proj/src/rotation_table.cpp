#include "qigalab/rotation_table.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qigalab/errors.hpp"

namespace qigalab {
namespace {

int sign_of(double v) noexcept { return (v > 0) - (v < 0); }

}  // namespace

SignRule parse_sign_rule(std::string_view code) {
  if (code == "zero") return SignRule::Zero;
  if (code == "toward_one") return SignRule::TowardOne;
  if (code == "toward_zero") return SignRule::TowardZero;
  if (code == "sign_of_product") return SignRule::SignOfProduct;
  if (code == "neg_sign_of_product") return SignRule::NegSignOfProduct;
  throw ParseError("unknown sign code \"" + std::string(code) + "\"");
}

std::string_view to_string(SignRule rule) {
  switch (rule) {
    case SignRule::Zero: return "zero";
    case SignRule::TowardOne: return "toward_one";
    case SignRule::TowardZero: return "toward_zero";
    case SignRule::SignOfProduct: return "sign_of_product";
    case SignRule::NegSignOfProduct: return "neg_sign_of_product";
  }
  return "?";
}

int sign_for(SignRule rule, const QubitGene& g) noexcept {
  const int s = sign_of(g.alpha() * g.beta());
  switch (rule) {
    case SignRule::Zero:
      return 0;
    case SignRule::SignOfProduct:
      return s;
    case SignRule::NegSignOfProduct:
      return -s;
    case SignRule::TowardOne:
      if (s != 0) return s;
      return g.alpha() == 0.0 ? 0 : 1;
    case SignRule::TowardZero:
      if (s != 0) return -s;
      return g.beta() == 0.0 ? 0 : -1;
  }
  return 0;
}

std::size_t RotationLookupTable::index(int x_bit, int b_bit, bool fx_ge_fb) {
  if ((x_bit != 0 && x_bit != 1) || (b_bit != 0 && b_bit != 1)) {
    throw std::invalid_argument("lookup table keys are single bits");
  }
  return static_cast<std::size_t>(x_bit * 4 + b_bit * 2 + (fx_ge_fb ? 1 : 0));
}

void RotationLookupTable::set(int x_bit, int b_bit, bool fx_ge_fb, RotationRow row) {
  if (!(row.delta_theta >= 0.0 && row.delta_theta <= std::numbers::pi / 2)) {
    throw std::invalid_argument("rotation magnitude must lie in [0, pi/2]");
  }
  rows_[index(x_bit, b_bit, fx_ge_fb)] = row;
}

const RotationRow& RotationLookupTable::row(int x_bit, int b_bit, bool fx_ge_fb) const {
  return rows_[index(x_bit, b_bit, fx_ge_fb)];
}

RotationLookupTable RotationLookupTable::standard() {
  constexpr double pi = std::numbers::pi;
  RotationLookupTable t;
  t.set(0, 1, true, {0.05 * pi, SignRule::TowardZero});
  t.set(1, 0, false, {0.01 * pi, SignRule::TowardZero});
  t.set(1, 0, true, {0.025 * pi, SignRule::TowardOne});
  t.set(1, 1, false, {0.005 * pi, SignRule::TowardOne});
  t.set(1, 1, true, {0.025 * pi, SignRule::TowardOne});
  return t;
}

RotationLookupTable RotationLookupTable::parse(std::istream& in) {
  RotationLookupTable t;
  std::array<bool, 8> seen{};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string x, b, ge, delta, code, extra;
    if (!(fields >> x)) continue;
    const auto where = "lookup table line " + std::to_string(lineno) + ": ";
    if (!(fields >> b >> ge >> delta >> code) || (fields >> extra)) {
      throw ParseError(where + "expected `x_bit b_bit fx_ge_fb delta_in_pi sign_code`");
    }
    auto bit = [&](const std::string& s) {
      if (s == "0" || s == "false") return 0;
      if (s == "1" || s == "true") return 1;
      throw ParseError(where + "expected 0/1/false/true, got \"" + s + "\"");
    };
    double delta_pi = 0;
    try {
      std::size_t used = 0;
      delta_pi = std::stod(delta, &used);
      if (used != delta.size()) throw std::invalid_argument(delta);
    } catch (const std::exception&) {
      throw ParseError(where + "bad rotation magnitude \"" + delta + "\"");
    }
    const int xb = bit(x), bb = bit(b);
    const bool g = bit(ge) == 1;
    const auto k = index(xb, bb, g);
    if (seen[k]) throw ParseError(where + "duplicate row");
    seen[k] = true;
    try {
      t.set(xb, bb, g, {delta_pi * std::numbers::pi, parse_sign_rule(code)});
    } catch (const ParseError& e) {
      throw ParseError(where + e.what());
    } catch (const std::invalid_argument& e) {
      throw ParseError(where + e.what());
    }
  }
  for (bool s : seen) {
    if (!s) throw ParseError("lookup table must define all eight rows");
  }
  return t;
}

RotationLookupTable RotationLookupTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open lookup table " + path.string());
  return parse(in);
}

void RotationLookupTable::write(std::ostream& out) const {
  out << "# x_bit b_bit fx_ge_fb delta_theta/pi sign_code\n";
  for (int x = 0; x <= 1; ++x) {
    for (int b = 0; b <= 1; ++b) {
      for (int g = 0; g <= 1; ++g) {
        const auto& r = row(x, b, g == 1);
        out << x << ' ' << b << ' ' << (g ? "true" : "false") << ' '
            << r.delta_theta / std::numbers::pi << ' ' << to_string(r.sign) << '\n';
      }
    }
  }
}

bool operator==(const RotationLookupTable& a, const RotationLookupTable& b) {
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    if (a.rows_[i].delta_theta != b.rows_[i].delta_theta || a.rows_[i].sign != b.rows_[i].sign) {
      return false;
    }
  }
  return true;
}

double lookup_delta(int x_bit, int b_bit, bool fx_ge_fb, const QubitGene& g,
                    const RotationLookupTable& table) {
  const auto& r = table.row(x_bit, b_bit, fx_ge_fb);
  if (r.delta_theta == 0.0) return 0.0;
  return sign_for(r.sign, g) * r.delta_theta;
}

}  // namespace qigalab
