#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qigalab/qubit.hpp"

namespace qigalab {

// Direction rule turning a row's magnitude into a signed rotation angle.
enum class SignRule {
  Zero,              // no rotation
  TowardOne,         // the sign that increases beta^2
  TowardZero,        // the sign that increases alpha^2
  SignOfProduct,     // sign(alpha * beta), 0 on the axes
  NegSignOfProduct,  // -sign(alpha * beta), 0 on the axes
};

SignRule parse_sign_rule(std::string_view code);
std::string_view to_string(SignRule rule);

// Sign in {-1, 0, +1} for a gene in state g.
//
// On an axis (alpha * beta == 0) TowardOne gives 0 at |1> and +1 at |0>;
// TowardZero gives 0 at |0> and -1 at |1>. Either choice is strictly
// productive there, so the rules are total.
int sign_for(SignRule rule, const QubitGene& g) noexcept;

struct RotationRow {
  double delta_theta = 0.0;  // radians, in [0, pi/2]
  SignRule sign = SignRule::Zero;
};

/// Eight-row rotation lookup table keyed by (observed bit, best bit,
/// f(x) >= f(best)).
class RotationLookupTable {
 public:
  // All rows zero: the quantum population never moves.
  RotationLookupTable() = default;

  // Throws std::invalid_argument if delta_theta is outside [0, pi/2].
  void set(int x_bit, int b_bit, bool fx_ge_fb, RotationRow row);
  const RotationRow& row(int x_bit, int b_bit, bool fx_ge_fb) const;

  // Han & Kim's genetic quantum algorithm table (2000), in units of pi:
  //   x b  f(x)>=f(b)  delta   direction
  //   0 0  false       0       -
  //   0 0  true        0       -
  //   0 1  false       0       -
  //   0 1  true        0.05    toward 0
  //   1 0  false       0.01    toward 0
  //   1 0  true        0.025   toward 1
  //   1 1  false       0.005   toward 1
  //   1 1  true        0.025   toward 1
  static RotationLookupTable standard();
  static RotationLookupTable zero() { return {}; }

  /// Parses eight whitespace-separated rows
  ///   x_bit b_bit fx_ge_fb delta_theta_in_pi_units sign_code
  /// with fx_ge_fb in {0, 1, false, true} and sign_code one of zero,
  /// toward_one, toward_zero, sign_of_product, neg_sign_of_product.
  /// `#` starts a comment. Every (x, b, fx_ge_fb) key must appear exactly once.
  static RotationLookupTable parse(std::istream& in);
  static RotationLookupTable load(const std::filesystem::path& path);

  void write(std::ostream& out) const;

  friend bool operator==(const RotationLookupTable&, const RotationLookupTable&);

 private:
  static std::size_t index(int x_bit, int b_bit, bool fx_ge_fb);
  std::array<RotationRow, 8> rows_{};
};

// Signed rotation angle for one gene.
double lookup_delta(int x_bit, int b_bit, bool fx_ge_fb, const QubitGene& g,
                    const RotationLookupTable& table);

}  // namespace qigalab
