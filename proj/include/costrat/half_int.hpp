#pragma once

#include <compare>
#include <cstdlib>
#include <string>

namespace costrat {

/// Spin or spin projection stored as twice its value, so 1/2 is `HalfInt{1}`.
struct HalfInt {
  int twice = 0;

  constexpr HalfInt() = default;
  constexpr explicit HalfInt(int twice_value) : twice(twice_value) {}

  constexpr double value() const { return 0.5 * twice; }
  constexpr bool is_integer() const { return twice % 2 == 0; }
  /// 2j + 1, the dimension of the spin-j irrep.
  constexpr int dim() const { return twice + 1; }
  constexpr bool valid_spin() const { return twice >= 0; }

  constexpr auto operator<=>(const HalfInt&) const = default;
};

constexpr HalfInt operator+(HalfInt a, HalfInt b) { return HalfInt{a.twice + b.twice}; }
constexpr HalfInt operator-(HalfInt a, HalfInt b) { return HalfInt{a.twice - b.twice}; }
constexpr HalfInt operator-(HalfInt a) { return HalfInt{-a.twice}; }

/// True when m is an admissible projection of spin j.
constexpr bool valid_projection(HalfInt j, HalfInt m) {
  return j.twice >= 0 && std::abs(m.twice) <= j.twice && (j.twice - m.twice) % 2 == 0;
}

inline std::string to_string(HalfInt h) {
  if (h.is_integer()) return std::to_string(h.twice / 2);
  return std::to_string(h.twice) + "/2";
}

}  // namespace costrat
