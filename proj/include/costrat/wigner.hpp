#pragma once

// Clebsch-Gordan coefficients, Wigner 6j/9j symbols and the dimension-weighted
// 9j variants used by the invariant algebra. All spins are HalfInt (twice
// their value). Condon-Shortley phase convention throughout.

#include <array>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <stdexcept>

#include <Eigen/Core>

#include "costrat/half_int.hpp"

namespace costrat {

/// Largest accepted spin (as twice the spin) for any symbol argument.
inline constexpr int kMaxTwiceSpin = 200;

class SpinLimitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Provenance { exact, rounded };

/// A symbol value. `exact` values were produced from an exact rational under a
/// square root with a single terminal rounding; `rounded` values accumulate
/// several rounded terms.
struct Coefficient {
  double value = 0.0;
  Provenance provenance = Provenance::exact;

  constexpr operator double() const { return value; }
};

using Mat2 = Eigen::Matrix2cd;

/// |j1 - j2| <= j3 <= j1 + j2 and j1 + j2 + j3 integer. Negative spins fail.
bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3);

/// <j1 m1; j2 m2 | j3 m3>. Zero for any out-of-domain label combination.
Coefficient clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3,
                           HalfInt m3);

/// {j1 j2 j3; j4 j5 j6} via the Racah single sum.
Coefficient wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6);

/// 3x3 array of spins, row-major: {j1 j2 j3; j4 j5 j6; j7 j8 j9}.
struct NineJ {
  std::array<HalfInt, 9> s{};

  constexpr HalfInt at(int row, int col) const { return s[static_cast<std::size_t>(3 * row + col)]; }
  static NineJ from_twice(const std::array<int, 9>& twice);
  bool rows_and_columns_ok() const;
};

/// Curly-brace Wigner 9j symbol.
Coefficient wigner_9j(const NineJ& symbol);

/// Recoupling coefficient <((j1 j2)j3,(j4 j5)j6)j9 | ((j1 j4)j7,(j2 j5)j8)j9>,
/// i.e. sqrt((2j3+1)(2j6+1)(2j7+1)(2j8+1)) times the 9j symbol.
Coefficient paren_9j(const NineJ& symbol);

/// sqrt(prod_i (2j_i+1)) times the squared 9j symbol; the N = 2 structure
/// constant. Always nonnegative.
Coefficient bracket_9j(const NineJ& symbol);

/// Matrix entry D^j_{m m'}(a) of the spin-j representation of SL(2, C);
/// D^{1/2}(a) = a with m = +1/2 first. Throws std::invalid_argument when
/// |det a - 1| > 1e-12 or the labels are not admissible.
std::complex<double> wigner_D(HalfInt j, HalfInt m, HalfInt mp, const Mat2& a);

/// Full (2j+1)x(2j+1) matrix D^j(a); row/column k holds projection j - k.
Eigen::MatrixXcd wigner_D_matrix(HalfInt j, const Mat2& a);

/// Checks det a = 1 within 1e-12.
bool is_unimodular(const Mat2& a, double tolerance = 1e-12);

// Symbol caches. They are process-wide and safe for concurrent use.
struct SymbolCacheStats {
  std::size_t cg = 0;
  std::size_t six_j = 0;
  std::size_t nine_j = 0;
};
SymbolCacheStats symbol_cache_stats();
void clear_symbol_caches();
/// Loads a cache file written by save_symbol_cache. Returns false when the file
/// is absent or has an unrecognised header.
bool load_symbol_cache(const std::filesystem::path& file);
void save_symbol_cache(const std::filesystem::path& file);

}  // namespace costrat
