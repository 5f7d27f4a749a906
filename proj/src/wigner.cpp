#include "costrat/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/LU>

#include "racah_exact.hpp"
#include "symbol_cache.hpp"

namespace costrat {
namespace {

void check_cap(std::initializer_list<HalfInt> spins) {
  for (HalfInt j : spins)
    if (j.twice > kMaxTwiceSpin)
      throw SpinLimitError("spin " + to_string(j) + " exceeds the limit " +
                           to_string(HalfInt{kMaxTwiceSpin}));
}

bool triangle_twice(int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0) return false;
  if ((a + b + c) % 2 != 0) return false;
  return std::abs(a - b) <= c && c <= a + b;
}

/// Smallest of the 24 symmetry images of {a b c; d e f}.
detail::SixJKey canonical_six_j(int a, int b, int c, int d, int e, int f) {
  std::array<std::array<int, 2>, 3> cols{{{a, d}, {b, e}, {c, f}}};
  detail::SixJKey best{};
  bool first = true;
  std::array<int, 3> perm{0, 1, 2};
  do {
    for (int flip = 0; flip < 4; ++flip) {
      // flip 0: none; 1..3: exchange upper/lower in the two columns other than flip-1.
      std::array<std::array<int, 2>, 3> c3{cols[perm[0]], cols[perm[1]], cols[perm[2]]};
      if (flip > 0) {
        for (int k = 0; k < 3; ++k)
          if (k != flip - 1) std::swap(c3[k][0], c3[k][1]);
      }
      detail::SixJKey key{static_cast<std::int16_t>(c3[0][0]), static_cast<std::int16_t>(c3[1][0]),
                          static_cast<std::int16_t>(c3[2][0]), static_cast<std::int16_t>(c3[0][1]),
                          static_cast<std::int16_t>(c3[1][1]), static_cast<std::int16_t>(c3[2][1])};
      if (first || key < best) best = key;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool six_j_triads_ok(int a, int b, int c, int d, int e, int f) {
  return triangle_twice(a, b, c) && triangle_twice(a, e, f) && triangle_twice(d, b, f) &&
         triangle_twice(d, e, c);
}

/// 6j without the public spin cap; used for the 9j contraction index.
double six_j_value(int a, int b, int c, int d, int e, int f) {
  if (!six_j_triads_ok(a, b, c, d, e, f)) return 0.0;
  const auto key = canonical_six_j(a, b, c, d, e, f);
  return detail::six_j_cache().get_or_compute(key, [&] {
    return detail::to_double(detail::six_j_exact(key[0], key[1], key[2], key[3], key[4], key[5]));
  });
}

int permutation_sign(const std::array<int, 3>& p) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k)
      if (p[i] > p[k]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

/// Canonical representative among the 72 row/column permutations and
/// transposition; `phase` receives the sign relating the two symbols.
detail::NineJKey canonical_nine_j(const std::array<int, 9>& s, int& phase) {
  const int total = std::accumulate(s.begin(), s.end(), 0) / 2;
  detail::NineJKey best{};
  int best_phase = 1;
  bool first = true;
  std::array<int, 3> rp{0, 1, 2};
  do {
    std::array<int, 3> cp{0, 1, 2};
    do {
      const int odd = permutation_sign(rp) * permutation_sign(cp);
      const int ph = (odd < 0 && total % 2 != 0) ? -1 : 1;
      for (int transpose = 0; transpose < 2; ++transpose) {
        detail::NineJKey key{};
        for (int r = 0; r < 3; ++r)
          for (int c = 0; c < 3; ++c) {
            const int v = transpose ? s[3 * rp[c] + cp[r]] : s[3 * rp[r] + cp[c]];
            key[static_cast<std::size_t>(3 * r + c)] = static_cast<std::int16_t>(v);
          }
        if (first || key < best) {
          best = key;
          best_phase = ph;
        }
        first = false;
      }
    } while (std::next_permutation(cp.begin(), cp.end()));
  } while (std::next_permutation(rp.begin(), rp.end()));
  phase = best_phase;
  return best;
}

/// Sum over the contraction index of (2x+1) 6j 6j 6j. Each summand is formed
/// exactly and rounded once.
double nine_j_compute(const detail::NineJKey& k) {
  const int j1 = k[0], j2 = k[1], j3 = k[2], j4 = k[3], j5 = k[4], j6 = k[5], j7 = k[6],
            j8 = k[7], j9 = k[8];
  const int lo = std::max({std::abs(j1 - j9), std::abs(j4 - j8), std::abs(j2 - j6)});
  const int hi = std::min({j1 + j9, j4 + j8, j2 + j6});
  long double sum = 0.0L;
  for (int x = lo; x <= hi; x += 2) {
    if (!six_j_triads_ok(j1, j4, j7, j8, j9, x) || !six_j_triads_ok(j2, j5, j8, j4, x, j6) ||
        !six_j_triads_ok(j3, j6, j9, x, j1, j2))
      continue;
    auto product = detail::six_j_exact(j1, j4, j7, j8, j9, x) *
                   detail::six_j_exact(j2, j5, j8, j4, x, j6) *
                   detail::six_j_exact(j3, j6, j9, x, j1, j2);
    if (product.is_zero()) continue;
    const double term = detail::to_double(detail::scale(std::move(product), x + 1));
    sum += (x % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

std::array<long double, 2 * kMaxTwiceSpin + 2> make_factorials() {
  std::array<long double, 2 * kMaxTwiceSpin + 2> f{};
  f[0] = 1.0L;
  for (std::size_t n = 1; n < f.size(); ++n) f[n] = f[n - 1] * static_cast<long double>(n);
  return f;
}

const auto& factorials() {
  static const auto table = make_factorials();
  return table;
}

std::complex<double> ipow(std::complex<double> z, int n) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= z;
  return r;
}

}  // namespace

bool triangle_ok(HalfInt j1, HalfInt j2, HalfInt j3) {
  return triangle_twice(j1.twice, j2.twice, j3.twice);
}

Coefficient clebsch_gordan(HalfInt j1, HalfInt m1, HalfInt j2, HalfInt m2, HalfInt j3, HalfInt m3) {
  check_cap({j1, j2, j3});
  if (!triangle_ok(j1, j2, j3)) return {};
  if (!valid_projection(j1, m1) || !valid_projection(j2, m2) || !valid_projection(j3, m3)) return {};
  if (m1.twice + m2.twice != m3.twice) return {};
  const detail::CgKey key{static_cast<std::int16_t>(j1.twice), static_cast<std::int16_t>(m1.twice),
                          static_cast<std::int16_t>(j2.twice), static_cast<std::int16_t>(m2.twice),
                          static_cast<std::int16_t>(j3.twice), static_cast<std::int16_t>(m3.twice)};
  const double v = detail::cg_cache().get_or_compute(key, [&] {
    return detail::to_double(
        detail::clebsch_gordan_exact(j1.twice, m1.twice, j2.twice, m2.twice, j3.twice, m3.twice));
  });
  return {v, Provenance::exact};
}

Coefficient wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4, HalfInt j5, HalfInt j6) {
  check_cap({j1, j2, j3, j4, j5, j6});
  return {six_j_value(j1.twice, j2.twice, j3.twice, j4.twice, j5.twice, j6.twice),
          Provenance::exact};
}

NineJ NineJ::from_twice(const std::array<int, 9>& twice) {
  NineJ n;
  for (std::size_t i = 0; i < 9; ++i) n.s[i] = HalfInt{twice[i]};
  return n;
}

bool NineJ::rows_and_columns_ok() const {
  for (int i = 0; i < 3; ++i) {
    if (!triangle_ok(at(i, 0), at(i, 1), at(i, 2))) return false;
    if (!triangle_ok(at(0, i), at(1, i), at(2, i))) return false;
  }
  return true;
}

Coefficient wigner_9j(const NineJ& symbol) {
  for (HalfInt j : symbol.s) check_cap({j});
  if (!symbol.rows_and_columns_ok()) return {0.0, Provenance::exact};
  // Canonicalisation is the expensive part of a lookup, so the symbol as
  // written gets its own signed entry in front of the canonical cache.
  detail::NineJKey written{};
  for (std::size_t i = 0; i < 9; ++i) written[i] = static_cast<std::int16_t>(symbol.s[i].twice);
  const double v = detail::nine_j_as_written_cache().get_or_compute(written, [&] {
    std::array<int, 9> raw{};
    for (std::size_t i = 0; i < 9; ++i) raw[i] = written[i];
    int phase = 1;
    const auto key = canonical_nine_j(raw, phase);
    return phase * detail::nine_j_cache().get_or_compute(key, [&] { return nine_j_compute(key); });
  });
  return {v, Provenance::rounded};
}

Coefficient paren_9j(const NineJ& symbol) {
  const Coefficient c = wigner_9j(symbol);
  if (c.value == 0.0) return c;
  const double w = std::sqrt(static_cast<double>(symbol.at(0, 2).dim()) * symbol.at(1, 2).dim() *
                             symbol.at(2, 0).dim() * symbol.at(2, 1).dim());
  return {w * c.value, Provenance::rounded};
}

Coefficient bracket_9j(const NineJ& symbol) {
  const Coefficient c = wigner_9j(symbol);
  if (c.value == 0.0) return c;
  double d = 1.0;
  for (HalfInt j : symbol.s) d *= j.dim();
  return {std::sqrt(d) * c.value * c.value, Provenance::rounded};
}

bool is_unimodular(const Mat2& a, double tolerance) {
  return std::abs(a.determinant() - std::complex<double>(1.0, 0.0)) <= tolerance;
}

std::complex<double> wigner_D(HalfInt j, HalfInt m, HalfInt mp, const Mat2& a) {
  check_cap({j});
  if (!is_unimodular(a)) throw std::invalid_argument("wigner_D: matrix is not unimodular");
  if (!valid_projection(j, m) || !valid_projection(j, mp))
    throw std::invalid_argument("wigner_D: inadmissible projection");
  // Action on homogeneous polynomials of degree 2j; integer labels below are
  // j+m, j-m, j+m', j-m'.
  const int jpm = (j.twice + m.twice) / 2, jmm = (j.twice - m.twice) / 2;
  const int jpmp = (j.twice + mp.twice) / 2, jmmp = (j.twice - mp.twice) / 2;
  const auto& f = factorials();
  const long double norm = std::sqrt(f[jpm] * f[jmm] * f[jpmp] * f[jmmp]);
  const auto alpha = a(0, 0), beta = a(0, 1), gamma = a(1, 0), delta = a(1, 1);
  const int mm = (m.twice + mp.twice) / 2;  // m + m'
  const int kmin = std::max(0, mm);
  const int kmax = std::min(jpm, jpmp);
  std::complex<long double> sum{0.0L, 0.0L};
  for (int k = kmin; k <= kmax; ++k) {
    const long double w = 1.0L / (f[k] * f[jpm - k] * f[jpmp - k] * f[k - mm]);
    const auto term = ipow(alpha, k) * ipow(beta, jpm - k) * ipow(gamma, jpmp - k) *
                      ipow(delta, k - mm);
    sum += std::complex<long double>(term.real(), term.imag()) * w;
  }
  sum *= norm;
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

Eigen::MatrixXcd wigner_D_matrix(HalfInt j, const Mat2& a) {
  const int d = j.dim();
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      out(r, c) = wigner_D(j, HalfInt{j.twice - 2 * r}, HalfInt{j.twice - 2 * c}, a);
  return out;
}

}  // namespace costrat
