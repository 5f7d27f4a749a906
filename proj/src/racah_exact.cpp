#include "racah_exact.hpp"

#include <algorithm>
#include <array>
#include <climits>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace costrat::detail {
namespace {

class PrimeTable {
 public:
  PrimeTable() {
    std::vector<bool> composite(kMaxFactorialArg + 1, false);
    for (int p = 2; p <= kMaxFactorialArg; ++p) {
      if (composite[p]) continue;
      primes_.push_back(p);
      for (int q = 2 * p; q <= kMaxFactorialArg; q += p) composite[q] = true;
    }
    // n! = (n-1)! * n, one trial factorization per n.
    factorial_.assign(kMaxFactorialArg + 1, std::vector<int>(primes_.size(), 0));
    for (int n = 2; n <= kMaxFactorialArg; ++n) {
      factorial_[n] = factorial_[n - 1];
      int m = n;
      for (std::size_t i = 0; i < primes_.size() && m > 1; ++i) {
        while (m % primes_[i] == 0) {
          ++factorial_[n][i];
          m /= primes_[i];
        }
      }
    }
  }

  std::size_t size() const { return primes_.size(); }
  int prime(std::size_t i) const { return primes_[i]; }

  const std::vector<int>& factorial(int n) const {
    if (n < 0 || n > kMaxFactorialArg) throw std::out_of_range("factorial argument out of range");
    return factorial_[static_cast<std::size_t>(n)];
  }

  std::vector<int> factorize(int n) const {
    std::vector<int> e(primes_.size(), 0);
    for (std::size_t i = 0; i < primes_.size() && n > 1; ++i) {
      while (n % primes_[i] == 0) {
        ++e[i];
        n /= primes_[i];
      }
    }
    if (n != 1) throw std::out_of_range("integer exceeds prime table");
    return e;
  }

 private:
  std::vector<int> primes_;
  std::vector<std::vector<int>> factorial_;
};

const PrimeTable& primes() {
  static const PrimeTable table;
  return table;
}

void add_to(std::vector<int>& acc, const std::vector<int>& e, int weight) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weight * e[i];
}

/// One term of an alternating Racah sum: sign * prod p^exponents.
struct Term {
  int sign;
  std::vector<int> exponents;
};

/// Sums the terms exactly: returns (S, g) with sum = S * prod p^g and S integer.
std::pair<BigInt, std::vector<int>> exact_sum(const std::vector<Term>& terms) {
  const auto& table = primes();
  std::vector<int> g(table.size(), INT_MAX);
  for (const auto& t : terms)
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], t.exponents[i]);
  BigInt sum = 0;
  for (const auto& t : terms) {
    BigInt v = 1;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const int e = t.exponents[i] - g[i];
      if (e > 0) v *= boost::multiprecision::pow(BigInt(table.prime(i)), static_cast<unsigned>(e));
    }
    if (t.sign > 0)
      sum += v;
    else
      sum -= v;
  }
  return {sum, g};
}

SignedSqrtRational assemble(std::vector<int> square_exps, const std::vector<Term>& terms) {
  SignedSqrtRational out;
  if (terms.empty()) {
    out.square_exponents = std::move(square_exps);
    return out;
  }
  auto [sum, g] = exact_sum(terms);
  if (sum == 0) {
    out.square_exponents = std::move(square_exps);
    return out;
  }
  add_to(square_exps, g, 2);
  out.sign = sum < 0 ? -1 : 1;
  out.multiplier = sum < 0 ? BigInt(-sum) : sum;
  out.square_exponents = std::move(square_exps);
  return out;
}

/// Exponents of Delta(abc) = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!, twice-values.
void add_delta(std::vector<int>& acc, int ta, int tb, int tc) {
  const auto& t = primes();
  add_to(acc, t.factorial((ta + tb - tc) / 2), 1);
  add_to(acc, t.factorial((ta - tb + tc) / 2), 1);
  add_to(acc, t.factorial((-ta + tb + tc) / 2), 1);
  add_to(acc, t.factorial((ta + tb + tc) / 2 + 1), -1);
}

/// Splits x (> 0) as mantissa * 2^exponent with the mantissa kept to 64 bits.
std::pair<long double, long> scaled(const BigInt& x) {
  const long bits = static_cast<long>(boost::multiprecision::msb(x)) + 1;
  if (bits <= 64) return {static_cast<long double>(static_cast<std::uint64_t>(x)), 0};
  const long shift = bits - 64;
  const BigInt top = x >> shift;
  return {static_cast<long double>(static_cast<std::uint64_t>(top)), shift};
}

}  // namespace

SignedSqrtRational operator*(const SignedSqrtRational& a, const SignedSqrtRational& b) {
  SignedSqrtRational out;
  out.square_exponents = a.square_exponents;
  if (a.is_zero() || b.is_zero()) return out;
  add_to(out.square_exponents, b.square_exponents, 1);
  out.sign = a.sign * b.sign;
  out.multiplier = a.multiplier * b.multiplier;
  return out;
}

SignedSqrtRational scale(SignedSqrtRational x, int n) {
  if (n <= 0) throw std::invalid_argument("scale factor must be positive");
  x.multiplier *= n;
  return x;
}

double to_double(const SignedSqrtRational& x) {
  if (x.is_zero()) return 0.0;
  const auto& table = primes();
  BigInt num = x.multiplier * x.multiplier;
  BigInt den = 1;
  for (std::size_t i = 0; i < x.square_exponents.size(); ++i) {
    const int e = x.square_exponents[i];
    if (e > 0)
      num *= boost::multiprecision::pow(BigInt(table.prime(i)), static_cast<unsigned>(e));
    else if (e < 0)
      den *= boost::multiprecision::pow(BigInt(table.prime(i)), static_cast<unsigned>(-e));
  }
  auto [mn, en] = scaled(num);
  auto [md, ed] = scaled(den);
  long double ratio = mn / md;
  long e = en - ed;
  if (e % 2 != 0) {
    ratio *= 2.0L;
    e -= 1;
  }
  const long double root = std::ldexp(std::sqrt(ratio), static_cast<int>(e / 2));
  return static_cast<double>(x.sign * root);
}

SignedSqrtRational clebsch_gordan_exact(int tj1, int tm1, int tj2, int tm2, int tj3, int tm3) {
  const auto& t = primes();
  std::vector<int> sq(t.size(), 0);
  add_to(sq, t.factorize(tj3 + 1), 1);
  add_delta(sq, tj1, tj2, tj3);
  add_to(sq, t.factorial((tj1 + tm1) / 2), 1);
  add_to(sq, t.factorial((tj1 - tm1) / 2), 1);
  add_to(sq, t.factorial((tj2 + tm2) / 2), 1);
  add_to(sq, t.factorial((tj2 - tm2) / 2), 1);
  add_to(sq, t.factorial((tj3 + tm3) / 2), 1);
  add_to(sq, t.factorial((tj3 - tm3) / 2), 1);

  const int a = (tj1 + tj2 - tj3) / 2;
  const int b = (tj1 - tm1) / 2;
  const int c = (tj2 + tm2) / 2;
  const int d = (tj3 - tj2 + tm1) / 2;
  const int e = (tj3 - tj1 - tm2) / 2;
  const int kmin = std::max({0, -d, -e});
  const int kmax = std::min({a, b, c});
  std::vector<Term> terms;
  for (int k = kmin; k <= kmax; ++k) {
    Term term{k % 2 == 0 ? 1 : -1, std::vector<int>(t.size(), 0)};
    add_to(term.exponents, t.factorial(k), -1);
    add_to(term.exponents, t.factorial(a - k), -1);
    add_to(term.exponents, t.factorial(b - k), -1);
    add_to(term.exponents, t.factorial(c - k), -1);
    add_to(term.exponents, t.factorial(d + k), -1);
    add_to(term.exponents, t.factorial(e + k), -1);
    terms.push_back(std::move(term));
  }
  return assemble(std::move(sq), terms);
}

SignedSqrtRational six_j_exact(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
  const auto& t = primes();
  std::vector<int> sq(t.size(), 0);
  add_delta(sq, tj1, tj2, tj3);
  add_delta(sq, tj1, tj5, tj6);
  add_delta(sq, tj4, tj2, tj6);
  add_delta(sq, tj4, tj5, tj3);

  const std::array<int, 4> a{(tj1 + tj2 + tj3) / 2, (tj1 + tj5 + tj6) / 2, (tj4 + tj2 + tj6) / 2,
                             (tj4 + tj5 + tj3) / 2};
  const std::array<int, 3> b{(tj1 + tj2 + tj4 + tj5) / 2, (tj2 + tj3 + tj5 + tj6) / 2,
                             (tj3 + tj1 + tj6 + tj4) / 2};
  const int tmin = *std::max_element(a.begin(), a.end());
  const int tmax = *std::min_element(b.begin(), b.end());
  std::vector<Term> terms;
  for (int k = tmin; k <= tmax; ++k) {
    Term term{k % 2 == 0 ? 1 : -1, std::vector<int>(t.size(), 0)};
    add_to(term.exponents, t.factorial(k + 1), 1);
    for (int ai : a) add_to(term.exponents, t.factorial(k - ai), -1);
    for (int bi : b) add_to(term.exponents, t.factorial(bi - k), -1);
    terms.push_back(std::move(term));
  }
  return assemble(std::move(sq), terms);
}

}  // namespace costrat::detail
