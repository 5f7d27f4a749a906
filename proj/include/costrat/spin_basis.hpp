#pragma once

// Orthogonal basis chi_I of SU(2)-invariant representative functions on
// SU(2)^N, labelled by multi-indices I = (chain; total; left path; right path)
// built from the sequential coupling scheme
//   (((j1 x j2)_{l2} x j3)_{l3} ... x jN)_{lN}.

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <cstddef>
#include <vector>

#include "costrat/half_int.hpp"
#include "costrat/wigner.hpp"

namespace costrat {

/// Spins (j^1, ..., j^N), one per off-tree link.
using SpinChain = std::vector<HalfInt>;

/// Intermediate spins (l^1, ..., l^N) with l^1 = j^1 and
/// l^i in <l^{i-1}, j^i>.
using CouplingPath = std::vector<HalfInt>;

/// Point of SU(2)^N (or SL(2, C)^N).
using GroupTuple = std::vector<Mat2>;

struct MultiIndex {
  SpinChain chain;
  HalfInt total;
  CouplingPath left;
  CouplingPath right;

  int n() const { return static_cast<int>(chain.size()); }

  // Canonical order: chain, total, left path, right path (lexicographic).
  auto operator<=>(const MultiIndex&) const = default;
  bool operator==(const MultiIndex&) const = default;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& index) const noexcept;
};

/// Index of the constant function 1 on SU(2)^N.
MultiIndex constant_index(int n);

bool is_valid_path(const SpinChain& chain, const CouplingPath& path);
bool is_valid(const MultiIndex& index);

/// Text form `[2j1,...,2jN|2J|2l2,...,2lN|2l'2,...,2l'N]`; the forced l^1 is
/// omitted, so N = 1 indices read `[2j|2j||]`.
std::string to_string(const MultiIndex& index);
/// Inverse of to_string; throws std::invalid_argument on malformed or
/// inadmissible input.
MultiIndex parse_multi_index(std::string_view text);

/// All coupling paths R(chain), ordered lexicographically.
std::vector<CouplingPath> paths(const SpinChain& chain);
/// Paths ending at total spin j, R(chain, j).
std::vector<CouplingPath> paths_to(const SpinChain& chain, HalfInt j);
/// Multiplicity of spin j in the tensor product of the chain.
std::size_t multiplicity(const SpinChain& chain, HalfInt j);

/// Every multi-index whose chain entries are all <= cutoff, in canonical order.
std::vector<MultiIndex> enumerate_indices(int n, HalfInt cutoff);

/// Index whose chain is zero except at the given 1-based links. `left` and
/// `right` hold the intermediate spins reached after the second, third, ...
/// nonzero link (the value after the first is forced); their last entry is the
/// total spin. Throws std::invalid_argument for inadmissible data.
MultiIndex index_on_links(int n, const std::vector<std::pair<int, HalfInt>>& spins,
                          const std::vector<HalfInt>& left, const std::vector<HalfInt>& right);

/// prod_i (2 j^i + 1).
double chain_dimension(const SpinChain& chain);

/// Squared norm of chi_I in the hbar-dependent Hilbert space:
/// prod_r (hbar pi)^{3/2} exp(hbar (2 j^r + 1)^2). Throws for hbar <= 0.
double norm_squared(const MultiIndex& index, double hbar);

/// Product of the N - 1 Clebsch-Gordan coefficients of the cascade that
/// expands |chain, path, m> in the tensor basis, at the given projections.
Coefficient cg_cascade(const SpinChain& chain, const CouplingPath& path,
                       const std::vector<HalfInt>& projections);

/// A nonzero cascade component: projections (m_1, ..., m_N) and coefficient.
struct CascadeTerm {
  std::vector<HalfInt> projections;
  double coefficient;
};

/// All nonzero components of |chain, path, m>, for every m, with pruning on
/// the cumulative projections. Ordered by (m, projections).
std::vector<CascadeTerm> cascade_terms(const SpinChain& chain, const CouplingPath& path);

/// chi_I(a). Throws std::invalid_argument for a non-unimodular entry or a
/// tuple of the wrong length.
std::complex<double> evaluate_basis(const MultiIndex& index, const GroupTuple& a);

/// Evaluates many basis functions at one fixed tuple, reusing the
/// representation matrices D^j(a_i). Single-owner.
class BasisEvaluator {
 public:
  explicit BasisEvaluator(GroupTuple a);

  std::complex<double> operator()(const MultiIndex& index);
  const GroupTuple& point() const { return a_; }

 private:
  const Eigen::MatrixXcd& rep(std::size_t site, HalfInt j);

  GroupTuple a_;
  std::vector<std::vector<Eigen::MatrixXcd>> reps_;  // [site][2j]
};

}  // namespace costrat
