#pragma once

// Multiplication law of the algebra of invariant representative functions on
// SU(2)^N in the basis chi_I.

#include "costrat/invariant_vector.hpp"

namespace costrat {

/// Recoupling coefficient between the scheme that couples chain1 and chain2
/// link by link to `chain` along `path`, and the scheme that first couples
/// each chain along path1, path2 and then couples the two totals:
///   prod_{i=2}^N paren_9j(l1^{i-1} l2^{i-1} l^{i-1}; j1^i j2^i j^i; l1^i l2^i l^i).
/// Zero whenever a componentwise triangle condition fails.
Coefficient recoupling_U(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1,
                         const CouplingPath& path2);

/// C^I_{I1 I2}, the coefficient of chi_I in chi_{I1} chi_{I2}.
Coefficient structure_constant(const MultiIndex& i1, const MultiIndex& i2, const MultiIndex& i);

/// chi_{I1} chi_{I2} as an exact finite expansion. Results are cached.
InvariantVector multiply_basis(const MultiIndex& i1, const MultiIndex& i2);

/// Same expansion as multiply_basis, computed without touching the cache. For
/// bulk work where each pair is used once.
InvariantVector multiply_basis_uncached(const MultiIndex& i1, const MultiIndex& i2);

/// Bilinear extension of multiply_basis.
InvariantVector multiply(const InvariantVector& v, const InvariantVector& w);

/// conj(chi_I) chi_J = sum_K C^J_{I K} chi_K.
InvariantVector conj_multiply(const MultiIndex& i, const MultiIndex& j);

/// sum_I v_I w_I ||chi_I||^2 in the hbar-dependent Hilbert space.
double inner_product(const InvariantVector& v, const InvariantVector& w, double hbar);

/// Every chain whose entries satisfy j^i in <j1^i, j2^i>, lexicographic.
std::vector<SpinChain> coupled_chains(const SpinChain& chain1, const SpinChain& chain2);

void clear_product_cache();

}  // namespace costrat
