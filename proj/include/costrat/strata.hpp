#pragma once

// Invariants cutting out the orbit-type strata of SU(2)^N under diagonal
// conjugation, the generators of the subspace of functions vanishing on the
// toral stratum, and the truncated linear system describing its orthogonal
// complement.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "costrat/invariant_vector.hpp"

namespace costrat {

/// Signs nu_r = +1 or -1, one per off-tree link.
using SignChain = std::vector<int>;

/// tr([a_r, a_s]^2) in the chi basis; links are 1-based with r < s.
InvariantVector p_T_rs(int n, int r, int s);
/// tr([a_r, a_s] a_t); links are 1-based with r < s < t.
InvariantVector p_T_rst(int n, int r, int s, int t);
/// tr(a_r) - 2 nu.
InvariantVector p_nu(int n, int r, int nu);

/// One vanishing generator p * chi_I with p = p_T_rs or p_T_rst.
struct Generator {
  std::vector<int> links;  // (r, s) or (r, s, t)
  MultiIndex seed;         // I
  InvariantVector vector;  // exact product, not truncated
};

std::string label(const Generator& g);

/// Generators for every I with chain entries <= cutoff: first all (r, s) in
/// lexicographic order, each with every I in canonical order, then all
/// (r, s, t) likewise.
std::vector<Generator> vanishing_generators_T(int n, HalfInt cutoff);

struct SystemEntry {
  std::size_t row;
  std::size_t col;
  double value;
};

/// Rows: generators of the truncated family. Columns: union of their supports
/// in canonical order. Entry (g, J) is A^J_g ||chi_J||^2, so that
/// sum_J entry(g, J) phi^J = <g, phi>_hbar.
struct CostratumSystem {
  int n = 0;
  HalfInt cutoff;
  double hbar = 1.0;
  std::vector<Generator> rows;
  std::vector<MultiIndex> columns;
  std::vector<double> column_norm_squared;
  std::vector<SystemEntry> entries;  // sorted by (row, col)

  /// Coefficient vector of phi on `columns` (absent columns read as zero).
  Eigen::VectorXd restrict(const InvariantVector& phi) const;
  /// <g, phi>_hbar / (||g||_hbar ||phi||_hbar) for every row g. Zero for phi = 0.
  Eigen::VectorXd cosines(const InvariantVector& phi) const;
};

CostratumSystem costratum_T_system(int n, HalfInt cutoff, double hbar);

/// hbar-orthonormal basis of the numerical null space of the system. A right
/// singular vector counts as null when its singular value is at most
/// tol times the largest one. Throws std::invalid_argument for tol <= 0.
std::vector<InvariantVector> costratum_T_kernel(const CostratumSystem& system, double tol = 1e-10);

/// Largest |cosine| over the rows; zero for an empty system.
double max_generator_cosine(const CostratumSystem& system, const InvariantVector& phi);

/// chi_I(nu_1 1, ..., nu_N 1).
double evaluate_at_center(const MultiIndex& index, const SignChain& nu);

/// Truncation of the vector representing evaluation at (nu_1 1, ..., nu_N 1):
/// coefficients chi_I(nu 1)/||chi_I||^2, scaled to unit hbar-norm. Small
/// coefficients are kept because they are genuinely tiny at large spins.
InvariantVector point_stratum_vector(const SignChain& nu, HalfInt cutoff, double hbar);

/// f - f(nu 1, ..., nu 1) * 1.
InvariantVector point_projector_apply(const InvariantVector& f, const SignChain& nu);

}  // namespace costrat
