#pragma once

// Kogut-Susskind Hamiltonian in the invariant basis: Wilson-loop expansions,
// Casimir eigenvalues, the coefficient-space matrix and its low spectrum.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "costrat/invariant_vector.hpp"
#include "costrat/lattice.hpp"

namespace costrat {

/// tr(a_r).
InvariantVector wilson_single(int n, int r);
/// tr(a_r a_s) = (sqrt3/2) chi_1 - (1/2) chi_0 on the chain (1/2 r, 1/2 s).
InvariantVector wilson_double(int n, int r, int s);
/// tr(a_r a_s a_t a_u), thirteen terms on the chain (1/2 r, ..., 1/2 u).
/// Requires 1 <= r < s < t < u <= N; throws std::invalid_argument otherwise.
InvariantVector wilson_quad(int n, int r, int s, int t, int u);

/// sum_i 4 j^i (j^i + 1).
double casimir_eps(const MultiIndex& index);

/// W with frak W = sum_I W^I (chi_I + conj chi_I): the sum over plaquettes of
/// the class-appropriate Wilson expansion.
InvariantVector assemble_magnetic(const LatticeSpec& lattice);

struct HamiltonianParams {
  double g = 1.0;
  double delta = 1.0;
  double hbar = 1.0;
};

/// Real symmetric matrix stored as its full triplet list, sorted by (row, col).
struct SparseSymmetric {
  struct Entry {
    std::size_t row;
    std::size_t col;
    double value;
  };
  std::size_t dimension = 0;
  std::vector<Entry> entries;

  Eigen::MatrixXd dense() const;
  /// y = M x.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// max |M_ij - M_ji|.
  double asymmetry() const;
  /// Largest absolute row sum; an upper bound for the spectral norm.
  double norm_inf() const;
  /// Matrix Market coordinate format, 1-based, %.17g values.
  void write_matrix_market(std::ostream& out) const;
};

struct HamiltonianMatrix {
  std::vector<MultiIndex> basis;  // canonical order
  SparseSymmetric matrix;
};

/// M_{KJ} = (g^2/2 delta) eps_J delta_{JK} - (1/(g^2 delta)) sum_I W^I (C^K_{IJ} + C^J_{IK})
/// on every index with chain entries <= cutoff. Throws std::invalid_argument
/// when the cutoff is below 1/2 or the parameters are not positive.
HamiltonianMatrix assemble_matrix(const LatticeSpec& lattice, const HamiltonianParams& params,
                                  HalfInt cutoff);

struct EigenPair {
  double value;
  Eigen::VectorXd vector;  // unit norm, largest-magnitude component positive
};

/// The k lowest eigenpairs, ascending, with ||M v - lambda v|| <= tol ||M||.
/// Throws std::invalid_argument for k > dimension and std::runtime_error when
/// the iteration does not reach the residual bound.
std::vector<EigenPair> solve_spectrum(const SparseSymmetric& matrix, std::size_t k, double tol = 1e-9);

/// Above this dimension solve_spectrum switches from a dense solver to
/// implicitly restarted Lanczos.
inline constexpr std::size_t kDenseSolverLimit = 2500;

}  // namespace costrat
