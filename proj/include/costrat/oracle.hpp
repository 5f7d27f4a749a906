#pragma once

// Brute-force verification paths. Nothing here uses the recoupling or
// multiplication code; the only shared kernel is clebsch_gordan.

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "costrat/lattice.hpp"
#include "costrat/spin_basis.hpp"

namespace costrat {

/// Haar-random SU(2) elements from a uniform point on the 3-sphere.
class HaarSampler {
 public:
  explicit HaarSampler(std::uint64_t seed) : seed_(seed), rng_(seed) {}

  Mat2 next();
  GroupTuple tuple(int n);
  /// Standard normal variate (Box-Muller on the 64-bit engine, so streams are
  /// identical across standard libraries).
  double gaussian();
  double uniform();  // [0, 1)

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
  std::mt19937_64 rng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

Mat2 haar_su2(HaarSampler& sampler);

/// Random element of the diagonal torus of SL(2, C): diag(z, 1/z) with
/// log|z| uniform in [-0.5, 0.5] and a uniform phase.
Mat2 random_diagonal_sl2c(HaarSampler& sampler);
GroupTuple random_diagonal_tuple(HaarSampler& sampler, int n);

struct McEstimate {
  std::complex<double> value;
  double standard_error;
};

/// Samples are drawn in chunks of kMcChunk; chunk c uses the sub-stream seeded
/// with splitmix64(seed + c) and chunk sums are combined in chunk order, so
/// the estimate does not depend on the thread count.
inline constexpr std::size_t kMcChunk = 4096;

/// Integrand filling `out` (size `outputs`) at one Haar tuple.
using McIntegrand = std::function<void(const GroupTuple&, std::vector<std::complex<double>>& out)>;

/// Haar means of several integrands over SU(2)^N with their standard errors.
std::vector<McEstimate> mc_means(int n, std::size_t outputs, const McIntegrand& integrand,
                                 std::size_t samples, std::uint64_t seed);

using TupleFunction = std::function<std::complex<double>(const GroupTuple&)>;

/// Monte-Carlo estimate of int conj(f) g over Haar^N.
McEstimate mc_inner(const TupleFunction& f, const TupleFunction& g, int n, std::size_t samples,
                    std::uint64_t seed);

// Direct 2x2 traces; links are 1-based.
std::complex<double> trace_commutator_squared(const GroupTuple& a, int r, int s);
std::complex<double> trace_commutator_times(const GroupTuple& a, int r, int s, int t);
std::complex<double> trace_product(const GroupTuple& a, const std::vector<int>& links);

/// sum over plaquettes of tr a(p) + conj(tr a(p)), with a = 1 on tree links and
/// the holonomy built link by link from the boundary traversal.
std::complex<double> magnetic_direct(const LatticeSpec& lattice, const GroupTuple& offtree);

/// <chi_I, tr(a_{r_1} ... a_{r_k})> computed from its cyclic CG sum: I must
/// carry spin 1/2 on exactly the links r_1 < ... < r_k and zero elsewhere.
double trace_expansion_coefficient(const MultiIndex& index, const std::vector<int>& links);

/// <Psi | Phi> between the ladder vector obtained by coupling chain1 and chain2
/// link by link to `chain` and then along `path`, and the one obtained by
/// coupling each chain along path1, path2 and then their totals, both at
/// projection m (defaults to the total spin). Explicit tensor components;
/// throws std::length_error when the tensor dimension exceeds 1e6.
double recoupling_direct(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1,
                         const CouplingPath& path2);
double recoupling_direct(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1,
                         const CouplingPath& path2, HalfInt m);

/// Caches the ladder vectors for one pair (chain1, chain2) so that whole
/// blocks of recoupling coefficients can be checked cheaply.
class RecouplingOracle {
 public:
  RecouplingOracle(SpinChain chain1, SpinChain chain2);

  /// Same value as recoupling_direct at m = total spin.
  double operator()(const SpinChain& chain, const CouplingPath& path, const CouplingPath& path1,
                    const CouplingPath& path2);

 private:
  const std::vector<double>& psi(const SpinChain& chain, const CouplingPath& path, HalfInt m);
  const std::vector<double>& phi(const CouplingPath& path1, const CouplingPath& path2, HalfInt j,
                                 HalfInt m);

  SpinChain chain1_, chain2_;
  std::map<std::vector<int>, std::vector<double>> psi_cache_, phi_cache_;
};

}  // namespace costrat
