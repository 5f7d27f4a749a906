#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>
#include <arpack/arpack.h>

#include "costrat/hamiltonian.hpp"

namespace costrat {
namespace {

void fix_sign(Eigen::VectorXd& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  if (v[arg] < 0.0) v = -v;
}

std::vector<EigenPair> dense_lowest(const SparseSymmetric& m, std::size_t k) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense());
  if (es.info() != Eigen::Success) throw std::runtime_error("dense eigensolver failed");
  std::vector<EigenPair> out;
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(i));
    fix_sign(v);
    out.push_back({es.eigenvalues()[static_cast<Eigen::Index>(i)], std::move(v)});
  }
  return out;
}

/// Implicitly restarted Lanczos (ARPACK, regular mode, smallest algebraic)
/// from a fixed-seed start vector.
std::vector<EigenPair> arpack_lowest(const SparseSymmetric& m, std::size_t k, double tol) {
  const auto n = static_cast<a_int>(m.dimension);
  const auto nev = static_cast<a_int>(k);
  const a_int ncv = std::min<a_int>(n, std::max<a_int>(2 * nev + 1, nev + 40));
  const a_int lworkl = ncv * (ncv + 8);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.entries.size());
  for (const auto& e : m.entries)
    triplets.emplace_back(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col), e.value);
  Eigen::SparseMatrix<double, Eigen::RowMajor> a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());

  std::vector<double> resid(static_cast<std::size_t>(n)), v(static_cast<std::size_t>(n) * ncv),
      workd(3 * static_cast<std::size_t>(n)), workl(static_cast<std::size_t>(lworkl));
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  for (auto& x : resid) x = uniform(rng);
  std::array<a_int, 11> iparam{};
  std::array<a_int, 14> ipntr{};
  iparam[0] = 1;                                   // exact shifts
  iparam[2] = std::max<a_int>(1000, 10 * n / ncv);  // restart limit
  iparam[6] = 1;                                   // A x = lambda x
  a_int ido = 0, info = 1;                          // info = 1: resid holds the start vector
  // ARPACK's own criterion is relative to |lambda| <= ||M||; the margin leaves
  // room for the final residual check on the Ritz vectors.
  const double arpack_tol = 0.1 * tol;
  while (true) {
    dsaupd_c(&ido, "I", n, "SA", nev, arpack_tol, resid.data(), ncv, v.data(), n, iparam.data(), ipntr.data(),
             workd.data(), workl.data(), lworkl, &info);
    if (ido != -1 && ido != 1) break;
    Eigen::Map<const Eigen::VectorXd> x(workd.data() + ipntr[0] - 1, n);
    Eigen::Map<Eigen::VectorXd> y(workd.data() + ipntr[1] - 1, n);
    y.noalias() = a * x;
  }
  if (info == 1) throw std::runtime_error("Lanczos iteration did not converge to the residual bound");
  if (info < 0) throw std::runtime_error("ARPACK dsaupd failed with info " + std::to_string(info));

  std::vector<a_int> select(static_cast<std::size_t>(ncv));
  std::vector<double> d(static_cast<std::size_t>(nev)), z(static_cast<std::size_t>(n) * nev);
  dseupd_c(1, "A", select.data(), d.data(), z.data(), n, 0.0, "I", n, "SA", nev, arpack_tol, resid.data(), ncv,
           v.data(), n, iparam.data(), ipntr.data(), workd.data(), workl.data(), lworkl, &info);
  if (info != 0) throw std::runtime_error("ARPACK dseupd failed with info " + std::to_string(info));

  std::vector<EigenPair> out;
  for (a_int i = 0; i < nev; ++i) {
    Eigen::VectorXd vec = Eigen::Map<const Eigen::VectorXd>(z.data() + static_cast<std::size_t>(i) * n, n);
    vec.normalize();
    fix_sign(vec);
    out.push_back({d[static_cast<std::size_t>(i)], std::move(vec)});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.value < y.value; });
  return out;
}

}  // namespace

std::vector<EigenPair> solve_spectrum(const SparseSymmetric& matrix, std::size_t k, double tol) {
  if (k > matrix.dimension) throw std::invalid_argument("requested more eigenvalues than the dimension");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (k == 0) return {};
  const double bound = tol * std::max(matrix.norm_inf(), 1e-300);
  // ARPACK needs k < dimension; asking for nearly every eigenpair of a large
  // matrix is a dense problem anyway.
  const bool dense = matrix.dimension <= kDenseSolverLimit || k + 1 >= matrix.dimension;
  auto out = dense ? dense_lowest(matrix, k) : arpack_lowest(matrix, k, tol);
  for (const auto& p : out)
    if ((matrix.apply(p.vector) - p.value * p.vector).norm() > bound)
      throw std::runtime_error("eigenpair residual exceeds the requested bound");
  return out;
}

}  // namespace costrat
