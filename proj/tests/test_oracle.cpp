#include <gtest/gtest.h>

#include <cmath>

#include <Eigen/LU>

#include "costrat/algebra.hpp"
#include "costrat/oracle.hpp"
#include "costrat/parallel.hpp"

using namespace costrat;

namespace {

HalfInt h(int twice) { return HalfInt{twice}; }

SpinChain chain(std::initializer_list<int> twice) {
  SpinChain c;
  for (int t : twice) c.push_back(h(t));
  return c;
}

}  // namespace

TEST(Haar, UnimodularUnitaryAndDeterministic) {
  HaarSampler a(5), b(5);
  for (int t = 0; t < 1000; ++t) {
    const Mat2 x = a.next();
    EXPECT_LE(std::abs(x.determinant() - 1.0), 1e-14);
    EXPECT_LE((x * x.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_EQ(x, b.next());
  }
  EXPECT_EQ(a.counter(), 1000u);
}

TEST(Haar, LowMoments) {
  // Haar moments: E tr a = 0 and E |tr a|^2 = 1.
  const auto est = mc_means(
      1, 2,
      [](const GroupTuple& g, std::vector<std::complex<double>>& out) {
        const auto t = g[0].trace();
        out[0] = t;
        out[1] = std::norm(t);
      },
      50000, 42);
  EXPECT_LE(std::abs(est[0].value), 4.0 * est[0].standard_error);
  EXPECT_LE(std::abs(est[1].value - 1.0), 4.0 * est[1].standard_error);
}

TEST(Haar, DiagonalTorus) {
  HaarSampler s(6);
  for (int t = 0; t < 100; ++t) {
    const Mat2 d = random_diagonal_sl2c(s);
    EXPECT_EQ(d(0, 1), 0.0);
    EXPECT_EQ(d(1, 0), 0.0);
    EXPECT_LE(std::abs(d.determinant() - 1.0), 1e-12);
  }
}

TEST(MonteCarlo, IndependentOfThreadCount) {
  const auto integrand = [](const GroupTuple& g, std::vector<std::complex<double>>& out) {
    out[0] = g[0].trace() * g[1].trace();
    out[1] = (g[0] * g[1]).trace();
  };
  set_thread_count(1);
  const auto a = mc_means(2, 2, integrand, 3 * kMcChunk + 17, 9);
  set_thread_count(4);
  const auto b = mc_means(2, 2, integrand, 3 * kMcChunk + 17, 9);
  set_thread_count(0);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(a[k].value, b[k].value);
    EXPECT_EQ(a[k].standard_error, b[k].standard_error);
  }
}

TEST(MonteCarlo, InnerProductOfCharacters) {
  const auto f = [](const GroupTuple& g) { return g[0].trace(); };
  const auto one = [](const GroupTuple&) { return std::complex<double>(1.0); };
  const auto self = mc_inner(f, f, 1, 20000, 3);
  EXPECT_LE(std::abs(self.value - 1.0), 4.0 * self.standard_error);
  const auto cross = mc_inner(one, f, 1, 20000, 3);
  EXPECT_LE(std::abs(cross.value), 4.0 * cross.standard_error);
}

TEST(Traces, CommutingInputsAndAntisymmetry) {
  HaarSampler s(8);
  const auto diag = random_diagonal_tuple(s, 3);
  EXPECT_LE(std::abs(trace_commutator_squared(diag, 1, 2)), 1e-12);
  EXPECT_LE(std::abs(trace_commutator_times(diag, 1, 2, 3)), 1e-12);
  for (int t = 0; t < 20; ++t) {
    const auto g = s.tuple(3);
    EXPECT_LE(std::abs(trace_commutator_times(g, 1, 2, 3) + trace_commutator_times(g, 2, 1, 3)), 1e-13);
    EXPECT_LE(std::abs(trace_commutator_squared(g, 1, 2) - trace_commutator_squared(g, 2, 1)), 1e-13);
    EXPECT_LE(std::abs(trace_product(g, {1, 2, 3}) - trace_product(g, {2, 3, 1})), 1e-13);
  }
}

TEST(RecouplingDirect, IndependentOfProjection) {
  const auto c1 = chain({1, 2}), c2 = chain({1, 2});
  for (const auto& p1 : paths(c1))
    for (const auto& p2 : paths(c2))
      for (const auto& c : coupled_chains(c1, c2))
        for (const auto& p : paths(c)) {
          const double a = recoupling_direct(c1, c2, c, p, p1, p2);
          if (p.back().twice == 0) continue;
          const double b = recoupling_direct(c1, c2, c, p, p1, p2, HalfInt{p.back().twice - 2});
          EXPECT_NEAR(a, b, 1e-12);
        }
}

TEST(RecouplingDirect, TrivialChainAndGram) {
  const auto c1 = chain({1, 1, 2});
  const SpinChain zero(3, h(0));
  for (const auto& p : paths(c1))
    for (const auto& p1 : paths(c1))
      EXPECT_NEAR(recoupling_direct(c1, zero, c1, p, p1, zero), p == p1 ? 1.0 : 0.0, 1e-13);

  // At fixed total spin j the columns (p1, p2) are orthonormal.
  const auto c2 = chain({1, 1, 0});
  RecouplingOracle oracle(c1, c2);
  for (int j = 0; j <= 8; ++j)
    for (const auto& p1 : paths(c1))
      for (const auto& p2 : paths(c2))
        for (const auto& q1 : paths(c1))
          for (const auto& q2 : paths(c2)) {
            if (!triangle_ok(p1.back(), p2.back(), h(j)) || !triangle_ok(q1.back(), q2.back(), h(j))) continue;
            double s = 0.0;
            for (const auto& c : coupled_chains(c1, c2))
              for (const auto& p : paths_to(c, h(j))) s += oracle(c, p, p1, p2) * oracle(c, p, q1, q2);
            EXPECT_NEAR(s, (p1 == q1 && p2 == q2) ? 1.0 : 0.0, 1e-12);
          }
}

TEST(RecouplingDirect, RefusesHugeTensors) {
  const auto big = chain({20, 20, 20});
  EXPECT_THROW(recoupling_direct(big, big, chain({0, 0, 0}), chain({0, 0, 0}), chain({20, 0, 20}), chain({20, 0, 20})),
               std::length_error);
}
