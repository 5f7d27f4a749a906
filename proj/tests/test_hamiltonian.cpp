#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "costrat/hamiltonian.hpp"
#include "costrat/oracle.hpp"

using namespace costrat;

namespace {

HalfInt h(int twice) { return HalfInt{twice}; }

std::vector<double> lowest(const LatticeSpec& lat, int cutoff2, std::size_t k, double g = 1.0) {
  const auto m = assemble_matrix(lat, {g, 1.0, 1.0}, h(cutoff2));
  std::vector<double> out;
  for (const auto& p : solve_spectrum(m.matrix, std::min(k, m.matrix.dimension))) out.push_back(p.value);
  return out;
}

}  // namespace

TEST(Wilson, SingleAndDouble) {
  const auto w1 = wilson_single(3, 2);
  ASSERT_EQ(w1.size(), 1u);
  EXPECT_EQ(w1.terms().begin()->second, 1.0);
  EXPECT_EQ(to_string(w1.terms().begin()->first), "[0,1,0|1|1,1|1,1]");

  const auto w2 = wilson_double(2, 1, 2);
  ASSERT_EQ(w2.size(), 2u);
  EXPECT_EQ(w2.coefficient(parse_multi_index("[1,1|2|2|2]")), std::sqrt(3.0) / 2.0);
  EXPECT_EQ(w2.coefficient(parse_multi_index("[1,1|0|0|0]")), -0.5);
  EXPECT_THROW(wilson_double(2, 2, 1), std::invalid_argument);
  EXPECT_THROW(wilson_single(2, 3), std::invalid_argument);
}

TEST(Wilson, QuadTable) {
  const auto w = wilson_quad(4, 1, 2, 3, 4);
  EXPECT_EQ(w.size(), 13u);
  EXPECT_EQ(w.coefficient(index_on_links(4, {{1, h(1)}, {2, h(1)}, {3, h(1)}, {4, h(1)}}, {h(2), h(3), h(4)},
                                         {h(2), h(3), h(4)})),
            std::sqrt(5.0) / 4.0);
  EXPECT_THROW(wilson_quad(4, 1, 3, 2, 4), std::invalid_argument);
}

TEST(Wilson, PointwiseAgainstTraces) {
  HaarSampler sampler(101);
  for (int t = 0; t < 100; ++t) {
    const auto g = sampler.tuple(4);
    BasisEvaluator ev(g);
    EXPECT_NEAR(std::abs(wilson_single(4, 3).evaluate(ev) - trace_product(g, {3})), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(wilson_double(4, 1, 3).evaluate(ev) - trace_product(g, {1, 3})), 0.0, 1e-10);
    // r <-> s symmetry through trace cyclicity.
    EXPECT_NEAR(std::abs(wilson_double(4, 1, 3).evaluate(ev) - trace_product(g, {3, 1})), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(wilson_quad(4, 1, 2, 3, 4).evaluate(ev) - trace_product(g, {1, 2, 3, 4})), 0.0, 1e-10);
  }
}

TEST(Casimir, Examples) {
  EXPECT_EQ(casimir_eps(constant_index(2)), 0.0);
  EXPECT_EQ(casimir_eps(parse_multi_index("[1|1||]")), 3.0);
  EXPECT_EQ(casimir_eps(parse_multi_index("[1,1|0|0|0]")), 6.0);
  for (const auto& i : enumerate_indices(3, h(2))) {
    EXPECT_GE(casimir_eps(i), 0.0);
    EXPECT_EQ(casimir_eps(i) == 0.0, i == constant_index(3));
  }
}

TEST(Magnetic, SinglePlaquetteAndDirectHolonomies) {
  const auto single = build_lattice({2, 2});
  EXPECT_EQ(assemble_magnetic(single), wilson_single(1, 1));
  HaarSampler sampler(55);
  for (const auto& dims : std::vector<std::vector<int>>{{2, 3}, {3, 3}, {4, 3}, {2, 2, 2}}) {
    for (bool reverse : {false, true}) {
      const auto lat = build_lattice(dims, reverse);
      const auto w = assemble_magnetic(lat);
      for (int t = 0; t < 10; ++t) {
        const auto g = sampler.tuple(lat.n_offtree);
        EXPECT_NEAR(std::abs(2.0 * w.evaluate(g).real() - magnetic_direct(lat, g)), 0.0, 1e-10);
      }
    }
  }
}

TEST(Matrix, SinglePlaquetteIsTridiagonal) {
  const double g = 1.3, delta = 0.7;
  const auto m = assemble_matrix(build_lattice({2, 2}), {g, delta, 1.0}, h(10));
  ASSERT_EQ(m.basis.size(), 11u);
  EXPECT_EQ(m.matrix.asymmetry(), 0.0);
  const auto d = m.matrix.dense();
  for (int a = 0; a < 11; ++a)
    for (int b = 0; b < 11; ++b) {
      double expected = 0.0;
      if (a == b) expected = g * g / (2.0 * delta) * a * (a + 2.0);
      else if (std::abs(a - b) == 1) expected = -2.0 / (g * g * delta);
      EXPECT_NEAR(d(a, b), expected, 1e-13) << a << "," << b;
    }
}

TEST(Matrix, StrongCouplingIsElectric) {
  const double g = 1e4;
  const auto m = assemble_matrix(build_lattice({2, 3}), {g, 1.0, 1.0}, h(2));
  const auto d = m.matrix.dense();
  for (std::size_t i = 0; i < m.basis.size(); ++i)
    for (std::size_t j = 0; j < m.basis.size(); ++j) {
      const double scaled = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) / (g * g / 2.0);
      EXPECT_NEAR(scaled, i == j ? casimir_eps(m.basis[i]) : 0.0, 1e-12);
    }
}

TEST(Matrix, SymmetricOnLargerLattices) {
  for (const auto& dims : std::vector<std::vector<int>>{{3, 3}, {2, 2, 2}}) {
    const auto m = assemble_matrix(build_lattice(dims), {1.0, 1.0, 1.0}, h(1));
    EXPECT_LE(m.matrix.asymmetry(), 1e-12);
    EXPECT_TRUE(std::is_sorted(m.basis.begin(), m.basis.end()));
  }
}

TEST(Matrix, RejectsBadParameters) {
  const auto lat = build_lattice({2, 2});
  EXPECT_THROW(assemble_matrix(lat, {1.0, 1.0, 1.0}, h(0)), std::invalid_argument);
  EXPECT_THROW(assemble_matrix(lat, {0.0, 1.0, 1.0}, h(1)), std::invalid_argument);
  EXPECT_THROW(assemble_matrix(lat, {1.0, -1.0, 1.0}, h(1)), std::invalid_argument);
}

TEST(Matrix, MatrixMarketDump) {
  const auto m = assemble_matrix(build_lattice({2, 2}), {1.0, 1.0, 1.0}, h(2));
  std::ostringstream out;
  m.matrix.write_matrix_market(out);
  const auto text = out.str();
  EXPECT_EQ(text.rfind("%%MatrixMarket matrix coordinate real general\n", 0), 0u);
  EXPECT_NE(text.find("costrat-1"), std::string::npos);
  EXPECT_NE(text.find("\n3 3 " + std::to_string(m.matrix.entries.size()) + "\n"), std::string::npos);
  EXPECT_NE(text.find("\n1 2 -2\n"), std::string::npos);
}

TEST(Spectrum, DiagonalMatrix) {
  SparseSymmetric m;
  m.dimension = 4;
  m.entries = {{0, 0, 3.0}, {1, 1, -1.0}, {2, 2, 2.0}, {3, 3, 0.5}};
  const auto p = solve_spectrum(m, 4);
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].value, -1.0);
  EXPECT_EQ(p[1].value, 0.5);
  EXPECT_EQ(p[2].value, 2.0);
  EXPECT_EQ(p[3].value, 3.0);
  EXPECT_THROW(solve_spectrum(m, 5), std::invalid_argument);
  EXPECT_THROW(solve_spectrum(m, 1, 0.0), std::invalid_argument);
}

TEST(Spectrum, LanczosMatchesDense) {
  // A sparse symmetric matrix above the dense limit.
  const std::size_t n = kDenseSolverLimit + 500;
  SparseSymmetric m;
  m.dimension = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) m.entries.push_back({i, i - 1, -1.0});
    m.entries.push_back({i, i, 2.0 + std::sin(0.37 * static_cast<double>(i))});
    if (i + 1 < n) m.entries.push_back({i, i + 1, -1.0});
  }
  const auto p = solve_spectrum(m, 3);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.dense(), Eigen::EigenvaluesOnly);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(p[i].value, es.eigenvalues()[static_cast<Eigen::Index>(i)], 1e-8);
    EXPECT_NEAR(p[i].vector.norm(), 1.0, 1e-12);
    EXPECT_LE((m.apply(p[i].vector) - p[i].value * p[i].vector).norm(), 1e-9 * m.norm_inf());
  }
}

TEST(Spectrum, VariationalInCutoff) {
  const auto lat = build_lattice({2, 3});
  double previous = lowest(lat, 1, 1)[0];
  for (int c = 2; c <= 4; ++c) {
    const double e = lowest(lat, c, 1)[0];
    EXPECT_LE(e, previous + 1e-12);
    previous = e;
  }
}

TEST(Spectrum, InvariantUnderConsistentRelabelling) {
  for (const auto& dims : std::vector<std::vector<int>>{{3, 3}, {4, 3}, {2, 2, 2}}) {
    const auto a = lowest(build_lattice(dims), 1, 4);
    const auto b = lowest(build_lattice(dims, true), 1, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-9);
  }
}

TEST(Spectrum, Deterministic) {
  const auto lat = build_lattice({3, 3});
  const auto m = assemble_matrix(lat, {1.0, 1.0, 1.0}, h(1));
  const auto a = solve_spectrum(m.matrix, 2), b = solve_spectrum(m.matrix, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].vector, b[i].vector);
  }
}
