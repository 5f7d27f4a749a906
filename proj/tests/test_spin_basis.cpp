#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "costrat/oracle.hpp"
#include "costrat/spin_basis.hpp"

using namespace costrat;

namespace {

HalfInt h(int twice) { return HalfInt{twice}; }

SpinChain chain(std::initializer_list<int> twice) {
  SpinChain c;
  for (int t : twice) c.push_back(h(t));
  return c;
}

}  // namespace

TEST(Paths, Examples) {
  EXPECT_EQ(paths(chain({1})), std::vector<CouplingPath>{chain({1})});
  EXPECT_EQ(paths(chain({2, 2})), (std::vector<CouplingPath>{chain({2, 0}), chain({2, 2}), chain({2, 4})}));
  EXPECT_EQ(paths_to(chain({1, 1, 1}), h(1)), (std::vector<CouplingPath>{chain({1, 0, 1}), chain({1, 2, 1})}));
  EXPECT_EQ(paths_to(chain({1, 1, 1}), h(3)), std::vector<CouplingPath>{chain({1, 2, 3})});
  EXPECT_EQ(paths_to(chain({1, 1}), h(0)), std::vector<CouplingPath>{chain({1, 0})});
  EXPECT_TRUE(paths_to(chain({2, 2}), h(1)).empty());
  EXPECT_EQ(multiplicity(chain({1, 1}), h(0)), 1u);
  EXPECT_EQ(multiplicity(chain({1, 1, 1}), h(1)), 2u);
  EXPECT_EQ(multiplicity(chain({2, 2}), h(1)), 0u);
}

TEST(Paths, DimensionBookkeeping) {
  for (const auto& c : {chain({1, 1, 1}), chain({2, 1, 3}), chain({4, 4}), chain({1, 2, 3, 2}), chain({0, 3})}) {
    double sum = 0.0;
    for (int j = 0; j <= 20; ++j) sum += (j + 1.0) * static_cast<double>(multiplicity(c, h(j)));
    EXPECT_EQ(sum, chain_dimension(c));
  }
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_indices(1, h(0)).size(), 1u);
  for (int c = 0; c <= 6; ++c) EXPECT_EQ(enumerate_indices(1, h(c)).size(), static_cast<std::size_t>(c + 1));
  EXPECT_EQ(enumerate_indices(2, h(1)).size(), 5u);
  EXPECT_THROW(enumerate_indices(0, h(1)), std::invalid_argument);
}

TEST(Enumerate, StrictlyOrderedAndValid) {
  for (int n = 1; n <= 3; ++n) {
    const auto idx = enumerate_indices(n, h(2));
    for (std::size_t i = 0; i < idx.size(); ++i) {
      EXPECT_TRUE(is_valid(idx[i]));
      if (i > 0) {
        EXPECT_LT(idx[i - 1], idx[i]);
      }
    }
    // Count: sum over chains of sum_j multiplicity^2.
    std::size_t expected = 0;
    SpinChain c(static_cast<std::size_t>(n), h(0));
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == c.size()) {
        for (int j = 0; j <= 2 * n; ++j) expected += multiplicity(c, h(j)) * multiplicity(c, h(j));
        return;
      }
      for (int t = 0; t <= 2; ++t) {
        c[k] = h(t);
        rec(k + 1);
      }
    };
    rec(0);
    EXPECT_EQ(idx.size(), expected);
  }
}

TEST(MultiIndexText, RoundTrip) {
  for (const auto& i : enumerate_indices(3, h(2))) EXPECT_EQ(parse_multi_index(to_string(i)), i);
  EXPECT_EQ(to_string(constant_index(2)), "[0,0|0|0|0]");
  EXPECT_EQ(to_string(enumerate_indices(1, h(1)).back()), "[1|1||]");
  const auto i = parse_multi_index("[1,1,2|2|0,2|2,2]");
  EXPECT_EQ(i.chain, chain({1, 1, 2}));
  EXPECT_EQ(i.left, chain({1, 0, 2}));
  EXPECT_EQ(i.right, chain({1, 2, 2}));
}

TEST(MultiIndexText, RejectsMalformed) {
  for (const char* bad : {"", "[", "1,1|0|0|0", "[1,1|0|0]", "[1,1|0|2|0]", "[1,x|0|0|0]", "[1,1|1|0|0]",
                          "[1,1|0|0,0|0]", "[-1|1||]"})
    EXPECT_THROW(parse_multi_index(bad), std::invalid_argument) << bad;
}

TEST(IndexOnLinks, Builds) {
  const auto i = index_on_links(3, {{1, h(2)}, {3, h(2)}}, {h(0)}, {h(0)});
  EXPECT_EQ(i.chain, chain({2, 0, 2}));
  EXPECT_EQ(i.total, h(0));
  EXPECT_EQ(i.left, chain({2, 2, 0}));
  EXPECT_EQ(index_on_links(2, {}, {}, {}), constant_index(2));
  EXPECT_THROW(index_on_links(3, {{1, h(2)}, {3, h(2)}}, {h(0)}, {h(2)}), std::invalid_argument);
  EXPECT_THROW(index_on_links(2, {{2, h(1)}, {1, h(1)}}, {h(0)}, {h(0)}), std::invalid_argument);
  EXPECT_THROW(index_on_links(2, {{1, h(1)}, {2, h(1)}}, {h(3)}, {h(3)}), std::invalid_argument);
}

TEST(Norms, Examples) {
  const double pi = std::numbers::pi;
  EXPECT_NEAR(norm_squared(constant_index(2), 1.0) / (std::pow(pi, 3) * std::exp(2.0)), 1.0, 1e-14);
  EXPECT_NEAR(norm_squared(enumerate_indices(1, h(1)).back(), 1.0) / (std::pow(pi, 1.5) * std::exp(4.0)), 1.0, 1e-14);
  const auto idx = enumerate_indices(3, h(1));
  for (const auto& i : idx)
    for (const auto& k : idx)
      if (i.chain == k.chain) {
        EXPECT_EQ(norm_squared(i, 0.7), norm_squared(k, 0.7));
      }
  EXPECT_THROW(norm_squared(constant_index(1), 0.0), std::invalid_argument);
}

TEST(Cascade, Examples) {
  EXPECT_EQ(cg_cascade(chain({3}), chain({3}), {h(1)}).value, 1.0);
  EXPECT_EQ(cg_cascade(chain({2, 1}), chain({2, 1}), {h(2), h(-1)}).value,
            clebsch_gordan(h(2), h(2), h(1), h(-1), h(1), h(1)).value);
  EXPECT_EQ(cg_cascade(chain({1, 1, 1}), chain({1, 0, 3}), {h(1), h(1), h(1)}).value, 0.0);
  // Each cascade is a unit vector for every m.
  for (const auto& p : paths(chain({1, 2, 1}))) {
    std::map<int, double> norm;
    for (const auto& t : cascade_terms(chain({1, 2, 1}), p)) {
      int m = 0;
      for (auto x : t.projections) m += x.twice;
      norm[m] += t.coefficient * t.coefficient;
    }
    EXPECT_EQ(norm.size(), static_cast<std::size_t>(p.back().twice + 1));
    for (const auto& [m, v] : norm) EXPECT_NEAR(v, 1.0, 1e-14);
  }
}

TEST(Evaluate, ConstantIdentityAndTrace) {
  HaarSampler sampler(3);
  const auto g = sampler.tuple(3);
  EXPECT_NEAR(std::abs(evaluate_basis(constant_index(3), g) - 1.0), 0.0, 1e-15);
  const GroupTuple one(3, Mat2::Identity());
  for (const auto& i : enumerate_indices(3, h(2))) {
    const double expected = i.left == i.right ? std::sqrt(chain_dimension(i.chain) * i.total.dim()) : 0.0;
    EXPECT_NEAR(std::abs(evaluate_basis(i, one) - expected), 0.0, 1e-12);
  }
  for (int t = 0; t < 10; ++t) {
    const auto a = sampler.tuple(1);
    EXPECT_NEAR(std::abs(evaluate_basis(enumerate_indices(1, h(1)).back(), a) - a[0].trace()), 0.0, 1e-15);
  }
}

TEST(Evaluate, ConjugationInvariant) {
  HaarSampler sampler(5);
  for (int t = 0; t < 5; ++t) {
    const auto a = sampler.tuple(3);
    const Mat2 g = haar_su2(sampler);
    GroupTuple b;
    for (const auto& x : a) b.push_back(g * x * g.adjoint());
    BasisEvaluator ea(a), eb(b);
    for (const auto& i : enumerate_indices(3, h(2))) EXPECT_NEAR(std::abs(ea(i) - eb(i)), 0.0, 1e-10);
  }
}

TEST(Evaluate, EvaluatorMatchesFreeFunction) {
  HaarSampler sampler(9);
  const auto a = sampler.tuple(2);
  BasisEvaluator ev(a);
  for (const auto& i : enumerate_indices(2, h(3))) EXPECT_EQ(ev(i), evaluate_basis(i, a));
  EXPECT_EQ(ev.point().size(), 2u);
}

TEST(Evaluate, RejectsBadInput) {
  HaarSampler sampler(1);
  EXPECT_THROW(evaluate_basis(constant_index(2), sampler.tuple(3)), std::invalid_argument);
  EXPECT_THROW(evaluate_basis(constant_index(1), GroupTuple{2.0 * Mat2::Identity()}), std::invalid_argument);
}

TEST(Evaluate, WorksOnComplexTorus) {
  HaarSampler sampler(2);
  const auto a = random_diagonal_tuple(sampler, 1);
  const std::complex<double> z = a[0](0, 0);
  // chi_{1}(diag(z, 1/z)) = z^2 + 1 + z^-2 for the spin-1 character.
  EXPECT_NEAR(std::abs(evaluate_basis(enumerate_indices(1, h(2)).back(), a) - (z * z + 1.0 + 1.0 / (z * z))), 0.0,
              1e-12);
}

TEST(Orthonormality, MonteCarlo) {
  // N <= 2 at cutoff 1 and N = 3 at cutoff 1/2; 3-sigma bands on every pair.
  std::size_t comparisons = 0, violations = 0;
  for (const auto& [n, c] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 1}}) {
    const auto idx = enumerate_indices(n, h(c));
    const std::size_t k = idx.size();
    const auto est = mc_means(
        n, k * k,
        [&](const GroupTuple& g, std::vector<std::complex<double>>& out) {
          BasisEvaluator ev(g);
          std::vector<std::complex<double>> v(k);
          for (std::size_t i = 0; i < k; ++i) v[i] = ev(idx[i]);
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) out[i * k + j] = std::conj(v[i]) * v[j];
        },
        40000, 1234 + static_cast<std::uint64_t>(n));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        const auto& e = est[i * k + j];
        const double expected = i == j ? 1.0 : 0.0;
        ++comparisons;
        if (std::abs(e.value - expected) > 3.0 * e.standard_error + 1e-12) ++violations;
      }
  }
  // The estimates are correlated, so a fixed-seed run has a small number of
  // excursions; more than 1% would indicate a real defect.
  EXPECT_LE(violations * 100, comparisons) << violations << " of " << comparisons;
}
