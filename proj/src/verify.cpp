#include "costrat/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "costrat/algebra.hpp"
#include "costrat/hamiltonian.hpp"
#include "costrat/oracle.hpp"
#include "costrat/parallel.hpp"
#include "costrat/strata.hpp"
#include "json.hpp"

namespace costrat {
namespace {

Check bounded(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

std::string count_detail(std::size_t n, const std::string& what) { return std::to_string(n) + " " + what; }

Mat2 central(int nu) { return nu * Mat2::Identity(); }

// ---------------------------------------------------------------- symbols

SuiteResult symbols_suite() {
  SuiteResult r{"symbols", {}};
  constexpr int kMax = 5;  // spins up to 5/2

  double orth_m = 0.0, orth_j = 0.0, exchange = 0.0;
  std::size_t count = 0;
  for (int j1 = 0; j1 <= kMax; ++j1)
    for (int j2 = 0; j2 <= kMax; ++j2) {
      const HalfInt a{j1}, b{j2};
      std::vector<int> js;
      for (int j = std::abs(j1 - j2); j <= j1 + j2; j += 2) js.push_back(j);
      // sum_{m1 m2} C^{j1 j2 j}_{m1 m2 m} C^{j1 j2 j'}_{m1 m2 m} = delta_{j j'}
      for (int j : js)
        for (int jp : js)
          for (int m = -std::min(j, jp); m <= std::min(j, jp); m += 2) {
            double s = 0.0;
            for (int m1 = -j1; m1 <= j1; m1 += 2) {
              const HalfInt m2{m - m1};
              s += clebsch_gordan(a, HalfInt{m1}, b, m2, HalfInt{j}, HalfInt{m}) *
                   clebsch_gordan(a, HalfInt{m1}, b, m2, HalfInt{jp}, HalfInt{m});
            }
            orth_m = std::max(orth_m, std::abs(s - (j == jp ? 1.0 : 0.0)));
            ++count;
          }
      // sum_{j m} C^{j1 j2 j}_{m1 m2 m} C^{j1 j2 j}_{m1' m2' m} = delta_{m1 m1'} delta_{m2 m2'}
      for (int m1 = -j1; m1 <= j1; m1 += 2)
        for (int m2 = -j2; m2 <= j2; m2 += 2)
          for (int m1p = -j1; m1p <= j1; m1p += 2) {
            const int m2p = m1 + m2 - m1p;
            if (std::abs(m2p) > j2) continue;
            double s = 0.0;
            for (int j : js)
              s += clebsch_gordan(a, HalfInt{m1}, b, HalfInt{m2}, HalfInt{j}, HalfInt{m1 + m2}) *
                   clebsch_gordan(a, HalfInt{m1p}, b, HalfInt{m2p}, HalfInt{j}, HalfInt{m1 + m2});
            orth_j = std::max(orth_j, std::abs(s - (m1 == m1p ? 1.0 : 0.0)));
          }
      // C^{j1 j2 j}_{m1 m2 m} = (-1)^{j1+j2-j} C^{j2 j1 j}_{m2 m1 m}
      for (int j : js) {
        const double phase = ((j1 + j2 - j) / 2) % 2 == 0 ? 1.0 : -1.0;
        for (int m1 = -j1; m1 <= j1; m1 += 2)
          for (int m2 = -j2; m2 <= j2; m2 += 2) {
            const HalfInt m{m1 + m2};
            if (std::abs(m.twice) > j) continue;
            const double lhs = clebsch_gordan(a, HalfInt{m1}, b, HalfInt{m2}, HalfInt{j}, m);
            const double rhs = clebsch_gordan(b, HalfInt{m2}, a, HalfInt{m1}, HalfInt{j}, m);
            exchange = std::max(exchange, std::abs(lhs - phase * rhs));
          }
      }
    }
  r.checks.push_back(bounded("cg_orthogonality_projections", orth_m, 1e-12,
                             count_detail(count, "sums, spins <= 5/2")));
  r.checks.push_back(bounded("cg_orthogonality_spins", orth_j, 1e-12, "spins <= 5/2"));
  r.checks.push_back(bounded("cg_exchange_symmetry", exchange, 1e-12, "spins <= 5/2"));

  // Row/column triangle failures give exact zeros; admissible arrays are
  // compared with the ladder-basis contraction.
  double zero_dev = 0.0, paren_dev = 0.0;
  std::size_t zeros = 0, admissible = 0;
  std::array<int, 9> s{};
  const int kMax9 = 3;  // spins up to 3/2
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == 9) {
      const NineJ sym = NineJ::from_twice(s);
      if (!sym.rows_and_columns_ok()) {
        zero_dev = std::max(zero_dev, std::abs(wigner_9j(sym).value));
        ++zeros;
        return;
      }
      ++admissible;
      const double direct = recoupling_direct(
          {sym.at(0, 0), sym.at(1, 0)}, {sym.at(0, 1), sym.at(1, 1)}, {sym.at(0, 2), sym.at(1, 2)},
          {sym.at(0, 2), sym.at(2, 2)}, {sym.at(0, 0), sym.at(2, 0)}, {sym.at(0, 1), sym.at(2, 1)});
      paren_dev = std::max(paren_dev, std::abs(paren_9j(sym).value - direct));
      return;
    }
    for (int v = 0; v <= kMax9; ++v) {
      s[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  r.checks.push_back(bounded("nine_j_triangle_zeros", zero_dev, 0.0, count_detail(zeros, "inadmissible arrays")));
  r.checks.push_back(bounded("paren_9j_vs_ladder_contraction", paren_dev, 1e-10,
                             count_detail(admissible, "admissible arrays, spins <= 3/2")));
  return r;
}

// ------------------------------------------------------------- recoupling

SuiteResult recoupling_suite() {
  SuiteResult r{"recoupling", {}};
  for (int n : {2, 3}) {
    std::vector<SpinChain> chains;
    SpinChain c(static_cast<std::size_t>(n), HalfInt{0});
    std::function<void(std::size_t)> gen = [&](std::size_t i) {
      if (i == c.size()) {
        chains.push_back(c);
        return;
      }
      for (int t = 0; t <= 2; ++t) {
        c[i] = HalfInt{t};
        gen(i + 1);
      }
    };
    gen(0);
    const std::size_t pairs = chains.size() * chains.size();
    std::vector<double> worst(pairs, 0.0);
    std::vector<std::size_t> counts(pairs, 0);
    parallel_for(pairs, [&](std::size_t k) {
      const SpinChain& c1 = chains[k / chains.size()];
      const SpinChain& c2 = chains[k % chains.size()];
      RecouplingOracle oracle(c1, c2);
      const auto p1s = paths(c1), p2s = paths(c2);
      for (const auto& chain : coupled_chains(c1, c2))
        for (const auto& p : paths(chain))
          for (const auto& p1 : p1s)
            for (const auto& p2 : p2s) {
              if (!triangle_ok(p1.back(), p2.back(), p.back())) continue;
              const double u = recoupling_U(c1, c2, chain, p, p1, p2);
              worst[k] = std::max(worst[k], std::abs(u - oracle(chain, p, p1, p2)));
              ++counts[k];
            }
    });
    double dev = 0.0;
    std::size_t total = 0;
    for (std::size_t k = 0; k < pairs; ++k) {
      dev = std::max(dev, worst[k]);
      total += counts[k];
    }
    r.checks.push_back(bounded("recoupling_U_vs_direct_N" + std::to_string(n), dev, 1e-10,
                               count_detail(total, "coefficients, chain spins <= 1")));
  }
  return r;
}

// ---------------------------------------------------------- multiplication

SuiteResult multiplication_suite(std::uint64_t seed) {
  SuiteResult r{"multiplication", {}};
  const auto idx = enumerate_indices(2, HalfInt{2});

  HaarSampler sampler(seed);
  double point_dev = 0.0;
  for (int t = 0; t < 50; ++t) {
    BasisEvaluator ev(sampler.tuple(2));
    for (const auto& a : idx)
      for (const auto& b : idx)
        point_dev = std::max(point_dev, std::abs(ev(a) * ev(b) - multiply_basis(a, b).evaluate(ev)));
  }
  r.checks.push_back(bounded("product_pointwise", point_dev, 1e-10,
                             count_detail(idx.size() * idx.size(), "ordered pairs at 50 Haar tuples")));

  struct Target {
    std::size_t a, b;
    MultiIndex i;
    double c;
  };
  std::vector<Target> targets;
  std::set<MultiIndex> needed(idx.begin(), idx.end());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a; b < idx.size(); ++b) {
      const auto product = multiply_basis(idx[a], idx[b]);
      for (const auto& [i, c] : product.terms()) {
        targets.push_back({a, b, i, c});
        needed.insert(i);
      }
    }
  const std::vector<MultiIndex> all(needed.begin(), needed.end());
  std::map<MultiIndex, std::size_t> slot;
  for (std::size_t k = 0; k < all.size(); ++k) slot[all[k]] = k;
  std::vector<std::size_t> ta, tb, ti;
  for (const auto& t : targets) {
    ta.push_back(slot.at(idx[t.a]));
    tb.push_back(slot.at(idx[t.b]));
    ti.push_back(slot.at(t.i));
  }
  constexpr std::size_t kSamples = 100000;
  const auto est = mc_means(
      2, targets.size(),
      [&](const GroupTuple& g, std::vector<std::complex<double>>& out) {
        BasisEvaluator ev(g);
        std::vector<std::complex<double>> v(all.size());
        for (std::size_t k = 0; k < all.size(); ++k) v[k] = ev(all[k]);
        for (std::size_t k = 0; k < targets.size(); ++k) out[k] = std::conj(v[ti[k]]) * v[ta[k]] * v[tb[k]];
      },
      kSamples, seed + 1);
  std::size_t violations = 0;
  double worst_z = 0.0;
  for (std::size_t k = 0; k < targets.size(); ++k) {
    const double z = std::abs(est[k].value - targets[k].c) / est[k].standard_error;
    worst_z = std::max(worst_z, z);
    if (z > 3.0) ++violations;
  }
  std::ostringstream d;
  d << targets.size() << " structure constants, 1e5 samples, largest |z| = " << worst_z;
  r.checks.push_back({"structure_constants_monte_carlo_3sigma", violations == 0, static_cast<double>(violations), 0.0,
                      d.str()});
  return r;
}

// ----------------------------------------------------------------- fuchs

SuiteResult fuchs_suite(std::uint64_t seed) {
  SuiteResult r{"fuchs", {}};
  {
    const int n = 3;
    const auto p = p_T_rs(n, 1, 3);
    const HalfInt one{2};
    const std::vector<std::pair<MultiIndex, double>> expected{
        {index_on_links(n, {{1, one}}, {}, {}), 1.0},
        {index_on_links(n, {{3, one}}, {}, {}), 1.0},
        {index_on_links(n, {{1, one}, {3, one}}, {HalfInt{0}}, {HalfInt{0}}), 1.0},
        {index_on_links(n, {{1, one}, {3, one}}, {one}, {one}), -2.0 / std::sqrt(3.0)},
        {constant_index(n), -3.0}};
    double dev = p.size() == expected.size() ? 0.0 : 1.0;
    for (const auto& [i, c] : expected) dev = std::max(dev, std::abs(p.coefficient(i) - c));
    r.checks.push_back(bounded("pT_rs_coefficients", dev, 0.0, "(1, 1, 1, -2/sqrt3, -3)"));

    const auto q = p_T_rst(n, 1, 2, 3);
    double qdev = q.size() == 2 ? 0.0 : 1.0;
    std::vector<double> cs;
    for (const auto& kv : q.terms()) cs.push_back(kv.second);
    std::sort(cs.begin(), cs.end());
    if (cs.size() == 2) qdev = std::max(std::abs(cs[0] + std::sqrt(3.0) / 2.0), std::abs(cs[1] - std::sqrt(3.0) / 2.0));
    r.checks.push_back(bounded("pT_rst_coefficients", qdev, 0.0, "+-sqrt3/2"));
  }
  HaarSampler sampler(seed);
  double rs_dev = 0.0, rst_dev = 0.0, vanish = 0.0;
  for (int n : {2, 3, 4}) {
    std::vector<std::pair<std::vector<int>, InvariantVector>> fs;
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b) {
        fs.push_back({{a, b}, p_T_rs(n, a, b)});
        for (int c = b + 1; c <= n; ++c) fs.push_back({{a, b, c}, p_T_rst(n, a, b, c)});
      }
    for (int t = 0; t < 100; ++t) {
      const auto g = sampler.tuple(n);
      BasisEvaluator ev(g);
      for (const auto& [l, f] : fs) {
        if (l.size() == 2)
          rs_dev = std::max(rs_dev, std::abs(f.evaluate(ev) - trace_commutator_squared(g, l[0], l[1])));
        else
          rst_dev = std::max(rst_dev, std::abs(f.evaluate(ev) - trace_commutator_times(g, l[0], l[1], l[2])));
      }
    }
    for (int t = 0; t < 20; ++t) {
      BasisEvaluator ev(random_diagonal_tuple(sampler, n));
      for (const auto& kv : fs) vanish = std::max(vanish, std::abs(kv.second.evaluate(ev)));
    }
  }
  r.checks.push_back(bounded("pT_rs_vs_trace", rs_dev, 1e-10, "N = 2, 3, 4; 100 Haar tuples"));
  r.checks.push_back(bounded("pT_rst_vs_trace", rst_dev, 1e-10, "N = 3, 4; 100 Haar tuples"));
  r.checks.push_back(bounded("vanish_on_diagonal_sl2c", vanish, 1e-10, "20 tuples per N"));
  return r;
}

// ---------------------------------------------------------------- wilson

SuiteResult wilson_suite(std::uint64_t seed) {
  SuiteResult r{"wilson", {}};
  {
    const auto w = wilson_double(2, 1, 2);
    double dev = 0.0;
    for (const auto& i : enumerate_indices(2, HalfInt{1}))
      if (i.chain[0].twice == 1 && i.chain[1].twice == 1)
        dev = std::max(dev, std::abs(w.coefficient(i) - trace_expansion_coefficient(i, {1, 2})));
    r.checks.push_back(bounded("wilson_double_rederived", dev, 1e-12, "(sqrt3/2, -1/2)"));
  }
  {
    const auto w = wilson_quad(4, 1, 2, 3, 4);
    double dev = 0.0;
    std::size_t nonzero = 0, labels = 0;
    for (const auto& i : enumerate_indices(4, HalfInt{1})) {
      if (std::any_of(i.chain.begin(), i.chain.end(), [](HalfInt j) { return j.twice != 1; })) continue;
      ++labels;
      const double derived = trace_expansion_coefficient(i, {1, 2, 3, 4});
      if (std::abs(derived) > 1e-12) ++nonzero;
      dev = std::max(dev, std::abs(w.coefficient(i) - derived));
    }
    r.checks.push_back(bounded("wilson_quad_rederived", dev, 1e-12,
                               count_detail(nonzero, "nonzero of " + std::to_string(labels) + " labels")));
    r.checks.push_back(bounded("wilson_quad_term_count", std::abs(static_cast<double>(w.size()) - 13.0), 0.0,
                               count_detail(w.size(), "terms")));
  }
  HaarSampler sampler(seed);
  double dev = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto g = sampler.tuple(5);
    BasisEvaluator ev(g);
    for (int a = 1; a <= 5; ++a) {
      dev = std::max(dev, std::abs(wilson_single(5, a).evaluate(ev) - trace_product(g, {a})));
      for (int b = a + 1; b <= 5; ++b)
        dev = std::max(dev, std::abs(wilson_double(5, a, b).evaluate(ev) - trace_product(g, {a, b})));
    }
    for (const auto& q : std::vector<std::array<int, 4>>{{1, 2, 3, 4}, {1, 2, 4, 5}, {1, 3, 4, 5}, {2, 3, 4, 5}})
      dev = std::max(dev, std::abs(wilson_quad(5, q[0], q[1], q[2], q[3]).evaluate(ev) -
                                   trace_product(g, {q[0], q[1], q[2], q[3]})));
  }
  r.checks.push_back(bounded("wilson_vs_trace", dev, 1e-10, "100 Haar tuples, N = 5"));

  double mag = 0.0;
  for (const auto& dims : std::vector<std::vector<int>>{{2, 2}, {3, 2}, {3, 3}, {2, 2, 2}, {3, 2, 2}}) {
    const auto lat = build_lattice(dims);
    const auto w = assemble_magnetic(lat);
    for (int t = 0; t < 10; ++t) {
      const auto g = sampler.tuple(lat.n_offtree);
      mag = std::max(mag, std::abs(2.0 * w.evaluate(g).real() - magnetic_direct(lat, g)));
    }
  }
  r.checks.push_back(bounded("magnetic_vs_plaquette_holonomies", mag, 1e-10, "2D and 3D lattices"));
  return r;
}

// --------------------------------------------------------------- spectrum

SuiteResult spectrum_suite() {
  SuiteResult r{"spectrum", {}};
  const auto lat = build_lattice({2, 2});
  const HamiltonianParams params{1.0, 1.0, 1.0};
  double asym = 0.0, band = 0.0;
  std::vector<double> e0;
  for (int c2 = 1; c2 <= 6; ++c2) {
    const auto h = assemble_matrix(lat, params, HalfInt{c2});
    asym = std::max(asym, h.matrix.asymmetry());
    for (const auto& e : h.matrix.entries) {
      const int d = std::abs(h.basis[e.row].total.twice - h.basis[e.col].total.twice);
      if (e.row == e.col) band = std::max(band, std::abs(e.value - casimir_eps(h.basis[e.row]) / 2.0));
      else if (d != 1) band = std::max(band, std::abs(e.value));
    }
    e0.push_back(solve_spectrum(h.matrix, 1)[0].value);
  }
  r.checks.push_back(bounded("symmetry", asym, 1e-12, "cutoff 1/2 .. 3"));
  r.checks.push_back(bounded("tridiagonal_character_coupling", band, 1e-12, "diagonal eps/2, chi_j couples only to chi_{j+-1/2}"));
  double rise = 0.0, growth = -std::numeric_limits<double>::infinity();
  std::ostringstream d;
  d.precision(17);
  for (std::size_t k = 0; k + 1 < e0.size(); ++k) {
    rise = std::max(rise, e0[k + 1] - e0[k]);
    if (k + 2 < e0.size())
      growth = std::max(growth, std::abs(e0[k + 2] - e0[k + 1]) - std::abs(e0[k + 1] - e0[k]));
  }
  for (double e : e0) d << e << ' ';
  r.checks.push_back(bounded("ground_state_non_increasing", std::max(rise, 0.0), 0.0, "E0 = " + d.str()));
  r.checks.push_back({"ground_state_differences_decreasing", growth < 0.0, growth, 0.0,
                      "max of |dE(c+1)| - |dE(c)|; must be negative"});
  return r;
}

// -------------------------------------------------------------- costratum

SuiteResult costratum_suite(std::uint64_t seed) {
  SuiteResult r{"costratum", {}};
  HaarSampler sampler(seed);
  double vanish = 0.0;
  std::size_t gens = 0;
  for (const auto& [n, cutoff] : std::vector<std::pair<int, int>>{{2, 2}, {3, 1}}) {
    const auto g = vanishing_generators_T(n, HalfInt{cutoff});
    gens += g.size();
    for (int t = 0; t < 20; ++t) {
      BasisEvaluator ev(random_diagonal_tuple(sampler, n));
      for (const auto& gen : g) vanish = std::max(vanish, std::abs(gen.vector.evaluate(ev)));
    }
  }
  r.checks.push_back(bounded("generators_vanish_on_commuting", vanish, 1e-10,
                             count_detail(gens, "generators (N=2 cutoff 1, N=3 cutoff 1/2), 20 tuples")));

  const auto sys = costratum_T_system(2, HalfInt{2}, 1.0);
  const auto kernel = costratum_T_kernel(sys);
  double cosine = 0.0;
  for (const auto& phi : kernel) cosine = std::max(cosine, max_generator_cosine(sys, phi));
  r.checks.push_back(bounded("kernel_orthogonal_to_generators", cosine, 1e-10,
                             "N=2 cutoff 1: " + std::to_string(sys.rows.size()) + " rows, " +
                                 std::to_string(sys.columns.size()) + " columns, kernel dimension " +
                                 std::to_string(kernel.size())));

  double repro = 0.0;
  const auto idx = enumerate_indices(2, HalfInt{2});
  for (const SignChain& nu : std::vector<SignChain>{{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
    const auto psi = point_stratum_vector(nu, HalfInt{2}, 1.0);
    const double unit = inner_product(psi, InvariantVector::constant(2), 1.0);
    const GroupTuple center{central(nu[0]), central(nu[1])};
    BasisEvaluator ev(center);
    for (int t = 0; t < 20; ++t) {
      InvariantVector f(2);
      for (const auto& i : idx) f.add(i, sampler.gaussian());
      const double direct = f.evaluate(ev).real();
      const double via = inner_product(psi, f, 1.0) / unit;
      repro = std::max(repro, std::abs(via - direct) / std::max(1.0, std::abs(direct)));
    }
  }
  r.checks.push_back(bounded("point_stratum_reproducing", repro, 1e-10, "N=2 cutoff 1, all sign chains"));
  return r;
}

}  // namespace

bool SuiteResult::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"symbols", "recoupling", "multiplication", "fuchs",
                                              "wilson",  "spectrum",   "costratum"};
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "symbols") return symbols_suite();
  if (name == "recoupling") return recoupling_suite();
  if (name == "multiplication") return multiplication_suite(seed);
  if (name == "fuchs") return fuchs_suite(seed);
  if (name == "wilson") return wilson_suite(seed);
  if (name == "spectrum") return spectrum_suite();
  if (name == "costratum") return costratum_suite(seed);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::string report_json(const std::vector<SuiteResult>& suites, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["version"] = "costrat-1";
  doc["seed"] = seed;
  bool all = true;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json js;
    js["suite"] = s.name;
    js["pass"] = s.pass();
    auto checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      jc["measured"] = c.measured;
      jc["tolerance"] = c.tolerance;
      jc["detail"] = c.detail;
      checks.push_back(std::move(jc));
    }
    js["checks"] = std::move(checks);
    all = all && s.pass();
    arr.push_back(std::move(js));
  }
  doc["pass"] = all;
  doc["suites"] = std::move(arr);
  return doc.dump(2) + "\n";
}

}  // namespace costrat
