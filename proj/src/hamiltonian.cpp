#include "costrat/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <map>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

#include "costrat/algebra.hpp"
#include "costrat/parallel.hpp"

namespace costrat {
namespace {

const HalfInt kHalf{1};

void check_increasing(int n, std::initializer_list<int> links) {
  int previous = 0;
  for (int l : links) {
    if (l <= previous || l > n)
      throw std::invalid_argument("Wilson loop links must satisfy 1 <= r < s < ... <= N");
    previous = l;
  }
}

struct QuadTerm {
  int total, l, k, lp, kp;  // twice-values
  double coefficient;
};

// The thirteen nonzero coefficients of tr(a_r a_s a_t a_u). The label
// (j; (l,k), (l',k')) lists the intermediate spins after the second and
// third link on the left and right coupling paths.
const std::array<QuadTerm, 13>& quad_table() {
  static const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  static const std::array<QuadTerm, 13> table{{
      {0, 0, 1, 0, 1, 1.0 / 8.0},
      {0, 2, 1, 0, 1, -s3 / 8.0},
      {0, 0, 1, 2, 1, -s3 / 8.0},
      {0, 2, 1, 2, 1, -1.0 / 8.0},
      {2, 0, 1, 0, 1, -s3 / 8.0},
      {2, 2, 1, 0, 1, -1.0 / 8.0},
      {2, 2, 3, 0, 1, -1.0 / std::sqrt(8.0)},
      {2, 0, 1, 2, 1, 3.0 / 8.0},
      {2, 2, 1, 2, 1, -1.0 / (8.0 * s3)},
      {2, 2, 3, 2, 1, -1.0 / (2.0 * s6)},
      {2, 2, 1, 2, 3, 1.0 / s6},
      {2, 2, 3, 2, 3, -1.0 / (4.0 * s3)},
      {4, 2, 3, 2, 3, std::sqrt(5.0) / 4.0},
  }};
  return table;
}

/// Sorts by position and sums duplicates. A stable sort keeps the summation
/// order fixed, so results do not depend on scheduling.
void merge_sorted(std::vector<std::pair<std::size_t, double>>& v) {
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (out > 0 && v[out - 1].first == v[i].first) v[out - 1].second += v[i].second;
    else v[out++] = v[i];
  }
  v.resize(out);
}

}  // namespace

InvariantVector wilson_single(int n, int r) {
  check_increasing(n, {r});
  return InvariantVector::basis(index_on_links(n, {{r, kHalf}}, {}, {}));
}

InvariantVector wilson_double(int n, int r, int s) {
  check_increasing(n, {r, s});
  InvariantVector v(n);
  const std::vector<std::pair<int, HalfInt>> spins{{r, kHalf}, {s, kHalf}};
  v.add(index_on_links(n, spins, {HalfInt{2}}, {HalfInt{2}}), std::sqrt(3.0) / 2.0);
  v.add(index_on_links(n, spins, {HalfInt{0}}, {HalfInt{0}}), -0.5);
  return v;
}

InvariantVector wilson_quad(int n, int r, int s, int t, int u) {
  check_increasing(n, {r, s, t, u});
  const std::vector<std::pair<int, HalfInt>> spins{{r, kHalf}, {s, kHalf}, {t, kHalf}, {u, kHalf}};
  InvariantVector v(n);
  for (const auto& q : quad_table())
    v.add(index_on_links(n, spins, {HalfInt{q.l}, HalfInt{q.k}, HalfInt{q.total}},
                         {HalfInt{q.lp}, HalfInt{q.kp}, HalfInt{q.total}}),
          q.coefficient);
  return v;
}

double casimir_eps(const MultiIndex& index) {
  double eps = 0.0;
  for (HalfInt j : index.chain) eps += static_cast<double>(j.twice) * (j.twice + 2);
  return eps;
}

InvariantVector assemble_magnetic(const LatticeSpec& lattice) {
  const int n = lattice.n_offtree;
  InvariantVector w(n);
  for (const auto& p : lattice.plaquettes) {
    const auto& o = p.offtree;
    switch (p.offtree_count) {
      case 1: w += wilson_single(n, o[0]); break;
      case 2: w += wilson_double(n, o[0], o[1]); break;
      case 4: w += wilson_quad(n, o[0], o[1], o[2], o[3]); break;
      default: throw std::logic_error("unexpected plaquette class");
    }
  }
  return w;
}

Eigen::MatrixXd SparseSymmetric::dense() const {
  const auto d = static_cast<Eigen::Index>(dimension);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (const auto& e : entries) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
  return m;
}

Eigen::VectorXd SparseSymmetric::apply(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dimension));
  for (const auto& e : entries)
    y[static_cast<Eigen::Index>(e.row)] += e.value * x[static_cast<Eigen::Index>(e.col)];
  return y;
}

double SparseSymmetric::asymmetry() const {
  std::map<std::pair<std::size_t, std::size_t>, double> m;
  for (const auto& e : entries) m[{e.row, e.col}] += e.value;
  double worst = 0.0;
  for (const auto& [rc, v] : m) {
    const auto it = m.find({rc.second, rc.first});
    worst = std::max(worst, std::abs(v - (it == m.end() ? 0.0 : it->second)));
  }
  return worst;
}

double SparseSymmetric::norm_inf() const {
  std::vector<double> sums(dimension, 0.0);
  for (const auto& e : entries) sums[e.row] += std::abs(e.value);
  double worst = 0.0;
  for (double s : sums) worst = std::max(worst, s);
  return worst;
}

void SparseSymmetric::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << "% " << kFormatVersion << "\n";
  out << dimension << ' ' << dimension << ' ' << entries.size() << '\n';
  char buf[64];
  for (const auto& e : entries) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << buf << '\n';
  }
}

HamiltonianMatrix assemble_matrix(const LatticeSpec& lattice, const HamiltonianParams& params,
                                  HalfInt cutoff) {
  if (cutoff.twice < 1) throw std::invalid_argument("cutoff must be at least 1/2");
  if (!(params.g > 0.0) || !(params.delta > 0.0))
    throw std::invalid_argument("g and delta must be positive");
  const int n = lattice.n_offtree;
  HamiltonianMatrix h;
  h.basis = enumerate_indices(n, cutoff);
  const std::size_t dim = h.basis.size();
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> position;
  for (std::size_t i = 0; i < dim; ++i) position.emplace(h.basis[i], i);

  const InvariantVector w = assemble_magnetic(lattice);
  // Column J of T_{KJ} = sum_I W^I C^K_{IJ}, restricted to the truncated basis.
  // Products are used once each, so they bypass the product cache.
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(dim);
  parallel_for(dim, [&](std::size_t j) {
    auto& col = columns[j];
    for (const auto& [index, wi] : w.terms()) {
      const auto product = multiply_basis_uncached(index, h.basis[j]);
      for (const auto& [k, c] : product.terms())
        if (const auto it = position.find(k); it != position.end()) col.emplace_back(it->second, wi * c);
    }
    merge_sorted(col);
  });

  // Rows of E - (T + T^t) / (g^2 delta), built from the columns of T.
  const double electric = params.g * params.g / (2.0 * params.delta);
  const double magnetic = 1.0 / (params.g * params.g * params.delta);
  std::vector<std::vector<std::pair<std::size_t, double>>> rows(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    if (const double e = casimir_eps(h.basis[j]); e != 0.0) rows[j].emplace_back(j, electric * e);
    for (const auto& [k, t] : columns[j]) {
      rows[k].emplace_back(j, -magnetic * t);
      rows[j].emplace_back(k, -magnetic * t);
    }
    columns[j] = {};
  }
  h.matrix.dimension = dim;
  for (std::size_t r = 0; r < dim; ++r) {
    merge_sorted(rows[r]);
    for (const auto& [c, v] : rows[r])
      if (v != 0.0) h.matrix.entries.push_back({r, c, v});
    rows[r] = {};
  }
  return h;
}

}  // namespace costrat
