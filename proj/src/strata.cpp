#include "costrat/strata.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <Eigen/SVD>

#include "costrat/algebra.hpp"
#include "costrat/parallel.hpp"

namespace costrat {
namespace {

void check_links(int n, std::initializer_list<int> links) {
  int previous = 0;
  for (int l : links) {
    if (l <= previous || l > n)
      throw std::invalid_argument("links must satisfy 1 <= r < s < ... <= N");
    previous = l;
  }
}

const HalfInt kHalf{1};
const HalfInt kOne{2};

}  // namespace

InvariantVector p_T_rs(int n, int r, int s) {
  check_links(n, {r, s});
  InvariantVector v(n);
  v.add(index_on_links(n, {{r, kOne}}, {}, {}), 1.0);
  v.add(index_on_links(n, {{s, kOne}}, {}, {}), 1.0);
  v.add(index_on_links(n, {{r, kOne}, {s, kOne}}, {HalfInt{0}}, {HalfInt{0}}), 1.0);
  v.add(index_on_links(n, {{r, kOne}, {s, kOne}}, {kOne}, {kOne}), -2.0 / std::sqrt(3.0));
  v.add(constant_index(n), -3.0);
  return v;
}

InvariantVector p_T_rst(int n, int r, int s, int t) {
  check_links(n, {r, s, t});
  const std::vector<std::pair<int, HalfInt>> spins{{r, kHalf}, {s, kHalf}, {t, kHalf}};
  const double c = std::sqrt(3.0) / 2.0;
  InvariantVector v(n);
  v.add(index_on_links(n, spins, {HalfInt{0}, kHalf}, {kOne, kHalf}), c);
  v.add(index_on_links(n, spins, {kOne, kHalf}, {HalfInt{0}, kHalf}), -c);
  return v;
}

InvariantVector p_nu(int n, int r, int nu) {
  check_links(n, {r});
  if (nu != 1 && nu != -1) throw std::invalid_argument("nu must be +1 or -1");
  InvariantVector v(n);
  v.add(index_on_links(n, {{r, kHalf}}, {}, {}), 1.0);
  v.add(constant_index(n), -2.0 * nu);
  return v;
}

std::string label(const Generator& g) {
  std::string s = g.links.size() == 2 ? "pT_rs(" : "pT_rst(";
  for (std::size_t i = 0; i < g.links.size(); ++i) {
    if (i > 0) s += ',';
    s += std::to_string(g.links[i]);
  }
  return s + ")*" + to_string(g.seed);
}

std::vector<Generator> vanishing_generators_T(int n, HalfInt cutoff) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  const auto seeds = enumerate_indices(n, cutoff);
  std::vector<Generator> out;
  std::vector<InvariantVector> invariants;
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s) {
      invariants.push_back(p_T_rs(n, r, s));
      for (const auto& seed : seeds) out.push_back({{r, s}, seed, InvariantVector(n)});
    }
  for (int r = 1; r <= n; ++r)
    for (int s = r + 1; s <= n; ++s)
      for (int t = s + 1; t <= n; ++t) {
        invariants.push_back(p_T_rst(n, r, s, t));
        for (const auto& seed : seeds) out.push_back({{r, s, t}, seed, InvariantVector(n)});
      }
  parallel_for(out.size(), [&](std::size_t k) {
    const auto& p = invariants[k / seeds.size()];
    out[k].vector = multiply(p, InvariantVector::basis(out[k].seed));
  });
  return out;
}

CostratumSystem costratum_T_system(int n, HalfInt cutoff, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  CostratumSystem sys;
  sys.n = n;
  sys.cutoff = cutoff;
  sys.hbar = hbar;
  sys.rows = vanishing_generators_T(n, cutoff);

  std::map<MultiIndex, std::size_t> column_of;
  for (const auto& g : sys.rows)
    for (const auto& kv : g.vector.terms()) column_of.emplace(kv.first, 0);
  for (auto& [index, col] : column_of) {
    col = sys.columns.size();
    sys.columns.push_back(index);
    sys.column_norm_squared.push_back(norm_squared(index, hbar));
  }
  for (std::size_t r = 0; r < sys.rows.size(); ++r)
    for (const auto& [index, c] : sys.rows[r].vector.terms()) {
      const std::size_t col = column_of.at(index);
      sys.entries.push_back({r, col, c * sys.column_norm_squared[col]});
    }
  return sys;
}

Eigen::VectorXd CostratumSystem::restrict(const InvariantVector& phi) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) x[static_cast<Eigen::Index>(c)] = phi.coefficient(columns[c]);
  return x;
}

Eigen::VectorXd CostratumSystem::cosines(const InvariantVector& phi) const {
  const auto rows_n = static_cast<Eigen::Index>(rows.size());
  Eigen::VectorXd dot = Eigen::VectorXd::Zero(rows_n);
  Eigen::VectorXd gnorm = Eigen::VectorXd::Zero(rows_n);
  const Eigen::VectorXd x = restrict(phi);
  for (const auto& e : entries) {
    const auto r = static_cast<Eigen::Index>(e.row);
    dot[r] += e.value * x[static_cast<Eigen::Index>(e.col)];
    gnorm[r] += e.value * e.value / column_norm_squared[e.col];
  }
  double phi_norm = 0.0;
  for (const auto& [index, c] : phi.terms()) phi_norm += c * c * norm_squared(index, hbar);
  phi_norm = std::sqrt(phi_norm);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(rows_n);
  if (phi_norm == 0.0) return out;
  for (Eigen::Index r = 0; r < rows_n; ++r)
    if (gnorm[r] > 0.0) out[r] = dot[r] / (std::sqrt(gnorm[r]) * phi_norm);
  return out;
}

double max_generator_cosine(const CostratumSystem& system, const InvariantVector& phi) {
  const auto c = system.cosines(phi);
  return c.size() == 0 ? 0.0 : c.cwiseAbs().maxCoeff();
}

std::vector<InvariantVector> costratum_T_kernel(const CostratumSystem& system, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("kernel tolerance must be positive");
  const auto rows_n = static_cast<Eigen::Index>(system.rows.size());
  const auto cols_n = static_cast<Eigen::Index>(system.columns.size());
  std::vector<InvariantVector> out;
  if (cols_n == 0) return out;

  // Work in psi = D^{1/2} phi with D = diag ||chi_J||^2: the hbar-product
  // becomes Euclidean and row g reads A_g D^{1/2}.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(rows_n, 1), cols_n);
  for (const auto& e : system.entries)
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) =
        e.value / std::sqrt(system.column_norm_squared[e.col]);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double nr = m.row(r).norm();
    if (nr > 0.0) m.row(r) /= nr;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  const Eigen::MatrixXd& v = svd.matrixV();
  for (Eigen::Index k = 0; k < cols_n; ++k) {
    if (k < sv.size() && sv[k] > tol * smax) continue;
    Eigen::VectorXd psi = v.col(k);
    Eigen::Index arg = 0;
    psi.cwiseAbs().maxCoeff(&arg);
    if (psi[arg] < 0.0) psi = -psi;
    InvariantVector phi(system.n);
    for (Eigen::Index c = 0; c < cols_n; ++c)
      phi.add(system.columns[static_cast<std::size_t>(c)],
              psi[c] / std::sqrt(system.column_norm_squared[static_cast<std::size_t>(c)]));
    out.push_back(std::move(phi));
  }
  return out;
}

double evaluate_at_center(const MultiIndex& index, const SignChain& nu) {
  if (nu.size() != index.chain.size()) throw std::invalid_argument("sign chain length mismatch");
  if (!is_valid(index)) throw std::invalid_argument("evaluate_at_center: invalid multi-index");
  if (index.left != index.right) return 0.0;
  double sign = 1.0;
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (nu[i] != 1 && nu[i] != -1) throw std::invalid_argument("signs must be +1 or -1");
    // nu^{2j} is -1 exactly for nu = -1 and half-odd j.
    if (nu[i] == -1 && index.chain[i].twice % 2 != 0) sign = -sign;
  }
  return sign * std::sqrt(chain_dimension(index.chain) * index.total.dim());
}

InvariantVector point_stratum_vector(const SignChain& nu, HalfInt cutoff, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  const int n = static_cast<int>(nu.size());
  InvariantVector v(n);
  double norm2 = 0.0;
  std::vector<std::pair<MultiIndex, double>> coeffs;
  for (const auto& index : enumerate_indices(n, cutoff)) {
    const double value = evaluate_at_center(index, nu);
    if (value == 0.0) continue;
    const double ns = norm_squared(index, hbar);
    coeffs.emplace_back(index, value / ns);
    norm2 += value * value / ns;
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (const auto& [index, c] : coeffs) v.add(index, c * scale);
  return v;
}

InvariantVector point_projector_apply(const InvariantVector& f, const SignChain& nu) {
  if (static_cast<int>(nu.size()) != f.n()) throw std::invalid_argument("sign chain length mismatch");
  double at_center = 0.0;
  for (const auto& [index, c] : f.terms()) at_center += c * evaluate_at_center(index, nu);
  // Only the constant term changes; other coefficients keep their magnitude.
  const MultiIndex one = constant_index(f.n());
  const double c0 = f.coefficient(one) - at_center;
  InvariantVector out(f.n());
  for (const auto& [index, c] : f.terms())
    if (index != one) out.add(index, c);
  if (std::abs(c0) >= kPruneThreshold) out.add(one, c0);
  return out;
}

}  // namespace costrat
