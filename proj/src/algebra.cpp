#include "costrat/algebra.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "costrat/parallel.hpp"
#include "symbol_cache.hpp"

namespace costrat {
namespace {

void require_same_n(const MultiIndex& a, const MultiIndex& b) {
  if (a.n() != b.n()) throw std::invalid_argument("multi-indices have different N");
}

bool chain_coupled(const SpinChain& c1, const SpinChain& c2, const SpinChain& c) {
  if (c1.size() != c.size() || c2.size() != c.size()) return false;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (!triangle_ok(c1[i], c2[i], c[i])) return false;
  return true;
}

/// sqrt(d_{chain1} d_{chain2} d_j / (d_{j1} d_{j2} d_{chain})).
double dimension_prefactor(const MultiIndex& i1, const MultiIndex& i2, const SpinChain& chain,
                           HalfInt j) {
  return std::sqrt(chain_dimension(i1.chain) * chain_dimension(i2.chain) * j.dim() /
                   (static_cast<double>(i1.total.dim()) * i2.total.dim() * chain_dimension(chain)));
}

struct PairKey {
  MultiIndex a;
  MultiIndex b;
  bool operator==(const PairKey&) const = default;
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const noexcept {
    const MultiIndexHash h;
    return h(k.a) * 1000003u ^ h(k.b);
  }
};

using ProductCache =
    detail::ConcurrentCache<PairKey, std::shared_ptr<const InvariantVector>, PairKeyHash>;

ProductCache& product_cache() {
  static ProductCache cache;
  return cache;
}

InvariantVector compute_product(const MultiIndex& i1, const MultiIndex& i2) {
  InvariantVector out(i1.n());
  for (const auto& chain : coupled_chains(i1.chain, i2.chain)) {
    std::vector<std::pair<CouplingPath, double>> lefts;
    for (auto& l : paths(chain)) {
      if (!triangle_ok(i1.total, i2.total, l.back())) continue;
      const double u = recoupling_U(i1.chain, i2.chain, chain, l, i1.left, i2.left);
      if (u != 0.0) lefts.emplace_back(std::move(l), u);
    }
    if (lefts.empty()) continue;
    std::vector<std::pair<CouplingPath, double>> rights;
    for (auto& l : paths(chain)) {
      if (!triangle_ok(i1.total, i2.total, l.back())) continue;
      const double u = recoupling_U(i1.chain, i2.chain, chain, l, i1.right, i2.right);
      if (u != 0.0) rights.emplace_back(std::move(l), u);
    }
    for (const auto& [l, ul] : lefts)
      for (const auto& [r, ur] : rights) {
        if (l.back() != r.back()) continue;
        out.add({chain, l.back(), l, r}, dimension_prefactor(i1, i2, chain, l.back()) * ul * ur);
      }
  }
  out.prune();
  return out;
}

}  // namespace

std::vector<SpinChain> coupled_chains(const SpinChain& chain1, const SpinChain& chain2) {
  if (chain1.size() != chain2.size()) throw std::invalid_argument("chains have different N");
  std::vector<SpinChain> out;
  SpinChain current(chain1.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == chain1.size()) {
      out.push_back(current);
      return;
    }
    for (int t = std::abs(chain1[i].twice - chain2[i].twice); t <= chain1[i].twice + chain2[i].twice;
         t += 2) {
      current[i] = HalfInt{t};
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Coefficient recoupling_U(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1,
                         const CouplingPath& path2) {
  const std::size_t n = chain.size();
  if (path.size() != n || path1.size() != n || path2.size() != n)
    throw std::invalid_argument("recoupling_U: length mismatch");
  if (!chain_coupled(chain1, chain2, chain)) return {0.0, Provenance::exact};
  if (!is_valid_path(chain, path) || !is_valid_path(chain1, path1) || !is_valid_path(chain2, path2))
    return {0.0, Provenance::exact};
  if (n == 1) return {1.0, Provenance::exact};
  double value = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const NineJ s{{path1[i - 1], path2[i - 1], path[i - 1], chain1[i], chain2[i], chain[i],
                   path1[i], path2[i], path[i]}};
    value *= paren_9j(s).value;
    if (value == 0.0) break;
  }
  return {value, Provenance::rounded};
}

Coefficient structure_constant(const MultiIndex& i1, const MultiIndex& i2, const MultiIndex& i) {
  require_same_n(i1, i2);
  require_same_n(i1, i);
  if (!chain_coupled(i1.chain, i2.chain, i.chain) || !triangle_ok(i1.total, i2.total, i.total))
    return {0.0, Provenance::exact};
  const double ul = recoupling_U(i1.chain, i2.chain, i.chain, i.left, i1.left, i2.left);
  if (ul == 0.0) return {0.0, Provenance::exact};
  const double ur = recoupling_U(i1.chain, i2.chain, i.chain, i.right, i1.right, i2.right);
  return {dimension_prefactor(i1, i2, i.chain, i.total) * ul * ur, Provenance::rounded};
}

InvariantVector multiply_basis(const MultiIndex& i1, const MultiIndex& i2) {
  require_same_n(i1, i2);
  // The product is symmetric, so the unordered pair is the cache key.
  PairKey key = i1 < i2 ? PairKey{i1, i2} : PairKey{i2, i1};
  const auto result = product_cache().get_or_compute(key, [&] {
    return std::make_shared<const InvariantVector>(compute_product(key.a, key.b));
  });
  return *result;
}

InvariantVector multiply_basis_uncached(const MultiIndex& i1, const MultiIndex& i2) {
  require_same_n(i1, i2);
  return i1 < i2 ? compute_product(i1, i2) : compute_product(i2, i1);
}

InvariantVector multiply(const InvariantVector& v, const InvariantVector& w) {
  if (v.n() != w.n()) throw std::invalid_argument("multiply: mismatched N");
  std::vector<std::pair<const MultiIndex*, const MultiIndex*>> pairs;
  std::vector<double> weights;
  for (const auto& [a, ca] : v.terms())
    for (const auto& [b, cb] : w.terms()) {
      pairs.emplace_back(&a, &b);
      weights.push_back(ca * cb);
    }
  std::vector<InvariantVector> products(pairs.size());
  parallel_for(pairs.size(),
               [&](std::size_t k) { products[k] = multiply_basis(*pairs[k].first, *pairs[k].second); });
  // Summation in canonical pair order keeps the result independent of scheduling.
  InvariantVector out(v.n());
  for (std::size_t k = 0; k < pairs.size(); ++k)
    for (const auto& [index, c] : products[k].terms()) out.add(index, weights[k] * c);
  out.prune();
  return out;
}

InvariantVector conj_multiply(const MultiIndex& i, const MultiIndex& j) {
  require_same_n(i, j);
  InvariantVector out(i.n());
  for (const auto& chain : coupled_chains(i.chain, j.chain)) {
    const auto all = paths(chain);
    std::vector<std::pair<const CouplingPath*, double>> lefts, rights;
    for (const auto& p : all) {
      if (!triangle_ok(i.total, p.back(), j.total)) continue;
      const double ul = recoupling_U(i.chain, chain, j.chain, j.left, i.left, p);
      if (ul != 0.0) lefts.emplace_back(&p, ul);
      const double ur = recoupling_U(i.chain, chain, j.chain, j.right, i.right, p);
      if (ur != 0.0) rights.emplace_back(&p, ur);
    }
    for (const auto& [l, ul] : lefts)
      for (const auto& [r, ur] : rights) {
        if (l->back() != r->back()) continue;
        const MultiIndex k{chain, l->back(), *l, *r};
        const double pre = std::sqrt(chain_dimension(i.chain) * chain_dimension(chain) *
                                     j.total.dim() /
                                     (static_cast<double>(i.total.dim()) * k.total.dim() *
                                      chain_dimension(j.chain)));
        out.add(k, pre * ul * ur);
      }
  }
  out.prune();
  return out;
}

double inner_product(const InvariantVector& v, const InvariantVector& w, double hbar) {
  if (v.n() != w.n()) throw std::invalid_argument("inner_product: mismatched N");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  double sum = 0.0;
  for (const auto& [index, c] : v.terms()) {
    const double d = w.coefficient(index);
    if (d != 0.0) sum += c * d * norm_squared(index, hbar);
  }
  return sum;
}

void clear_product_cache() { product_cache().clear(); }

}  // namespace costrat
