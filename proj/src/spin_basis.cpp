#include "costrat/spin_basis.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "symbol_cache.hpp"

namespace costrat {
namespace {

std::size_t hash_combine(std::size_t seed, int v) {
  return seed ^ (std::hash<int>{}(v) + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

void extend_paths(const SpinChain& chain, CouplingPath& current, std::vector<CouplingPath>& out) {
  const std::size_t i = current.size();
  if (i == chain.size()) {
    out.push_back(current);
    return;
  }
  const HalfInt prev = current.back();
  const HalfInt j = chain[i];
  for (int l = std::abs(prev.twice - j.twice); l <= prev.twice + j.twice; l += 2) {
    current.push_back(HalfInt{l});
    extend_paths(chain, current, out);
    current.pop_back();
  }
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos
                                                                                      : comma - start);
    int v = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty())
      throw std::invalid_argument("malformed integer '" + std::string(item) + "' in multi-index");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_twice(const std::vector<HalfInt>& v, std::size_t from) {
  std::string s;
  for (std::size_t i = from; i < v.size(); ++i) {
    if (i > from) s += ',';
    s += std::to_string(v[i].twice);
  }
  return s;
}

struct PathKey {
  std::vector<int> data;
  bool operator==(const PathKey&) const = default;
};

struct PathKeyHash {
  std::size_t operator()(const PathKey& k) const noexcept {
    std::size_t h = k.data.size();
    for (int v : k.data) h = hash_combine(h, v);
    return h;
  }
};

using CascadeCache =
    detail::ConcurrentCache<PathKey, std::shared_ptr<const std::vector<CascadeTerm>>, PathKeyHash>;

CascadeCache& cascade_cache() {
  static CascadeCache cache;
  return cache;
}

std::shared_ptr<const std::vector<CascadeTerm>> cached_cascade(const SpinChain& chain,
                                                               const CouplingPath& path) {
  PathKey key;
  for (HalfInt j : chain) key.data.push_back(j.twice);
  for (HalfInt l : path) key.data.push_back(l.twice);
  return cascade_cache().get_or_compute(key, [&] {
    return std::make_shared<const std::vector<CascadeTerm>>(cascade_terms(chain, path));
  });
}

}  // namespace

std::size_t MultiIndexHash::operator()(const MultiIndex& index) const noexcept {
  std::size_t h = index.chain.size();
  for (HalfInt j : index.chain) h = hash_combine(h, j.twice);
  h = hash_combine(h, index.total.twice);
  for (HalfInt l : index.left) h = hash_combine(h, l.twice);
  for (HalfInt l : index.right) h = hash_combine(h, l.twice);
  return h;
}

MultiIndex constant_index(int n) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  const std::size_t sz = static_cast<std::size_t>(n);
  return {SpinChain(sz), HalfInt{0}, CouplingPath(sz), CouplingPath(sz)};
}

bool is_valid_path(const SpinChain& chain, const CouplingPath& path) {
  if (chain.empty() || path.size() != chain.size()) return false;
  if (path[0] != chain[0] || !chain[0].valid_spin()) return false;
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!triangle_ok(path[i - 1], chain[i], path[i])) return false;
  return true;
}

bool is_valid(const MultiIndex& index) {
  return is_valid_path(index.chain, index.left) && is_valid_path(index.chain, index.right) &&
         index.left.back() == index.total && index.right.back() == index.total;
}

std::string to_string(const MultiIndex& index) {
  return "[" + join_twice(index.chain, 0) + "|" + std::to_string(index.total.twice) + "|" +
         join_twice(index.left, 1) + "|" + join_twice(index.right, 1) + "]";
}

MultiIndex parse_multi_index(std::string_view text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw std::invalid_argument("multi-index must be enclosed in brackets: " + std::string(text));
  const std::string_view body = text.substr(1, text.size() - 2);
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == '|') {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  if (parts.size() != 4) throw std::invalid_argument("multi-index needs four '|'-separated fields");
  const auto chain = parse_int_list(parts[0]);
  const auto total = parse_int_list(parts[1]);
  const auto left = parse_int_list(parts[2]);
  const auto right = parse_int_list(parts[3]);
  if (chain.empty() || total.size() != 1 || left.size() + 1 != chain.size() ||
      right.size() + 1 != chain.size())
    throw std::invalid_argument("multi-index field lengths are inconsistent: " + std::string(text));
  MultiIndex index;
  for (int v : chain) index.chain.push_back(HalfInt{v});
  index.total = HalfInt{total[0]};
  index.left.push_back(index.chain[0]);
  index.right.push_back(index.chain[0]);
  for (int v : left) index.left.push_back(HalfInt{v});
  for (int v : right) index.right.push_back(HalfInt{v});
  if (!is_valid(index)) throw std::invalid_argument("inadmissible multi-index " + std::string(text));
  return index;
}

std::vector<CouplingPath> paths(const SpinChain& chain) {
  if (chain.empty()) return {};
  for (HalfInt j : chain)
    if (!j.valid_spin()) throw std::invalid_argument("negative spin in chain");
  std::vector<CouplingPath> out;
  CouplingPath current{chain[0]};
  extend_paths(chain, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CouplingPath> paths_to(const SpinChain& chain, HalfInt j) {
  auto all = paths(chain);
  std::erase_if(all, [&](const CouplingPath& p) { return p.back() != j; });
  return all;
}

std::size_t multiplicity(const SpinChain& chain, HalfInt j) { return paths_to(chain, j).size(); }

std::vector<MultiIndex> enumerate_indices(int n, HalfInt cutoff) {
  if (n < 1) throw std::invalid_argument("N must be at least 1");
  if (cutoff.twice < 0) throw std::invalid_argument("cutoff must be nonnegative");
  std::vector<MultiIndex> out;
  SpinChain chain(static_cast<std::size_t>(n), HalfInt{0});
  // Odometer over chains in lexicographic order.
  while (true) {
    std::map<HalfInt, std::vector<CouplingPath>> by_total;
    for (auto& p : paths(chain)) by_total[p.back()].push_back(std::move(p));
    for (const auto& [total, ps] : by_total)
      for (const auto& l : ps)
        for (const auto& r : ps) out.push_back({chain, total, l, r});
    int pos = n - 1;
    while (pos >= 0 && chain[static_cast<std::size_t>(pos)].twice == cutoff.twice) {
      chain[static_cast<std::size_t>(pos)] = HalfInt{0};
      --pos;
    }
    if (pos < 0) break;
    chain[static_cast<std::size_t>(pos)].twice += 1;
  }
  return out;
}

MultiIndex index_on_links(int n, const std::vector<std::pair<int, HalfInt>>& spins,
                          const std::vector<HalfInt>& left, const std::vector<HalfInt>& right) {
  MultiIndex index = constant_index(n);
  if (spins.empty()) {
    if (!left.empty() || !right.empty()) throw std::invalid_argument("index_on_links: stray path data");
    return index;
  }
  if (left.size() + 1 != spins.size() || right.size() + 1 != spins.size())
    throw std::invalid_argument("index_on_links: path data length mismatch");
  int previous = 0;
  for (const auto& [link, j] : spins) {
    if (link <= previous || link > n) throw std::invalid_argument("index_on_links: bad link order");
    index.chain[static_cast<std::size_t>(link - 1)] = j;
    previous = link;
  }
  auto fill = [&](CouplingPath& path, const std::vector<HalfInt>& steps) {
    HalfInt current{0};
    std::size_t k = 0;
    for (int i = 1; i <= n; ++i) {
      if (k < spins.size() && spins[k].first == i) {
        current = k == 0 ? spins[0].second : steps[k - 1];
        ++k;
      }
      path[static_cast<std::size_t>(i - 1)] = current;
    }
  };
  fill(index.left, left);
  fill(index.right, right);
  index.total = index.left.back();
  if (!is_valid(index)) throw std::invalid_argument("index_on_links: inadmissible coupling data");
  return index;
}

double chain_dimension(const SpinChain& chain) {
  double d = 1.0;
  for (HalfInt j : chain) d *= j.dim();
  return d;
}

double norm_squared(const MultiIndex& index, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  const double measure = std::pow(hbar * std::numbers::pi, 1.5);
  double exponent = 0.0;
  for (HalfInt j : index.chain) exponent += hbar * static_cast<double>(j.dim()) * j.dim();
  return std::pow(measure, index.n()) * std::exp(exponent);
}

Coefficient cg_cascade(const SpinChain& chain, const CouplingPath& path,
                       const std::vector<HalfInt>& projections) {
  if (projections.size() != chain.size() || path.size() != chain.size())
    throw std::invalid_argument("cg_cascade: length mismatch");
  double value = 1.0;
  HalfInt cumulative = projections[0];
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const HalfInt next = cumulative + projections[i];
    value *= clebsch_gordan(path[i - 1], cumulative, chain[i], projections[i], path[i], next).value;
    if (value == 0.0) return {0.0, Provenance::rounded};
    cumulative = next;
  }
  return {value, chain.size() <= 2 ? Provenance::exact : Provenance::rounded};
}

std::vector<CascadeTerm> cascade_terms(const SpinChain& chain, const CouplingPath& path) {
  if (!is_valid_path(chain, path)) throw std::invalid_argument("cascade_terms: invalid path");
  std::vector<CascadeTerm> out;
  std::vector<HalfInt> proj(chain.size());
  // Depth-first over projections; partial sums must stay within |l^i|.
  std::function<void(std::size_t, HalfInt, double)> walk = [&](std::size_t i, HalfInt cum,
                                                               double coeff) {
    if (i == chain.size()) {
      out.push_back({proj, coeff});
      return;
    }
    for (int m = -chain[i].twice; m <= chain[i].twice; m += 2) {
      const HalfInt next = cum + HalfInt{m};
      if (std::abs(next.twice) > path[i].twice) continue;
      const double c = clebsch_gordan(path[i - 1], cum, chain[i], HalfInt{m}, path[i], next).value;
      if (c == 0.0) continue;
      proj[i] = HalfInt{m};
      walk(i + 1, next, coeff * c);
    }
  };
  for (int m = -chain[0].twice; m <= chain[0].twice; m += 2) {
    proj[0] = HalfInt{m};
    walk(1, HalfInt{m}, 1.0);
  }
  auto total = [](const CascadeTerm& t) {
    int s = 0;
    for (HalfInt m : t.projections) s += m.twice;
    return s;
  };
  std::stable_sort(out.begin(), out.end(), [&](const CascadeTerm& a, const CascadeTerm& b) {
    const int ta = total(a), tb = total(b);
    if (ta != tb) return ta < tb;
    return a.projections < b.projections;
  });
  return out;
}

std::complex<double> evaluate_basis(const MultiIndex& index, const GroupTuple& a) {
  if (a.size() != index.chain.size())
    throw std::invalid_argument("evaluate_basis: tuple length does not match N");
  BasisEvaluator eval(a);
  return eval(index);
}

BasisEvaluator::BasisEvaluator(GroupTuple a) : a_(std::move(a)), reps_(a_.size()) {
  for (const auto& x : a_)
    if (!is_unimodular(x)) throw std::invalid_argument("evaluate_basis: entry is not unimodular");
}

const Eigen::MatrixXcd& BasisEvaluator::rep(std::size_t site, HalfInt j) {
  auto& slot = reps_[site];
  const auto k = static_cast<std::size_t>(j.twice);
  while (slot.size() <= k) slot.push_back(wigner_D_matrix(HalfInt{static_cast<int>(slot.size())}, a_[site]));
  return slot[k];
}

std::complex<double> BasisEvaluator::operator()(const MultiIndex& index) {
  if (index.chain.size() != a_.size())
    throw std::invalid_argument("evaluate_basis: tuple length does not match N");
  if (!is_valid(index)) throw std::invalid_argument("evaluate_basis: invalid multi-index");

  std::vector<const Eigen::MatrixXcd*> d(a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i) d[i] = &rep(i, index.chain[i]);

  const auto left = cached_cascade(index.chain, index.left);
  const auto right = cached_cascade(index.chain, index.right);
  auto total = [](const CascadeTerm& t) {
    int s = 0;
    for (HalfInt m : t.projections) s += m.twice;
    return s;
  };

  // Both cascades are sorted by total projection; pair up equal-m blocks.
  std::complex<double> sum{0.0, 0.0};
  std::size_t rb = 0;
  for (std::size_t lb = 0; lb < left->size();) {
    const int m = total((*left)[lb]);
    std::size_t le = lb;
    while (le < left->size() && total((*left)[le]) == m) ++le;
    while (rb < right->size() && total((*right)[rb]) < m) ++rb;
    std::size_t re = rb;
    while (re < right->size() && total((*right)[re]) == m) ++re;
    for (std::size_t u = lb; u < le; ++u) {
      const auto& lt = (*left)[u];
      for (std::size_t v = rb; v < re; ++v) {
        const auto& rt = (*right)[v];
        std::complex<double> prod = lt.coefficient * rt.coefficient;
        for (std::size_t i = 0; i < d.size(); ++i) {
          const int row = (index.chain[i].twice - rt.projections[i].twice) / 2;
          const int col = (index.chain[i].twice - lt.projections[i].twice) / 2;
          prod *= (*d[i])(row, col);
        }
        sum += prod;
      }
    }
    lb = le;
    rb = re;
  }
  return std::sqrt(chain_dimension(index.chain) / index.total.dim()) * sum;
}

}  // namespace costrat
