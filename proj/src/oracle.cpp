#include "costrat/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/LU>

#include "costrat/parallel.hpp"

namespace costrat {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

Mat2 at(const GroupTuple& a, int link) {
  if (link < 1 || static_cast<std::size_t>(link) > a.size()) throw std::out_of_range("link index out of range");
  return a[static_cast<std::size_t>(link - 1)];
}

/// Product of CG coefficients of a sequential coupling, written out afresh.
double cascade(const SpinChain& chain, const CouplingPath& path, const std::vector<int>& twice_m) {
  double amp = 1.0;
  int cumulative = twice_m[0];
  for (std::size_t i = 1; i < chain.size() && amp != 0.0; ++i) {
    const int next = cumulative + twice_m[i];
    amp *= clebsch_gordan(path[i - 1], HalfInt{cumulative}, chain[i], HalfInt{twice_m[i]}, path[i],
                          HalfInt{next})
               .value;
    cumulative = next;
  }
  return amp;
}

/// Tensor product of V_{j1^i} (x) V_{j2^i}, site by site, each factor indexed
/// by k = (j - m) with m = j - k. Decodes a flat index into projections.
struct TensorLayout {
  SpinChain a, b;
  std::size_t size = 1;

  TensorLayout(SpinChain c1, SpinChain c2) : a(std::move(c1)), b(std::move(c2)) {
    double total = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) total *= static_cast<double>(a[i].dim()) * b[i].dim();
    if (total > 1e6) throw std::length_error("recoupling oracle: tensor dimension exceeds 1e6");
    size = static_cast<std::size_t>(total);
  }

  void decode(std::size_t flat, std::vector<int>& ma, std::vector<int>& mb) const {
    for (std::size_t i = a.size(); i-- > 0;) {
      const auto db = static_cast<std::size_t>(b[i].dim());
      mb[i] = b[i].twice - 2 * static_cast<int>(flat % db);
      flat /= db;
      const auto da = static_cast<std::size_t>(a[i].dim());
      ma[i] = a[i].twice - 2 * static_cast<int>(flat % da);
      flat /= da;
    }
  }
};

int sum(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

std::vector<double> psi_vector(const TensorLayout& t, const SpinChain& chain, const CouplingPath& path,
                               HalfInt m) {
  const std::size_t n = chain.size();
  std::vector<double> out(t.size, 0.0);
  std::vector<int> ma(n), mb(n), mu(n);
  for (std::size_t f = 0; f < t.size; ++f) {
    t.decode(f, ma, mb);
    double amp = 1.0;
    for (std::size_t i = 0; i < n && amp != 0.0; ++i) {
      mu[i] = ma[i] + mb[i];
      amp *= clebsch_gordan(t.a[i], HalfInt{ma[i]}, t.b[i], HalfInt{mb[i]}, chain[i], HalfInt{mu[i]}).value;
    }
    if (amp == 0.0 || sum(mu) != m.twice) continue;
    out[f] = amp * cascade(chain, path, mu);
  }
  return out;
}

std::vector<double> phi_vector(const TensorLayout& t, const CouplingPath& path1, const CouplingPath& path2,
                               HalfInt j, HalfInt m) {
  const std::size_t n = t.a.size();
  std::vector<double> out(t.size, 0.0);
  std::vector<int> ma(n), mb(n);
  for (std::size_t f = 0; f < t.size; ++f) {
    t.decode(f, ma, mb);
    const int sa = sum(ma), sb = sum(mb);
    if (sa + sb != m.twice) continue;
    const double c = clebsch_gordan(path1.back(), HalfInt{sa}, path2.back(), HalfInt{sb}, j, m).value;
    if (c == 0.0) continue;
    out[f] = c * cascade(t.a, path1, ma) * cascade(t.b, path2, mb);
  }
  return out;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

bool admissible(const SpinChain& c1, const SpinChain& c2, const SpinChain& c, const CouplingPath& p,
                const CouplingPath& p1, const CouplingPath& p2) {
  const std::size_t n = c.size();
  if (c1.size() != n || c2.size() != n || p.size() != n || p1.size() != n || p2.size() != n)
    throw std::invalid_argument("recoupling oracle: length mismatch");
  return is_valid_path(c, p) && is_valid_path(c1, p1) && is_valid_path(c2, p2) &&
         triangle_ok(p1.back(), p2.back(), p.back());
}

std::vector<int> key_of(const std::vector<HalfInt>& a, const std::vector<HalfInt>& b, HalfInt x, HalfInt y) {
  std::vector<int> k;
  for (HalfInt h : a) k.push_back(h.twice);
  k.push_back(-1);
  for (HalfInt h : b) k.push_back(h.twice);
  k.push_back(x.twice);
  k.push_back(y.twice);
  return k;
}

}  // namespace

double HaarSampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double HaarSampler::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phase = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phase);
  has_spare_ = true;
  return r * std::cos(phase);
}

Mat2 HaarSampler::next() {
  double x[4];
  double norm = 0.0;
  do {
    norm = 0.0;
    for (double& v : x) {
      v = gaussian();
      norm += v * v;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  const std::complex<double> alpha(x[0] / norm, x[1] / norm), beta(x[2] / norm, x[3] / norm);
  Mat2 a;
  a << alpha, -std::conj(beta), beta, std::conj(alpha);
  ++counter_;
  return a;
}

GroupTuple HaarSampler::tuple(int n) {
  GroupTuple a;
  a.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) a.push_back(next());
  return a;
}

Mat2 haar_su2(HaarSampler& sampler) { return sampler.next(); }

Mat2 random_diagonal_sl2c(HaarSampler& sampler) {
  const double modulus = std::exp(sampler.uniform() - 0.5);
  const double phase = 2.0 * std::numbers::pi * sampler.uniform();
  const std::complex<double> z = std::polar(modulus, phase);
  Mat2 a;
  a << z, 0.0, 0.0, 1.0 / z;
  return a;
}

GroupTuple random_diagonal_tuple(HaarSampler& sampler, int n) {
  GroupTuple a;
  for (int i = 0; i < n; ++i) a.push_back(random_diagonal_sl2c(sampler));
  return a;
}

std::vector<McEstimate> mc_means(int n, std::size_t outputs, const McIntegrand& integrand,
                                 std::size_t samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("Monte Carlo needs at least two samples");
  const std::size_t chunks = (samples + kMcChunk - 1) / kMcChunk;
  std::vector<std::vector<std::complex<double>>> sums(chunks, std::vector<std::complex<double>>(outputs));
  std::vector<std::vector<double>> squares(chunks, std::vector<double>(outputs));
  parallel_for(chunks, [&](std::size_t c) {
    HaarSampler sampler(splitmix64(seed + c));
    const std::size_t count = std::min(kMcChunk, samples - c * kMcChunk);
    std::vector<std::complex<double>> values(outputs);
    for (std::size_t s = 0; s < count; ++s) {
      integrand(sampler.tuple(n), values);
      for (std::size_t k = 0; k < outputs; ++k) {
        sums[c][k] += values[k];
        squares[c][k] += std::norm(values[k]);
      }
    }
  });
  std::vector<McEstimate> out(outputs);
  const double count = static_cast<double>(samples);
  for (std::size_t k = 0; k < outputs; ++k) {
    std::complex<double> s{0.0, 0.0};
    double q = 0.0;
    for (std::size_t c = 0; c < chunks; ++c) {
      s += sums[c][k];
      q += squares[c][k];
    }
    const std::complex<double> mean = s / count;
    const double variance = std::max(0.0, (q / count - std::norm(mean)) * count / (count - 1.0));
    out[k] = {mean, std::sqrt(variance / count)};
  }
  return out;
}

McEstimate mc_inner(const TupleFunction& f, const TupleFunction& g, int n, std::size_t samples,
                    std::uint64_t seed) {
  return mc_means(
      n, 1, [&](const GroupTuple& a, std::vector<std::complex<double>>& out) { out[0] = std::conj(f(a)) * g(a); },
      samples, seed)[0];
}

std::complex<double> trace_commutator_squared(const GroupTuple& a, int r, int s) {
  const Mat2 x = at(a, r), y = at(a, s);
  const Mat2 c = x * y - y * x;
  return (c * c).trace();
}

std::complex<double> trace_commutator_times(const GroupTuple& a, int r, int s, int t) {
  const Mat2 x = at(a, r), y = at(a, s);
  return ((x * y - y * x) * at(a, t)).trace();
}

std::complex<double> trace_product(const GroupTuple& a, const std::vector<int>& links) {
  Mat2 p = Mat2::Identity();
  for (int l : links) p = p * at(a, l);
  return p.trace();
}

std::complex<double> magnetic_direct(const LatticeSpec& lattice, const GroupTuple& offtree) {
  if (offtree.size() != static_cast<std::size_t>(lattice.n_offtree))
    throw std::invalid_argument("magnetic_direct: tuple length does not match N");
  std::vector<Mat2> config(lattice.links.size(), Mat2::Identity());
  for (std::size_t id = 0; id < lattice.links.size(); ++id)
    if (const int num = lattice.links[id].number; num > 0) config[id] = offtree[static_cast<std::size_t>(num - 1)];
  std::complex<double> total{0.0, 0.0};
  for (const auto& p : lattice.plaquettes) {
    Mat2 h = Mat2::Identity();
    for (std::size_t k = 0; k < 4; ++k) {
      const Mat2& u = config[static_cast<std::size_t>(p.links[k])];
      h = h * (p.traversal[k] > 0 ? u : Mat2(u.inverse()));
    }
    const auto tr = h.trace();
    total += tr + std::conj(tr);
  }
  return total;
}

double trace_expansion_coefficient(const MultiIndex& index, const std::vector<int>& links) {
  if (!is_valid(index)) throw std::invalid_argument("trace_expansion_coefficient: invalid index");
  const std::size_t n = index.chain.size();
  const std::size_t k = links.size();
  std::vector<bool> on(n, false);
  for (int l : links) {
    if (l < 1 || static_cast<std::size_t>(l) > n) throw std::invalid_argument("link out of range");
    on[static_cast<std::size_t>(l - 1)] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (index.chain[i].twice != (on[i] ? 1 : 0))
      throw std::invalid_argument("index must carry spin 1/2 exactly on the traced links");

  // tr(a_1 ... a_k) = sum_n prod_i D_{n_i n_{i+1}}(a_i); orthogonality of the
  // matrix entries forces m'_i = n_i and m_i = n_{i+1}, so the right
  // projections are the left ones rotated by one place.
  double total = 0.0;
  std::vector<int> left(n, 0), right(n, 0);
  for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
    std::vector<int> m(k);
    for (std::size_t b = 0; b < k; ++b) m[b] = (mask >> b) & 1u ? -1 : 1;
    for (std::size_t b = 0; b < k; ++b) {
      left[static_cast<std::size_t>(links[b] - 1)] = m[b];
      right[static_cast<std::size_t>(links[b] - 1)] = m[(b + k - 1) % k];
    }
    total += cascade(index.chain, index.left, left) * cascade(index.chain, index.right, right);
  }
  return total / (std::pow(2.0, 0.5 * static_cast<double>(k)) * std::sqrt(static_cast<double>(index.total.dim())));
}

double recoupling_direct(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1, const CouplingPath& path2) {
  return recoupling_direct(chain1, chain2, chain, path, path1, path2, path.empty() ? HalfInt{0} : path.back());
}

double recoupling_direct(const SpinChain& chain1, const SpinChain& chain2, const SpinChain& chain,
                         const CouplingPath& path, const CouplingPath& path1, const CouplingPath& path2,
                         HalfInt m) {
  if (!admissible(chain1, chain2, chain, path, path1, path2)) return 0.0;
  if (!valid_projection(path.back(), m)) throw std::invalid_argument("recoupling_direct: bad projection");
  const TensorLayout t(chain1, chain2);
  return dot(psi_vector(t, chain, path, m), phi_vector(t, path1, path2, path.back(), m));
}

RecouplingOracle::RecouplingOracle(SpinChain chain1, SpinChain chain2)
    : chain1_(std::move(chain1)), chain2_(std::move(chain2)) {
  (void)TensorLayout(chain1_, chain2_);  // size guard
}

const std::vector<double>& RecouplingOracle::psi(const SpinChain& chain, const CouplingPath& path, HalfInt m) {
  const auto key = key_of(chain, path, m, HalfInt{0});
  auto it = psi_cache_.find(key);
  if (it == psi_cache_.end())
    it = psi_cache_.emplace(key, psi_vector(TensorLayout(chain1_, chain2_), chain, path, m)).first;
  return it->second;
}

const std::vector<double>& RecouplingOracle::phi(const CouplingPath& path1, const CouplingPath& path2, HalfInt j,
                                                 HalfInt m) {
  const auto key = key_of(path1, path2, j, m);
  auto it = phi_cache_.find(key);
  if (it == phi_cache_.end())
    it = phi_cache_.emplace(key, phi_vector(TensorLayout(chain1_, chain2_), path1, path2, j, m)).first;
  return it->second;
}

double RecouplingOracle::operator()(const SpinChain& chain, const CouplingPath& path, const CouplingPath& path1,
                                    const CouplingPath& path2) {
  if (!admissible(chain1_, chain2_, chain, path, path1, path2)) return 0.0;
  const HalfInt j = path.back();
  return dot(psi(chain, path, j), phi(path1, path2, j, j));
}

}  // namespace costrat
