#include "costrat/lattice.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

namespace costrat {
namespace {

using Site = std::array<int, 3>;

Site shifted(Site s, int axis) {
  s[static_cast<std::size_t>(axis)] += 1;
  return s;
}

int parity_sign(const Site& s, int extra) { return (s[0] + s[1] + s[2] + extra) % 2 == 0 ? 1 : -1; }

/// Link ids of a fully off-tree plaquette in the direction along which every
/// link is traversed with its orientation, starting at the first (axis-a)
/// link. Empty when no such direction exists.
std::vector<int> oriented_cycle(const Plaquette& p) {
  const bool forward = std::all_of(p.traversal.begin(), p.traversal.end(), [](int t) { return t == 1; });
  const bool backward = std::all_of(p.traversal.begin(), p.traversal.end(), [](int t) { return t == -1; });
  if (forward) return {p.links[0], p.links[1], p.links[2], p.links[3]};
  if (backward) return {p.links[0], p.links[3], p.links[2], p.links[1]};
  return {};
}

/// Fills Plaquette::offtree_count/offtree from the link numbers. Returns an
/// error message, or an empty string when the numbering is consistent.
std::string finalize_plaquettes(LatticeSpec& lat) {
  for (auto& p : lat.plaquettes) {
    p.offtree.clear();
    p.offtree_count = 0;
    for (int id : p.links)
      if (!lat.links[static_cast<std::size_t>(id)].in_tree) ++p.offtree_count;
    auto number = [&](int id) { return lat.links[static_cast<std::size_t>(id)].number; };
    switch (p.offtree_count) {
      case 4: {
        const auto cycle = oriented_cycle(p);
        if (cycle.empty()) return "plaquette with four off-tree links is not coherently oriented";
        std::vector<int> nums;
        for (int id : cycle) nums.push_back(number(id));
        std::rotate(nums.begin(), std::min_element(nums.begin(), nums.end()), nums.end());
        if (!std::is_sorted(nums.begin(), nums.end()))
          return "plaquette with four off-tree links is not numbered increasingly";
        p.offtree = nums;
        break;
      }
      case 2: {
        std::vector<int> signs;
        for (std::size_t k = 0; k < 4; ++k) {
          const int id = p.links[k];
          if (!lat.links[static_cast<std::size_t>(id)].in_tree) {
            p.offtree.push_back(number(id));
            signs.push_back(p.traversal[k]);
          }
        }
        // tr(a_r a_s) needs both links traversed the same way; otherwise the
        // holonomy would be tr(a_r a_s^{-1}).
        if (signs[0] != signs[1]) return "plaquette with two off-tree links has mixed traversal";
        std::sort(p.offtree.begin(), p.offtree.end());
        break;
      }
      case 1:
        for (int id : p.links)
          if (!lat.links[static_cast<std::size_t>(id)].in_tree) p.offtree.push_back(number(id));
        break;
      case 0:
        return "plaquette lies entirely in the tree";
      default:
        return "plaquette with three off-tree links";
    }
  }
  return {};
}

}  // namespace

int LatticeSpec::site_count() const {
  int n = 1;
  for (int d : dims) n *= d;
  return n;
}

LatticeSpec build_lattice(const std::vector<int>& dims, bool reverse_tie_break) {
  if (dims.size() != 2 && dims.size() != 3)
    throw std::invalid_argument("lattice must be two- or three-dimensional");
  for (int d : dims)
    if (d < 2) throw std::invalid_argument("every lattice extent must be at least 2");

  LatticeSpec lat;
  lat.dims = dims;
  const Site ext{dims[0], dims[1], dims.size() == 3 ? dims[2] : 1};
  auto inside = [&](const Site& s) {
    for (std::size_t a = 0; a < 3; ++a)
      if (s[a] < 0 || s[a] >= ext[a]) return false;
    return true;
  };

  std::map<std::pair<Site, int>, int> id_of;
  for (int z = 0; z < ext[2]; ++z)
    for (int y = 0; y < ext[1]; ++y)
      for (int x = 0; x < ext[0]; ++x)
        for (int axis = 0; axis < 3; ++axis) {
          const Site s{x, y, z};
          if (!inside(shifted(s, axis))) continue;
          Link l;
          l.site = s;
          l.axis = axis;
          l.in_tree = (axis == 0 && y == 0 && z == 0) || (axis == 1 && z == 0) || axis == 2;
          // Checkerboard orientation: every plaquette in an xy-plane above the
          // tree plane is then traversed along all of its links.
          if (!l.in_tree) l.orientation = axis == 0 ? parity_sign(s, 0) : parity_sign(s, 1);
          id_of[{s, axis}] = static_cast<int>(lat.links.size());
          lat.links.push_back(l);
        }

  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b)
      for (int z = 0; z < ext[2]; ++z)
        for (int y = 0; y < ext[1]; ++y)
          for (int x = 0; x < ext[0]; ++x) {
            const Site c{x, y, z};
            if (!inside(shifted(c, a)) || !inside(shifted(c, b))) continue;
            Plaquette p;
            p.corner = c;
            p.plane = {a, b};
            p.links = {id_of.at({c, a}), id_of.at({shifted(c, a), b}), id_of.at({shifted(c, b), a}),
                       id_of.at({c, b})};
            const std::array<int, 4> dir{1, 1, -1, -1};
            for (std::size_t k = 0; k < 4; ++k)
              p.traversal[k] = dir[k] * lat.links[static_cast<std::size_t>(p.links[k])].orientation;
            lat.plaquettes.push_back(p);
          }

  // Order constraints: along each fully off-tree plaquette, the link after the
  // axis-a link carries the smallest number and numbers increase from there.
  const std::size_t nl = lat.links.size();
  std::vector<std::vector<int>> succ(nl);
  std::vector<int> indegree(nl, 0);
  for (const auto& p : lat.plaquettes) {
    const bool all_off = std::none_of(p.links.begin(), p.links.end(), [&](int id) {
      return lat.links[static_cast<std::size_t>(id)].in_tree;
    });
    if (!all_off) continue;
    const auto cycle = oriented_cycle(p);
    if (cycle.empty()) throw std::logic_error("standard orientation failed on a plaquette");
    const std::array<int, 4> chain{cycle[1], cycle[2], cycle[3], cycle[0]};
    for (std::size_t k = 0; k + 1 < 4; ++k) {
      succ[static_cast<std::size_t>(chain[k])].push_back(chain[k + 1]);
      ++indegree[static_cast<std::size_t>(chain[k + 1])];
    }
  }
  std::function<bool(int, int)> cmp = reverse_tie_break ? std::function<bool(int, int)>(std::less<int>{})
                                                        : std::function<bool(int, int)>(std::greater<int>{});
  std::priority_queue<int, std::vector<int>, std::function<bool(int, int)>> ready(cmp);
  for (std::size_t id = 0; id < nl; ++id)
    if (!lat.links[id].in_tree && indegree[id] == 0) ready.push(static_cast<int>(id));
  lat.link_of_number.push_back(-1);
  int next = 1;
  while (!ready.empty()) {
    const int id = ready.top();
    ready.pop();
    lat.links[static_cast<std::size_t>(id)].number = next++;
    lat.link_of_number.push_back(id);
    for (int s : succ[static_cast<std::size_t>(id)])
      if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push(s);
  }
  lat.n_offtree = next - 1;
  const auto offtree = std::count_if(lat.links.begin(), lat.links.end(), [](const Link& l) { return !l.in_tree; });
  if (lat.n_offtree != offtree) throw std::logic_error("cyclic numbering constraints");
  if (const auto err = finalize_plaquettes(lat); !err.empty()) throw std::logic_error(err);
  return lat;
}

PlaquetteClasses classify_plaquettes(const LatticeSpec& lattice) {
  PlaquetteClasses c;
  for (std::size_t i = 0; i < lattice.plaquettes.size(); ++i) {
    const int id = static_cast<int>(i);
    switch (lattice.plaquettes[i].offtree_count) {
      case 4: c.four.push_back(id); break;
      case 2: c.two.push_back(id); break;
      case 1: c.one.push_back(id); break;
      default: throw std::logic_error("unexpected plaquette class");
    }
  }
  return c;
}

bool numbering_consistent(const LatticeSpec& lattice) {
  LatticeSpec copy = lattice;
  return finalize_plaquettes(copy).empty();
}

LatticeSpec relabel_offtree(const LatticeSpec& lattice, const std::vector<int>& new_number) {
  const auto n = static_cast<std::size_t>(lattice.n_offtree);
  if (new_number.size() != n) throw std::invalid_argument("relabel: wrong number of labels");
  std::vector<int> sorted = new_number;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < n; ++k)
    if (sorted[k] != static_cast<int>(k + 1)) throw std::invalid_argument("relabel: not a permutation");
  LatticeSpec out = lattice;
  for (std::size_t old = 1; old <= n; ++old) {
    const int id = lattice.link_of_number[old];
    out.links[static_cast<std::size_t>(id)].number = new_number[old - 1];
    out.link_of_number[static_cast<std::size_t>(new_number[old - 1])] = id;
  }
  if (const auto err = finalize_plaquettes(out); !err.empty())
    throw std::invalid_argument("relabel: " + err);
  return out;
}

}  // namespace costrat
