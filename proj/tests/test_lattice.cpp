#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "costrat/lattice.hpp"

using namespace costrat;

namespace {

const std::vector<std::vector<int>> kShapes{{2, 2}, {3, 2}, {2, 3}, {3, 3}, {4, 3}, {5, 5},
                                            {2, 2, 2}, {3, 2, 2}, {3, 3, 3}, {4, 3, 2}};

// Union-find over sites to check that the tree links form a spanning tree.
struct Components {
  std::vector<int> parent;
  explicit Components(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

int site_id(const LatticeSpec& lat, std::array<int, 3> s) {
  const int ny = lat.dims[1];
  return s[0] + lat.dims[0] * (s[1] + ny * s[2]);
}

}  // namespace

TEST(Lattice, SinglePlaquette) {
  const auto lat = build_lattice({2, 2});
  EXPECT_EQ(lat.links.size(), 4u);
  EXPECT_EQ(lat.n_offtree, 1);
  ASSERT_EQ(lat.plaquettes.size(), 1u);
  const auto c = classify_plaquettes(lat);
  EXPECT_EQ(c.one.size(), 1u);
  EXPECT_TRUE(c.two.empty());
  EXPECT_TRUE(c.four.empty());
  EXPECT_EQ(lat.plaquettes[0].offtree, std::vector<int>{1});
}

TEST(Lattice, Strips) {
  // Three sites along the tree line: both plaquettes keep three tree links.
  const auto a = classify_plaquettes(build_lattice({3, 2}));
  EXPECT_EQ(build_lattice({3, 2}).n_offtree, 2);
  EXPECT_EQ(a.one.size(), 2u);
  // Three sites across it: one plaquette has two off-tree links.
  const auto b = classify_plaquettes(build_lattice({2, 3}));
  EXPECT_EQ(build_lattice({2, 3}).n_offtree, 2);
  EXPECT_EQ(b.one.size(), 1u);
  EXPECT_EQ(b.two.size(), 1u);
}

TEST(Lattice, SpanningTreeAndCounts) {
  for (const auto& dims : kShapes) {
    const auto lat = build_lattice(dims);
    const int sites = lat.site_count();
    EXPECT_EQ(lat.n_offtree, static_cast<int>(lat.links.size()) - sites + 1);
    Components comp(sites);
    int tree = 0;
    for (const auto& l : lat.links) {
      if (!l.in_tree) continue;
      ++tree;
      auto t = l.site;
      t[static_cast<std::size_t>(l.axis)] += 1;
      EXPECT_TRUE(comp.unite(site_id(lat, l.site), site_id(lat, t))) << "cycle in tree";
    }
    EXPECT_EQ(tree, sites - 1);
    // Numbers 1..N each used once and consistent with link_of_number.
    std::set<int> numbers;
    for (std::size_t id = 0; id < lat.links.size(); ++id) {
      const auto& l = lat.links[id];
      if (l.in_tree) {
        EXPECT_EQ(l.number, 0);
        continue;
      }
      numbers.insert(l.number);
      EXPECT_EQ(lat.link_of_number[static_cast<std::size_t>(l.number)], static_cast<int>(id));
    }
    EXPECT_EQ(numbers.size(), static_cast<std::size_t>(lat.n_offtree));
    EXPECT_EQ(*numbers.rbegin(), lat.n_offtree);
  }
}

TEST(Lattice, ClassesMatchTreeIntersection) {
  for (const auto& dims : kShapes) {
    const auto lat = build_lattice(dims);
    const auto c = classify_plaquettes(lat);
    EXPECT_EQ(c.one.size() + c.two.size() + c.four.size(), lat.plaquettes.size());
    for (const auto& p : lat.plaquettes) {
      int in_tree = 0;
      for (int id : p.links) in_tree += lat.links[static_cast<std::size_t>(id)].in_tree;
      EXPECT_EQ(p.offtree_count, 4 - in_tree);
      EXPECT_NE(p.offtree_count, 3);
      EXPECT_EQ(p.offtree.size(), static_cast<std::size_t>(p.offtree_count));
    }
  }
  // The comb tree leaves every 2D plaquette with a tree link; 3D cubes do not.
  EXPECT_TRUE(classify_plaquettes(build_lattice({5, 5})).four.empty());
  EXPECT_EQ(classify_plaquettes(build_lattice({2, 2, 2})).four.size(), 1u);
  EXPECT_EQ(classify_plaquettes(build_lattice({3, 3, 3})).four.size(), 8u);
}

TEST(Lattice, FullyOffTreePlaquettesAreOrientedAndNumbered) {
  for (const auto& dims : kShapes)
    for (bool reverse : {false, true}) {
      const auto lat = build_lattice(dims, reverse);
      EXPECT_TRUE(numbering_consistent(lat));
      for (const auto& p : lat.plaquettes) {
        if (p.offtree_count != 4) continue;
        const bool fwd = std::all_of(p.traversal.begin(), p.traversal.end(), [](int t) { return t == 1; });
        const bool bwd = std::all_of(p.traversal.begin(), p.traversal.end(), [](int t) { return t == -1; });
        EXPECT_TRUE(fwd || bwd);
        EXPECT_TRUE(std::is_sorted(p.offtree.begin(), p.offtree.end()));
      }
    }
}

TEST(Lattice, ReverseTieBreakGivesAnotherNumbering) {
  const auto a = build_lattice({4, 3});
  const auto b = build_lattice({4, 3}, true);
  bool differs = false;
  for (std::size_t id = 0; id < a.links.size(); ++id) differs |= a.links[id].number != b.links[id].number;
  EXPECT_TRUE(differs);
}

TEST(Lattice, Relabel) {
  const auto lat = build_lattice({2, 2, 2});
  std::vector<int> identity(static_cast<std::size_t>(lat.n_offtree));
  std::iota(identity.begin(), identity.end(), 1);
  const auto same = relabel_offtree(lat, identity);
  for (std::size_t id = 0; id < lat.links.size(); ++id) EXPECT_EQ(same.links[id].number, lat.links[id].number);
  // Reversing all numbers breaks the increasing order on the 4-link plaquette.
  std::vector<int> reversed(identity.rbegin(), identity.rend());
  EXPECT_THROW(relabel_offtree(lat, reversed), std::invalid_argument);
  EXPECT_THROW(relabel_offtree(lat, {1}), std::invalid_argument);
}

TEST(Lattice, RejectsDegenerateShapes) {
  EXPECT_THROW(build_lattice({2}), std::invalid_argument);
  EXPECT_THROW(build_lattice({1, 3}), std::invalid_argument);
  EXPECT_THROW(build_lattice({2, 2, 2, 2}), std::invalid_argument);
}
