#pragma once

// Finite cubic lattices with open boundary, the standard maximal tree and a
// numbering/orientation of the off-tree links such that every plaquette with
// four off-tree links is numbered increasingly along its boundary.

#include <array>
#include <vector>

namespace costrat {

struct Link {
  std::array<int, 3> site;  // lower endpoint
  int axis = 0;
  bool in_tree = false;
  int orientation = 1;  // +1 along the axis, -1 against it
  int number = 0;       // 1..N for off-tree links, 0 for tree links
};

struct Plaquette {
  std::array<int, 3> corner;
  std::array<int, 2> plane;     // the two axes, ascending
  std::array<int, 4> links;     // link ids in counter-clockwise boundary order
  std::array<int, 4> traversal; // +1 when the boundary runs along the link orientation
  int offtree_count = 0;
  /// Off-tree numbers in the order they enter the trace of the holonomy:
  /// r (class 1), sorted (r, s) (class 2), cyclically increasing (r, s, t, u)
  /// (class 4).
  std::vector<int> offtree;
};

struct LatticeSpec {
  std::vector<int> dims;  // extents as given (2 or 3 entries)
  std::vector<Link> links;
  std::vector<Plaquette> plaquettes;
  int n_offtree = 0;
  /// Link id of each off-tree number (index 0 is unused).
  std::vector<int> link_of_number;

  int site_count() const;
};

/// Builds the lattice with the standard tree rooted at the origin: the axis-0
/// line through the origin, all axis-1 lines in the z = 0 plane and all axis-2
/// lines. Each extent must be at least 2 and there must be 2 or 3 of them.
/// `reverse_tie_break` picks the largest admissible link first when numbering,
/// which yields a second consistent numbering. Throws std::invalid_argument.
LatticeSpec build_lattice(const std::vector<int>& dims, bool reverse_tie_break = false);

struct PlaquetteClasses {
  std::vector<int> four;  // plaquette ids with no tree link
  std::vector<int> two;   // two tree links
  std::vector<int> one;   // three tree links
};

PlaquetteClasses classify_plaquettes(const LatticeSpec& lattice);

/// True when every plaquette with four off-tree links is traversed along all
/// its link orientations in one of its two directions and numbered
/// increasingly (cyclically) in that direction.
bool numbering_consistent(const LatticeSpec& lattice);

/// Applies new numbers (new_number[old - 1]) to the off-tree links and
/// recomputes the plaquette data. Throws std::invalid_argument when the result
/// is not a consistent numbering.
LatticeSpec relabel_offtree(const LatticeSpec& lattice, const std::vector<int>& new_number);

}  // namespace costrat
