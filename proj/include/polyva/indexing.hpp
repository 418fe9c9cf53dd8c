#pragma once

#include <string>
#include <vector>

#include "polyva/common.hpp"

namespace polyva {

using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

enum class SpaceKind { TotalDegree, MaxDegree };

// Ordered list of exponent vectors. The ordering doubles as the Arnoldi
// column schedule: every index after the first must be reachable from an
// earlier one by incrementing a single coordinate.
struct MultiIndexSet {
  int dimension = 1;
  SpaceKind kind = SpaceKind::TotalDegree;
  int degree = 0;
  std::vector<MultiIndex> indices;

  Index size() const { return static_cast<Index>(indices.size()); }
};

// Ascending grevlex: total degree first, ties broken so that the last
// nonzero entry of alpha - beta is positive when alpha precedes beta.
bool grevlex_less(const MultiIndex& a, const MultiIndex& b);

// Ascending lexicographic on exponents of x1, then x2, ...
bool lex_less(const MultiIndex& a, const MultiIndex& b);

// All |alpha| <= n in ascending grevlex; size C(n+d, d).
MultiIndexSet total_degree_indices(int d, int n);

// All max_r alpha_r <= n in ascending lexicographic order; size (n+1)^d.
MultiIndexSet max_degree_indices(int d, int n);

struct ParentColumn {
  Index k;        // earlier column position (0-based)
  int coordinate; // r with indices[k] + e_r == indices[target] (0-based)
};

// Smallest k < target with indices[k] + e_r = indices[target]. Throws
// std::invalid_argument if the set is malformed (reachability violated).
ParentColumn parent_column(const MultiIndexSet& set, Index target);

std::string to_string(const MultiIndex& alpha);

}  // namespace polyva
