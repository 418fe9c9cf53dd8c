#include "polyva/indexing.hpp"

#include <algorithm>
#include <stdexcept>

namespace polyva {

bool grevlex_less(const MultiIndex& a, const MultiIndex& b) {
  const int da = total_degree(a);
  const int db = total_degree(b);
  if (da != db) return da < db;
  for (int r = static_cast<int>(a.size()) - 1; r >= 0; --r) {
    const int diff = a[static_cast<size_t>(r)] - b[static_cast<size_t>(r)];
    if (diff != 0) return diff > 0;
  }
  return false;
}

bool lex_less(const MultiIndex& a, const MultiIndex& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void enumerate_total_degree(int d, int n, MultiIndex& partial,
                            std::vector<MultiIndex>& out) {
  if (static_cast<int>(partial.size()) == d - 1) {
    int used = total_degree(partial);
    for (int a = 0; a <= n - used; ++a) {
      MultiIndex alpha = partial;
      alpha.push_back(a);
      out.push_back(std::move(alpha));
    }
    return;
  }
  int used = total_degree(partial);
  for (int a = 0; a <= n - used; ++a) {
    partial.push_back(a);
    enumerate_total_degree(d, n, partial, out);
    partial.pop_back();
  }
}

}  // namespace

MultiIndexSet total_degree_indices(int d, int n) {
  if (d < 1) throw std::invalid_argument("total_degree_indices: d must be >= 1");
  if (n < 0) throw std::invalid_argument("total_degree_indices: n must be >= 0");
  MultiIndexSet set;
  set.dimension = d;
  set.kind = SpaceKind::TotalDegree;
  set.degree = n;
  MultiIndex partial;
  enumerate_total_degree(d, n, partial, set.indices);
  std::sort(set.indices.begin(), set.indices.end(), grevlex_less);
  return set;
}

MultiIndexSet max_degree_indices(int d, int n) {
  if (d < 1) throw std::invalid_argument("max_degree_indices: d must be >= 1");
  if (n < 0) throw std::invalid_argument("max_degree_indices: n must be >= 0");
  MultiIndexSet set;
  set.dimension = d;
  set.kind = SpaceKind::MaxDegree;
  set.degree = n;
  MultiIndex alpha(static_cast<size_t>(d), 0);
  // Odometer enumeration emits lexicographic order directly.
  while (true) {
    set.indices.push_back(alpha);
    int r = d - 1;
    while (r >= 0 && alpha[static_cast<size_t>(r)] == n) {
      alpha[static_cast<size_t>(r)] = 0;
      --r;
    }
    if (r < 0) break;
    ++alpha[static_cast<size_t>(r)];
  }
  return set;
}

ParentColumn parent_column(const MultiIndexSet& set, Index target) {
  if (target < 1 || target >= set.size())
    throw std::invalid_argument("parent_column: target out of range");
  const MultiIndex& alpha = set.indices[static_cast<size_t>(target)];
  for (Index k = 0; k < target; ++k) {
    const MultiIndex& beta = set.indices[static_cast<size_t>(k)];
    int r = -1;
    bool ok = true;
    for (size_t j = 0; j < alpha.size(); ++j) {
      const int diff = alpha[j] - beta[j];
      if (diff == 0) continue;
      if (diff == 1 && r < 0) {
        r = static_cast<int>(j);
      } else {
        ok = false;
        break;
      }
    }
    if (ok && r >= 0) return {k, r};
  }
  throw std::invalid_argument("parent_column: no predecessor for index " +
                              to_string(alpha) + " (malformed index set)");
}

std::string to_string(const MultiIndex& alpha) {
  std::string s = "(";
  for (size_t j = 0; j < alpha.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(alpha[j]);
  }
  s += ")";
  return s;
}

}  // namespace polyva
