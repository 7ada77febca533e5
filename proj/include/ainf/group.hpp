#pragma once

#include "ainf/space.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ainf {

// A finite group by its multiplication table on elements 0..order-1.
struct GroupTable {
  std::vector<std::vector<int>> mul;
  int identity = 0;

  std::size_t order() const { return mul.size(); }
  int product(int a, int b) const { return mul.at(a).at(b); }

  int inverse(int a) const {
    for (std::size_t b = 0; b < order(); ++b)
      if (mul[a][b] == identity) return static_cast<int>(b);
    throw InvariantError("element " + std::to_string(a) + " has no inverse");
  }

  int element_order(int a) const {
    int k = 1;
    for (int p = a; p != identity; p = mul[p][a]) {
      if (++k > static_cast<int>(order()) + 1) throw InvariantError("element has infinite order in a finite table");
    }
    return k;
  }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul[a][b] != mul[b][a]) return false;
    return true;
  }

  bool is_cyclic() const {
    for (std::size_t a = 0; a < order(); ++a)
      if (element_order(static_cast<int>(a)) == static_cast<int>(order())) return true;
    return order() == 0;
  }

  // Throws InvariantError naming the first failed axiom.
  void validate() const {
    const int n = static_cast<int>(order());
    if (identity < 0 || identity >= n) throw InvariantError("group identity out of range");
    for (const auto& row : mul) {
      if (static_cast<int>(row.size()) != n) throw InvariantError("group table is not square");
      std::set<int> seen(row.begin(), row.end());
      if (static_cast<int>(seen.size()) != n || *seen.begin() < 0 || *seen.rbegin() >= n)
        throw InvariantError("group table row is not a permutation");
    }
    for (int a = 0; a < n; ++a) {
      if (mul[identity][a] != a || mul[a][identity] != a) throw InvariantError("group identity is not two-sided");
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) throw InvariantError("group multiplication is not associative");
    }
  }
};

// Whether f : g -> h (as an index map) is a bijective homomorphism.
inline bool is_isomorphism(const GroupTable& g, const GroupTable& h, const std::vector<int>& f) {
  if (f.size() != g.order() || g.order() != h.order()) return false;
  if (std::set<int>(f.begin(), f.end()).size() != f.size()) return false;
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b)
      if (f[g.mul[a][b]] != h.mul[f[a]][f[b]]) return false;
  return true;
}

}  // namespace ainf
