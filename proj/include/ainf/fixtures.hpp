#pragma once

#include "ainf/ainfty.hpp"

namespace ainf::fixtures {

// t·F[t]/(t^3) with t in unshifted degree `deg` (weights 1, 2; N = 3), d = 0.
template <class F = Zp>
DGAlgebra<F> truncated_polynomial(int deg) {
  FilteredSpace s({{"t", deg, 1}, {"t2", 2 * deg, 2}}, 3);
  MultiMap<F> mu(2, 0);
  mu.add({0, 0}, 1, F(1));
  return DGAlgebra<F>(s, MultiMap<F>(1, 1), mu);
}

// Abelian u -> v in shifted degrees (deg, deg + 1), both of weight w; d = 0 when !linked.
template <class F = Zp>
AInfinityAlgebra<F> abelian_pair(int deg, int w, int n, bool linked = true) {
  FilteredSpace s({{"u", deg, w}, {"v", deg + 1, w}}, n);
  MultiMap<F> d(1, 1);
  if (linked) d.add({0}, 1, F(1));
  return AInfinityAlgebra<F>(s, {d});
}

// Abelian algebra on a single closed vector of the given shifted degree and weight.
template <class F = Zp>
AInfinityAlgebra<F> line(int deg, int w = 1, int n = 2) {
  return AInfinityAlgebra<F>(FilteredSpace({{"z", deg, w}}, n), {});
}

}  // namespace ainf::fixtures
