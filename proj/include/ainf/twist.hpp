#pragma once

#include "ainf/ainfty.hpp"

#include <bit>
#include <vector>

namespace ainf {

namespace detail {

// Σ over interleavings of copies of a degree-0 element α into the inputs: the arity-n output
// collects every arity-m operation with m - n of its slots filled by α. No signs arise since |α| = 0.
template <class F>
std::vector<MultiMap<F>> interleave_constant(const std::vector<MultiMap<F>>& maps, const Vec<F>& alpha, int degree) {
  const int top = static_cast<int>(maps.size());
  std::vector<MultiMap<F>> out;
  for (int n = 1; n <= top; ++n) out.emplace_back(n, degree);
  for (int m = 1; m <= top; ++m) {
    const MultiMap<F>& q = maps[m - 1];
    if (q.empty()) continue;
    for (unsigned mask = 0; mask < (1U << m); ++mask) {
      const int n = m - std::popcount(mask);
      if (n < 1) continue;
      for (const auto& [w, val] : q.entries()) {
        F coef(1);
        Word rest;
        rest.reserve(n);
        for (int s = 0; s < m && !is_zero(coef); ++s) {
          if (mask & (1U << s)) coef *= alpha[w[s]];
          else rest.push_back(w[s]);
        }
        if (!is_zero(coef)) out[n - 1].add(rest, val, coef);
      }
    }
  }
  return out;
}

template <class F>
void require_mc(const AInfinityAlgebra<F>& a, const Vec<F>& alpha) {
  if (alpha.size() != a.dim()) throw std::invalid_argument("element has the wrong length");
  if (a.space().homogeneous_degree(alpha, 0) != 0) throw InvariantError("twisting element must have degree 0");
  if (!is_zero_vec(a.curvature(alpha))) throw InvariantError("twisting element is not Maurer-Cartan");
}

}  // namespace detail

// A^α: operations recentred at a Maurer-Cartan element α.
template <class F>
AInfinityAlgebra<F> twist_algebra(const AInfinityAlgebra<F>& a, const Vec<F>& alpha) {
  detail::require_mc(a, alpha);
  if (is_zero_vec(alpha)) return a;
  return AInfinityAlgebra<F>(a.space(), detail::interleave_constant(a.ops(), alpha, 1));
}

// Φ^α : A^α -> A'^{Φ_*(α)} between the supplied twisted algebras.
template <class F>
InftyMorphism<F> twist_morphism(const InftyMorphism<F>& phi, const Vec<F>& alpha, AlgebraPtr<F> twisted_source,
                                AlgebraPtr<F> twisted_target) {
  detail::require_mc(phi.source(), alpha);
  return InftyMorphism<F>(std::move(twisted_source), std::move(twisted_target),
                          detail::interleave_constant(phi.maps(), alpha, 0));
}

// Convenience overload building both twisted algebras.
template <class F>
InftyMorphism<F> twist_morphism(const InftyMorphism<F>& phi, const Vec<F>& alpha) {
  auto src = share(twist_algebra(phi.source(), alpha));
  auto tgt = share(twist_algebra(phi.target(), phi.pushforward(alpha)));
  return twist_morphism(phi, alpha, std::move(src), std::move(tgt));
}

}  // namespace ainf
