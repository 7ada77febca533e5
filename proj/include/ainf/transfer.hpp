#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/complex.hpp"

#include <string>
#include <vector>

namespace ainf {

// Minimal model H of A with an infinity-quasi-isomorphism Φ : H -> A extending the inclusion of
// cocycle representatives.
template <class F>
struct Transfer {
  CohomologyRetract<F> retract;
  AlgebraPtr<F> minimal;
  InftyMorphism<F> phi;
};

// λ_n = sum_{k >= 2} Q_k (Φ_{n_1} ⊗ ... ⊗ Φ_{n_k}), Q_tran_n = π λ_n, Φ_n = -h λ_n, Φ_1 = ι.
// Needs a strict filtration; the side conditions h ι = π h = h h = 0 make the recursion exact.
template <class F>
Transfer<F> transfer(const AlgebraPtr<F>& a) {
  CohomologyRetract<F> r = cohomology_retract(a->tangent());
  if (!(r.h * r.iota).is_zero_matrix() || !(r.pi * r.h).is_zero_matrix() || !(r.h * r.h).is_zero_matrix())
    throw std::logic_error("contraction violates the side conditions");
  const Matrix<F> minus_h = Matrix<F>(a->dim(), a->dim()) - r.h;

  std::vector<MultiMap<F>> phi{MultiMap<F>::from_matrix(r.iota, 0)};
  std::vector<MultiMap<F>> ops{MultiMap<F>(1, 1)};
  for (int n = 2; n <= a->max_arity(); ++n) {
    MultiMap<F> lambda(n, 1);
    for (int k = 2; k <= n; ++k) {
      if (a->op(k).empty()) continue;
      for (const auto& parts : compositions(n, k)) {
        std::vector<const MultiMap<F>*> blocks;
        for (int p : parts) blocks.push_back(&phi[p - 1]);
        lambda += compose_blocks(a->op(k), blocks);
      }
    }
    ops.push_back(post_compose(r.pi, lambda));
    phi.push_back(post_compose(minus_h, lambda, -1));
  }
  auto h_alg = share(AInfinityAlgebra<F>(r.cohomology, std::move(ops)));
  InftyMorphism<F> map(h_alg, a, std::move(phi));
  if (!is_weak_equivalence(h_alg->tangent(), a->tangent(), map.tangent_map()))
    throw std::logic_error("transfer morphism is not a weak equivalence");
  return {std::move(r), std::move(h_alg), std::move(map)};
}

}  // namespace ainf
