#pragma once

#include "ainf/ainfty.hpp"

#include <memory>
#include <vector>

namespace ainf {

namespace detail {

// Re-index a table on the summand at `offset` of a direct sum.
template <class F>
MultiMap<F> shift_table(const MultiMap<F>& m, int in_offset, int out_offset) {
  MultiMap<F> out(m.arity(), m.degree());
  for (const auto& [w, s] : m.entries()) {
    Word nw = w;
    for (int& i : nw) i += in_offset;
    Sparse<F> ns;
    for (const auto& [o, c] : s) ns.emplace_back(o + out_offset, c);
    out.add(nw, ns, F(1));
  }
  return out;
}

}  // namespace detail

// Raise the nilpotency length so that algebras of different N can be compared.
template <class F>
AlgebraPtr<F> raised(const AlgebraPtr<F>& a, int n) {
  if (a->nilpotency() == n) return a;
  return share(a->with_nilpotency(n));
}

// A × A' with projections and inclusions; both factors are raised to the common N.
template <class F>
struct Product {
  AlgebraPtr<F> left, right, algebra;
  InftyMorphism<F> pr_left, pr_right, in_left, in_right;
};

template <class F>
Product<F> product(const AlgebraPtr<F>& a0, const AlgebraPtr<F>& b0) {
  if (a0->characteristic() != b0->characteristic()) throw InvariantError("product of algebras over different fields");
  const int n = std::max(a0->nilpotency(), b0->nilpotency());
  AlgebraPtr<F> a = raised(a0, n), b = raised(b0, n);
  const int off = static_cast<int>(a->dim());
  std::vector<MultiMap<F>> ops;
  for (int k = 1; k < n; ++k) ops.push_back(a->op(k) + detail::shift_table(b->op(k), off, off));
  auto prod = share(AInfinityAlgebra<F>(direct_sum(a->space(), b->space()), std::move(ops)));

  const std::size_t da = a->dim(), db = b->dim();
  Matrix<F> pa(da, da + db), pb(db, da + db), ia(da + db, da), ib(da + db, db);
  for (std::size_t i = 0; i < da; ++i) pa(i, i) = ia(i, i) = F(1);
  for (std::size_t i = 0; i < db; ++i) pb(i, da + i) = ib(da + i, i) = F(1);
  return {a,
          b,
          prod,
          InftyMorphism<F>::strict(prod, a, pa),
          InftyMorphism<F>::strict(prod, b, pb),
          InftyMorphism<F>::strict(a, prod, ia),
          InftyMorphism<F>::strict(b, prod, ib)};
}

// ⟨Φ, Ψ⟩ : C -> A × A' into a product built by product().
template <class F>
InftyMorphism<F> pairing(const InftyMorphism<F>& phi, const InftyMorphism<F>& psi, const Product<F>& p) {
  if (!(phi.source() == psi.source())) throw InvariantError("pairing of morphisms with different sources");
  if (!(phi.target() == *p.left) || !(psi.target() == *p.right)) throw InvariantError("pairing targets do not match the product");
  const int off = static_cast<int>(p.left->dim());
  std::vector<MultiMap<F>> maps;
  for (int k = 1; k <= phi.max_arity(); ++k) maps.push_back(phi.map(k) + detail::shift_table(psi.map(k), 0, off));
  return InftyMorphism<F>(phi.source_ptr(), p.algebra, std::move(maps));
}

// Φ_1 × Φ_2 : A × B -> A' × B'.
template <class F>
InftyMorphism<F> product_map(const InftyMorphism<F>& f, const InftyMorphism<F>& g, const Product<F>& src,
                             const Product<F>& tgt) {
  if (!(f.source() == *src.left) || !(g.source() == *src.right) || !(f.target() == *tgt.left) ||
      !(g.target() == *tgt.right))
    throw InvariantError("product map factors do not match the products");
  const int in_off = static_cast<int>(src.left->dim());
  const int out_off = static_cast<int>(tgt.left->dim());
  std::vector<MultiMap<F>> maps;
  for (int k = 1; k <= f.max_arity(); ++k) maps.push_back(f.map(k) + detail::shift_table(g.map(k), in_off, out_off));
  return InftyMorphism<F>(src.algebra, tgt.algebra, std::move(maps));
}

}  // namespace ainf
