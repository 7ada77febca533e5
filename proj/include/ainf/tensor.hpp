#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/cochains.hpp"

#include <memory>
#include <string>
#include <vector>

namespace ainf {

// Coordinates in A ⊗ B are indexed a * dim(B) + b.
inline int tensor_index(int a, int b, std::size_t dim_b) { return a * static_cast<int>(dim_b) + b; }

template <class F>
Vec<F> tensor_vector(const Vec<F>& a, const Vec<F>& b) {
  Vec<F> out(a.size() * b.size(), F(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

// Component of x ∈ A ⊗ B along the basis element b of B, as a vector of A.
template <class F>
Vec<F> tensor_component(const Vec<F>& x, std::size_t dim_a, std::size_t dim_b, int b) {
  Vec<F> out(dim_a, F(0));
  for (std::size_t i = 0; i < dim_a; ++i) out[i] = x[i * dim_b + b];
  return out;
}

// id_A ⊗ f for a matrix f : B -> B'.
template <class F>
Matrix<F> tensor_identity(std::size_t dim_a, const Matrix<F>& f) {
  Matrix<F> m(dim_a * f.rows(), dim_a * f.cols());
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t j = 0; j < f.cols(); ++j)
      for (std::size_t i = 0; i < f.rows(); ++i)
        if (!is_zero(f(i, j))) m(a * f.rows() + i, a * f.cols() + j) = f(i, j);
  return m;
}

namespace detail {

template <class F>
FilteredSpace tensor_space(const FilteredSpace& a, const UnitalDGA<F>& b) {
  std::vector<BasisVector> basis;
  basis.reserve(a.dim() * b.dim());
  for (const auto& x : a.basis())
    for (const auto& y : b.basis()) basis.push_back({x.name + "⊗" + y.name, x.degree + y.degree, x.weight});
  return FilteredSpace(std::move(basis), a.nilpotency());
}

// Σ_{i<j} |b_i||x_j| for the Koszul sign of (x_1⊗b_1, ..., x_k⊗b_k) -> (x_1...x_k) ⊗ (b_1...b_k).
inline int shuffle_sign_exponent(const FilteredSpace& a, const Word& xs, const std::vector<int>& bdeg, const Word& bs) {
  int e = 0, seen_b = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    e += seen_b * a.degree(xs[j]);
    seen_b += bdeg[bs[j]];
  }
  return e;
}

// Tensor a family of multilinear maps on A with the iterated product of B.
template <class F>
MultiMap<F> tensor_table(const MultiMap<F>& q, const FilteredSpace& a, const UnitalDGA<F>& b,
                         const std::map<Word, Sparse<F>>& chains) {
  const std::size_t nb = b.dim();
  const auto bdeg = b.degrees();
  MultiMap<F> out(q.arity(), q.degree());
  for (const auto& [xs, val] : q.entries())
    for (const auto& [bs, prod] : chains) {
      Word in(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) in[i] = tensor_index(xs[i], bs[i], nb);
      const F s = sign<F>(shuffle_sign_exponent(a, xs, bdeg, bs));
      for (const auto& [o, c] : val)
        for (const auto& [ob, cb] : prod) out.add(in, tensor_index(o, ob, nb), s * c * cb);
    }
  return out;
}

}  // namespace detail

// A ⊗ B for a finite-dimensional unital dg algebra B with the discrete filtration.
// Returns A itself when B is the ground field.
template <class F>
AInfinityAlgebra<F> tensor_with_dga(const AInfinityAlgebra<F>& a, const UnitalDGA<F>& b,
                                    Validation v = Validation::full) {
  if (b.is_ground()) return a;
  const FilteredSpace s = detail::tensor_space(a.space(), b);
  const std::size_t nb = b.dim();
  std::vector<MultiMap<F>> ops;
  for (int k = 1; k <= a.max_arity(); ++k) {
    MultiMap<F> q = a.op(k).empty() ? MultiMap<F>(k, 1) : detail::tensor_table(a.op(k), a.space(), b, b.basis_chains(k));
    if (k == 1) {
      // id ⊗ δ with the sign (-1)^{|x|} from passing δ over x.
      for (std::size_t x = 0; x < a.dim(); ++x)
        for (const auto& [w, val] : b.d().entries())
          for (const auto& [o, c] : val)
            q.add(Word{tensor_index(static_cast<int>(x), w[0], nb)}, tensor_index(static_cast<int>(x), o, nb),
                  sign<F>(a.space().degree(static_cast<int>(x))) * c);
    }
    ops.push_back(std::move(q));
  }
  return AInfinityAlgebra<F>(s, std::move(ops), v);
}

// Φ ⊗ B : A ⊗ B -> A' ⊗ B between the given tensor algebras.
template <class F>
InftyMorphism<F> tensor_morphism(const InftyMorphism<F>& phi, const UnitalDGA<F>& b, AlgebraPtr<F> source,
                                 AlgebraPtr<F> target, Validation v = Validation::full) {
  if (b.is_ground()) return InftyMorphism<F>(std::move(source), std::move(target), phi.maps(), v);
  std::vector<MultiMap<F>> maps;
  for (int k = 1; k <= phi.max_arity(); ++k)
    maps.push_back(phi.map(k).empty() ? MultiMap<F>(k, 0)
                                      : detail::tensor_table(phi.map(k), phi.source().space(), b, b.basis_chains(k)));
  return InftyMorphism<F>(std::move(source), std::move(target), std::move(maps), v);
}

// Strict morphism id_A ⊗ f : A ⊗ B -> A ⊗ B' for a dg algebra map f.
template <class F>
InftyMorphism<F> tensor_dga_map(AlgebraPtr<F> source, AlgebraPtr<F> target, std::size_t dim_a, const Matrix<F>& f,
                                Validation v = Validation::full) {
  return InftyMorphism<F>::strict(std::move(source), std::move(target), tensor_identity(dim_a, f), v);
}

// A ⊗ N*(Δ^n), shared per simplicial degree.
template <class F>
class SimplicialTensor {
 public:
  explicit SimplicialTensor(AlgebraPtr<F> a, Validation v = Validation::structural) : base_(std::move(a)), validation_(v) {}

  const AlgebraPtr<F>& base() const { return base_; }
  const AlgebraPtr<F>& at(int n) const {
    if (n < 0) throw std::out_of_range("negative simplicial degree");
    while (static_cast<int>(levels_.size()) <= n) {
      const int m = static_cast<int>(levels_.size());
      levels_.push_back(share(tensor_with_dga(*base_, cochains<F>(m)->algebra(), validation_)));
    }
    return levels_[n];
  }

 private:
  AlgebraPtr<F> base_;
  Validation validation_;
  mutable std::vector<AlgebraPtr<F>> levels_;
};

}  // namespace ainf
