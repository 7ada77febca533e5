#pragma once

#include "ainf/multilinear.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ainf {

struct GradedName {
  std::string name;
  int degree = 0;
  friend bool operator==(const GradedName&, const GradedName&) = default;
};

namespace detail {

template <class F>
void check_homogeneous(const MultiMap<F>& m, const std::vector<int>& deg, const char* what) {
  for (const auto& [w, s] : m.entries()) {
    int in = 0;
    for (int i : w) {
      if (i < 0 || i >= static_cast<int>(deg.size())) throw InvariantError(std::string(what) + ": index out of range");
      in += deg[i];
    }
    for (const auto& [o, c] : s) {
      if (o < 0 || o >= static_cast<int>(deg.size())) throw InvariantError(std::string(what) + ": index out of range");
      if (deg[o] != in + m.degree()) throw InvariantError(std::string(what) + ": entry is not homogeneous");
    }
  }
}

// d^2, Leibniz d(ab) = (da)b + (-1)^{|a|} a(db), and associativity, on tables.
template <class F>
std::string dga_axiom_failure(const MultiMap<F>& d, const MultiMap<F>& mu, const std::vector<int>& deg) {
  if (!compose_at(d, 0, d, &deg).empty()) return "d^2 != 0";
  const auto leibniz = compose_at(d, 0, mu, &deg) - compose_at(mu, 0, d, &deg) - compose_at(mu, 1, d, &deg);
  if (!leibniz.empty()) return "Leibniz rule fails";
  const auto assoc = compose_at(mu, 0, mu, &deg) - compose_at(mu, 1, mu, &deg);
  if (!assoc.empty()) return "product is not associative";
  return {};
}

}  // namespace detail

// Finite-dimensional unital dg algebra with the discrete filtration (N*(Δ^n), Hochschild
// cochains, the ground field).
template <class F>
class UnitalDGA {
 public:
  UnitalDGA(std::vector<GradedName> basis, MultiMap<F> d, MultiMap<F> mu, Vec<F> unit)
      : basis_(std::move(basis)), d_(std::move(d)), mu_(std::move(mu)), unit_(std::move(unit)) {
    if (d_.arity() != 1 || d_.degree() != 1) throw InvariantError("differential must have arity 1 and degree 1");
    if (mu_.arity() != 2 || mu_.degree() != 0) throw InvariantError("product must have arity 2 and degree 0");
    if (unit_.size() != basis_.size()) throw InvariantError("unit has the wrong length");
    const auto deg = degrees();
    detail::check_homogeneous(d_, deg, "differential");
    detail::check_homogeneous(mu_, deg, "product");
    if (auto why = detail::dga_axiom_failure(d_, mu_, deg); !why.empty()) throw InvariantError(why);
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const Vec<F> e = unit_vector<F>(dim(), i);
      if (multiply(unit_, e) != e || multiply(e, unit_) != e) throw InvariantError("unit law fails");
    }
    if (!is_zero_vec(differential(unit_))) throw InvariantError("unit is not closed");
  }

  static UnitalDGA ground() {
    MultiMap<F> mu(2, 0);
    mu.add(Word{0, 0}, 0, F(1));
    return UnitalDGA({{"1", 0}}, MultiMap<F>(1, 1), std::move(mu), Vec<F>{F(1)});
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<GradedName>& basis() const { return basis_; }
  const std::string& name(int i) const { return basis_[i].name; }
  int degree(int i) const { return basis_[i].degree; }
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& b : basis_) out.push_back(b.degree);
    return out;
  }
  const MultiMap<F>& d() const { return d_; }
  const MultiMap<F>& mu() const { return mu_; }
  const Vec<F>& unit() const { return unit_; }
  bool is_ground() const { return dim() == 1 && basis_[0].degree == 0 && unit_[0] == F(1); }

  int index_of(const std::string& n) const {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].name == n) return static_cast<int>(i);
    throw std::out_of_range("unknown basis element '" + n + "'");
  }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const { return mu_.evaluate({&x, &y}, dim()); }
  Vec<F> differential(const Vec<F>& x) const { return d_.evaluate({&x}, dim()); }
  Matrix<F> differential_matrix() const { return d_.matrix(dim(), dim()); }

  // Nonzero products b_1...b_k of basis elements, keyed by the word (b_1, ..., b_k).
  std::map<Word, Sparse<F>> basis_chains(int k) const {
    std::map<Word, Sparse<F>> cur;
    if (k < 1) return cur;
    for (std::size_t i = 0; i < dim(); ++i) cur[Word{static_cast<int>(i)}] = Sparse<F>{{static_cast<int>(i), F(1)}};
    for (int len = 2; len <= k; ++len) {
      std::map<Word, Sparse<F>> next;
      for (const auto& [w, val] : cur)
        for (std::size_t b = 0; b < dim(); ++b) {
          Sparse<F> prod;
          for (const auto& [i, c] : val) {
            const Sparse<F>* p = mu_.find(Word{i, static_cast<int>(b)});
            if (!p) continue;
            for (const auto& [o, cc] : *p) sparse_add(prod, o, c * cc);
          }
          if (prod.empty()) continue;
          Word nw = w;
          nw.push_back(static_cast<int>(b));
          next.emplace(std::move(nw), std::move(prod));
        }
      cur = std::move(next);
    }
    return cur;
  }

 private:
  std::vector<GradedName> basis_;
  MultiMap<F> d_, mu_;
  Vec<F> unit_;
};

// Unital dg algebra morphism given by a matrix (target x source); axioms checked.
template <class F>
void check_dga_morphism(const UnitalDGA<F>& src, const UnitalDGA<F>& tgt, const Matrix<F>& f) {
  if (f.rows() != tgt.dim() || f.cols() != src.dim()) throw InvariantError("dga map has the wrong shape");
  for (std::size_t j = 0; j < src.dim(); ++j)
    for (std::size_t i = 0; i < tgt.dim(); ++i)
      if (!is_zero(f(i, j)) && tgt.degree(i) != src.degree(j)) throw InvariantError("dga map is not of degree 0");
  if (f.apply(src.unit()) != tgt.unit()) throw InvariantError("dga map is not unital");
  if (!(f * src.differential_matrix() == tgt.differential_matrix() * f)) throw InvariantError("dga map does not commute with d");
  // f(e_a e_b) = f(e_a) f(e_b) on basis pairs, through the sparse structure constants.
  std::vector<Sparse<F>> col(src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j)
    for (std::size_t i = 0; i < tgt.dim(); ++i)
      if (!is_zero(f(i, j))) col[j].emplace_back(static_cast<int>(i), f(i, j));
  for (std::size_t a = 0; a < src.dim(); ++a)
    for (std::size_t b = 0; b < src.dim(); ++b) {
      Sparse<F> lhs, rhs;
      if (const Sparse<F>* p = src.mu().find(Word{static_cast<int>(a), static_cast<int>(b)}))
        for (const auto& [k, c] : *p)
          for (const auto& [o, v] : col[k]) sparse_add(lhs, o, c * v);
      for (const auto& [i, x] : col[a])
        for (const auto& [j, y] : col[b])
          if (const Sparse<F>* p = tgt.mu().find(Word{i, j}))
            for (const auto& [o, v] : *p) sparse_add(rhs, o, x * y * v);
      if (lhs != rhs) throw InvariantError("dga map is not multiplicative");
    }
}

// Non-unital dg algebra with a complete nilpotent filtration: unshifted degrees, weights,
// d filtration-preserving and mu(F_a, F_b) in F_{a+b}.
template <class F>
class DGAlgebra {
 public:
  DGAlgebra(FilteredSpace space, MultiMap<F> d, MultiMap<F> mu)
      : space_(std::move(space)), d_(std::move(d)), mu_(std::move(mu)) {
    if (d_.arity() != 1 || d_.degree() != 1) throw InvariantError("differential must have arity 1 and degree 1");
    if (mu_.arity() != 2 || mu_.degree() != 0) throw InvariantError("product must have arity 2 and degree 0");
    const auto deg = space_.degree_vector();
    detail::check_homogeneous(d_, deg, "differential");
    detail::check_homogeneous(mu_, deg, "product");
    for (const auto& [w, s] : d_.entries())
      for (const auto& [o, c] : s)
        if (space_.weight(o) < space_.weight(w[0]))
          throw InvariantError("filtration: differential lowers the weight of '" + space_.name(w[0]) + "'");
    for (const auto& [w, s] : mu_.entries()) {
      const int in = space_.weight(w[0]) + space_.weight(w[1]);
      for (const auto& [o, c] : s)
        if (space_.weight(o) < in)
          throw InvariantError("filtration: product " + describe_word<F>(space_, w) + " lands below weight " +
                               std::to_string(in));
    }
    if (auto why = detail::dga_axiom_failure(d_, mu_, deg); !why.empty()) throw InvariantError(why);
  }

  const FilteredSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  const MultiMap<F>& d() const { return d_; }
  const MultiMap<F>& mu() const { return mu_; }

  Vec<F> multiply(const Vec<F>& x, const Vec<F>& y) const { return mu_.evaluate({&x, &y}, dim()); }
  Vec<F> differential(const Vec<F>& x) const { return d_.evaluate({&x}, dim()); }
  Matrix<F> differential_matrix() const { return d_.matrix(dim(), dim()); }
  FilteredComplex<F> complex() const { return FilteredComplex<F>(space_, differential_matrix()); }

 private:
  FilteredSpace space_;
  MultiMap<F> d_, mu_;
};


namespace detail {

// Tables of B ⊗ C with d = d⊗1 + (-1)^{|b|} 1⊗d and (b⊗c)(b'⊗c') = (-1)^{|c||b'|} bb'⊗cc'.
template <class F>
std::pair<MultiMap<F>, MultiMap<F>> tensor_tables(const MultiMap<F>& d1, const MultiMap<F>& mu1, const std::vector<int>& deg1,
                                                  const MultiMap<F>& d2, const MultiMap<F>& mu2, const std::vector<int>& deg2) {
  const int n2 = static_cast<int>(deg2.size());
  const int n1 = static_cast<int>(deg1.size());
  auto idx = [n2](int a, int b) { return a * n2 + b; };
  MultiMap<F> d(1, 1), mu(2, 0);
  for (const auto& [w, s] : d1.entries())
    for (int c = 0; c < n2; ++c)
      for (const auto& [o, k] : s) d.add(Word{idx(w[0], c)}, idx(o, c), k);
  for (int b = 0; b < n1; ++b)
    for (const auto& [w, s] : d2.entries())
      for (const auto& [o, k] : s) d.add(Word{idx(b, w[0])}, idx(b, o), sign<F>(deg1[b]) * k);
  for (const auto& [w1, s1] : mu1.entries())
    for (const auto& [w2, s2] : mu2.entries()) {
      const F sg = sign<F>(deg2[w2[0]] * deg1[w1[1]]);
      for (const auto& [o1, k1] : s1)
        for (const auto& [o2, k2] : s2) mu.add(Word{idx(w1[0], w2[0]), idx(w1[1], w2[1])}, idx(o1, o2), sg * k1 * k2);
    }
  return {std::move(d), std::move(mu)};
}

}  // namespace detail

// Graded tensor product of unital dg algebras; basis (b, c) at index b * dim C + c.
template <class F>
UnitalDGA<F> tensor_dga(const UnitalDGA<F>& b, const UnitalDGA<F>& c) {
  std::vector<GradedName> basis;
  for (const auto& x : b.basis())
    for (const auto& y : c.basis()) basis.push_back({x.name + "⊗" + y.name, x.degree + y.degree});
  auto [d, mu] = detail::tensor_tables(b.d(), b.mu(), b.degrees(), c.d(), c.mu(), c.degrees());
  Vec<F> unit(b.dim() * c.dim(), F(0));
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < c.dim(); ++j) unit[i * c.dim() + j] = b.unit()[i] * c.unit()[j];
  return UnitalDGA<F>(std::move(basis), std::move(d), std::move(mu), std::move(unit));
}

// C ⊗ B for a filtered dg algebra C and a unital dg algebra B; weights come from C.
template <class F>
DGAlgebra<F> tensor_dga(const DGAlgebra<F>& c, const UnitalDGA<F>& b) {
  std::vector<BasisVector> basis;
  for (const auto& x : c.space().basis())
    for (const auto& y : b.basis()) basis.push_back({x.name + "⊗" + y.name, x.degree + y.degree, x.weight});
  auto [d, mu] = detail::tensor_tables(c.d(), c.mu(), c.space().degree_vector(), b.d(), b.mu(), b.degrees());
  return DGAlgebra<F>(FilteredSpace(std::move(basis), c.space().nilpotency()), std::move(d), std::move(mu));
}

// C × C' with componentwise operations.
template <class F>
DGAlgebra<F> dga_product(const DGAlgebra<F>& a, const DGAlgebra<F>& b) {
  const int off = static_cast<int>(a.dim());
  MultiMap<F> d = a.d(), mu = a.mu();
  auto shift = [off](const MultiMap<F>& m, MultiMap<F>& into) {
    for (const auto& [w, s] : m.entries()) {
      Word nw = w;
      for (int& i : nw) i += off;
      for (const auto& [o, c] : s) into.add(nw, o + off, c);
    }
  };
  shift(b.d(), d);
  shift(b.mu(), mu);
  FilteredSpace s = direct_sum(a.space().with_nilpotency(std::max(a.space().nilpotency(), b.space().nilpotency())), b.space());
  return DGAlgebra<F>(std::move(s), std::move(d), std::move(mu));
}

}  // namespace ainf
