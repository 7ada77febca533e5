#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/maurer_cartan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

namespace ainf {

namespace detail {

inline void require_characteristic_zero(std::uint32_t p, const char* what) {
  if (p != 0) throw InvariantError(std::string(what) + " requires characteristic 0");
}

// Koszul sign of reading the letters of w in the order perm.
inline bool koszul_odd(const std::vector<int>& degrees, const Word& w, const std::vector<int>& perm) {
  int parity = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) parity ^= (degrees[w[perm[i]]] & degrees[w[perm[j]]] & 1);
  return parity != 0;
}

template <class F>
F factorial(int m) {
  F out(1);
  for (int i = 2; i <= m; ++i) out *= F(i);
  return out;
}

}  // namespace detail

// Complete shifted L∞ algebra: graded-symmetric degree +1 maps l_k, k = 1..N-1, tabulated on
// ordered admissible words.
template <class F>
class ShiftedLInfty {
 public:
  ShiftedLInfty(FilteredSpace space, std::vector<MultiMap<F>> ops, Validation v = Validation::full)
      : space_(std::move(space)), ops_(detail::normalize_ops(std::move(ops), space_.nilpotency() - 1, 1, "L-infinity structure")) {
    detail::require_characteristic_zero(FieldTraits<F>::characteristic(), "a shifted L-infinity algebra");
    for (const auto& op : ops_) detail::check_table(op, space_, space_, 1, "l_" + std::to_string(op.arity()));
    if (v == Validation::full) {
      if (const Verdict s = symmetry_verdict(); !s) throw InvariantError("graded symmetry fails: " + s.detail);
      if (const Verdict j = jacobi_verdict(); !j) throw InvariantError("generalized Jacobi identity fails: " + j.detail);
    }
  }

  const FilteredSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int max_arity() const { return space_.nilpotency() - 1; }
  const MultiMap<F>& op(int k) const {
    if (k < 1 || k > max_arity()) throw std::out_of_range("operation arity out of range");
    return ops_[k - 1];
  }

  // l(..., x, y, ...) = (-1)^{|x||y|} l(..., y, x, ...) on every tabulated word.
  Verdict symmetry_verdict() const {
    const auto deg = space_.degree_vector();
    for (const auto& op : ops_)
      for (const Word& w : admissible_words(space_, op.arity()))
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
          Word sw = w;
          std::swap(sw[i], sw[i + 1]);
          const Vec<F> a = eval(op, w), b = eval(op, sw);
          const bool odd = (deg[w[i]] & deg[w[i + 1]] & 1) != 0;
          if (!(a == (odd ? Vec<F>(dim(), F(0)) - b : b))) return Verdict::fail(describe_word<F>(space_, w));
        }
    return Verdict::pass();
  }

  // sum over i + j = n + 1 and (i, n-i) unshuffles of ε l_j(l_i(x_S), x_{S^c}) = 0.
  Vec<F> jacobi_defect(const Word& w) const {
    const int n = static_cast<int>(w.size());
    const auto deg = space_.degree_vector();
    Vec<F> out(dim(), F(0));
    for (int i = 1; i <= n && i <= max_arity(); ++i) {
      const int j = n - i + 1;
      if (j > max_arity()) continue;
      std::vector<bool> pick(n, false);
      std::fill(pick.begin(), pick.begin() + i, true);
      do {
        std::vector<int> perm;
        for (int p = 0; p < n; ++p)
          if (pick[p]) perm.push_back(p);
        for (int p = 0; p < n; ++p)
          if (!pick[p]) perm.push_back(p);
        Word inner, rest;
        for (int p = 0; p < i; ++p) inner.push_back(w[perm[p]]);
        for (int p = i; p < n; ++p) rest.push_back(w[perm[p]]);
        const Sparse<F>* v = op(i).find(inner);
        if (!v) continue;
        const F sign = detail::koszul_odd(deg, w, perm) ? F(-1) : F(1);
        for (const auto& [o, c] : *v) {
          Word outer{o};
          outer.insert(outer.end(), rest.begin(), rest.end());
          if (const Sparse<F>* u = op(j).find(outer))
            for (const auto& [oo, cc] : *u) out[oo] += sign * c * cc;
        }
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return out;
  }

  Verdict jacobi_verdict() const {
    for (int n = 1; n <= max_arity(); ++n)
      for (const Word& w : admissible_words(space_, n))
        if (!is_zero_vec(jacobi_defect(w))) return Verdict::fail("arity " + std::to_string(n) + " on " + describe_word<F>(space_, w));
    return Verdict::pass();
  }

  // dx + sum_{m >= 2} l_m(x, ..., x) / m!
  Vec<F> curvature(const Vec<F>& x) const {
    if (x.size() != dim()) throw std::invalid_argument("element has the wrong length");
    if (space_.homogeneous_degree(x, 0) != 0) throw InvariantError("curvature is defined on degree-0 elements");
    Vec<F> out(dim(), F(0));
    for (int m = 1; m <= max_arity(); ++m) axpy(out, F(1) / detail::factorial<F>(m), op(m).evaluate_diagonal(x, dim()));
    return out;
  }

 private:
  Vec<F> eval(const MultiMap<F>& op, const Word& w) const {
    const Sparse<F>* v = op.find(w);
    return v ? to_dense(*v, dim()) : Vec<F>(dim(), F(0));
  }

  FilteredSpace space_;
  std::vector<MultiMap<F>> ops_;
};

// l_n(x_1, ..., x_n) = sum over σ in S_n of ε(σ) Q_n(x_σ(1), ..., x_σ(n)).
template <class F>
ShiftedLInfty<F> commutator(const AInfinityAlgebra<F>& a, Validation v = Validation::full) {
  detail::require_characteristic_zero(a.characteristic(), "the commutator L-infinity algebra");
  const auto deg = a.space().degree_vector();
  std::vector<MultiMap<F>> ops;
  for (int n = 1; n <= a.max_arity(); ++n) {
    MultiMap<F> l(n, 1);
    for (const Word& w : admissible_words(a.space(), n)) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        Word pw;
        for (int p : perm) pw.push_back(w[p]);
        if (const Sparse<F>* s = a.op(n).find(pw)) l.add(w, *s, detail::koszul_odd(deg, w, perm) ? F(-1) : F(1));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    ops.push_back(std::move(l));
  }
  return ShiftedLInfty<F>(a.space(), std::move(ops), v);
}

// Whether the linear map m : L -> L' commutes with every l_k.
template <class F>
bool is_strict_morphism(const ShiftedLInfty<F>& l, const ShiftedLInfty<F>& lp, const Matrix<F>& m) {
  if (m.rows() != lp.dim() || m.cols() != l.dim()) return false;
  std::vector<Vec<F>> cols;
  for (std::size_t j = 0; j < l.dim(); ++j) cols.push_back(m.column(j));
  for (int k = 1; k <= l.max_arity(); ++k)
    for (const Word& w : admissible_words(l.space(), k)) {
      std::vector<const Vec<F>*> args;
      for (int i : w) args.push_back(&cols[i]);
      const Sparse<F>* s = l.op(k).find(w);
      const Vec<F> lhs = m.apply(s ? to_dense(*s, l.dim()) : Vec<F>(l.dim(), F(0)));
      if (!(lhs == lp.op(k).evaluate(args, lp.dim()))) return false;
    }
  return true;
}

// Curvature as a polynomial in the degree-0 coordinates: sorted monomial -> coefficient vector.
template <class F>
using CurvaturePolynomial = std::map<Word, Vec<F>>;

namespace detail {

template <class F>
CurvaturePolynomial<F> curvature_polynomial(const FilteredSpace& s, const std::vector<MultiMap<F>>& ops,
                                            const std::vector<F>& scale) {
  CurvaturePolynomial<F> poly;
  for (std::size_t k = 0; k < ops.size(); ++k)
    for (const auto& [w, v] : ops[k].entries()) {
      if (std::any_of(w.begin(), w.end(), [&](int i) { return s.degree(i) != 0; })) continue;
      Word key = w;
      std::sort(key.begin(), key.end());
      auto& acc = poly.try_emplace(key, Vec<F>(s.dim(), F(0))).first->second;
      for (const auto& [o, c] : v) acc[o] += scale[k] * c;
    }
  std::erase_if(poly, [](const auto& e) { return is_zero_vec(e.second); });
  return poly;
}

}  // namespace detail

template <class F>
CurvaturePolynomial<F> curvature_polynomial(const AInfinityAlgebra<F>& a) {
  return detail::curvature_polynomial(a.space(), a.ops(), std::vector<F>(a.ops().size(), F(1)));
}

template <class F>
CurvaturePolynomial<F> curvature_polynomial(const ShiftedLInfty<F>& l) {
  std::vector<MultiMap<F>> ops;
  std::vector<F> scale;
  for (int m = 1; m <= l.max_arity(); ++m) {
    ops.push_back(l.op(m));
    scale.push_back(F(1) / detail::factorial<F>(m));
  }
  return detail::curvature_polynomial(l.space(), ops, scale);
}

struct MCEqualityReport {
  bool polynomials_agree = false;
  bool layered_solutions_agree = false;  // every layered MC solution of A is MC for the commutator
  bool grid_agrees = false;              // both zero sets coincide on the parameter grid
  std::size_t layered_count = 0;
  std::size_t grid_points = 0;
  std::size_t grid_zeros = 0;
  bool ok() const { return polynomials_agree && layered_solutions_agree && grid_agrees; }
};

// The two Maurer-Cartan sets coincide: curvature polynomials agree coefficientwise, and the zero
// sets agree on the layered solutions and on every grid point of A^0 with coordinates in `values`.
template <class F>
MCEqualityReport mc_equality_check(const AInfinityAlgebra<F>& a, const std::vector<F>& values,
                                   std::size_t grid_cap = 1U << 16) {
  const ShiftedLInfty<F> l = commutator(a);
  MCEqualityReport r;
  r.polynomials_agree = curvature_polynomial(a) == curvature_polynomial(l);

  SearchOptions<F> opt;
  opt.parameter_values = values;
  const auto layered = enumerate_mc(a, opt);
  r.layered_count = layered.size();
  r.layered_solutions_agree = std::all_of(layered.begin(), layered.end(), [&](const Vec<F>& x) { return is_zero_vec(l.curvature(x)); });

  const auto idx = a.space().indices(0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < idx.size() && total <= grid_cap; ++i) total *= values.size();
  if (total > grid_cap) throw SearchLimitExceeded("parameter grid exceeds " + std::to_string(grid_cap) + " points");
  r.grid_agrees = true;
  std::vector<std::size_t> pick(idx.size(), 0);
  for (std::size_t point = 0; point < total; ++point) {
    Vec<F> x(a.dim(), F(0));
    for (std::size_t i = 0; i < idx.size(); ++i) x[idx[i]] = values[pick[i]];
    const bool as_zero = is_zero_vec(a.curvature(x));
    if (as_zero != is_zero_vec(l.curvature(x))) r.grid_agrees = false;
    r.grid_zeros += as_zero;
    for (std::size_t i = 0; i < pick.size() && ++pick[i] == values.size(); ++i) pick[i] = 0;
  }
  r.grid_points = total;
  return r;
}

}  // namespace ainf
