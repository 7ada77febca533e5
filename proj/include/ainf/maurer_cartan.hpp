#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/disjoint_sets.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainf {

// Raised when a search would exceed its leaf budget or has infinitely many leaves.
class SearchLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Leaf budget for every enumeration; AINF_LEAF_CAP overrides the default of 2^24.
inline std::size_t default_leaf_cap() {
  if (const char* env = std::getenv("AINF_LEAF_CAP")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::logic_error&) {
    }
    throw std::invalid_argument("AINF_LEAF_CAP must be a positive integer");
  }
  return std::size_t{1} << 24;
}

template <class F>
struct SearchOptions {
  std::size_t leaf_cap = default_leaf_cap();
  std::size_t limit = 0;            // stop after this many solutions; 0 means all
  std::vector<F> parameter_values;  // coefficients tried along kernel directions; empty means the whole finite field
};

// Zero set of the curvature on A^0, optionally cut down by linear conditions R x = r.
//
// Writing x = x_(1) + ... + x_(N-1) by weight, the weight-w part of curv(x) is
// d(x_(w))_w + curv(x_(1) + ... + x_(w-1))_w, since every Q_k with k >= 2 raises weight strictly
// above that of each input. Each layer is therefore an affine system in x_(w) whose matrix does
// not depend on the lower layers; the search branches over the kernel of each layer.
// A row of R is imposed at the highest weight it touches; its lower-weight coordinates are
// already fixed there and move to the right-hand side.
template <class F>
class MCSolver {
 public:
  using Visitor = std::function<bool(const Vec<F>&)>;  // return false to stop

  explicit MCSolver(AlgebraPtr<F> a, const Matrix<F>& constraints = Matrix<F>(0, 0)) : a_(std::move(a)) {
    const FilteredSpace& s = a_->space();
    const std::size_t n = s.dim();
    if (constraints.rows() > 0 && constraints.cols() != n) throw std::invalid_argument("constraint matrix has the wrong width");
    constraint_rows_ = constraints.rows();
    const Matrix<F> d = a_->differential();
    const int top = a_->max_arity();
    std::vector<std::vector<int>> row_layers(top + 1);
    for (std::size_t r = 0; r < constraints.rows(); ++r) {
      int layer = 0;
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(constraints(r, c)) && s.degree(static_cast<int>(c)) == 0)
          layer = std::max(layer, s.weight(static_cast<int>(c)));
      if (layer == 0) {
        trivial_rows_.push_back(static_cast<int>(r));
        continue;
      }
      row_layers[layer].push_back(static_cast<int>(r));
      Sparse<F> lower;
      for (std::size_t c = 0; c < n; ++c)
        if (!is_zero(constraints(r, c)) && s.degree(static_cast<int>(c)) == 0 && s.weight(static_cast<int>(c)) < layer)
          lower.emplace_back(static_cast<int>(c), constraints(r, c));
      lower_terms_.emplace(static_cast<int>(r), std::move(lower));
    }
    for (int w = 1; w <= top; ++w) {
      Layer l;
      for (int i : s.indices(0))
        if (s.weight(i) == w) l.vars.push_back(i);
      for (int i : s.indices(1))
        if (s.weight(i) == w) l.curv_rows.push_back(i);
      l.cons_rows = row_layers[w];
      Matrix<F> m(l.curv_rows.size() + l.cons_rows.size(), l.vars.size());
      for (std::size_t i = 0; i < l.curv_rows.size(); ++i)
        for (std::size_t j = 0; j < l.vars.size(); ++j) m(i, j) = d(l.curv_rows[i], l.vars[j]);
      for (std::size_t i = 0; i < l.cons_rows.size(); ++i)
        for (std::size_t j = 0; j < l.vars.size(); ++j) m(l.curv_rows.size() + i, j) = constraints(l.cons_rows[i], l.vars[j]);
      l.solver.emplace(m);
      layers_.push_back(std::move(l));
    }
  }

  const AInfinityAlgebra<F>& algebra() const { return *a_; }

  // Dimension of the solution tree: Σ over layers of the kernel dimension.
  std::size_t free_parameters() const {
    std::size_t k = 0;
    for (const auto& l : layers_) k += l.solver->kernel().size();
    return k;
  }

  // Visits every solution in layer order; returns the number of leaves visited.
  std::size_t for_each(const Vec<F>& values, const Visitor& visit, const SearchOptions<F>& opt = {}) const {
    if (values.size() != constraint_rows_) throw std::invalid_argument("constraint values have the wrong length");
    for (int r : trivial_rows_)
      if (!is_zero(values[r])) return 0;
    std::vector<F> params = opt.parameter_values;
    if (params.empty() && free_parameters() > 0) {
      if constexpr (FieldTraits<F>::finite) params = FieldTraits<F>::elements();
      else throw SearchLimitExceeded("Maurer-Cartan set has " + std::to_string(free_parameters()) +
                                     " free parameters over an infinite field; supply parameter values");
    }
    State st{values, visit, opt, params, Vec<F>(a_->dim(), F(0)), 0, false};
    descend(0, st);
    return st.leaves;
  }

  std::vector<Vec<F>> solve(const Vec<F>& values, const SearchOptions<F>& opt = {}) const {
    std::vector<Vec<F>> out;
    for_each(values, [&](const Vec<F>& x) {
      out.push_back(x);
      return true;
    }, opt);
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<Vec<F>> solve(const SearchOptions<F>& opt = {}) const { return solve(Vec<F>(constraint_rows_, F(0)), opt); }

  std::optional<Vec<F>> find_one(const Vec<F>& values, SearchOptions<F> opt = {}) const {
    std::optional<Vec<F>> out;
    opt.limit = 1;
    for_each(values, [&](const Vec<F>& x) {
      out = x;
      return false;
    }, opt);
    return out;
  }

 private:
  struct Layer {
    std::vector<int> vars, curv_rows, cons_rows;
    std::optional<LinearSolver<F>> solver;
  };
  struct State {
    const Vec<F>& values;
    const Visitor& visit;
    const SearchOptions<F>& opt;
    const std::vector<F>& params;
    Vec<F> x;
    std::size_t leaves;
    bool stop;
  };

  void descend(std::size_t li, State& st) const {
    if (st.stop) return;
    if (li == layers_.size()) {
      if (!is_zero_vec(a_->curvature(st.x))) throw std::logic_error("layered solver produced a non-Maurer-Cartan element");
      if (++st.leaves > st.opt.leaf_cap)
        throw SearchLimitExceeded("Maurer-Cartan search exceeded the leaf cap of " + std::to_string(st.opt.leaf_cap) +
                                  " (search space " + std::to_string(st.params.size()) + "^" +
                                  std::to_string(free_parameters()) + ")");
      if (!st.visit(st.x) || (st.opt.limit && st.leaves >= st.opt.limit)) st.stop = true;
      return;
    }
    const Layer& l = layers_[li];
    Vec<F> rhs;
    rhs.reserve(l.curv_rows.size() + l.cons_rows.size());
    if (!l.curv_rows.empty()) {
      const Vec<F> c = a_->curvature(st.x);
      for (int r : l.curv_rows) rhs.push_back(-c[r]);
    }
    for (int r : l.cons_rows) {
      F v = st.values[r];
      for (const auto& [c, coef] : lower_terms_.at(r)) v -= coef * st.x[c];
      rhs.push_back(v);
    }
    const auto base = l.solver->solve(rhs);
    if (!base) return;
    const auto& ker = l.solver->kernel();
    std::vector<std::size_t> pick(ker.size(), 0);
    while (true) {
      Vec<F> y = *base;
      for (std::size_t k = 0; k < ker.size(); ++k) axpy(y, st.params[pick[k]], ker[k]);
      for (std::size_t j = 0; j < l.vars.size(); ++j) st.x[l.vars[j]] = y[j];
      descend(li + 1, st);
      if (st.stop) break;
      std::size_t k = 0;
      while (k < pick.size() && ++pick[k] == st.params.size()) pick[k++] = 0;
      if (k == pick.size()) break;
    }
    for (int v : l.vars) st.x[v] = F(0);
  }

  AlgebraPtr<F> a_;
  std::size_t constraint_rows_ = 0;
  std::vector<int> trivial_rows_;
  std::map<int, Sparse<F>> lower_terms_;
  std::vector<Layer> layers_;
};

// Non-owning handle for algebras that outlive the call.
template <class F>
AlgebraPtr<F> borrow(const AInfinityAlgebra<F>& a) {
  return AlgebraPtr<F>(std::shared_ptr<void>(), &a);
}

// MC(A), sorted.
template <class F>
std::vector<Vec<F>> enumerate_mc(const AInfinityAlgebra<F>& a, const SearchOptions<F>& opt = {}) {
  return MCSolver<F>(borrow(a)).solve(opt);
}

// Exhaustive reference: tries every point of A^0 over a finite field.
template <class F>
std::vector<Vec<F>> enumerate_mc_exhaustive(const AInfinityAlgebra<F>& a, std::size_t cap = std::size_t{1} << 16) {
  static_assert(FieldTraits<F>::finite, "exhaustive enumeration needs a finite field");
  const std::vector<int> idx = a.space().indices(0);
  const auto elems = FieldTraits<F>::elements();
  double size = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) size *= static_cast<double>(elems.size());
  if (size > static_cast<double>(cap)) throw SearchLimitExceeded("exhaustive search space too large");
  std::vector<Vec<F>> out;
  std::vector<std::size_t> pick(idx.size(), 0);
  while (true) {
    Vec<F> x(a.dim(), F(0));
    for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = elems[pick[k]];
    if (is_zero_vec(a.curvature(x))) out.push_back(std::move(x));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == elems.size()) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
bool is_maurer_cartan(const AInfinityAlgebra<F>& a, const Vec<F>& x) {
  return a.space().homogeneous_degree(x, 0) == 0 && is_zero_vec(a.curvature(x));
}

// Φ_*(a) for a Maurer-Cartan element a; the image is checked to be Maurer-Cartan.
template <class F>
Vec<F> pushforward(const InftyMorphism<F>& phi, const Vec<F>& a) {
  if (!is_maurer_cartan(phi.source(), a)) throw InvariantError("pushforward of an element that is not Maurer-Cartan");
  Vec<F> out = phi.pushforward(a);
  if (!is_zero_vec(phi.target().curvature(out))) throw std::logic_error("pushforward left the Maurer-Cartan set");
  return out;
}

// Σ_n Φ^1_{n+1}(a^{⊗n} ⋆ curv(a)): the curvature of Φ_*(a) for any degree-0 a.
template <class F>
Vec<F> transported_curvature(const InftyMorphism<F>& phi, const Vec<F>& a) {
  const Vec<F> c = phi.source().curvature(a);
  Vec<F> out(phi.target().dim(), F(0));
  for (int m = 1; m <= phi.max_arity(); ++m) {
    if (phi.map(m).empty()) continue;
    for (int pos = 0; pos < m; ++pos) {
      std::vector<const Vec<F>*> args(m, &a);
      args[pos] = &c;
      axpy(out, F(1), phi.map(m).evaluate(args, phi.target().dim()));
    }
  }
  return out;
}

// a ⊛ b = a + b + ab for a product `mul` on a pronilpotent non-unital algebra.
template <class F, class Mul>
Vec<F> quasi_multiply(const Vec<F>& a, const Vec<F>& b, const Mul& mul) {
  return a + b + mul(a, b);
}

// Σ_{k>=1} (-1)^k a^k, the two-sided ⊛-inverse; terminates by nilpotency.
template <class F, class Mul>
Vec<F> quasi_inverse(const Vec<F>& a, const Mul& mul, int max_power = 64) {
  Vec<F> out(a.size(), F(0));
  Vec<F> power = a;
  for (int k = 1; !is_zero_vec(power); ++k) {
    if (k > max_power) throw InvariantError("element is not nilpotent");
    axpy(out, sign<F>(k), power);
    power = mul(power, a);
  }
  if (!is_zero_vec(quasi_multiply(a, out, mul)) || !is_zero_vec(quasi_multiply(out, a, mul)))
    throw std::logic_error("quasi-inverse failed the two-sided check");
  return out;
}

template <class F>
Vec<F> quasi_multiply(const DGAlgebra<F>& c, const Vec<F>& a, const Vec<F>& b) {
  return quasi_multiply(a, b, [&c](const Vec<F>& x, const Vec<F>& y) { return c.multiply(x, y); });
}

template <class F>
Vec<F> quasi_inverse(const DGAlgebra<F>& c, const Vec<F>& a) {
  return quasi_inverse(a, [&c](const Vec<F>& x, const Vec<F>& y) { return c.multiply(x, y); }, c.space().nilpotency());
}

// Degree-1 Maurer-Cartan condition of a dg algebra: dx + x·x = 0.
template <class F>
bool is_dga_maurer_cartan(const DGAlgebra<F>& c, const Vec<F>& x) {
  return c.space().homogeneous_degree(x, 1) == 1 && is_zero_vec(c.differential(x) + c.multiply(x, x));
}

// g · x = x - D - D g̃ with D = d g + x g - g x and g̃ the quasi-inverse of g.
template <class F>
Vec<F> gauge_action(const DGAlgebra<F>& c, const Vec<F>& g, const Vec<F>& x) {
  if (c.space().homogeneous_degree(g, 0) != 0) throw InvariantError("gauge parameter must have degree 0");
  if (!is_dga_maurer_cartan(c, x)) throw InvariantError("gauge action on an element that is not Maurer-Cartan");
  const Vec<F> dx = c.differential(g) + c.multiply(x, g) - c.multiply(g, x);
  const Vec<F> out = x - dx - c.multiply(dx, quasi_inverse(c, g));
  if (!is_dga_maurer_cartan(c, out)) throw std::logic_error("gauge action left the Maurer-Cartan set");
  return out;
}

// A partition of a finite set of elements; classes sorted internally and by first member.
template <class F>
using Classes = std::vector<std::vector<Vec<F>>>;

// Orbits of (C^0, ⊛) on the degree-1 Maurer-Cartan elements, closing under the translates λ e_i.
template <class F>
Classes<F> gauge_orbits(const DGAlgebra<F>& c, const SearchOptions<F>& opt = {}) {
  static_assert(FieldTraits<F>::finite, "gauge orbits are enumerated over finite fields");
  // Shifted degree 0 is unshifted degree 1 with the same coordinates.
  const std::vector<Vec<F>> mc = enumerate_mc(from_dga(c), opt);
  std::map<Vec<F>, std::size_t> where;
  for (std::size_t i = 0; i < mc.size(); ++i) where.emplace(mc[i], i);
  DisjointSets sets(mc.size());
  const auto scalars = FieldTraits<F>::elements();
  for (int i : c.space().indices(0))
    for (const F& lambda : scalars) {
      if (is_zero(lambda)) continue;
      const Vec<F> g = scaled(lambda, unit_vector<F>(c.dim(), i));
      for (std::size_t k = 0; k < mc.size(); ++k) sets.unite(k, where.at(gauge_action(c, g, mc[k])));
    }
  Classes<F> out;
  for (const auto& cls : sets.classes()) {
    out.emplace_back();
    for (std::size_t k : cls) out.back().push_back(mc[k]);
  }
  return out;
}

}  // namespace ainf
