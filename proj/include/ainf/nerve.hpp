#pragma once

#include "ainf/complex.hpp"
#include "ainf/disjoint_sets.hpp"
#include "ainf/group.hpp"
#include "ainf/maurer_cartan.hpp"
#include "ainf/tensor.hpp"
#include "ainf/twist.hpp"

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainf {

// A valid horn without a filler would contradict the Kan property; never a user error.
class HornNotFillable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Face conditions on an n-simplex: face index -> prescribed (n-1)-simplex.
template <class F>
using FaceMap = std::map<int, Vec<F>>;

// The nerve N_n(A) = MC(A ⊗ N*(Δ^n)) with its simplicial operators.
template <class F>
class Nerve {
 public:
  explicit Nerve(AlgebraPtr<F> a) : tensor_(std::move(a)) {}

  const AInfinityAlgebra<F>& algebra() const { return *tensor_.base(); }
  const AlgebraPtr<F>& algebra_ptr() const { return tensor_.base(); }
  const AlgebraPtr<F>& level(int n) const { return tensor_.at(n); }
  std::size_t dim(int n) const { return level(n)->dim(); }

  bool contains(int n, const Vec<F>& x) const { return x.size() == dim(n) && is_maurer_cartan(*level(n), x); }

  Vec<F> face(int n, int i, const Vec<F>& x) const { return operator_matrix(face_, n, i, face_map<F>).apply(x); }
  Vec<F> degeneracy(int n, int j, const Vec<F>& x) const {
    return operator_matrix(degeneracy_, n, j, degeneracy_map<F>).apply(x);
  }
  const Matrix<F>& face_matrix(int n, int i) const { return operator_matrix(face_, n, i, face_map<F>); }

  // The component of x along φ_σ, an element of A.
  Vec<F> component(int n, const Vec<F>& x, const SimplexLabel& s) const {
    const auto c = cochains<F>(n);
    return tensor_component(x, algebra().dim(), c->dim(), c->index(s));
  }
  // a ⊗ φ_σ.
  Vec<F> place(int n, const Vec<F>& a, const SimplexLabel& s) const {
    return tensor_vector(a, cochains<F>(n)->basis_vector(s));
  }
  // The degenerate simplex a ⊗ 1_n on a vertex a.
  Vec<F> constant(int n, const Vec<F>& a) const { return tensor_vector(a, cochains<F>(n)->unit()); }
  Vec<F> zero(int n) const { return Vec<F>(dim(n), F(0)); }

  std::vector<Vec<F>> simplices(int n, const SearchOptions<F>& opt = {}) const {
    return solver(n, 0).solve(Vec<F>{}, opt);
  }

  // n-simplices with the prescribed faces, sorted.
  std::vector<Vec<F>> with_faces(int n, const FaceMap<F>& faces, const SearchOptions<F>& opt = {}) const {
    return solver(n, mask_of(n, faces)).solve(stack(n, faces), opt);
  }
  std::optional<Vec<F>> find_with_faces(int n, const FaceMap<F>& faces, const SearchOptions<F>& opt = {}) const {
    return solver(n, mask_of(n, faces)).find_one(stack(n, faces), opt);
  }
  std::size_t for_each_with_faces(int n, const FaceMap<F>& faces, const typename MCSolver<F>::Visitor& visit,
                                  const SearchOptions<F>& opt = {}) const {
    return solver(n, mask_of(n, faces)).for_each(stack(n, faces), visit, opt);
  }

 private:
  using OperatorCache = std::map<std::pair<int, int>, Matrix<F>>;

  const Matrix<F>& operator_matrix(OperatorCache& cache, int n, int i, Matrix<F> (*make)(int, int)) const {
    auto it = cache.find({n, i});
    if (it == cache.end()) it = cache.emplace(std::make_pair(n, i), tensor_identity(algebra().dim(), make(n, i))).first;
    return it->second;
  }

  static unsigned mask_of(int n, const FaceMap<F>& faces) {
    unsigned m = 0;
    for (const auto& [i, y] : faces) {
      if (i < 0 || i > n || n < 1) throw std::out_of_range("face index out of range");
      m |= 1U << i;
    }
    return m;
  }

  Vec<F> stack(int n, const FaceMap<F>& faces) const {
    Vec<F> out;
    for (const auto& [i, y] : faces) {
      if (y.size() != dim(n - 1)) throw std::invalid_argument("prescribed face has the wrong length");
      out.insert(out.end(), y.begin(), y.end());
    }
    return out;
  }

  // Solvers cached per (n, set of constrained faces).
  const MCSolver<F>& solver(int n, unsigned mask) const {
    auto it = solvers_.find({n, mask});
    if (it != solvers_.end()) return it->second;
    std::vector<int> picked;
    for (int i = 0; i <= n; ++i)
      if (mask & (1U << i)) picked.push_back(i);
    const std::size_t rows = picked.empty() ? 0 : dim(n - 1);
    Matrix<F> cons(rows * picked.size(), picked.empty() ? 0 : dim(n));
    for (std::size_t p = 0; p < picked.size(); ++p) {
      const Matrix<F>& d = face_matrix(n, picked[p]);
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < d.cols(); ++c)
          if (!is_zero(d(r, c))) cons(p * rows + r, c) = d(r, c);
    }
    return solvers_.emplace(std::make_pair(n, mask), MCSolver<F>(level(n), cons)).first->second;
  }

  SimplicialTensor<F> tensor_;
  mutable OperatorCache face_, degeneracy_;
  mutable std::map<std::pair<int, unsigned>, MCSolver<F>> solvers_;
};

// Whether w0, w1, w2 ∈ Z^{-1}(A) and u ∈ A^{-2} satisfy d u - w0 + w1 - w2 - Q_2(w2, w0) = 0.
// Cross-checked against the Maurer-Cartan equation of Σ w_j ⊗ φ_{d^j[1]} + u ⊗ φ_[2] in A ⊗ N*(Δ^2).
template <class F>
bool mc2_check(const Nerve<F>& nerve, const Vec<F>& w0, const Vec<F>& w1, const Vec<F>& w2, const Vec<F>& u) {
  const AInfinityAlgebra<F>& a = nerve.algebra();
  for (const Vec<F>* w : {&w0, &w1, &w2})
    if (w->size() != a.dim() || a.space().homogeneous_degree(*w, -1) != -1) throw InvariantError("edge labels must have degree -1");
  if (u.size() != a.dim() || a.space().homogeneous_degree(u, -2) != -2) throw InvariantError("face label must have degree -2");
  const Matrix<F> d = a.differential();
  Vec<F> rel = d.apply(u) - w0 + w1 - w2;
  if (a.max_arity() >= 2) rel = rel - a.op(2).evaluate({&w2, &w0}, a.dim());
  const bool closed = is_zero_vec(d.apply(w0)) && is_zero_vec(d.apply(w1)) && is_zero_vec(d.apply(w2));
  const bool ok = closed && is_zero_vec(rel);
  const Vec<F> beta = nerve.place(2, w0, {1, 2}) + nerve.place(2, w1, {0, 2}) + nerve.place(2, w2, {0, 1}) +
                      nerve.place(2, u, {0, 1, 2});
  if (ok != nerve.contains(2, beta)) throw std::logic_error("2-simplex criterion disagrees with the Maurer-Cartan equation");
  return ok;
}

namespace detail {

template <class F>
bool vertices_vanish(const Nerve<F>& nerve, int n, const Vec<F>& x) {
  for (int v = 0; v <= n; ++v)
    if (!is_zero_vec(nerve.component(n, x, {v}))) return false;
  return true;
}

}  // namespace detail

// A filler of the horn Λ^n_k given by its faces i != k. The inner 2-horn based at 0 is filled in
// closed form: u = 0, w1 = w0 + w2 + Q_2(w2, w0); all other horns are filled by search.
template <class F>
Vec<F> fill_horn(const Nerve<F>& nerve, int n, int k, const FaceMap<F>& horn, const SearchOptions<F>& opt = {}) {
  if (n < 1 || k < 0 || k > n) throw std::out_of_range("horn index out of range");
  for (int i = 0; i <= n; ++i)
    if ((i == k) == static_cast<bool>(horn.count(i))) throw std::invalid_argument("a horn prescribes exactly the faces i != k");
  for (const auto& [i, y] : horn)
    if (!nerve.contains(n - 1, y)) throw InvariantError("horn face " + std::to_string(i) + " is not a simplex of the nerve");
  if (n >= 2)
    for (const auto& [i, yi] : horn)
      for (const auto& [j, yj] : horn)
        if (i < j && !(nerve.face(n - 1, i, yj) == nerve.face(n - 1, j - 1, yi)))
          throw InvariantError("horn faces " + std::to_string(i) + " and " + std::to_string(j) + " are not compatible");

  if (n == 2 && k == 1 && detail::vertices_vanish(nerve, 1, horn.at(0)) && detail::vertices_vanish(nerve, 1, horn.at(2))) {
    const AInfinityAlgebra<F>& a = nerve.algebra();
    const Vec<F> w0 = nerve.component(1, horn.at(0), {0, 1});
    const Vec<F> w2 = nerve.component(1, horn.at(2), {0, 1});
    Vec<F> w1 = w0 + w2;
    if (a.max_arity() >= 2) w1 = w1 + a.op(2).evaluate({&w2, &w0}, a.dim());
    const Vec<F> zero(a.dim(), F(0));
    if (!mc2_check(nerve, w0, w1, w2, zero)) throw std::logic_error("closed-form 2-horn filler is not Maurer-Cartan");
    const Vec<F> out = nerve.place(2, w0, {1, 2}) + nerve.place(2, w1, {0, 2}) + nerve.place(2, w2, {0, 1});
    if (!(nerve.face(2, 0, out) == horn.at(0)) || !(nerve.face(2, 2, out) == horn.at(2)))
      throw std::logic_error("closed-form 2-horn filler has the wrong faces");
    return out;
  }
  auto out = nerve.find_with_faces(n, horn, opt);
  if (!out) throw HornNotFillable("horn Λ^" + std::to_string(n) + "_" + std::to_string(k) + " has no filler");
  return *out;
}

// Path components of the nerve: vertices modulo the equivalence generated by 1-simplices.
template <class F>
Classes<F> pi0(const Nerve<F>& nerve, const SearchOptions<F>& opt = {}) {
  const std::vector<Vec<F>> verts = nerve.simplices(0, opt);
  std::map<Vec<F>, std::size_t> where;
  for (std::size_t i = 0; i < verts.size(); ++i) where.emplace(verts[i], i);
  DisjointSets sets(verts.size());
  nerve.for_each_with_faces(1, {}, [&](const Vec<F>& e) {
    sets.unite(where.at(nerve.face(1, 0, e)), where.at(nerve.face(1, 1, e)));
    return true;
  }, opt);
  Classes<F> out;
  for (const auto& cls : sets.classes()) {
    out.emplace_back();
    for (std::size_t i : cls) out.back().push_back(verts[i]);
  }
  return out;
}

template <class F>
Classes<F> pi0(const AInfinityAlgebra<F>& a, const SearchOptions<F>& opt = {}) {
  return pi0(Nerve<F>(borrow(a)), opt);
}

// χ_n(a) = a ⊗ φ_[n] for a cocycle a of degree -n.
template <class F>
Vec<F> chi(const Nerve<F>& nerve, int n, const Vec<F>& a) {
  const AInfinityAlgebra<F>& alg = nerve.algebra();
  if (n < 1) throw std::out_of_range("spherical simplices need n >= 1");
  if (a.size() != alg.dim() || alg.space().homogeneous_degree(a, -n) != -n)
    throw InvariantError("chi_n needs an element of degree -n");
  if (!is_zero_vec(alg.differential().apply(a))) throw InvariantError("chi_n needs a cocycle");
  const Vec<F> out = tensor_vector(a, cochains<F>(n)->top());
  if (!nerve.contains(n, out)) throw std::logic_error("a ⊗ φ_[n] is not Maurer-Cartan");
  return out;
}

// The cocycle a with β = a ⊗ φ_[n], for β spherical.
template <class F>
Vec<F> spherical_reduce(const Nerve<F>& nerve, int n, const Vec<F>& beta) {
  if (n < 1) throw std::out_of_range("spherical simplices need n >= 1");
  if (!nerve.contains(n, beta)) throw InvariantError("not a simplex of the nerve");
  for (int i = 0; i <= n; ++i)
    if (!is_zero_vec(nerve.face(n, i, beta))) throw InvariantError("simplex is not spherical");
  const auto c = cochains<F>(n);
  const Vec<F> a = nerve.component(n, beta, c->label(c->top_index()));
  if (!(tensor_vector(a, c->top()) == beta)) throw std::logic_error("spherical simplex has components below the top cell");
  return a;
}

// π_n as a finite group: element i is represented by the spherical simplex representatives[i];
// element_of records the element of every spherical simplex the computation classified.
template <class F>
struct HomotopyGroup {
  int n = 0;
  GroupTable table;
  std::vector<Vec<F>> representatives;
  std::map<Vec<F>, int> element_of;

  std::size_t order() const { return table.order(); }
  int element(const Vec<F>& spherical) const {
    auto it = element_of.find(spherical);
    if (it == element_of.end()) throw InvariantError("spherical simplex not classified by this group");
    return it->second;
  }
};

// π_n(N(A), 0) from cohomology: H^{-n}(A) with a ⊛ b = a + b + [Q_2(a, b)] for n = 1, addition for n >= 2.
template <class F>
HomotopyGroup<F> pi_n_theorem(const Nerve<F>& nerve, int n) {
  static_assert(FieldTraits<F>::finite, "homotopy groups are tabulated over finite fields");
  if (n < 1) throw std::out_of_range("pi_n_theorem needs n >= 1");
  const AInfinityAlgebra<F>& a = nerve.algebra();
  const Cohomology<F> h = cohomology_basis(a.tangent(), -n, 1);
  const auto scalars = FieldTraits<F>::elements();
  std::vector<Vec<F>> coords{Vec<F>{}};
  for (std::size_t i = 0; i < h.dim(); ++i) {
    std::vector<Vec<F>> next;
    for (const auto& c : coords)
      for (const F& s : scalars) {
        Vec<F> e = c;
        e.push_back(s);
        next.push_back(std::move(e));
      }
    coords = std::move(next);
  }
  std::sort(coords.begin(), coords.end());
  std::map<Vec<F>, int> index;
  for (std::size_t i = 0; i < coords.size(); ++i) index.emplace(coords[i], static_cast<int>(i));

  HomotopyGroup<F> out;
  out.n = n;
  out.table.identity = index.at(Vec<F>(h.dim(), F(0)));
  out.table.mul.assign(coords.size(), std::vector<int>(coords.size()));
  std::vector<Vec<F>> reps;
  for (const auto& c : coords) reps.push_back(h.representative(c));
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < coords.size(); ++j) {
      Vec<F> z = reps[i] + reps[j];
      if (n == 1 && a.max_arity() >= 2) z = z + a.op(2).evaluate({&reps[i], &reps[j]}, a.dim());
      out.table.mul[i][j] = index.at(h.project(z));
    }
  out.table.validate();
  for (std::size_t i = 0; i < coords.size(); ++i) {
    out.representatives.push_back(chi(nerve, n, reps[i]));
    out.element_of.emplace(out.representatives.back(), static_cast<int>(i));
  }
  return out;
}

// π_n(N(A), 0) by brute force on the nerve: spherical simplices modulo
// β ~ β' iff some η has d_0 η = β, d_1 η = β', d_j η = 0 (j > 1); product [α][β] = [d_1 ω]
// for any ω with d_0 ω = β, d_2 ω = α, d_j ω = 0 (j > 2). The relation is checked to be an
// equivalence and the product to be independent of ω (and of representatives if all_representatives).
template <class F>
HomotopyGroup<F> pi_n_oracle(const Nerve<F>& nerve, int n, const SearchOptions<F>& opt = {}, bool all_representatives = false) {
  static_assert(FieldTraits<F>::finite, "homotopy groups are tabulated over finite fields");
  if (n < 1) throw std::out_of_range("pi_n_oracle needs n >= 1");
  FaceMap<F> boundary;
  for (int i = 0; i <= n; ++i) boundary.emplace(i, nerve.zero(n - 1));
  const std::vector<Vec<F>> sph = nerve.with_faces(n, boundary, opt);

  std::map<Vec<F>, std::set<Vec<F>>> related;
  for (const auto& beta : sph) {
    FaceMap<F> faces{{0, beta}};
    for (int j = 2; j <= n + 1; ++j) faces.emplace(j, nerve.zero(n));
    auto& rel = related[beta];
    nerve.for_each_with_faces(n + 1, faces, [&](const Vec<F>& eta) {
      rel.insert(nerve.face(n + 1, 1, eta));
      return true;
    }, opt);
  }
  for (const auto& [beta, rel] : related) {
    if (!rel.count(beta)) throw std::logic_error("homotopy relation on spherical simplices is not reflexive");
    for (const auto& other : rel) {
      auto it = related.find(other);
      if (it == related.end()) throw std::logic_error("homotopy relation leaves the spherical simplices");
      if (it->second != rel) throw std::logic_error("homotopy relation on spherical simplices is not an equivalence");
    }
  }

  HomotopyGroup<F> out;
  out.n = n;
  for (const auto& beta : sph) {
    if (out.element_of.count(beta)) continue;
    const int id = static_cast<int>(out.representatives.size());
    out.representatives.push_back(beta);
    for (const auto& other : related.at(beta)) out.element_of.emplace(other, id);
  }
  const std::size_t order = out.representatives.size();
  out.table.identity = out.element(nerve.zero(n));
  out.table.mul.assign(order, std::vector<int>(order, -1));

  std::vector<std::vector<Vec<F>>> members(order);
  for (const auto& [beta, id] : out.element_of) members[id].push_back(beta);
  for (std::size_t i = 0; i < order; ++i)
    for (std::size_t j = 0; j < order; ++j) {
      const auto& lefts = all_representatives ? members[i] : std::vector<Vec<F>>{out.representatives[i]};
      const auto& rights = all_representatives ? members[j] : std::vector<Vec<F>>{out.representatives[j]};
      int& slot = out.table.mul[i][j];
      for (const auto& alpha : lefts)
        for (const auto& beta : rights) {
          FaceMap<F> faces{{0, beta}, {2, alpha}};
          for (int k = 3; k <= n + 1; ++k) faces.emplace(k, nerve.zero(n));
          const std::size_t found = nerve.for_each_with_faces(n + 1, faces, [&](const Vec<F>& omega) {
            const int e = out.element(nerve.face(n + 1, 1, omega));
            if (slot >= 0 && slot != e) throw std::logic_error("homotopy group product depends on the chosen filler");
            slot = e;
            return true;
          }, opt);
          if (found == 0) throw HornNotFillable("no simplex realizes the homotopy group product");
        }
    }
  out.table.validate();
  return out;
}

// The χ_n matching: theorem element i corresponds to the oracle class of its spherical representative.
// Returns the index map when it is a group isomorphism.
template <class F>
std::optional<std::vector<int>> chi_matching(const HomotopyGroup<F>& theorem, const HomotopyGroup<F>& oracle) {
  std::vector<int> f;
  for (const auto& beta : theorem.representatives) {
    auto it = oracle.element_of.find(beta);
    if (it == oracle.element_of.end()) return std::nullopt;
    f.push_back(it->second);
  }
  if (!is_isomorphism(theorem.table, oracle.table, f)) return std::nullopt;
  return f;
}

// Shift_α : N(A^α) -> N(A), β ↦ α ⊗ 1_n + β, for α ∈ MC(A).
template <class F>
class BasepointShift {
 public:
  BasepointShift(AlgebraPtr<F> a, Vec<F> alpha)
      : alpha_(std::move(alpha)),
        base_(std::make_shared<const Nerve<F>>(a)),
        twisted_(std::make_shared<const Nerve<F>>(share(twist_algebra(*a, alpha_)))) {}

  const Vec<F>& basepoint() const { return alpha_; }
  const Nerve<F>& base() const { return *base_; }
  const Nerve<F>& twisted() const { return *twisted_; }

  Vec<F> apply(int n, const Vec<F>& beta) const {
    if (!twisted_->contains(n, beta)) throw InvariantError("not a simplex of the twisted nerve");
    Vec<F> out = base_->constant(n, alpha_) + beta;
    if (!base_->contains(n, out)) throw std::logic_error("shifted simplex is not Maurer-Cartan");
    return out;
  }
  Vec<F> unapply(int n, const Vec<F>& x) const {
    if (!base_->contains(n, x)) throw InvariantError("not a simplex of the nerve");
    Vec<F> out = x - base_->constant(n, alpha_);
    if (!twisted_->contains(n, out)) throw std::logic_error("unshifted simplex is not Maurer-Cartan in the twisted algebra");
    return out;
  }

 private:
  Vec<F> alpha_;
  std::shared_ptr<const Nerve<F>> base_, twisted_;
};

// π_n(N(A), α) computed at basepoint 0 of N(A^α).
template <class F>
HomotopyGroup<F> pi_n_theorem(const AlgebraPtr<F>& a, int n, const Vec<F>& alpha) {
  return pi_n_theorem(BasepointShift<F>(a, alpha).twisted(), n);
}

template <class F>
HomotopyGroup<F> pi_n_oracle(const AlgebraPtr<F>& a, int n, const Vec<F>& alpha, const SearchOptions<F>& opt = {}) {
  return pi_n_oracle(BasepointShift<F>(a, alpha).twisted(), n, opt);
}

// N(Φ): simplices pushed forward along Φ ⊗ N*(Δ^n).
template <class F>
class NerveMap {
 public:
  explicit NerveMap(InftyMorphism<F> phi)
      : phi_(std::move(phi)),
        source_(std::make_shared<const Nerve<F>>(phi_.source_ptr())),
        target_(std::make_shared<const Nerve<F>>(phi_.target_ptr())) {}

  const InftyMorphism<F>& morphism() const { return phi_; }
  const Nerve<F>& source() const { return *source_; }
  const Nerve<F>& target() const { return *target_; }

  Vec<F> apply(int n, const Vec<F>& x) const { return pushforward(at(n), x); }

  const InftyMorphism<F>& at(int n) const {
    auto it = levels_.find(n);
    if (it == levels_.end())
      it = levels_.emplace(n, tensor_morphism(phi_, cochains<F>(n)->algebra(), source_->level(n), target_->level(n),
                                              Validation::structural)).first;
    return it->second;
  }

 private:
  InftyMorphism<F> phi_;
  std::shared_ptr<const Nerve<F>> source_, target_;
  mutable std::map<int, InftyMorphism<F>> levels_;
};

// A filler of a horn in N(A) lying over a given filler in N(A') of its image, for a strict fibration Φ.
template <class F>
std::optional<Vec<F>> lift_horn(const NerveMap<F>& map, int n, const FaceMap<F>& horn, const Vec<F>& below,
                                const SearchOptions<F>& opt = {}) {
  const InftyMorphism<F>& phi = map.morphism();
  if (!phi.is_strict()) throw InvariantError("horn lifting is implemented for strict morphisms");
  if (!is_fibration(phi.source().tangent(), phi.target().tangent(), phi.tangent_map()))
    throw InvariantError("horn lifting needs a fibration");
  for (const auto& [i, y] : horn)
    if (!(map.apply(n - 1, y) == map.target().face(n, i, below))) throw InvariantError("lower filler does not extend the image horn");
  const Nerve<F>& src = map.source();
  const Matrix<F> lin = map.at(n).tangent();
  // The horn faces plus (Φ ⊗ id) x = below, as one linear system on A ⊗ N*(Δ^n).
  std::vector<int> faces;
  for (const auto& [i, y] : horn) faces.push_back(i);
  const std::size_t fr = src.dim(n - 1);
  Matrix<F> cons(faces.size() * fr + lin.rows(), src.dim(n));
  Vec<F> values;
  for (std::size_t p = 0; p < faces.size(); ++p) {
    const Matrix<F>& d = src.face_matrix(n, faces[p]);
    for (std::size_t r = 0; r < fr; ++r)
      for (std::size_t c = 0; c < d.cols(); ++c) cons(p * fr + r, c) = d(r, c);
    const Vec<F>& y = horn.at(faces[p]);
    values.insert(values.end(), y.begin(), y.end());
  }
  for (std::size_t r = 0; r < lin.rows(); ++r)
    for (std::size_t c = 0; c < lin.cols(); ++c) cons(faces.size() * fr + r, c) = lin(r, c);
  values.insert(values.end(), below.begin(), below.end());
  return MCSolver<F>(src.level(n), cons).find_one(values, opt);
}

// Whether two partitions of the same finite set coincide.
template <class F>
bool same_partition(Classes<F> a, Classes<F> b) {
  for (auto& c : a) std::sort(c.begin(), c.end());
  for (auto& c : b) std::sort(c.begin(), c.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Desk-scale homotopy equivalence test for N(Φ): bijection on π_0, and at every vertex α
// (or one per component) an isomorphism π_1(N(A), α) -> π_1(N(A'), Φ_*α) computed on the nerve.
template <class F>
struct HomotopyEquivalenceReport {
  bool pi0_bijective = false;
  std::size_t components = 0;
  std::size_t vertices_checked = 0;
  std::vector<Vec<F>> pi1_failures;  // vertices where π_1 is not mapped isomorphically

  bool ok() const { return pi0_bijective && pi1_failures.empty(); }
};

template <class F>
HomotopyEquivalenceReport<F> check_homotopy_equivalence(const InftyMorphism<F>& phi, bool every_vertex = true,
                                                        const SearchOptions<F>& opt = {}) {
  const NerveMap<F> map(phi);
  HomotopyEquivalenceReport<F> rep;
  const Classes<F> src = pi0(map.source(), opt);
  const Classes<F> tgt = pi0(map.target(), opt);
  rep.components = src.size();
  std::map<Vec<F>, std::size_t> tgt_class;
  for (std::size_t c = 0; c < tgt.size(); ++c)
    for (const auto& v : tgt[c]) tgt_class.emplace(v, c);
  std::vector<std::size_t> induced;
  bool well_defined = true;
  for (const auto& cls : src) {
    std::set<std::size_t> images;
    for (const auto& v : cls) images.insert(tgt_class.at(map.apply(0, v)));
    well_defined = well_defined && images.size() == 1;
    induced.push_back(*images.begin());
  }
  rep.pi0_bijective = well_defined && src.size() == tgt.size() &&
                      std::set<std::size_t>(induced.begin(), induced.end()).size() == induced.size();

  for (const auto& cls : src)
    for (std::size_t m = 0; m < (every_vertex ? cls.size() : 1); ++m) {
      const Vec<F>& alpha = cls[m];
      const Vec<F> image = map.apply(0, alpha);
      const BasepointShift<F> here(phi.source_ptr(), alpha), there(phi.target_ptr(), image);
      const HomotopyGroup<F> g = pi_n_oracle(here.twisted(), 1, opt);
      const HomotopyGroup<F> h = pi_n_oracle(there.twisted(), 1, opt);
      std::vector<int> f;
      for (const auto& beta : g.representatives)
        f.push_back(h.element(there.unapply(1, map.apply(1, here.apply(1, beta)))));
      ++rep.vertices_checked;
      if (!is_isomorphism(g.table, h.table, f)) rep.pi1_failures.push_back(alpha);
    }
  return rep;
}

}  // namespace ainf
