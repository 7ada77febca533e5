#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/cochains.hpp"
#include "ainf/product.hpp"
#include "ainf/tensor.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

// A subspace with a basis adapted to the filtration: every basis vector carries the lowest
// weight of its support, so F_w of the subspace is spanned by the basis vectors of weight >= w.
template <class F>
struct FilteredSubspace {
  FilteredSpace space;
  Matrix<F> inclusion;    // ambient x sub
  Matrix<F> coordinates;  // sub x ambient; a left inverse of the inclusion

  bool contains(const Vec<F>& v) const { return inclusion.apply(coordinates.apply(v)) == v; }
  Vec<F> coordinates_of(const Vec<F>& v, const std::string& what) const {
    Vec<F> c = coordinates.apply(v);
    if (!(inclusion.apply(c) == v)) throw std::logic_error(what + " leaves the subspace");
    return c;
  }
};

// Kernel of a degree-0 filtered map in a reduced echelon basis led by the lowest weights.
template <class F>
FilteredSubspace<F> filtered_kernel(const FilteredLinearMap<F>& f, const std::string& prefix = "k") {
  if (f.degree() != 0) throw std::invalid_argument("filtered kernel needs a degree-0 map");
  const FilteredSpace& a = f.source();
  const FilteredSpace& b = f.target();
  std::vector<BasisVector> basis;
  std::vector<Vec<F>> vectors;
  std::vector<int> pivots;
  const std::vector<int> order = a.filtration_order();
  for (int k : a.degrees()) {
    const auto cols = a.indices(k);
    std::vector<Vec<F>> local;
    for (const auto& v : kernel_basis(f.matrix().submatrix(b.indices(k), cols), detail::local_order(a, cols)))
      local.push_back(detail::embed(a.dim(), cols, v));
    for (auto& v : echelon_basis(a.dim(), local, order)) {
      int pivot = -1;
      for (int i : order)
        if (!is_zero(v[i])) {
          pivot = i;
          break;
        }
      basis.push_back({prefix + std::to_string(basis.size()), k, a.weight(pivot)});
      pivots.push_back(pivot);
      vectors.push_back(std::move(v));
    }
  }
  Matrix<F> incl = Matrix<F>::from_columns(a.dim(), vectors);
  Matrix<F> coords(vectors.size(), a.dim());
  for (std::size_t i = 0; i < pivots.size(); ++i) coords(i, pivots[i]) = F(1);
  return {FilteredSpace(std::move(basis), a.nilpotency()), std::move(incl), std::move(coords)};
}

namespace detail {

// Expansion of the word w of `sub` letters into ambient letters.
template <class F>
Tensor<F> expand_word(const Word& w, const Matrix<F>& inclusion) {
  Tensor<F> t{{Word{}, F(1)}};
  for (int letter : w) {
    Tensor<F> next;
    for (const auto& [prefix, c] : t)
      for (std::size_t i = 0; i < inclusion.rows(); ++i) {
        if (is_zero(inclusion(i, letter))) continue;
        Word nw = prefix;
        nw.push_back(static_cast<int>(i));
        tensor_add(next, nw, c * inclusion(i, letter));
      }
    t = std::move(next);
  }
  return t;
}

// Table on the admissible words of `sub` sending w to `out(expanded w)`.
template <class F, class Eval>
MultiMap<F> tabulate(const FilteredSpace& sub, int arity, int degree, const Matrix<F>& inclusion, Eval&& out) {
  MultiMap<F> m(arity, degree);
  for (const Word& w : admissible_words(sub, arity)) {
    const Vec<F> v = out(expand_word(w, inclusion));
    for (std::size_t o = 0; o < v.size(); ++o)
      if (!is_zero(v[o])) m.add(w, static_cast<int>(o), v[o]);
  }
  return m;
}

template <class F>
Matrix<F> block_diagonal(const Matrix<F>& a, const Matrix<F>& b) {
  Matrix<F> m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("stacking matrices of different widths");
  Matrix<F> m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error(what);
}

}  // namespace detail

template <class F>
bool is_weak_equivalence(const InftyMorphism<F>& phi) {
  return is_weak_equivalence(phi.source().tangent(), phi.target().tangent(), phi.tangent_map());
}

template <class F>
bool is_fibration(const InftyMorphism<F>& phi) {
  return is_fibration(phi.source().tangent(), phi.target().tangent(), phi.tangent_map());
}

// Φ = pr ∘ ⟨Φ, Ψ⟩ with ⟨Φ, Ψ⟩ : A -> A' × ker Φ^1_1 an isomorphism, for an acyclic fibration Φ.
template <class F>
struct AcyclicDecomposition {
  FilteredSubspace<F> kernel_basis;
  AlgebraPtr<F> kernel;     // ker Φ^1_1 with the restricted differential; abelian and acyclic
  AcyclicContraction<F> contraction;
  InftyMorphism<F> psi;     // A -> ker Φ^1_1
  Product<F> product;       // A' × ker Φ^1_1
  InftyMorphism<F> iso;     // ⟨Φ, Ψ⟩
  InftyMorphism<F> inverse;
};

template <class F>
AcyclicDecomposition<F> decompose_acyclic_fibration(const InftyMorphism<F>& phi) {
  const AInfinityAlgebra<F>& a = phi.source();
  const FilteredLinearMap<F> lin = phi.tangent_map();
  AcyclicContraction<F> ch = contract_acyclic_fibration(a.tangent(), phi.target().tangent(), lin);
  FilteredSubspace<F> ker = filtered_kernel(lin);
  const std::size_t dk = ker.space.dim();

  std::vector<MultiMap<F>> dk_ops;
  dk_ops.push_back(detail::tabulate(ker.space, 1, 1, ker.inclusion, [&](const Tensor<F>& t) {
    return ker.coordinates_of(apply_projection(a.ops(), t, a.dim()), "differential of the kernel");
  }));
  auto kalg = share(AInfinityAlgebra<F>(ker.space, std::move(dk_ops)));

  // Ψ^1_1 = id - τΦ^1_1 and Ψ^1_n = Ψ^1_1 h Q^1_n, read in kernel coordinates.
  const Matrix<F> retraction = Matrix<F>::identity(a.dim()) - ch.section.matrix() * lin.matrix();
  const Matrix<F> to_ker = ker.coordinates * retraction;
  detail::require(ker.inclusion * to_ker == retraction, "id - τΦ does not land in the kernel");
  std::vector<MultiMap<F>> psi_maps{MultiMap<F>::from_matrix(to_ker, 0)};
  const Matrix<F> to_ker_h = to_ker * ch.homotopy.matrix();
  for (int n = 2; n <= a.max_arity(); ++n) psi_maps.push_back(post_compose(to_ker_h, a.op(n), -1));
  InftyMorphism<F> psi(phi.source_ptr(), kalg, std::move(psi_maps));

  Product<F> prod = product(phi.target_ptr(), AlgebraPtr<F>(kalg));
  InftyMorphism<F> iso = pairing(phi, psi, prod);
  const Matrix<F> theta = Matrix<F>::from_columns(a.dim(), [&] {
    std::vector<Vec<F>> cols;
    for (std::size_t j = 0; j < phi.target().dim(); ++j) cols.push_back(ch.section.matrix().column(j));
    for (std::size_t j = 0; j < dk; ++j) cols.push_back(ker.inclusion.column(j));
    return cols;
  }());
  detail::require(theta * iso.tangent() == Matrix<F>::identity(a.dim()) &&
                         iso.tangent() * theta == Matrix<F>::identity(prod.algebra->dim()),
                     "⟨Φ, Ψ⟩ is not invertible with linear inverse τ + inclusion");
  InftyMorphism<F> inv = invert(iso);
  detail::require(inv.tangent() == theta, "linear part of ⟨Φ, Ψ⟩^-1 differs from τ + inclusion");
  detail::require(compose(prod.pr_left, iso) == phi, "pr ∘ ⟨Φ, Ψ⟩ != Φ");
  return {std::move(ker), std::move(kalg), std::move(ch), std::move(psi), std::move(prod), std::move(iso), std::move(inv)};
}

// χ with Φχ = id for an acyclic fibration Φ; χ is a weak equivalence.
template <class F>
InftyMorphism<F> right_inverse(const InftyMorphism<F>& phi) {
  const AcyclicDecomposition<F> dec = decompose_acyclic_fibration(phi);
  InftyMorphism<F> chi = compose(dec.inverse, dec.product.in_left);
  detail::require(compose(phi, chi) == InftyMorphism<F>::identity(phi.target_ptr()), "Φχ != id");
  return chi;
}

// Pullback Ã = A' ×_{A''} A of a strict fibration Φ : A -> A'' along Θ : A' -> A'', carried by
// A' × ker Φ^1_1 and transported from A' × A through the isomorphisms H and J.
template <class F>
class StrictPullback {
 public:
  StrictPullback(InftyMorphism<F> phi, InftyMorphism<F> theta)
      : phi_(checked_fibration(std::move(phi))),
        theta_(std::move(theta)),
        sigma_(filtered_section(phi_.tangent_map()).matrix()),
        ker_(filtered_kernel(phi_.tangent_map())),
        ambient_(product(theta_.source_ptr(), phi_.source_ptr())) {
    if (!(phi_.target() == theta_.target())) throw InvariantError("pullback legs have different targets");
    const AInfinityAlgebra<F>& a = phi_.source();
    const AInfinityAlgebra<F>& ap = theta_.source();
    const int n_max = a.max_arity();
    const std::size_t dp = ap.dim(), da = a.dim();

    // σΘ^1_k on A' words, shifted into the A summand of A' × A.
    Matrix<F> sigma_embed(dp + da, sigma_.cols());
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < sigma_.cols(); ++j) sigma_embed(dp + i, j) = sigma_(i, j);
    for (int k = 1; k <= n_max; ++k) {
      const MultiMap<F> st = post_compose(sigma_embed, theta_.map(k));
      MultiMap<F> hk = st, jk = st.scaled(F(-1));
      if (k == 1) {
        const auto id = MultiMap<F>::from_matrix(Matrix<F>::identity(dp + da), 0);
        hk += id;
        jk += id;
      }
      h_.push_back(std::move(hk));
      j_.push_back(std::move(jk));
    }
    const auto id_maps = std::vector<MultiMap<F>>{MultiMap<F>::from_matrix(Matrix<F>::identity(dp + da), 0)};
    const auto ident = detail::normalize_ops(id_maps, n_max, 0, "identity");
    detail::require(detail::normalize_ops(compose_maps(h_, j_, n_max), n_max, 0, "HJ") == ident, "HJ != id");
    detail::require(detail::normalize_ops(compose_maps(j_, h_, n_max), n_max, 0, "JH") == ident, "JH != id");

    // Ã = A' × ker Φ^1_1 inside A' × A.
    inclusion_ = detail::block_diagonal(Matrix<F>::identity(dp), ker_.inclusion);
    coordinates_ = detail::block_diagonal(Matrix<F>::identity(dp), ker_.coordinates);
    FilteredSpace carrier = direct_sum(ap.space(), ker_.space);
    const auto deg = ambient_.algebra->space().degree_vector();
    std::vector<MultiMap<F>> ops;
    for (int n = 1; n <= n_max; ++n)
      ops.push_back(detail::tabulate(carrier, n, 1, inclusion_, [&](const Tensor<F>& t) {
        const Tensor<F> q = apply_coderivation(ambient_.algebra->ops(), deg, apply_coalgebra_map(h_, t));
        return to_carrier(apply_projection(j_, q, dp + da), "J Q H");
      }));
    algebra_ = share(AInfinityAlgebra<F>(std::move(carrier), std::move(ops)));

    leg_a_.emplace(restricted_leg(ambient_.pr_right));
    leg_ap_.emplace(restricted_leg(ambient_.pr_left));
    detail::require(compose(phi_, *leg_a_) == compose(theta_, *leg_ap_), "pullback square does not commute");
    detail::require(leg_ap_->is_strict(), "pr' H is not strict");
  }

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const InftyMorphism<F>& leg_a() const { return *leg_a_; }    // pr ∘ H : Ã -> A
  const InftyMorphism<F>& leg_ap() const { return *leg_ap_; }  // pr' ∘ H : Ã -> A'
  const std::vector<MultiMap<F>>& h_maps() const { return h_; }
  const std::vector<MultiMap<F>>& j_maps() const { return j_; }

  // J ∘ (Ψ' × Ψ) : B -> Ã for a cone with ΦΨ = ΘΨ'.
  InftyMorphism<F> mediate(const InftyMorphism<F>& psi, const InftyMorphism<F>& psi_p) const {
    if (!(psi.target() == phi_.source()) || !(psi_p.target() == theta_.source()))
      throw InvariantError("cone legs do not match the pullback");
    if (!(compose(phi_, psi) == compose(theta_, psi_p))) throw InvariantError("cone does not commute: ΦΨ != ΘΨ'");
    const auto pair = pairing(psi_p, psi, ambient_);
    const auto j_pair = compose_maps(j_, pair.maps(), pair.max_arity());
    std::vector<MultiMap<F>> maps;
    for (const auto& m : j_pair) {
      MultiMap<F> c(m.arity(), 0);
      for (const auto& [w, s] : m.entries()) {
        const Vec<F> v = to_carrier(to_dense(s, inclusion_.rows()), "mediating morphism");
        for (std::size_t o = 0; o < v.size(); ++o)
          if (!is_zero(v[o])) c.add(w, static_cast<int>(o), v[o]);
      }
      maps.push_back(std::move(c));
    }
    InftyMorphism<F> med(psi.source_ptr(), algebra_, std::move(maps));
    detail::require(compose(*leg_a_, med) == psi && compose(*leg_ap_, med) == psi_p, "mediating morphism misses a leg");
    return med;
  }

  // A morphism into Ã is determined by its two legs when the linear parts of the legs are
  // jointly injective: the arity-n components are then solved for one arity at a time.
  bool mediation_is_unique() const {
    const Matrix<F> joint = detail::vstack(leg_a_->tangent(), leg_ap_->tangent());
    return kernel_basis(joint).empty();
  }

 private:
  static InftyMorphism<F> checked_fibration(InftyMorphism<F> phi) {
    if (!phi.is_strict()) throw InvariantError("pullback needs a strict fibration");
    if (!is_fibration(phi)) throw InvariantError("pullback needs a fibration (surjective on every filtration stage)");
    return phi;
  }

  Vec<F> to_carrier(const Vec<F>& v, const std::string& what) const {
    Vec<F> c = coordinates_.apply(v);
    if (!(inclusion_.apply(c) == v)) throw std::logic_error(what + " leaves A' × ker Φ");
    return c;
  }

  InftyMorphism<F> restricted_leg(const InftyMorphism<F>& pr) const {
    const auto ph = compose_maps(pr.maps(), h_, pr.max_arity());
    std::vector<MultiMap<F>> maps;
    for (int n = 1; n <= pr.max_arity(); ++n)
      maps.push_back(detail::tabulate(algebra_->space(), n, 0, inclusion_, [&](const Tensor<F>& t) {
        return apply_projection(ph, t, pr.target().dim());
      }));
    return InftyMorphism<F>(algebra_, pr.target_ptr(), std::move(maps));
  }

  InftyMorphism<F> phi_, theta_;
  Matrix<F> sigma_;
  FilteredSubspace<F> ker_;
  Product<F> ambient_;  // A' × A
  std::vector<MultiMap<F>> h_, j_;
  Matrix<F> inclusion_, coordinates_;
  AlgebraPtr<F> algebra_;
  std::optional<InftyMorphism<F>> leg_a_, leg_ap_;
};

// Path object A -> A ⊗ N*(Δ^1) -> A × A factoring the diagonal.
template <class F>
struct PathObject {
  AlgebraPtr<F> path;
  Product<F> square;
  InftyMorphism<F> constant;   // id ⊗ 1, a weak equivalence
  InftyMorphism<F> endpoints;  // id ⊗ (ev_0, ev_1), a fibration
  InftyMorphism<F> ev0, ev1;   // acyclic fibrations
};

template <class F>
PathObject<F> path_object(const AlgebraPtr<F>& a) {
  const auto interval = cochains<F>(1);
  auto path = share(tensor_with_dga(*a, interval->algebra()));
  const std::size_t d = a->dim();
  const Vec<F> unit = interval->unit();
  Matrix<F> u(unit.size(), 1);
  for (std::size_t i = 0; i < unit.size(); ++i) u(i, 0) = unit[i];
  const auto ev = interval_evaluations<F>();
  const Matrix<F> e0 = tensor_identity(d, ev.ev0), e1 = tensor_identity(d, ev.ev1);
  Product<F> sq = product(a, a);
  PathObject<F> p{path,
                  sq,
                  InftyMorphism<F>::strict(a, path, tensor_identity(d, u)),
                  InftyMorphism<F>::strict(path, sq.algebra, detail::vstack(e0, e1)),
                  InftyMorphism<F>::strict(path, a, e0),
                  InftyMorphism<F>::strict(path, a, e1)};
  const Matrix<F> diag = detail::vstack(Matrix<F>::identity(d), Matrix<F>::identity(d));
  detail::require(compose(p.endpoints, p.constant) == InftyMorphism<F>::strict(a, sq.algebra, diag),
                     "path object does not factor the diagonal");
  detail::require(is_weak_equivalence(p.constant), "constant paths are not a weak equivalence");
  detail::require(is_fibration(p.endpoints), "endpoint map is not a fibration");
  return p;
}

// Θ = P_Θ ∘ Ψ with Ψ a weak equivalence split by the strict acyclic fibration pr' H and P_Θ a
// fibration, acyclic exactly when Θ is a weak equivalence.
template <class F>
struct Factorization {
  PathObject<F> path;
  StrictPullback<F> pullback;  // of ev_0 along Θ
  InftyMorphism<F> psi;        // A' -> Ã
  InftyMorphism<F> fibration;  // P_Θ = ev_1 ∘ pr H : Ã -> A''
};

template <class F>
Factorization<F> factorize(const InftyMorphism<F>& theta) {
  PathObject<F> po = path_object(theta.target_ptr());
  StrictPullback<F> pb(po.ev0, theta);
  InftyMorphism<F> psi = pb.mediate(compose(po.constant, theta), InftyMorphism<F>::identity(theta.source_ptr()));
  InftyMorphism<F> fib = compose(po.ev1, pb.leg_a());
  detail::require(compose(fib, psi) == theta, "Θ != P_Θ Ψ");
  detail::require(is_fibration(fib), "P_Θ is not a fibration");
  detail::require(is_weak_equivalence(psi), "Ψ is not a weak equivalence");
  detail::require(is_weak_equivalence(fib) == is_weak_equivalence(theta), "P_Θ acyclic iff Θ a weak equivalence fails");
  return {std::move(po), std::move(pb), std::move(psi), std::move(fib)};
}

}  // namespace ainf
