#pragma once

#include "ainf/complex.hpp"
#include "ainf/dga.hpp"
#include "ainf/multilinear.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

// Outcome of an identity check; `detail` names the first failing input when !ok.
struct Verdict {
  bool ok = true;
  std::string detail;
  explicit operator bool() const { return ok; }
  static Verdict pass() { return {}; }
  static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

// `full` re-verifies the defining identities; `structural` checks only degrees and weights and
// is reserved for constructions whose identities are covered by their own tests.
enum class Validation { full, structural };

namespace detail {

template <class F>
void check_table(const MultiMap<F>& m, const FilteredSpace& in, const FilteredSpace& out, int degree, const std::string& what) {
  if (m.degree() != degree) throw InvariantError(what + ": wrong operation degree");
  for (const auto& [w, s] : m.entries()) {
    int wt = 0, dg = 0;
    for (int i : w) {
      if (i < 0 || i >= static_cast<int>(in.dim())) throw InvariantError(what + ": input index out of range");
      wt += in.weight(i);
      dg += in.degree(i);
    }
    if (wt >= in.nilpotency())
      throw InvariantError(what + ": filtration: entry on " + describe_word<F>(in, w) + " has input weight " +
                           std::to_string(wt) + " >= N");
    for (const auto& [o, c] : s) {
      if (o < 0 || o >= static_cast<int>(out.dim())) throw InvariantError(what + ": output index out of range");
      if (out.degree(o) != dg + degree)
        throw InvariantError(what + ": degree: entry on " + describe_word<F>(in, w) + " has output '" + out.name(o) +
                             "' of the wrong degree");
      if (out.weight(o) < wt)
        throw InvariantError(what + ": filtration: entry on " + describe_word<F>(in, w) + " lands in '" + out.name(o) +
                             "' of weight " + std::to_string(out.weight(o)) + " < " + std::to_string(wt));
    }
  }
}

template <class F>
std::vector<MultiMap<F>> normalize_ops(std::vector<MultiMap<F>> ops, int max_arity, int degree, const std::string& what) {
  for (std::size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].arity() != static_cast<int>(k) + 1) throw InvariantError(what + ": operation list must be ordered by arity");
    if (static_cast<int>(k) + 1 > max_arity && !ops[k].empty())
      throw InvariantError(what + ": nonzero operation of arity " + std::to_string(k + 1) + " >= N");
  }
  ops.resize(std::max(0, max_arity));
  for (int k = 0; k < max_arity; ++k)
    if (ops[k].arity() != k + 1 || (ops[k].empty() && ops[k].degree() != degree)) ops[k] = MultiMap<F>(k + 1, degree);
  return ops;
}

template <class F>
std::string first_word(const FilteredSpace& s, const MultiMap<F>& m) {
  return m.empty() ? std::string() : describe_word<F>(s, m.entries().begin()->first);
}

}  // namespace detail

// Complete filtered shifted A-infinity algebra: degree +1 operations Q^1_k, k = 1..N-1.
template <class F>
class AInfinityAlgebra {
 public:
  AInfinityAlgebra(FilteredSpace space, std::vector<MultiMap<F>> ops, Validation v = Validation::full)
      : space_(std::move(space)),
        ops_(detail::normalize_ops(std::move(ops), space_.nilpotency() - 1, 1, "A-infinity structure")),
        characteristic_(FieldTraits<F>::characteristic()) {
    for (const auto& op : ops_) detail::check_table(op, space_, space_, 1, "Q^1_" + std::to_string(op.arity()));
    if (v == Validation::full) {
      const Verdict st = stasheff_verdict();
      if (!st) throw InvariantError("Stasheff identity fails: " + st.detail);
    }
  }

  static AInfinityAlgebra zero(int nilpotency = 2) { return AInfinityAlgebra(FilteredSpace({}, nilpotency), {}); }

  const FilteredSpace& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  int nilpotency() const { return space_.nilpotency(); }
  int max_arity() const { return space_.nilpotency() - 1; }
  std::uint32_t characteristic() const { return characteristic_; }
  const std::vector<MultiMap<F>>& ops() const { return ops_; }
  const MultiMap<F>& op(int k) const {
    if (k < 1 || k > max_arity()) throw std::out_of_range("operation arity out of range");
    return ops_[k - 1];
  }
  bool is_abelian() const {
    for (int k = 2; k <= max_arity(); ++k)
      if (!op(k).empty()) return false;
    return true;
  }

  Matrix<F> differential() const { return max_arity() >= 1 ? op(1).matrix(dim(), dim()) : Matrix<F>(dim(), dim()); }
  FilteredComplex<F> tangent() const { return FilteredComplex<F>(space_, differential()); }

  // Sum over n of Q^1_n(a, ..., a); a must be homogeneous of degree 0.
  Vec<F> curvature(const Vec<F>& a) const {
    if (a.size() != dim()) throw std::invalid_argument("element has the wrong length");
    if (space_.homogeneous_degree(a, 0) != 0) throw InvariantError("curvature needs a degree-0 element");
    Vec<F> out(dim(), F(0));
    for (const auto& q : ops_) {
      const Vec<F> term = q.evaluate_diagonal(a, dim());
      axpy(out, F(1), term);
    }
    return out;
  }

  // Sum_{j, pos} Q^1_{n-j+1} o_pos Q^1_j with Koszul signs, for every n; zero iff A-infinity.
  MultiMap<F> stasheff_defect(int n) const {
    const auto deg = space_.degree_vector();
    MultiMap<F> acc(n, 2);
    for (int j = 1; j <= n; ++j) {
      const int outer = n - j + 1;
      if (outer > max_arity() || j > max_arity()) continue;
      for (int pos = 0; pos < outer; ++pos) acc += compose_at(op(outer), pos, op(j), &deg);
    }
    return acc;
  }
  Verdict stasheff_verdict() const {
    for (int n = 1; n <= max_arity(); ++n) {
      const auto defect = stasheff_defect(n);
      if (!defect.empty())
        return Verdict::fail("arity " + std::to_string(n) + " on " + detail::first_word(space_, defect));
    }
    return Verdict::pass();
  }

  AInfinityAlgebra with_nilpotency(int n) const {
    return AInfinityAlgebra(space_.with_nilpotency(n), ops_, Validation::structural);
  }

  friend bool operator==(const AInfinityAlgebra& a, const AInfinityAlgebra& b) {
    return a.space_ == b.space_ && a.ops_ == b.ops_;
  }

 private:
  FilteredSpace space_;
  std::vector<MultiMap<F>> ops_;
  std::uint32_t characteristic_;
};

template <class F>
using AlgebraPtr = std::shared_ptr<const AInfinityAlgebra<F>>;

template <class F>
AlgebraPtr<F> share(AInfinityAlgebra<F> a) {
  return std::make_shared<const AInfinityAlgebra<F>>(std::move(a));
}

template <class F>
Verdict check_stasheff(const AInfinityAlgebra<F>& a) {
  return a.stasheff_verdict();
}

// Value of the coderivation component Q^k_n on every admissible basis word of arity n.
template <class F>
std::map<Word, Tensor<F>> extend_coderivation(const AInfinityAlgebra<F>& a, int k, int n) {
  if (k < 1 || k > n) throw std::invalid_argument("extend_coderivation needs 1 <= k <= n");
  const FilteredSpace& s = a.space();
  std::map<Word, Tensor<F>> out;
  const int j = n - k + 1;
  if (j > a.max_arity()) return out;
  for (const Word& w : admissible_words(s, n)) {
    Tensor<F> t;
    int prefix = 0;
    for (int pos = 0; pos < k; ++pos) {
      const Word sub(w.begin() + pos, w.begin() + pos + j);
      if (const Sparse<F>* val = a.op(j).find(sub)) {
        for (const auto& [o, c] : *val) {
          Word nw(w.begin(), w.begin() + pos);
          nw.push_back(o);
          nw.insert(nw.end(), w.begin() + pos + j, w.end());
          tensor_add(t, nw, (prefix & 1) ? -c : c);
        }
      }
      prefix += s.degree(w[pos]);
    }
    if (!t.empty()) out.emplace(w, std::move(t));
  }
  return out;
}

// Infinity-morphism: degree 0 maps Phi^1_k, k = 1..N-1, between algebras with equal N.
template <class F>
class InftyMorphism {
 public:
  InftyMorphism(AlgebraPtr<F> source, AlgebraPtr<F> target, std::vector<MultiMap<F>> maps, Validation v = Validation::full)
      : src_(std::move(source)), tgt_(std::move(target)) {
    if (!src_ || !tgt_) throw std::invalid_argument("morphism needs a source and a target");
    if (src_->nilpotency() != tgt_->nilpotency())
      throw InvariantError("morphism between algebras of different nilpotency length; raise N first");
    if (src_->characteristic() != tgt_->characteristic()) throw InvariantError("morphism between different fields");
    maps_ = detail::normalize_ops(std::move(maps), src_->max_arity(), 0, "morphism");
    for (const auto& m : maps_) detail::check_table(m, src_->space(), tgt_->space(), 0, "Phi^1_" + std::to_string(m.arity()));
    if (v == Validation::full) {
      const Verdict ok = morphism_verdict();
      if (!ok) throw InvariantError("infinity-morphism identity fails: " + ok.detail);
    }
  }

  static InftyMorphism identity(AlgebraPtr<F> a) {
    return strict(a, a, Matrix<F>::identity(a->dim()));
  }
  static InftyMorphism strict(AlgebraPtr<F> s, AlgebraPtr<F> t, const Matrix<F>& m, Validation v = Validation::full) {
    std::vector<MultiMap<F>> maps;
    maps.push_back(MultiMap<F>::from_matrix(m, 0));
    return InftyMorphism(std::move(s), std::move(t), std::move(maps), v);
  }
  static InftyMorphism zero(AlgebraPtr<F> s, AlgebraPtr<F> t) { return InftyMorphism(std::move(s), std::move(t), {}); }

  const AInfinityAlgebra<F>& source() const { return *src_; }
  const AInfinityAlgebra<F>& target() const { return *tgt_; }
  const AlgebraPtr<F>& source_ptr() const { return src_; }
  const AlgebraPtr<F>& target_ptr() const { return tgt_; }
  int max_arity() const { return src_->max_arity(); }
  const std::vector<MultiMap<F>>& maps() const { return maps_; }
  const MultiMap<F>& map(int k) const {
    if (k < 1 || k > max_arity()) throw std::out_of_range("morphism arity out of range");
    return maps_[k - 1];
  }
  bool is_strict() const {
    for (int k = 2; k <= max_arity(); ++k)
      if (!map(k).empty()) return false;
    return true;
  }
  Matrix<F> tangent() const {
    return max_arity() >= 1 ? map(1).matrix(src_->dim(), tgt_->dim()) : Matrix<F>(tgt_->dim(), src_->dim());
  }
  FilteredLinearMap<F> tangent_map() const {
    return FilteredLinearMap<F>(src_->space(), tgt_->space(), 0, tangent());
  }

  // Sum_k Phi^1_k(a, ..., a).
  Vec<F> pushforward(const Vec<F>& a) const {
    Vec<F> out(tgt_->dim(), F(0));
    for (const auto& m : maps_) axpy(out, F(1), m.evaluate_diagonal(a, tgt_->dim()));
    return out;
  }

  // Phi Q - Q' Phi restricted to arity n.
  MultiMap<F> morphism_defect(int n) const {
    const auto deg = src_->space().degree_vector();
    MultiMap<F> lhs(n, 1);
    for (int j = 1; j <= n; ++j) {
      const int outer = n - j + 1;
      if (outer > max_arity() || j > max_arity()) continue;
      for (int pos = 0; pos < outer; ++pos) lhs += compose_at(map(outer), pos, src_->op(j), &deg);
    }
    for (int k = 1; k <= n && k <= max_arity(); ++k) {
      if (tgt_->op(k).empty()) continue;
      for (const auto& parts : compositions(n, k)) {
        std::vector<const MultiMap<F>*> blocks;
        for (int p : parts) blocks.push_back(&map(p));
        lhs -= compose_blocks(tgt_->op(k), blocks);
      }
    }
    return lhs;
  }
  Verdict morphism_verdict() const {
    for (int n = 1; n <= max_arity(); ++n) {
      const auto defect = morphism_defect(n);
      if (!defect.empty())
        return Verdict::fail("arity " + std::to_string(n) + " on " + detail::first_word(src_->space(), defect));
    }
    return Verdict::pass();
  }

  friend bool operator==(const InftyMorphism& a, const InftyMorphism& b) {
    return *a.src_ == *b.src_ && *a.tgt_ == *b.tgt_ && a.maps_ == b.maps_;
  }

 private:
  AlgebraPtr<F> src_, tgt_;
  std::vector<MultiMap<F>> maps_;
};

template <class F>
Verdict check_morphism(const InftyMorphism<F>& f) {
  return f.morphism_verdict();
}

// Coalgebra-morphism extension composite: (Psi Phi)^1_n = sum_k Psi^1_k Phi^k_n.
template <class F>
std::vector<MultiMap<F>> compose_maps(const std::vector<MultiMap<F>>& psi, const std::vector<MultiMap<F>>& phi, int max_arity) {
  std::vector<MultiMap<F>> out;
  for (int n = 1; n <= max_arity; ++n) {
    MultiMap<F> acc(n, 0);
    for (int k = 1; k <= n && k <= static_cast<int>(psi.size()); ++k) {
      if (psi[k - 1].empty()) continue;
      for (const auto& parts : compositions(n, k)) {
        std::vector<const MultiMap<F>*> blocks;
        bool zero = false;
        for (int p : parts) {
          if (p > static_cast<int>(phi.size()) || phi[p - 1].empty()) zero = true;
          else blocks.push_back(&phi[p - 1]);
        }
        if (!zero) acc += compose_blocks(psi[k - 1], blocks);
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

template <class F>
InftyMorphism<F> compose(const InftyMorphism<F>& psi, const InftyMorphism<F>& phi, Validation v = Validation::full) {
  if (!(phi.target() == psi.source())) throw InvariantError("composition of non-composable morphisms");
  return InftyMorphism<F>(phi.source_ptr(), psi.target_ptr(), compose_maps(psi.maps(), phi.maps(), phi.max_arity()), v);
}

// Maps of the inverse coalgebra automorphism: G_1 = F_1^{-1}, G_n = -G_1 Σ_{k>=2} F_k(G, ..., G).
template <class F>
std::vector<MultiMap<F>> inverse_maps(const std::vector<MultiMap<F>>& f, std::size_t dim, int max_arity) {
  const MultiMap<F> g1 = MultiMap<F>::from_matrix(inverse(f.at(0).matrix(dim, dim)), 0);
  std::vector<MultiMap<F>> g{g1};
  for (int n = 2; n <= max_arity; ++n) {
    MultiMap<F> rest(n, 0);
    for (int k = 2; k <= n && k <= static_cast<int>(f.size()); ++k) {
      if (f[k - 1].empty()) continue;
      for (const auto& parts : compositions(n, k)) {
        std::vector<const MultiMap<F>*> blocks;
        for (int p : parts) blocks.push_back(&g[p - 1]);
        rest += compose_blocks(f[k - 1], blocks);
      }
    }
    g.push_back(compose_at(g1, 0, rest, nullptr).scaled(F(-1)));
  }
  return g;
}

// Inverse of a morphism with invertible linear part.
template <class F>
InftyMorphism<F> invert(const InftyMorphism<F>& phi) {
  if (phi.source().dim() != phi.target().dim()) throw InvariantError("morphism with non-square linear part is not invertible");
  return InftyMorphism<F>(phi.target_ptr(), phi.source_ptr(), inverse_maps(phi.maps(), phi.source().dim(), phi.max_arity()));
}

// Image of a tensor under the coalgebra morphism determined by `maps` (degree 0).
template <class F>
Tensor<F> apply_coalgebra_map(const std::vector<MultiMap<F>>& maps, const Tensor<F>& t) {
  Tensor<F> out;
  for (const auto& [w, c] : t) {
    const int n = static_cast<int>(w.size());
    for (int k = 1; k <= n; ++k)
      for (const auto& parts : compositions(n, k)) {
        std::vector<const Sparse<F>*> vals;
        int start = 0;
        bool zero = false;
        for (int p : parts) {
          if (p > static_cast<int>(maps.size())) {
            zero = true;
            break;
          }
          const Sparse<F>* v = maps[p - 1].find(Word(w.begin() + start, w.begin() + start + p));
          if (!v) {
            zero = true;
            break;
          }
          vals.push_back(v);
          start += p;
        }
        if (zero) continue;
        // Cartesian product of the block outputs.
        std::vector<std::size_t> idx(k, 0);
        while (true) {
          Word nw(k);
          F coef = c;
          for (int i = 0; i < k; ++i) {
            nw[i] = (*vals[i])[idx[i]].first;
            coef *= (*vals[i])[idx[i]].second;
          }
          tensor_add(out, nw, coef);
          int i = k - 1;
          while (i >= 0 && ++idx[i] == vals[i]->size()) idx[i--] = 0;
          if (i < 0) break;
        }
      }
  }
  return out;
}

// Image of a tensor under the coderivation determined by `ops` (all of the given odd/even degree).
template <class F>
Tensor<F> apply_coderivation(const std::vector<MultiMap<F>>& ops, const std::vector<int>& degrees, const Tensor<F>& t) {
  Tensor<F> out;
  for (const auto& [w, c] : t) {
    const int n = static_cast<int>(w.size());
    for (int j = 1; j <= n && j <= static_cast<int>(ops.size()); ++j) {
      const MultiMap<F>& q = ops[j - 1];
      if (q.empty()) continue;
      const bool odd = (q.degree() % 2) != 0;
      int prefix = 0;
      for (int pos = 0; pos + j <= n; ++pos) {
        if (const Sparse<F>* v = q.find(Word(w.begin() + pos, w.begin() + pos + j))) {
          for (const auto& [o, cc] : *v) {
            Word nw(w.begin(), w.begin() + pos);
            nw.push_back(o);
            nw.insert(nw.end(), w.begin() + pos + j, w.end());
            const F coef = c * cc;
            tensor_add(out, nw, (odd && (prefix & 1)) ? -coef : coef);
          }
        }
        prefix += degrees[w[pos]];
      }
    }
  }
  return out;
}

// Projection to the first tensor power: sum over words of maps[|w|-1](w).
template <class F>
Vec<F> apply_projection(const std::vector<MultiMap<F>>& maps, const Tensor<F>& t, std::size_t out_dim) {
  Vec<F> out(out_dim, F(0));
  for (const auto& [w, c] : t) {
    const std::size_t n = w.size();
    if (n > maps.size()) continue;
    if (const Sparse<F>* v = maps[n - 1].find(w))
      for (const auto& [o, cc] : *v) out[o] += c * cc;
  }
  return out;
}

// Shifted A-infinity algebra of a filtered dg algebra: degrees down by one, Q^1_1 = d,
// Q^1_2(s^-1 a, s^-1 b) = (-1)^{deg a - 1} s^-1 mu(a, b).
template <class F>
AInfinityAlgebra<F> from_dga(const DGAlgebra<F>& c) {
  std::vector<BasisVector> basis;
  for (const auto& b : c.space().basis()) basis.push_back({b.name, b.degree - 1, b.weight});
  FilteredSpace s(std::move(basis), c.space().nilpotency());
  std::vector<MultiMap<F>> ops;
  MultiMap<F> q1(1, 1), q2(2, 1);
  for (const auto& [w, v] : c.d().entries()) q1.add(w, v, F(1));
  for (const auto& [w, v] : c.mu().entries()) q2.add(w, v, sign<F>(c.space().degree(w[0]) - 1));
  ops.push_back(std::move(q1));
  ops.push_back(std::move(q2));
  return AInfinityAlgebra<F>(std::move(s), std::move(ops));
}

}  // namespace ainf
