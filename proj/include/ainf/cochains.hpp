#pragma once

#include "ainf/dga.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace ainf {

// Strictly increasing vertex sequence of a non-degenerate simplex of Δ^n.
using SimplexLabel = std::vector<int>;

inline std::string simplex_name(const SimplexLabel& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i && s.back() > 9) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "]";
}

// All non-degenerate simplices of Δ^n, ordered by dimension then lexicographically.
inline std::vector<SimplexLabel> simplices(int n) {
  std::vector<SimplexLabel> out;
  for (int k = 0; k <= n; ++k) {
    std::vector<bool> pick(n + 1, false);
    std::fill(pick.begin(), pick.begin() + k + 1, true);
    do {
      SimplexLabel s;
      for (int i = 0; i <= n; ++i)
        if (pick[i]) s.push_back(i);
      out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

// Normalized cochains N*(Δ^n) with basis φ_σ dual to the non-degenerate simplices.
template <class F>
class NormalizedCochains {
 public:
  static constexpr int max_dimension = 6;

  explicit NormalizedCochains(int n) : n_(n), labels_(simplices(check_dim(n))), algebra_(build(n, labels_)) {
    for (std::size_t i = 0; i < labels_.size(); ++i) index_.emplace(labels_[i], static_cast<int>(i));
    // Top class is closed, squares to zero.
    const Vec<F> top = unit_vector<F>(dim(), top_index());
    if (!is_zero_vec(algebra_.differential(top))) throw std::logic_error("top cochain is not closed");
    if (n_ > 0 && !is_zero_vec(algebra_.multiply(top, top))) throw std::logic_error("top cochain squares to a nonzero class");
  }

  int n() const { return n_; }
  std::size_t dim() const { return labels_.size(); }
  const UnitalDGA<F>& algebra() const { return algebra_; }
  const std::vector<SimplexLabel>& labels() const { return labels_; }
  const SimplexLabel& label(int i) const { return labels_[i]; }
  int index(const SimplexLabel& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) throw std::out_of_range("not a non-degenerate simplex of Δ^" + std::to_string(n_));
    return it->second;
  }
  int vertex(int i) const { return index({i}); }
  int top_index() const { return static_cast<int>(dim()) - 1; }
  Vec<F> basis_vector(const SimplexLabel& s) const { return unit_vector<F>(dim(), index(s)); }
  Vec<F> top() const { return unit_vector<F>(dim(), top_index()); }
  const Vec<F>& unit() const { return algebra_.unit(); }

 private:
  static int check_dim(int n) {
    if (n < 0 || n > max_dimension) throw std::invalid_argument("simplex dimension must lie in [0, 6]");
    return n;
  }

  static UnitalDGA<F> build(int n, const std::vector<SimplexLabel>& labels) {
    std::map<SimplexLabel, int> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) idx.emplace(labels[i], static_cast<int>(i));
    std::vector<GradedName> basis;
    for (const auto& s : labels) basis.push_back({simplex_name(s), static_cast<int>(s.size()) - 1});

    // δφ_σ = Σ (-1)^i φ_τ over (k+1)-simplices τ with d_i τ = σ. This is the sign for which δ is a
    // left derivation of the cup product; on odd-degree cochains it equals (-1)^{k+1+i}.
    MultiMap<F> d(1, 1);
    for (std::size_t t = 0; t < labels.size(); ++t) {
      const auto& tau = labels[t];
      const int kp1 = static_cast<int>(tau.size()) - 1;
      if (kp1 < 1) continue;
      for (int i = 0; i <= kp1; ++i) {
        SimplexLabel sigma = tau;
        sigma.erase(sigma.begin() + i);
        d.add(Word{idx.at(sigma)}, static_cast<int>(t), sign<F>(i));
      }
    }
    // φ_σ ⌣ φ_τ = φ_{σ∪τ} when the last vertex of σ is the first of τ.
    MultiMap<F> mu(2, 0);
    for (std::size_t a = 0; a < labels.size(); ++a)
      for (std::size_t b = 0; b < labels.size(); ++b) {
        if (labels[a].back() != labels[b].front()) continue;
        SimplexLabel joined = labels[a];
        joined.insert(joined.end(), labels[b].begin() + 1, labels[b].end());
        mu.add(Word{static_cast<int>(a), static_cast<int>(b)}, idx.at(joined), F(1));
      }
    Vec<F> unit(labels.size(), F(0));
    for (int i = 0; i <= n; ++i) unit[idx.at({i})] = F(1);
    return UnitalDGA<F>(std::move(basis), std::move(d), std::move(mu), std::move(unit));
  }

  int n_;
  std::vector<SimplexLabel> labels_;
  UnitalDGA<F> algebra_;
  std::map<SimplexLabel, int> index_;
};

template <class F>
using CochainsPtr = std::shared_ptr<const NormalizedCochains<F>>;

// Process-wide cache; the tables are immutable once built.
template <class F>
CochainsPtr<F> cochains(int n) {
  thread_local std::map<std::pair<std::uint32_t, int>, CochainsPtr<F>> cache;
  const auto key = std::make_pair(FieldTraits<F>::characteristic(), n);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_shared<const NormalizedCochains<F>>(n)).first;
  return it->second;
}

// Face algebra map d_j : N*(Δ^n) -> N*(Δ^{n-1}), dual to the coface d^j skipping vertex j.
template <class F>
Matrix<F> face_map(int n, int j) {
  if (n < 1 || j < 0 || j > n) throw std::out_of_range("face index out of range");
  const auto src = cochains<F>(n);
  const auto tgt = cochains<F>(n - 1);
  Matrix<F> m(tgt->dim(), src->dim());
  for (std::size_t s = 0; s < src->dim(); ++s) {
    const auto& sigma = src->label(static_cast<int>(s));
    if (std::find(sigma.begin(), sigma.end(), j) != sigma.end()) continue;
    SimplexLabel tau;
    for (int v : sigma) tau.push_back(v < j ? v : v - 1);
    m(tgt->index(tau), s) = F(1);
  }
  return m;
}

// Degeneracy algebra map s_j : N*(Δ^n) -> N*(Δ^{n+1}), dual to the codegeneracy s^j
// collapsing j+1 onto j; preimages that become degenerate are dropped.
template <class F>
Matrix<F> degeneracy_map(int n, int j) {
  if (n < 0 || j < 0 || j > n) throw std::out_of_range("degeneracy index out of range");
  const auto src = cochains<F>(n);
  const auto tgt = cochains<F>(n + 1);
  Matrix<F> m(tgt->dim(), src->dim());
  for (std::size_t t = 0; t < tgt->dim(); ++t) {
    SimplexLabel image;
    for (int v : tgt->label(static_cast<int>(t))) image.push_back(v <= j ? v : v - 1);
    if (std::adjacent_find(image.begin(), image.end()) != image.end()) continue;
    m(t, src->index(image)) = F(1);
  }
  return m;
}

// ev_0 and ev_1 : N*(Δ^1) -> F, the interval endpoints; ev_i reads the coefficient of φ_i.
template <class F>
struct IntervalEvaluations {
  Matrix<F> ev0, ev1;
};

template <class F>
IntervalEvaluations<F> interval_evaluations() {
  return {face_map<F>(1, 1), face_map<F>(1, 0)};
}

}  // namespace ainf
