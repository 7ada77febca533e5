#pragma once

#include "ainf/linalg.hpp"
#include "ainf/space.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ainf {

using Word = std::vector<int>;

template <class F>
using Sparse = std::vector<std::pair<int, F>>;  // sorted by index, no zero coefficients

template <class F>
void sparse_add(Sparse<F>& s, int index, const F& c) {
  if (is_zero(c)) return;
  auto it = std::lower_bound(s.begin(), s.end(), index, [](const auto& p, int i) { return p.first < i; });
  if (it != s.end() && it->first == index) {
    it->second += c;
    if (is_zero(it->second)) s.erase(it);
  } else {
    s.insert(it, {index, c});
  }
}

template <class F>
Sparse<F> to_sparse(const Vec<F>& v) {
  Sparse<F> s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!is_zero(v[i])) s.emplace_back(static_cast<int>(i), v[i]);
  return s;
}

template <class F>
Vec<F> to_dense(const Sparse<F>& s, std::size_t dim) {
  Vec<F> v(dim, F(0));
  for (const auto& [i, c] : s) v.at(i) = c;
  return v;
}

// Formal sum of words in the reduced tensor algebra.
template <class F>
using Tensor = std::map<Word, F>;

template <class F>
void tensor_add(Tensor<F>& t, const Word& w, const F& c) {
  if (is_zero(c)) return;
  auto [it, fresh] = t.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (is_zero(it->second)) t.erase(it);
  }
}

// Multilinear map of fixed arity and degree, stored as a table basis word -> sparse output.
template <class F>
class MultiMap {
 public:
  using Table = std::map<Word, Sparse<F>>;

  MultiMap() = default;
  MultiMap(int arity, int degree) : arity_(arity), degree_(degree) {}

  int arity() const { return arity_; }
  int degree() const { return degree_; }
  const Table& entries() const { return table_; }
  bool empty() const { return table_.empty(); }
  std::size_t size() const { return table_.size(); }

  void add(const Word& in, int out, const F& c) {
    if (is_zero(c)) return;
    check_word(in);
    auto& s = table_[in];
    sparse_add(s, out, c);
    if (s.empty()) table_.erase(in);
  }
  void add(const Word& in, const Sparse<F>& out, const F& scale) {
    if (is_zero(scale) || out.empty()) return;
    check_word(in);
    auto& s = table_[in];
    for (const auto& [i, c] : out) sparse_add(s, i, scale * c);
    if (s.empty()) table_.erase(in);
  }
  const Sparse<F>* find(const Word& in) const {
    auto it = table_.find(in);
    return it == table_.end() ? nullptr : &it->second;
  }

  MultiMap& operator+=(const MultiMap& o) {
    require_shape(o);
    for (const auto& [w, s] : o.table_) add(w, s, F(1));
    return *this;
  }
  MultiMap& operator-=(const MultiMap& o) {
    require_shape(o);
    for (const auto& [w, s] : o.table_) add(w, s, F(-1));
    return *this;
  }
  friend MultiMap operator+(MultiMap a, const MultiMap& b) { return a += b; }
  friend MultiMap operator-(MultiMap a, const MultiMap& b) { return a -= b; }
  MultiMap scaled(const F& c) const {
    MultiMap out(arity_, degree_);
    for (const auto& [w, s] : table_) out.add(w, s, c);
    return out;
  }
  friend bool operator==(const MultiMap& a, const MultiMap& b) {
    return a.arity_ == b.arity_ && a.table_ == b.table_;
  }

  // Value on the given arguments, as a dense vector of length out_dim.
  Vec<F> evaluate(const std::vector<const Vec<F>*>& args, std::size_t out_dim) const {
    if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("arity mismatch in evaluation");
    Vec<F> out(out_dim, F(0));
    for (const auto& [w, s] : table_) {
      F coef(1);
      for (int i = 0; i < arity_ && !is_zero(coef); ++i) coef *= (*args[i])[w[i]];
      if (is_zero(coef)) continue;
      for (const auto& [o, c] : s) out[o] += coef * c;
    }
    return out;
  }
  Vec<F> evaluate_diagonal(const Vec<F>& a, std::size_t out_dim) const {
    std::vector<const Vec<F>*> args(arity_, &a);
    return evaluate(args, out_dim);
  }

  // Linear map for arity 1 as a dense (out_dim x in_dim) matrix.
  Matrix<F> matrix(std::size_t in_dim, std::size_t out_dim) const {
    if (arity_ != 1) throw std::logic_error("matrix() needs arity 1");
    Matrix<F> m(out_dim, in_dim);
    for (const auto& [w, s] : table_)
      for (const auto& [o, c] : s) m(o, w[0]) = c;
    return m;
  }
  static MultiMap from_matrix(const Matrix<F>& m, int degree) {
    MultiMap out(1, degree);
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_zero(m(i, j))) out.add(Word{static_cast<int>(j)}, static_cast<int>(i), m(i, j));
    return out;
  }

 private:
  void check_word(const Word& w) const {
    if (static_cast<int>(w.size()) != arity_) throw std::invalid_argument("word length does not match arity");
  }
  void require_shape(const MultiMap& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("adding multilinear maps of different arity");
  }

  int arity_ = 1;
  int degree_ = 0;
  Table table_;
};

template <class F>
std::string describe_word(const FilteredSpace& s, const Word& w) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? ", " : "") << s.name(w[i]);
  os << ")";
  return os.str();
}

// outer(x_0..x_{pos-1}, inner(...), ...). With odd inner degree the Koszul sign
// (-1)^{|x_0|+...+|x_{pos-1}|} is applied, reading degrees of the outer's inputs.
template <class F>
MultiMap<F> compose_at(const MultiMap<F>& outer, int pos, const MultiMap<F>& inner, const std::vector<int>* degrees) {
  if (pos < 0 || pos >= outer.arity()) throw std::invalid_argument("composition slot out of range");
  const bool odd = (inner.degree() % 2) != 0;
  if (odd && degrees == nullptr) throw std::invalid_argument("odd composition needs input degrees");
  MultiMap<F> out(outer.arity() + inner.arity() - 1, outer.degree() + inner.degree());
  std::unordered_map<int, std::vector<const std::pair<const Word, Sparse<F>>*>> by_slot;
  for (const auto& e : outer.entries()) by_slot[e.first[pos]].push_back(&e);
  for (const auto& [t, w] : inner.entries()) {
    for (const auto& [o, c] : w) {
      auto it = by_slot.find(o);
      if (it == by_slot.end()) continue;
      for (const auto* e : it->second) {
        const Word& ow = e->first;
        Word nw;
        nw.reserve(out.arity());
        nw.insert(nw.end(), ow.begin(), ow.begin() + pos);
        nw.insert(nw.end(), t.begin(), t.end());
        nw.insert(nw.end(), ow.begin() + pos + 1, ow.end());
        F coef = c;
        if (odd) {
          int e_deg = 0;
          for (int l = 0; l < pos; ++l) e_deg += (*degrees)[ow[l]];
          if (e_deg & 1) coef = -coef;
        }
        out.add(nw, e->second, coef);
      }
    }
  }
  return out;
}

// outer(inner_0(...), inner_1(...), ..., inner_{k-1}(...)) for even-degree inners.
template <class F>
MultiMap<F> compose_blocks(const MultiMap<F>& outer, const std::vector<const MultiMap<F>*>& inners) {
  if (static_cast<int>(inners.size()) != outer.arity()) throw std::invalid_argument("block count must equal outer arity");
  int arity = 0, degree = outer.degree();
  for (const auto* b : inners) {
    if (b->degree() % 2 != 0) throw std::invalid_argument("block composition requires even-degree blocks");
    arity += b->arity();
    degree += b->degree();
  }
  MultiMap<F> acc = outer;
  for (int i = static_cast<int>(inners.size()) - 1; i >= 0 && !acc.empty(); --i) acc = compose_at(acc, i, *inners[i], nullptr);
  MultiMap<F> out(arity, degree);
  for (const auto& [w, s] : acc.entries()) out.add(w, s, F(1));
  return out;
}

// m ∘ t for a linear map m of degree r.
template <class F>
MultiMap<F> post_compose(const Matrix<F>& m, const MultiMap<F>& t, int r = 0) {
  MultiMap<F> out(t.arity(), t.degree() + r);
  for (const auto& [w, s] : t.entries())
    for (const auto& [o, c] : s)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_zero(m(i, o))) out.add(w, static_cast<int>(i), c * m(i, o));
  return out;
}

// All compositions (ordered partitions) of n into k positive parts.
inline std::vector<std::vector<int>> compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int parts) {
    if (parts == 0) {
      if (left == 0) out.push_back(cur);
      return;
    }
    for (int first = 1; first <= left - (parts - 1); ++first) {
      cur.push_back(first);
      rec(left - first, parts - 1);
      cur.pop_back();
    }
  };
  if (n >= k && k >= 1) rec(n, k);
  return out;
}

// All words of the given arity whose weights sum to less than the nilpotency length.
inline std::vector<Word> admissible_words(const FilteredSpace& s, int arity) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int)> rec = [&](int weight) {
    if (static_cast<int>(cur.size()) == arity) {
      out.push_back(cur);
      return;
    }
    const int remaining = arity - static_cast<int>(cur.size()) - 1;
    for (std::size_t i = 0; i < s.dim(); ++i) {
      const int w = weight + s.weight(i);
      if (w + remaining >= s.nilpotency()) continue;
      cur.push_back(static_cast<int>(i));
      rec(w);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline int word_weight(const FilteredSpace& s, const Word& w) {
  int t = 0;
  for (int i : w) t += s.weight(i);
  return t;
}

inline int word_degree(const FilteredSpace& s, const Word& w) {
  int t = 0;
  for (int i : w) t += s.degree(i);
  return t;
}

}  // namespace ainf
