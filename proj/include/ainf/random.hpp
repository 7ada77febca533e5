#pragma once

#include "ainf/ainfty.hpp"
#include "ainf/dga.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ainf {

using Rng = std::mt19937_64;

template <class F>
F random_scalar(Rng& rng) {
  if constexpr (FieldTraits<F>::finite) {
    std::uniform_int_distribution<long long> u(0, static_cast<long long>(FieldTraits<F>::characteristic()) - 1);
    return F(u(rng));
  } else {
    std::uniform_int_distribution<int> u(-2, 2);
    return F(u(rng));
  }
}

template <class F>
F random_nonzero(Rng& rng) {
  while (true)
    if (F x = random_scalar<F>(rng); !is_zero(x)) return x;
}

inline bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Invertible filtered degree-preserving matrix: random nonzero diagonal, random entries from
// each basis vector into strictly higher weights of the same degree.
template <class F>
Matrix<F> random_filtered_automorphism(Rng& rng, const FilteredSpace& s, double density = 0.5) {
  Matrix<F> t(s.dim(), s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) {
    t(i, i) = random_nonzero<F>(rng);
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (s.degree(j) == s.degree(i) && s.weight(j) > s.weight(i) && coin(rng, density)) t(j, i) = random_scalar<F>(rng);
  }
  return t;
}

// Structure constants of a multilinear map after the change of basis x -> T x.
template <class F>
MultiMap<F> transport_table(const MultiMap<F>& m, const Matrix<F>& t, const Matrix<F>& t_inv) {
  const std::size_t n = t.rows();
  std::vector<Vec<F>> inv_cols;
  for (std::size_t i = 0; i < n; ++i) inv_cols.push_back(t_inv.column(i));
  MultiMap<F> out(m.arity(), m.degree());
  std::vector<std::size_t> pick(m.arity(), 0);
  if (m.arity() == 0) return out;
  while (true) {
    std::vector<const Vec<F>*> args;
    for (std::size_t p : pick) args.push_back(&inv_cols[p]);
    const Vec<F> v = t.apply(m.evaluate(args, n));
    Word w(pick.begin(), pick.end());
    for (std::size_t o = 0; o < n; ++o)
      if (!is_zero(v[o])) out.add(w, static_cast<int>(o), v[o]);
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == n) pick[k++] = 0;
    if (k == pick.size()) break;
  }
  return out;
}

// Random weight- and degree-compatible table of the given arity and degree.
template <class F>
MultiMap<F> random_table(Rng& rng, const FilteredSpace& s, int arity, int degree, double density) {
  MultiMap<F> m(arity, degree);
  for (const Word& w : admissible_words(s, arity)) {
    const int wt = word_weight(s, w), dg = word_degree(s, w);
    for (std::size_t o = 0; o < s.dim(); ++o)
      if (s.degree(o) == dg + degree && s.weight(o) >= wt && coin(rng, density)) m.add(w, static_cast<int>(o), random_scalar<F>(rng));
  }
  return m;
}

struct RandomDGAOptions {
  int nilpotency = 4;
  std::size_t min_dim = 2;
  std::size_t max_dim = 4;
  std::vector<int> generator_degrees{0, 1};  // unshifted degrees to draw generators from
  int max_generators = 2;
  double differential_density = 0.5;
  bool homogeneous_differential = false;  // d preserves weight exactly
  double acyclic_summand = 0.3;           // probability of adding an acyclic pair u -> v
  bool change_basis = true;
};

namespace detail {

struct Monomial {
  std::vector<int> letters;
  int degree = 0, weight = 0;
};

}  // namespace detail

// Random nilpotent dg algebra: a monomial algebra on a few generators, truncated by weight and
// by a random set of forbidden two-letter words, with a random derivation (rejection-sampled
// for d^2 = 0 and Leibniz), an optional acyclic summand, and a random filtered change of basis.
template <class F>
DGAlgebra<F> random_dga(Rng& rng, const RandomDGAOptions& opt) {
  const char* letters = "xyz";
  for (int attempt = 0; attempt < 2000; ++attempt) {
    const int ng = uniform(rng, 1, std::min(opt.max_generators, 3));
    std::vector<std::pair<int, int>> gens;  // (degree, weight)
    for (int g = 0; g < ng; ++g)
      gens.emplace_back(opt.generator_degrees[uniform(rng, 0, static_cast<int>(opt.generator_degrees.size()) - 1)],
                        coin(rng, 0.6) ? 1 : uniform(rng, 1, opt.nilpotency - 1));
    std::vector<std::vector<bool>> forbidden(ng, std::vector<bool>(ng, false));
    for (auto& row : forbidden)
      for (auto&& f : row) f = coin(rng, 0.4);

    // Breadth-first words of weight < N avoiding forbidden pairs.
    std::vector<detail::Monomial> words;
    for (int g = 0; g < ng; ++g) words.push_back({{g}, gens[g].first, gens[g].second});
    for (std::size_t i = 0; i < words.size() && words.size() <= opt.max_dim; ++i)
      for (int g = 0; g < ng; ++g) {
        const auto& w = words[i];
        if (w.weight + gens[g].second >= opt.nilpotency || forbidden[w.letters.back()][g]) continue;
        auto nw = w;
        nw.letters.push_back(g);
        nw.degree += gens[g].first;
        nw.weight += gens[g].second;
        words.push_back(std::move(nw));
      }
    if (words.size() > opt.max_dim || words.size() < opt.min_dim) continue;
    std::map<std::vector<int>, int> index;
    std::vector<BasisVector> basis;
    for (const auto& w : words) {
      std::string name;
      for (int l : w.letters) name += letters[l];
      index.emplace(w.letters, static_cast<int>(basis.size()));
      basis.push_back({name, w.degree, w.weight});
    }
    MultiMap<F> mu(2, 0);
    for (std::size_t a = 0; a < words.size(); ++a)
      for (std::size_t b = 0; b < words.size(); ++b) {
        auto cat = words[a].letters;
        cat.insert(cat.end(), words[b].letters.begin(), words[b].letters.end());
        if (auto it = index.find(cat); it != index.end())
          mu.add(Word{static_cast<int>(a), static_cast<int>(b)}, it->second, F(1));
      }
    // d on generators, extended as a derivation letter by letter.
    std::vector<Vec<F>> dgen(ng, Vec<F>(words.size(), F(0)));
    for (int g = 0; g < ng; ++g)
      for (std::size_t t = 0; t < words.size(); ++t) {
        const auto& w = words[t];
        const bool wt_ok = opt.homogeneous_differential ? w.weight == gens[g].second : w.weight > gens[g].second;
        if (w.degree == gens[g].first + 1 && wt_ok && coin(rng, opt.differential_density)) dgen[g][t] = random_scalar<F>(rng);
      }
    const FilteredSpace space(basis, opt.nilpotency);
    auto word_vec = [&](const std::vector<int>& l) { return unit_vector<F>(words.size(), index.at(l)); };
    MultiMap<F> d(1, 1);
    for (std::size_t t = 0; t < words.size(); ++t) {
      const auto& w = words[t].letters;
      Vec<F> acc(words.size(), F(0));
      int prefix_deg = 0;
      for (std::size_t i = 0; i < w.size(); ++i) {
        Vec<F> term = dgen[w[i]];
        if (i > 0) {
          const Vec<F> prefix = word_vec(std::vector<int>(w.begin(), w.begin() + i));
          term = mu.evaluate({&prefix, &term}, words.size());
        }
        if (i + 1 < w.size()) {
          const Vec<F> suffix = word_vec(std::vector<int>(w.begin() + i + 1, w.end()));
          term = mu.evaluate({&term, &suffix}, words.size());
        }
        axpy(acc, sign<F>(prefix_deg), term);
        prefix_deg += gens[w[i]].first;
      }
      for (std::size_t o = 0; o < acc.size(); ++o)
        if (!is_zero(acc[o])) d.add(Word{static_cast<int>(t)}, static_cast<int>(o), acc[o]);
    }
    try {
      DGAlgebra<F> c(space, d, mu);
      if (c.dim() + 2 <= opt.max_dim && coin(rng, opt.acyclic_summand)) {
        const int deg = opt.generator_degrees[uniform(rng, 0, static_cast<int>(opt.generator_degrees.size()) - 1)];
        const int wt = uniform(rng, 1, opt.nilpotency - 1);
        MultiMap<F> dp(1, 1);
        dp.add(Word{0}, 1, random_nonzero<F>(rng));
        c = dga_product(c, DGAlgebra<F>(FilteredSpace({{"u", deg, wt}, {"v", deg + 1, wt}}, opt.nilpotency), dp, MultiMap<F>(2, 0)));
      }
      if (!opt.change_basis) return c;
      const Matrix<F> t = random_filtered_automorphism<F>(rng, c.space(), opt.homogeneous_differential ? 0.0 : 0.5);
      const Matrix<F> ti = inverse(t);
      return DGAlgebra<F>(c.space(), transport_table(c.d(), t, ti), transport_table(c.mu(), t, ti));
    } catch (const InvariantError&) {
      continue;
    }
  }
  throw std::runtime_error("random_dga: no valid instance after 2000 attempts");
}

// Q' = F Q F^{-1} for a family of coalgebra-automorphism maps F on the carrier of A.
template <class F>
AInfinityAlgebra<F> conjugate_structure(const AInfinityAlgebra<F>& a, const std::vector<MultiMap<F>>& f,
                                        Validation v = Validation::full) {
  const auto g = inverse_maps(f, a.dim(), a.max_arity());
  const auto deg = a.space().degree_vector();
  std::vector<MultiMap<F>> ops;
  for (int n = 1; n <= a.max_arity(); ++n) {
    MultiMap<F> q(n, 1);
    for (const Word& w : admissible_words(a.space(), n)) {
      const Tensor<F> t = apply_coderivation(a.ops(), deg, apply_coalgebra_map(g, Tensor<F>{{w, F(1)}}));
      const Vec<F> out = apply_projection(f, t, a.dim());
      for (std::size_t o = 0; o < out.size(); ++o)
        if (!is_zero(out[o])) q.add(w, static_cast<int>(o), out[o]);
    }
    ops.push_back(std::move(q));
  }
  return AInfinityAlgebra<F>(a.space(), std::move(ops), v);
}

// Random degree-0 filtered maps F_1, ..., F_{N-1} with F_1 invertible; F_1 = id when `unipotent`.
template <class F>
std::vector<MultiMap<F>> random_automorphism_maps(Rng& rng, const FilteredSpace& s, bool unipotent, double density = 0.4) {
  std::vector<MultiMap<F>> maps;
  maps.push_back(MultiMap<F>::from_matrix(unipotent ? Matrix<F>::identity(s.dim()) : random_filtered_automorphism<F>(rng, s), 0));
  for (int k = 2; k < s.nilpotency(); ++k) maps.push_back(random_table<F>(rng, s, k, 0, density));
  return maps;
}

struct RandomAInftyOptions {
  int nilpotency = 4;
  std::size_t min_dim = 2;
  std::size_t max_dim = 4;
  std::vector<int> degrees{-2, -1, -1, -1, 0, 0};  // shifted degrees, drawn uniformly
  double pair_probability = 0.5;                  // chance that a basis vector starts an acyclic pair
  bool homogeneous_differential = false;          // d preserves weight exactly
  double density = 0.5;                           // chance that a solution direction enters Q_k
  double weight_one = 0.4;                        // extra chance of weight 1 beyond uniform weights
};

// A random solution Q_k of the arity-k Stasheff identity given Q_1, ..., Q_{k-1}; the identity
// d Q_k + Σ_pos Q_k(.., d, ..) = -Σ_{1<j<k} Σ_pos Q_{k-j+1}(.., Q_j, ..) is linear in Q_k.
template <class F>
std::optional<MultiMap<F>> random_stasheff_layer(Rng& rng, const FilteredSpace& s, const std::vector<MultiMap<F>>& lower,
                                                  int k, double density) {
  const auto deg = s.degree_vector();
  MultiMap<F> known(k, 2);
  for (int j = 2; j < k; ++j)
    for (int pos = 0; pos < k - j + 1; ++pos) known += compose_at(lower[k - j], pos, lower[j - 1], &deg);
  std::vector<std::pair<Word, int>> unknowns;
  for (const Word& w : admissible_words(s, k)) {
    const int wt = word_weight(s, w), dg = word_degree(s, w);
    for (std::size_t o = 0; o < s.dim(); ++o)
      if (s.degree(o) == dg + 1 && s.weight(o) >= wt) unknowns.emplace_back(w, static_cast<int>(o));
  }
  std::map<std::pair<Word, int>, int> rows;
  auto row_of = [&rows](const Word& w, int o) { return rows.emplace(std::make_pair(w, o), static_cast<int>(rows.size())).first->second; };
  std::vector<MultiMap<F>> columns;
  for (const auto& [w, o] : unknowns) {
    MultiMap<F> e(k, 1);
    e.add(w, o, F(1));
    MultiMap<F> col = compose_at(lower[0], 0, e, &deg);
    for (int pos = 0; pos < k; ++pos) col += compose_at(e, pos, lower[0], &deg);
    for (const auto& [in, val] : col.entries())
      for (const auto& [out, c] : val) row_of(in, out);
    columns.push_back(std::move(col));
  }
  for (const auto& [in, val] : known.entries())
    for (const auto& [out, c] : val) row_of(in, out);
  Matrix<F> m(rows.size(), unknowns.size());
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [in, val] : columns[j].entries())
      for (const auto& [out, c] : val) m(rows.at({in, out}), j) = c;
  Vec<F> rhs(rows.size(), F(0));
  for (const auto& [in, val] : known.entries())
    for (const auto& [out, c] : val) rhs[rows.at({in, out})] = -c;
  const LinearSolver<F> solver(m);
  auto x = solver.solve(rhs);
  if (!x) return std::nullopt;
  for (const auto& kv : solver.kernel())
    if (coin(rng, density)) axpy(*x, random_scalar<F>(rng), kv);
  MultiMap<F> q(k, 1);
  for (std::size_t j = 0; j < unknowns.size(); ++j)
    if (!is_zero((*x)[j])) q.add(unknowns[j].first, unknowns[j].second, (*x)[j]);
  return q;
}

// Random A-infinity algebra: d from random acyclic pairs in a random filtered basis, then each
// higher operation a random solution of its Stasheff identity (rejection when none exists).
template <class F>
AInfinityAlgebra<F> random_ainfty(Rng& rng, const RandomAInftyOptions& opt) {
  for (int attempt = 0; attempt < 2000; ++attempt) {
    const int n = uniform(rng, static_cast<int>(opt.min_dim), static_cast<int>(opt.max_dim));
    std::vector<BasisVector> basis;
    for (int i = 0; i < n; ++i)
      basis.push_back({"e" + std::to_string(i), opt.degrees[uniform(rng, 0, static_cast<int>(opt.degrees.size()) - 1)],
                       coin(rng, opt.weight_one) ? 1 : uniform(rng, 1, opt.nilpotency - 1)});
    const FilteredSpace s(basis, opt.nilpotency);
    MultiMap<F> d(1, 1);
    std::vector<bool> used(n, false);
    for (int u = 0; u < n; ++u) {
      if (used[u] || !coin(rng, opt.pair_probability)) continue;
      for (int v = 0; v < n; ++v) {
        const bool wt_ok = opt.homogeneous_differential ? s.weight(v) == s.weight(u) : s.weight(v) >= s.weight(u);
        if (v == u || used[v] || s.degree(v) != s.degree(u) + 1 || !wt_ok) continue;
        d.add(Word{u}, v, random_nonzero<F>(rng));
        used[u] = used[v] = true;
        break;
      }
    }
    const Matrix<F> t = random_filtered_automorphism<F>(rng, s, opt.homogeneous_differential ? 0.0 : 0.5);
    std::vector<MultiMap<F>> ops{transport_table(d, t, inverse(t))};
    bool ok = true;
    for (int k = 2; k < opt.nilpotency && ok; ++k) {
      auto q = random_stasheff_layer<F>(rng, s, ops, k, opt.density);
      if (!q) ok = false;
      else ops.push_back(std::move(*q));
    }
    if (ok) return AInfinityAlgebra<F>(s, std::move(ops));
  }
  throw std::runtime_error("random_ainfty: no valid instance after 2000 attempts");
}

// An infinity-isomorphism A -> A' with A' = F A F^{-1}.
template <class F>
InftyMorphism<F> random_isomorphism(Rng& rng, const AlgebraPtr<F>& a, bool unipotent = false) {
  auto maps = random_automorphism_maps<F>(rng, a->space(), unipotent);
  auto target = share(conjugate_structure(*a, maps));
  return InftyMorphism<F>(a, std::move(target), std::move(maps));
}

// Abelian algebra: isolated cocycles plus acyclic pairs, in a random filtered basis.
// Each entry is (shifted degree, weight); pairs are u -> v with u in the listed degree.
// `mixing` = 0 keeps d weight-homogeneous.
template <class F>
AInfinityAlgebra<F> random_abelian(Rng& rng, const std::vector<std::pair<int, int>>& cocycles,
                                   const std::vector<std::pair<int, int>>& pairs, int nilpotency, double mixing = 0.5) {
  std::vector<BasisVector> basis;
  MultiMap<F> d(1, 1);
  int k = 0;
  for (auto [deg, wt] : cocycles) basis.push_back({"z" + std::to_string(k++), deg, wt});
  k = 0;
  for (auto [deg, wt] : pairs) {
    const int u = static_cast<int>(basis.size());
    basis.push_back({"u" + std::to_string(k), deg, wt});
    basis.push_back({"v" + std::to_string(k++), deg + 1, wt});
    d.add(Word{u}, u + 1, random_nonzero<F>(rng));
  }
  FilteredSpace s(std::move(basis), nilpotency);
  const Matrix<F> t = random_filtered_automorphism<F>(rng, s, mixing);
  return AInfinityAlgebra<F>(s, {transport_table(d, t, inverse(t))});
}

}  // namespace ainf
