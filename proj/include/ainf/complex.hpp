#pragma once

#include "ainf/space.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ainf {

namespace detail {

// Positions 0..idx.size()-1 sorted by the (weight, degree, name) order of the underlying vectors.
inline std::vector<int> local_order(const FilteredSpace& s, const std::vector<int>& idx, bool descending = false) {
  std::vector<int> pos(idx.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = static_cast<int>(i);
  std::sort(pos.begin(), pos.end(), [&](int a, int b) {
    const auto& x = s[idx[a]];
    const auto& y = s[idx[b]];
    return std::tie(x.weight, x.degree, x.name) < std::tie(y.weight, y.degree, y.name);
  });
  if (descending) std::reverse(pos.begin(), pos.end());
  return pos;
}

template <class F>
Vec<F> embed(std::size_t dim, const std::vector<int>& idx, const Vec<F>& local) {
  Vec<F> v(dim, F(0));
  for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = local[i];
  return v;
}

template <class F>
Vec<F> restrict_to(const std::vector<int>& idx, const Vec<F>& v) {
  Vec<F> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = v[idx[i]];
  return out;
}

template <class F>
std::map<int, Vec<F>> split_by_degree(const FilteredSpace& s, const Vec<F>& v) {
  std::map<int, Vec<F>> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (is_zero(v[i])) continue;
    auto [it, fresh] = out.try_emplace(s.degree(i), Vec<F>(v.size(), F(0)));
    it->second[i] = v[i];
  }
  return out;
}

// Degrees k for which the complex may have nonzero cohomology, padded by one on each side.
inline std::set<int> degree_window(const FilteredSpace& a) {
  std::set<int> out;
  for (int d : a.degrees())
    for (int e = d - 1; e <= d + 1; ++e) out.insert(e);
  return out;
}

inline void require_level(const FilteredSpace& s, int level) {
  if (level < 1 || level > s.nilpotency()) throw std::invalid_argument("filtration level out of range");
}

}  // namespace detail

template <class F>
class Cohomology {
 public:
  Cohomology(std::vector<Vec<F>> reps, std::vector<Vec<F>> boundaries, std::size_t ambient)
      : reps_(std::move(reps)), boundaries_(std::move(boundaries)), solver_(basis_matrix(ambient)) {
    if (solver_.rank() != reps_.size() + boundaries_.size())
      throw std::logic_error("cohomology representatives are dependent modulo coboundaries");
  }

  std::size_t dim() const { return reps_.size(); }
  const std::vector<Vec<F>>& representatives() const { return reps_; }
  const std::vector<Vec<F>>& boundaries() const { return boundaries_; }

  // Class coordinates of a cocycle; throws if z is not in span(reps) + boundaries.
  Vec<F> project(const Vec<F>& z) const {
    auto x = solver_.solve(z);
    if (!x) throw InvariantError("vector is not a cocycle of the requested degree and level");
    return Vec<F>(x->begin(), x->begin() + static_cast<long>(reps_.size()));
  }
  bool is_coboundary(const Vec<F>& z) const {
    auto x = solver_.solve(z);
    if (!x) return false;
    for (std::size_t i = 0; i < reps_.size(); ++i)
      if (!is_zero((*x)[i])) return false;
    return true;
  }
  Vec<F> representative(const Vec<F>& coords) const {
    if (coords.size() != reps_.size()) throw std::invalid_argument("class coordinate length mismatch");
    Vec<F> v(ambient_, F(0));
    for (std::size_t i = 0; i < reps_.size(); ++i) axpy(v, coords[i], reps_[i]);
    return v;
  }

 private:
  Matrix<F> basis_matrix(std::size_t ambient) {
    ambient_ = ambient;
    std::vector<Vec<F>> cols = reps_;
    cols.insert(cols.end(), boundaries_.begin(), boundaries_.end());
    return Matrix<F>::from_columns(ambient, cols);
  }

  std::vector<Vec<F>> reps_, boundaries_;
  std::size_t ambient_ = 0;
  LinearSolver<F> solver_;
};

// Basis of H^degree(F_level C): representatives extend a filtration-adapted basis of the
// coboundaries, chosen from high weight to low so that reps of weight >= n span classes at level n.
template <class F>
Cohomology<F> cohomology_basis(const FilteredComplex<F>& c, int degree, int level) {
  const FilteredSpace& s = c.space();
  detail::require_level(s, level);
  const std::vector<int> here = s.indices(degree, level);
  const std::vector<int> next = s.indices(degree + 1, level);
  const std::vector<int> prev = s.indices(degree - 1, level);
  const Matrix<F>& d = c.matrix();

  std::vector<Vec<F>> cycles;
  for (const auto& k : kernel_basis(d.submatrix(next, here), detail::local_order(s, here, true)))
    cycles.push_back(detail::embed(s.dim(), here, k));
  std::vector<Vec<F>> images;
  for (int j : prev) images.push_back(d.column(j));
  const auto order = s.filtration_order();
  const std::vector<Vec<F>> boundaries = echelon_basis(s.dim(), images, order);
  const std::vector<Vec<F>> zbasis = echelon_basis(s.dim(), cycles, order);

  std::vector<Vec<F>> reps, span = boundaries;
  for (int n = s.nilpotency() - 1; n >= 1; --n) {
    for (const auto& z : zbasis) {
      if (s.leading_weight(z) != n) continue;
      auto trial = span;
      trial.push_back(z);
      if (rank(Matrix<F>::from_columns(s.dim(), trial)) == trial.size()) {
        span = std::move(trial);
        reps.push_back(z);
      }
    }
  }
  return Cohomology<F>(std::move(reps), boundaries, s.dim());
}

template <class F>
bool is_chain_map(const FilteredComplex<F>& src, const FilteredComplex<F>& tgt, const FilteredLinearMap<F>& f) {
  return f.degree() == 0 && f.source() == src.space() && f.target() == tgt.space() &&
         f.matrix() * src.matrix() == tgt.matrix() * f.matrix();
}

namespace detail {

template <class F>
void require_chain_map(const FilteredComplex<F>& src, const FilteredComplex<F>& tgt, const FilteredLinearMap<F>& f) {
  if (f.degree() != 0) throw InvariantError("map must have degree 0");
  if (!(f.source() == src.space()) || !(f.target() == tgt.space())) throw InvariantError("map does not match complexes");
  if (!(f.matrix() * src.matrix() == tgt.matrix() * f.matrix())) throw InvariantError("map is not a chain map");
}

}  // namespace detail

// Quasi-isomorphism on every filtration stage, tested through acyclicity of the mapping cone.
template <class F>
bool is_weak_equivalence(const FilteredComplex<F>& src, const FilteredComplex<F>& tgt, const FilteredLinearMap<F>& f) {
  detail::require_chain_map(src, tgt, f);
  const FilteredSpace& a = src.space();
  const FilteredSpace& b = tgt.space();
  const int top = std::max(a.nilpotency(), b.nilpotency()) - 1;
  std::set<int> window = detail::degree_window(a);
  for (int k : detail::degree_window(b)) window.insert(k);

  for (int n = 1; n <= top; ++n) {
    // cone^k = A^{k+1} + B^k, d(v, w) = (-dv, f v + dw)
    auto cone_diff = [&](int k) {
      const auto a_src = a.indices(k + 1, n), b_src = b.indices(k, n);
      const auto a_tgt = a.indices(k + 2, n), b_tgt = b.indices(k + 1, n);
      Matrix<F> m(a_tgt.size() + b_tgt.size(), a_src.size() + b_src.size());
      for (std::size_t i = 0; i < a_tgt.size(); ++i)
        for (std::size_t j = 0; j < a_src.size(); ++j) m(i, j) = -src.matrix()(a_tgt[i], a_src[j]);
      for (std::size_t i = 0; i < b_tgt.size(); ++i) {
        for (std::size_t j = 0; j < a_src.size(); ++j) m(a_tgt.size() + i, j) = f.matrix()(b_tgt[i], a_src[j]);
        for (std::size_t j = 0; j < b_src.size(); ++j) m(a_tgt.size() + i, a_src.size() + j) = tgt.matrix()(b_tgt[i], b_src[j]);
      }
      return m;
    };
    for (int k : window) {
      const Matrix<F> out = cone_diff(k);
      const Matrix<F> in = cone_diff(k - 1);
      if (out.cols() != rank(out) + rank(in)) return false;
    }
  }
  return true;
}

template <class F>
bool is_fibration(const FilteredComplex<F>& src, const FilteredComplex<F>& tgt, const FilteredLinearMap<F>& f) {
  detail::require_chain_map(src, tgt, f);
  const FilteredSpace& b = tgt.space();
  for (int n = 1; n < b.nilpotency(); ++n)
    for (int k : b.degrees())
      if (rank(f.block(k, n)) != b.indices(k, n).size()) return false;
  return true;
}

// Weight-preserving linear section of a map that is surjective on every filtration stage.
template <class F>
FilteredLinearMap<F> filtered_section(const FilteredLinearMap<F>& f) {
  const FilteredSpace& a = f.source();
  const FilteredSpace& b = f.target();
  Matrix<F> sigma(a.dim(), b.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    const int k = b.degree(j) - f.degree();
    const auto cols = a.indices(k, b.weight(j));
    const auto rows = b.indices(b.degree(j));
    LinearSolver<F> solver(f.matrix().submatrix(rows, cols), detail::local_order(a, cols));
    Vec<F> rhs(rows.size(), F(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i] == static_cast<int>(j)) rhs[i] = F(1);
    auto x = solver.solve(rhs);
    if (!x) throw InvariantError("map is not surjective at weight " + std::to_string(b.weight(j)) + " onto '" + b.name(j) + "'");
    for (std::size_t i = 0; i < cols.size(); ++i) sigma(cols[i], j) = (*x)[i];
  }
  return FilteredLinearMap<F>(b, a, -f.degree(), std::move(sigma));
}

// Splitting of a subcomplex (given degreewise by spanning vectors in ambient coordinates) into
// cohomology representatives, coboundaries and chosen lifts of coboundaries, with each lift of
// the same leading weight as its coboundary. Fails when the filtration is not strict.
template <class F>
class FilteredSplitting {
 public:
  FilteredSplitting(const FilteredSpace& space, const Matrix<F>& d, const std::map<int, std::vector<Vec<F>>>& generators)
      : space_(space) {
    const auto order = space.filtration_order();
    std::map<int, std::vector<Vec<F>>> sub;
    for (const auto& [k, gens] : generators) sub[k] = echelon_basis(space.dim(), gens, order);

    for (const auto& [k, basis] : sub) {
      std::vector<Vec<F>> images;
      for (const auto& v : basis) images.push_back(d.apply(v));
      auto& bnd = bound_[k + 1];
      bnd = echelon_basis(space.dim(), images, order);
      auto& lifts = lift_[k + 1];
      for (const auto& b : bnd) {
        const int w = space.leading_weight(b);
        std::vector<Vec<F>> candidates;
        for (const auto& v : basis)
          if (space.leading_weight(v) >= w) candidates.push_back(v);
        std::vector<Vec<F>> cand_images;
        for (const auto& v : candidates) cand_images.push_back(d.apply(v));
        auto x = solve(Matrix<F>::from_columns(space.dim(), cand_images), b);
        if (!x) throw InvariantError("filtration is not strict: a coboundary of weight " + std::to_string(w) +
                                     " has no primitive of the same weight");
        Vec<F> u(space.dim(), F(0));
        for (std::size_t i = 0; i < candidates.size(); ++i) axpy(u, (*x)[i], candidates[i]);
        lifts.push_back(std::move(u));
      }
    }

    for (const auto& [k, basis] : sub) {
      // Cycles: kernel of d on the subspace.
      std::vector<Vec<F>> images;
      for (const auto& v : basis) images.push_back(d.apply(v));
      std::vector<Vec<F>> cycles;
      if (!basis.empty()) {
        std::vector<int> idx(basis.size());
        // Order subspace basis by decreasing leading weight so kernel vectors stay adapted.
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
          return space.leading_weight(basis[x]) > space.leading_weight(basis[y]);
        });
        for (const auto& c : kernel_basis(Matrix<F>::from_columns(space.dim(), images), idx)) {
          Vec<F> z(space.dim(), F(0));
          for (std::size_t i = 0; i < basis.size(); ++i) axpy(z, c[i], basis[i]);
          cycles.push_back(std::move(z));
        }
      }
      const auto zbasis = echelon_basis(space.dim(), cycles, order);
      const auto& bnd = bound_[k];
      std::vector<Vec<F>> span = bnd, reps;
      for (int n = space.nilpotency() - 1; n >= 1; --n)
        for (const auto& z : zbasis) {
          if (space.leading_weight(z) != n) continue;
          auto trial = span;
          trial.push_back(z);
          if (rank(Matrix<F>::from_columns(space.dim(), trial)) == trial.size()) {
            span = std::move(trial);
            reps.push_back(z);
          }
        }
      reps_[k] = std::move(reps);

      // Adaptedness: at each level, the basis vectors of weight >= n span F_n of the subspace.
      std::vector<Vec<F>> all = reps_[k];
      all.insert(all.end(), bnd.begin(), bnd.end());
      const auto& comp = lift_[k + 1];
      all.insert(all.end(), comp.begin(), comp.end());
      if (all.size() != basis.size()) throw std::logic_error("splitting has the wrong size");
      for (int n = 1; n < space.nilpotency(); ++n) {
        std::size_t expected = 0, have = 0;
        for (const auto& v : basis)
          if (space.leading_weight(v) >= n) ++expected;
        for (const auto& v : all)
          if (space.leading_weight(v) >= n) ++have;
        if (have != expected) throw InvariantError("filtration is not strict at level " + std::to_string(n));
      }
      solver_.emplace(k, LinearSolver<F>(Matrix<F>::from_columns(space.dim(), all)));
    }
  }

  const std::vector<Vec<F>>& representatives(int k) const { return lookup(reps_, k); }
  const std::vector<Vec<F>>& boundaries(int k) const { return lookup(bound_, k); }
  const std::vector<Vec<F>>& lifts(int k) const { return lookup(lift_, k); }
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [k, s] : solver_) out.push_back(k);
    return out;
  }

  // Coordinates (reps | boundaries | complements) of a homogeneous vector of degree k.
  Vec<F> coordinates(int k, const Vec<F>& v) const {
    auto it = solver_.find(k);
    if (it == solver_.end()) {
      if (is_zero_vec(v)) return {};
      throw InvariantError("vector outside the split subcomplex");
    }
    auto x = it->second.solve(v);
    if (!x) throw InvariantError("vector outside the split subcomplex");
    return *x;
  }
  // h(b_j) = lift_j, zero on representatives and complements.
  Vec<F> homotopy(const Vec<F>& v) const {
    Vec<F> out(space_.dim(), F(0));
    for (const auto& [k, part] : detail::split_by_degree(space_, v)) {
      const Vec<F> c = coordinates(k, part);
      const std::size_t r = representatives(k).size();
      const auto& lifts_k = lifts(k);
      for (std::size_t j = 0; j < lifts_k.size(); ++j) axpy(out, c[r + j], lifts_k[j]);
    }
    return out;
  }
  Vec<F> class_coordinates(int k, const Vec<F>& v) const {
    const Vec<F> c = coordinates(k, v);
    return Vec<F>(c.begin(), c.begin() + static_cast<long>(representatives(k).size()));
  }

 private:
  static const std::vector<Vec<F>>& lookup(const std::map<int, std::vector<Vec<F>>>& m, int k) {
    static const std::vector<Vec<F>> empty;
    auto it = m.find(k);
    return it == m.end() ? empty : it->second;
  }

  FilteredSpace space_;
  std::map<int, std::vector<Vec<F>>> reps_, bound_, lift_;
  std::map<int, LinearSolver<F>> solver_;
};

template <class F>
struct AcyclicContraction {
  FilteredLinearMap<F> section;   // tau: target -> source, chain map, f tau = id
  FilteredLinearMap<F> homotopy;  // h: source -> source, degree -1, image in ker f
};

// For an acyclic fibration f, a chain section tau and homotopy h with id - tau f = dh + hd.
template <class F>
AcyclicContraction<F> contract_acyclic_fibration(const FilteredComplex<F>& src, const FilteredComplex<F>& tgt,
                                                 const FilteredLinearMap<F>& f) {
  if (!is_fibration(src, tgt, f)) throw InvariantError("map is not a fibration (not surjective on every filtration stage)");
  if (!is_weak_equivalence(src, tgt, f)) throw InvariantError("map is not a weak equivalence");
  const FilteredSpace& a = src.space();
  const FilteredSpace& b = tgt.space();
  const FilteredLinearMap<F> sigma = filtered_section(f);

  std::map<int, std::vector<Vec<F>>> kernel;
  for (int k : a.degrees()) {
    const auto cols = a.indices(k);
    const auto rows = b.indices(k);
    auto& ker = kernel[k];
    for (const auto& v : kernel_basis(f.matrix().submatrix(rows, cols), detail::local_order(a, cols, true)))
      ker.push_back(detail::embed(a.dim(), cols, v));
  }
  const FilteredSplitting<F> split(a, src.matrix(), kernel);
  for (int k : split.degrees())
    if (!split.representatives(k).empty()) throw std::logic_error("kernel of an acyclic fibration has cohomology");

  // tau = sigma - s (d sigma - sigma d')
  Matrix<F> tau(a.dim(), b.dim());
  for (std::size_t j = 0; j < b.dim(); ++j) {
    const Vec<F> e_j = unit_vector<F>(b.dim(), j);
    const Vec<F> err = src.matrix().apply(sigma(e_j)) - sigma(tgt.matrix().apply(e_j));
    const Vec<F> col = sigma(e_j) - split.homotopy(err);
    for (std::size_t i = 0; i < a.dim(); ++i) tau(i, j) = col[i];
  }
  // h = s (id - tau f)
  Matrix<F> h(a.dim(), a.dim());
  const Matrix<F> retraction = Matrix<F>::identity(a.dim()) - tau * f.matrix();
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vec<F> col = split.homotopy(retraction.column(j));
    for (std::size_t i = 0; i < a.dim(); ++i) h(i, j) = col[i];
  }

  AcyclicContraction<F> out{FilteredLinearMap<F>(b, a, 0, std::move(tau)), FilteredLinearMap<F>(a, a, -1, std::move(h))};
  const Matrix<F>& d = src.matrix();
  const Matrix<F>& t = out.section.matrix();
  const Matrix<F>& hm = out.homotopy.matrix();
  if (!(f.matrix() * t == Matrix<F>::identity(b.dim()))) throw std::logic_error("f tau != id");
  if (!(d * t == t * tgt.matrix())) throw std::logic_error("tau is not a chain map");
  if (!(d * hm + hm * d == retraction)) throw std::logic_error("dh + hd != id - tau f");
  if (!(f.matrix() * hm).is_zero_matrix()) throw std::logic_error("image of h leaves ker f");
  return out;
}

// Deformation retract of a complex with strict filtration onto its cohomology: the cohomology
// carrier with zero differential, inclusion iota, projection pi and homotopy h with
// id - iota pi = dh + hd, pi iota = id, and h iota = pi h = h h = 0.
template <class F>
struct CohomologyRetract {
  FilteredSpace cohomology;
  Matrix<F> iota, pi, h;
};

template <class F>
CohomologyRetract<F> cohomology_retract(const FilteredComplex<F>& c, const std::string& prefix = "h") {
  const FilteredSpace& a = c.space();
  std::map<int, std::vector<Vec<F>>> all;
  for (int k : a.degrees())
    for (int i : a.indices(k)) all[k].push_back(unit_vector<F>(a.dim(), i));
  const FilteredSplitting<F> split(a, c.matrix(), all);

  std::vector<BasisVector> basis;
  std::vector<Vec<F>> reps;
  for (int k : split.degrees()) {
    for (const auto& r : split.representatives(k)) {
      basis.push_back({prefix + std::to_string(basis.size()), k, a.leading_weight(r)});
      reps.push_back(r);
    }
  }
  FilteredSpace hs(basis, a.nilpotency());
  Matrix<F> iota = Matrix<F>::from_columns(a.dim(), reps);
  Matrix<F> pi(hs.dim(), a.dim()), h(a.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    const Vec<F> e = unit_vector<F>(a.dim(), j);
    const int k = a.degree(j);
    const Vec<F> cls = split.class_coordinates(k, e);
    std::size_t offset = 0;
    for (int kk : split.degrees()) {
      if (kk == k) break;
      offset += split.representatives(kk).size();
    }
    for (std::size_t i = 0; i < cls.size(); ++i) pi(offset + i, j) = cls[i];
    const Vec<F> hv = split.homotopy(e);
    for (std::size_t i = 0; i < a.dim(); ++i) h(i, j) = hv[i];
  }
  const Matrix<F>& d = c.matrix();
  if (!(pi * iota == Matrix<F>::identity(hs.dim()))) throw std::logic_error("pi iota != id");
  if (!(d * h + h * d == Matrix<F>::identity(a.dim()) - iota * pi)) throw std::logic_error("dh + hd != id - iota pi");
  // Filtration checks happen in the FilteredLinearMap constructors.
  FilteredLinearMap<F>(hs, a, 0, iota);
  FilteredLinearMap<F>(a, hs, 0, pi);
  FilteredLinearMap<F>(a, a, -1, h);
  return {std::move(hs), std::move(iota), std::move(pi), std::move(h)};
}

}  // namespace ainf
