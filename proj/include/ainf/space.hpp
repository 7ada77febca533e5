#pragma once

#include "ainf/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ainf {

// Raised when an input violates a structural invariant (bad degrees, weights, identities).
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BasisVector {
  std::string name;
  int degree = 0;
  int weight = 1;
  friend bool operator==(const BasisVector&, const BasisVector&) = default;
};

// Finite graded basis with filtration weights in [1, N-1]; F_n is spanned by weights >= n.
class FilteredSpace {
 public:
  FilteredSpace() = default;
  FilteredSpace(std::vector<BasisVector> basis, int nilpotency) : basis_(std::move(basis)), nilpotency_(nilpotency) {
    if (nilpotency_ < 2) throw InvariantError("nilpotency length must be at least 2");
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto& b = basis_[i];
      if (b.weight < 1 || b.weight > nilpotency_ - 1)
        throw InvariantError("filtration: weight of '" + b.name + "' outside [1, N-1]");
      if (!index_.emplace(b.name, static_cast<int>(i)).second) throw InvariantError("duplicate basis name '" + b.name + "'");
    }
  }

  std::size_t dim() const { return basis_.size(); }
  int nilpotency() const { return nilpotency_; }
  const BasisVector& operator[](std::size_t i) const { return basis_[i]; }
  const std::vector<BasisVector>& basis() const { return basis_; }
  int degree(int i) const { return basis_[i].degree; }
  int weight(int i) const { return basis_[i].weight; }
  const std::string& name(int i) const { return basis_[i].name; }

  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw std::out_of_range("unknown basis vector '" + name + "'");
    return it->second;
  }
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::vector<int> indices(int degree) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == degree) out.push_back(static_cast<int>(i));
    return out;
  }
  std::vector<int> indices(int degree, int min_weight) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (basis_[i].degree == degree && basis_[i].weight >= min_weight) out.push_back(static_cast<int>(i));
    return out;
  }
  std::set<int> degrees() const {
    std::set<int> out;
    for (const auto& b : basis_) out.insert(b.degree);
    return out;
  }
  std::vector<int> degree_vector() const {
    std::vector<int> out;
    for (const auto& b : basis_) out.push_back(b.degree);
    return out;
  }
  std::vector<int> weight_vector() const {
    std::vector<int> out;
    for (const auto& b : basis_) out.push_back(b.weight);
    return out;
  }

  // Canonical column order: lexicographic by (weight, degree, name).
  std::vector<int> filtration_order() const {
    std::vector<int> order(basis_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::tie(basis_[a].weight, basis_[a].degree, basis_[a].name) <
             std::tie(basis_[b].weight, basis_[b].degree, basis_[b].name);
    });
    return order;
  }
  std::vector<int> reverse_filtration_order() const {
    auto o = filtration_order();
    std::reverse(o.begin(), o.end());
    return o;
  }

  // Lowest weight among the nonzero coordinates, or N for the zero vector.
  template <class F>
  int leading_weight(const Vec<F>& v) const {
    int w = nilpotency_;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero(v[i])) w = std::min(w, basis_[i].weight);
    return w;
  }
  // Degree of a homogeneous vector; `fallback` for zero; throws when inhomogeneous.
  template <class F>
  int homogeneous_degree(const Vec<F>& v, int fallback) const {
    std::optional<int> d;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (is_zero(v[i])) continue;
      if (d && *d != basis_[i].degree) throw InvariantError("element is not homogeneous");
      d = basis_[i].degree;
    }
    return d.value_or(fallback);
  }

  FilteredSpace with_nilpotency(int n) const {
    if (n < nilpotency_) throw InvariantError("nilpotency can only be raised");
    return FilteredSpace(basis_, n);
  }

  friend bool operator==(const FilteredSpace& a, const FilteredSpace& b) {
    return a.nilpotency_ == b.nilpotency_ && a.basis_ == b.basis_;
  }

 private:
  std::vector<BasisVector> basis_;
  int nilpotency_ = 2;
  std::unordered_map<std::string, int> index_;
};

// Direct sum carrier; names of the second summand are suffixed when they collide.
inline FilteredSpace direct_sum(const FilteredSpace& a, const FilteredSpace& b) {
  std::vector<BasisVector> basis = a.basis();
  std::set<std::string> taken;
  for (const auto& x : basis) taken.insert(x.name);
  for (auto x : b.basis()) {
    while (taken.count(x.name)) x.name += "'";
    taken.insert(x.name);
    basis.push_back(std::move(x));
  }
  return FilteredSpace(std::move(basis), std::max(a.nilpotency(), b.nilpotency()));
}

// Degree-r linear map given by a dense (target x source) matrix; homogeneity and
// filtration preservation are checked on construction.
template <class F>
class FilteredLinearMap {
 public:
  FilteredLinearMap(FilteredSpace source, FilteredSpace target, int degree, Matrix<F> matrix)
      : source_(std::move(source)), target_(std::move(target)), degree_(degree), matrix_(std::move(matrix)) {
    if (matrix_.rows() != target_.dim() || matrix_.cols() != source_.dim())
      throw InvariantError("linear map matrix has the wrong shape");
    for (std::size_t j = 0; j < source_.dim(); ++j)
      for (std::size_t i = 0; i < target_.dim(); ++i) {
        if (is_zero(matrix_(i, j))) continue;
        if (target_.degree(i) != source_.degree(j) + degree_)
          throw InvariantError("linear map is not homogeneous of degree " + std::to_string(degree_) + " at '" +
                               source_.name(j) + "'");
        if (target_.weight(i) < source_.weight(j))
          throw InvariantError("filtration: linear map lowers the weight of '" + source_.name(j) + "'");
      }
  }

  static FilteredLinearMap identity(const FilteredSpace& s) {
    return FilteredLinearMap(s, s, 0, Matrix<F>::identity(s.dim()));
  }
  static FilteredLinearMap zero(const FilteredSpace& s, const FilteredSpace& t, int degree) {
    return FilteredLinearMap(s, t, degree, Matrix<F>(t.dim(), s.dim()));
  }

  const FilteredSpace& source() const { return source_; }
  const FilteredSpace& target() const { return target_; }
  int degree() const { return degree_; }
  const Matrix<F>& matrix() const { return matrix_; }
  Vec<F> operator()(const Vec<F>& v) const { return matrix_.apply(v); }

  // Block F_n(source)^deg -> F_n(target)^(deg+r).
  Matrix<F> block(int deg, int level) const {
    return matrix_.submatrix(target_.indices(deg + degree_, level), source_.indices(deg, level));
  }

  friend FilteredLinearMap compose(const FilteredLinearMap& g, const FilteredLinearMap& f) {
    if (!(f.target_ == g.source_)) throw InvariantError("composition of non-composable linear maps");
    return FilteredLinearMap(f.source_, g.target_, f.degree_ + g.degree_, g.matrix_ * f.matrix_);
  }
  friend bool operator==(const FilteredLinearMap& a, const FilteredLinearMap& b) {
    return a.degree_ == b.degree_ && a.source_ == b.source_ && a.target_ == b.target_ && a.matrix_ == b.matrix_;
  }

 private:
  FilteredSpace source_, target_;
  int degree_;
  Matrix<F> matrix_;
};

template <class F>
class FilteredComplex {
 public:
  FilteredComplex(FilteredSpace space, Matrix<F> differential)
      : d_(space, space, 1, std::move(differential)) {
    if (!(d_.matrix() * d_.matrix()).is_zero_matrix()) throw InvariantError("d^2 != 0");
  }
  explicit FilteredComplex(FilteredLinearMap<F> d) : d_(std::move(d)) {
    if (d_.degree() != 1 || !(d_.source() == d_.target())) throw InvariantError("differential must be a degree +1 endomorphism");
    if (!(d_.matrix() * d_.matrix()).is_zero_matrix()) throw InvariantError("d^2 != 0");
  }

  const FilteredSpace& space() const { return d_.source(); }
  const FilteredLinearMap<F>& d() const { return d_; }
  const Matrix<F>& matrix() const { return d_.matrix(); }

 private:
  FilteredLinearMap<F> d_;
};

}  // namespace ainf
