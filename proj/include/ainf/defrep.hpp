#pragma once

#include "ainf/dga.hpp"
#include "ainf/group.hpp"
#include "ainf/maurer_cartan.hpp"
#include "ainf/nerve.hpp"
#include "ainf/transfer.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainf {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FiniteGroup {
  std::vector<std::string> names;
  GroupTable table;

  std::size_t order() const { return table.order(); }
  void validate() const {
    if (names.size() != table.order()) throw InvariantError("group element names do not match the table");
    table.validate();
  }
  int index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw std::out_of_range("no group element named '" + n + "'");
  }
};

inline FiniteGroup cyclic_group(int n) {
  if (n < 1) throw std::invalid_argument("cyclic group of order < 1");
  FiniteGroup g;
  g.table.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    g.names.push_back("g" + std::to_string(a));
    for (int b = 0; b < n; ++b) g.table.mul[a][b] = (a + b) % n;
  }
  g.validate();
  return g;
}

template <class F>
struct Representation {
  FiniteGroup group;
  std::size_t dim = 0;
  std::vector<Matrix<F>> matrices;  // one per group element

  void validate() const {
    group.validate();
    if (matrices.size() != group.order()) throw InvariantError("representation needs one matrix per group element");
    for (const auto& m : matrices)
      if (m.rows() != dim || m.cols() != dim) throw InvariantError("representation matrix has the wrong size");
    if (!(matrices[group.table.identity] == Matrix<F>::identity(dim))) throw InvariantError("ρ(e) != id");
    for (std::size_t a = 0; a < group.order(); ++a)
      for (std::size_t b = 0; b < group.order(); ++b)
        if (!(matrices[a] * matrices[b] == matrices[group.table.mul[a][b]]))
          throw InvariantError("ρ(" + group.names[a] + ")ρ(" + group.names[b] + ") != ρ(" + group.names[a] + group.names[b] + ")");
  }
};

template <class F>
Representation<F> trivial_representation(FiniteGroup g, std::size_t dim = 1) {
  Representation<F> r{std::move(g), dim, {}};
  r.matrices.assign(r.group.order(), Matrix<F>::identity(dim));
  r.validate();
  return r;
}

// F[t]/(t^N) with maximal ideal spanned by t, ..., t^{N-1} in weights 1..N-1.
struct ArtinLocalRing {
  int order = 2;
};

namespace detail {

// Basis of C^n: (g_1, ..., g_n; E_ab), indexed tuple-major.
struct HochschildIndex {
  std::size_t group_order, dim;
  std::vector<std::size_t> offset;  // first index of each degree

  std::size_t tuples(int n) const {
    std::size_t t = 1;
    for (int i = 0; i < n; ++i) t *= group_order;
    return t;
  }
  int index(int n, const std::vector<int>& tuple, std::size_t a, std::size_t b) const {
    std::size_t t = 0;
    for (int g : tuple) t = t * group_order + static_cast<std::size_t>(g);
    return static_cast<int>(offset[n] + (t * dim + a) * dim + b);
  }
  std::vector<int> tuple(int n, std::size_t t) const {
    std::vector<int> out(n);
    for (int i = n - 1; i >= 0; --i) {
      out[i] = static_cast<int>(t % group_order);
      t /= group_order;
    }
    return out;
  }
};

}  // namespace detail

// Hochschild cochains Hom(F[G]^{⊗n}, End V) for n <= top_degree, with the cup product; the
// complex is truncated above top_degree (a quotient by the ideal of higher cochains).
template <class F>
UnitalDGA<F> hochschild_complex(const Representation<F>& rho, int top_degree = 3, std::size_t cap = 4096) {
  rho.validate();
  if (top_degree < 0) throw std::invalid_argument("negative top degree");
  const FiniteGroup& g = rho.group;
  const std::size_t d = rho.dim;
  detail::HochschildIndex ix{g.order(), d, {}};
  std::vector<GradedName> basis;
  for (int n = 0; n <= top_degree; ++n) {
    ix.offset.push_back(basis.size());
    if (basis.size() + ix.tuples(n) * d * d > cap)
      throw CapExceeded("Hochschild complex exceeds " + std::to_string(cap) + " basis vectors at degree " + std::to_string(n));
    for (std::size_t t = 0; t < ix.tuples(n); ++t) {
      std::string name = "c(";
      const auto tup = ix.tuple(n, t);
      for (std::size_t i = 0; i < tup.size(); ++i) name += (i ? "," : "") + g.names[tup[i]];
      name += ")";
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) basis.push_back({name + "[" + std::to_string(a) + std::to_string(b) + "]", n});
    }
  }

  // (dφ)(g_0..g_n) = ρ(g_0)φ(g_1..g_n) + Σ_i (-1)^i φ(.., g_{i-1}g_i, ..) + (-1)^{n+1} φ(g_0..g_{n-1})ρ(g_n)
  MultiMap<F> dm(1, 1);
  for (int n = 0; n < top_degree; ++n)
    for (std::size_t t = 0; t < ix.tuples(n); ++t) {
      const auto tup = ix.tuple(n, t);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
          const Word in{ix.index(n, tup, a, b)};
          for (std::size_t g0 = 0; g0 < g.order(); ++g0) {
            std::vector<int> s{static_cast<int>(g0)};
            s.insert(s.end(), tup.begin(), tup.end());
            for (std::size_t i = 0; i < d; ++i)
              if (!is_zero(rho.matrices[g0](i, a))) dm.add(in, ix.index(n + 1, s, i, b), rho.matrices[g0](i, a));
            std::vector<int> e = tup;
            e.push_back(static_cast<int>(g0));
            const F sign = (n + 1) % 2 ? F(-1) : F(1);
            for (std::size_t j = 0; j < d; ++j)
              if (!is_zero(rho.matrices[g0](b, j))) dm.add(in, ix.index(n + 1, e, a, j), sign * rho.matrices[g0](b, j));
          }
          for (int i = 1; i <= n; ++i) {
            const F sign = i % 2 ? F(-1) : F(1);
            for (std::size_t x = 0; x < g.order(); ++x) {
              const int y = g.table.mul[g.table.inverse(static_cast<int>(x))][tup[i - 1]];
              std::vector<int> s(tup.begin(), tup.begin() + (i - 1));
              s.push_back(static_cast<int>(x));
              s.push_back(y);
              s.insert(s.end(), tup.begin() + i, tup.end());
              dm.add(in, ix.index(n + 1, s, a, b), sign);
            }
          }
        }
    }

  // (φ ⌣ ψ)(g_1..g_{p+q}) = φ(g_1..g_p) ψ(g_{p+1}..g_{p+q})
  MultiMap<F> mu(2, 0);
  for (int p = 0; p <= top_degree; ++p)
    for (int q = 0; p + q <= top_degree; ++q)
      for (std::size_t s = 0; s < ix.tuples(p); ++s)
        for (std::size_t t = 0; t < ix.tuples(q); ++t) {
          const auto ts = ix.tuple(p, s), tt = ix.tuple(q, t);
          std::vector<int> joined = ts;
          joined.insert(joined.end(), tt.begin(), tt.end());
          for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
              for (std::size_t c = 0; c < d; ++c)
                mu.add(Word{ix.index(p, ts, a, b), ix.index(q, tt, b, c)}, ix.index(p + q, joined, a, c), F(1));
        }

  Vec<F> unit(basis.size(), F(0));
  for (std::size_t a = 0; a < d; ++a) unit[ix.index(0, {}, a, a)] = F(1);
  return UnitalDGA<F>(std::move(basis), std::move(dm), std::move(mu), std::move(unit));
}

// C ⊗ 𝔪 with basis φ ⊗ t^j in weight j, extended t-linearly.
template <class F>
DGAlgebra<F> deform_complex(const UnitalDGA<F>& c, const ArtinLocalRing& r) {
  if (r.order < 2) throw std::invalid_argument("the maximal ideal of F[t]/(t^N) needs N >= 2");
  const int m = r.order - 1;
  auto at = [m](int i, int j) { return i * m + (j - 1); };
  std::vector<BasisVector> basis;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (int j = 1; j <= m; ++j) basis.push_back({c.name(static_cast<int>(i)) + "t" + std::to_string(j), c.degree(static_cast<int>(i)), j});
  MultiMap<F> d(1, 1), mu(2, 0);
  for (const auto& [w, s] : c.d().entries())
    for (int j = 1; j <= m; ++j)
      for (const auto& [o, v] : s) d.add(Word{at(w[0], j)}, at(o, j), v);
  for (const auto& [w, s] : c.mu().entries())
    for (int i = 1; i <= m; ++i)
      for (int j = 1; i + j <= m; ++j)
        for (const auto& [o, v] : s) mu.add(Word{at(w[0], i), at(w[1], j)}, at(o, i + j), v);
  return DGAlgebra<F>(FilteredSpace(std::move(basis), r.order), std::move(d), std::move(mu));
}

template <class F>
struct DeformationClassification {
  Classes<F> gauge;    // gauge orbits on C_R
  Classes<F> nerve;    // π_0 of the nerve of C_R
  Classes<F> minimal;  // π_0 of the nerve of the transferred minimal model
  bool gauge_matches_nerve = false;
  std::vector<std::size_t> minimal_to_nerve;  // class map induced by the transfer morphism
  bool transfer_bijective = false;

  bool agree() const {
    return gauge_matches_nerve && transfer_bijective && gauge.size() == nerve.size() && nerve.size() == minimal.size();
  }
};

template <class F>
DeformationClassification<F> classify_deformations(const Representation<F>& rho, const ArtinLocalRing& r, int top_degree = 3,
                                                   const SearchOptions<F>& opt = {}) {
  const DGAlgebra<F> cr = deform_complex(hochschild_complex(rho, top_degree), r);
  const auto a = share(from_dga(cr));
  const Transfer<F> tr = transfer(a);
  DeformationClassification<F> out;
  out.gauge = gauge_orbits(cr, opt);
  out.nerve = pi0(*a, opt);
  out.minimal = pi0(*tr.minimal, opt);
  out.gauge_matches_nerve = same_partition(out.gauge, out.nerve);

  std::map<Vec<F>, std::size_t> nerve_class;
  for (std::size_t c = 0; c < out.nerve.size(); ++c)
    for (const auto& v : out.nerve[c]) nerve_class.emplace(v, c);
  bool well_defined = true;
  for (const auto& cls : out.minimal) {
    std::set<std::size_t> images;
    for (const auto& v : cls) images.insert(nerve_class.at(tr.phi.pushforward(v)));
    well_defined = well_defined && images.size() == 1;
    out.minimal_to_nerve.push_back(*images.begin());
  }
  out.transfer_bijective = well_defined && out.minimal.size() == out.nerve.size() &&
                           std::set<std::size_t>(out.minimal_to_nerve.begin(), out.minimal_to_nerve.end()).size() ==
                               out.minimal_to_nerve.size();
  return out;
}

}  // namespace ainf
