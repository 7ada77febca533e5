#include "ainf/maurer_cartan.hpp"
#include "ainf/product.hpp"
#include "ainf/random.hpp"
#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;
using fixtures::abelian_pair;
using fixtures::truncated_polynomial;

namespace {

std::vector<Vec<Zp>> all_vectors(std::size_t dim) {
  std::vector<Vec<Zp>> out{Vec<Zp>(dim, Zp(0))};
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t n = out.size();
    for (std::size_t k = 0; k < n; ++k)
      for (std::uint32_t v = 1; v < Zp::modulus(); ++v) {
        auto x = out[k];
        x[i] = Zp(v);
        out.push_back(std::move(x));
      }
  }
  return out;
}

Vec<Zp> v2(long long a, long long b) { return {Zp(a), Zp(b)}; }

}  // namespace

TEST_CASE("curvature on small instances", "[mc]") {
  PrimeField f(2);
  const auto ab = abelian_pair(0, 1, 3);
  CHECK(ab.curvature(v2(1, 0)) == v2(0, 1));
  CHECK(is_zero_vec(ab.curvature(v2(0, 0))));
  // t placed in unshifted degree 1 sits in shifted degree 0: curv(t) = t^2.
  const auto a = from_dga(truncated_polynomial(1));
  CHECK(a.curvature(v2(1, 0)) == v2(0, 1));
  CHECK_THROWS_AS(a.curvature(Vec<Zp>{Zp(0), Zp(0), Zp(0)}), std::invalid_argument);
  CHECK_THROWS_AS(from_dga(truncated_polynomial(0)).curvature(v2(1, 0)), InvariantError);
}

TEST_CASE("Maurer-Cartan sets of small instances", "[mc]") {
  PrimeField f(2);
  CHECK(enumerate_mc(abelian_pair(0, 1, 3)) == std::vector<Vec<Zp>>{v2(0, 0)});
  CHECK(enumerate_mc(abelian_pair(0, 1, 3, false)) == std::vector<Vec<Zp>>{v2(0, 0), v2(1, 0)});
  CHECK(enumerate_mc(from_dga(truncated_polynomial(0))) == std::vector<Vec<Zp>>{v2(0, 0)});
  // A^0 = span(t) and curv(a t) = a^2 t^2.
  CHECK(enumerate_mc(from_dga(truncated_polynomial(1))) == std::vector<Vec<Zp>>{v2(0, 0)});
}

TEST_CASE("layered solver agrees with exhaustive enumeration", "[mc]") {
  Rng rng(7);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 25; ++trial) {
      RandomAInftyOptions opt;
      opt.max_dim = 6;
      opt.degrees = {-1, -1, 0, 0, 0, 1};
      opt.nilpotency = uniform(rng, 3, 4);
      const auto a = random_ainfty<Zp>(rng, opt);
      CAPTURE(p, trial);
      CHECK(enumerate_mc(a) == enumerate_mc_exhaustive(a));
    }
  }
}

TEST_CASE("linear conditions restrict the search", "[mc]") {
  PrimeField f(3);
  const auto a = abelian_pair(0, 1, 3, false);
  Matrix<Zp> r(1, 2);
  r(0, 0) = 1;
  MCSolver<Zp> solver(borrow(a), r);
  CHECK(solver.solve(Vec<Zp>{Zp(2)}) == std::vector<Vec<Zp>>{v2(2, 0)});
  CHECK(solver.find_one(Vec<Zp>{Zp(1)}) == v2(1, 0));
  // A row supported only outside degree 0 must have value zero.
  Matrix<Zp> off(1, 2);
  off(0, 1) = 1;
  MCSolver<Zp> none(borrow(a), off);
  CHECK(none.solve(Vec<Zp>{Zp(1)}).empty());
  CHECK(none.solve(Vec<Zp>{Zp(0)}).size() == 3);
}

TEST_CASE("search caps and infinite fields", "[mc]") {
  {
    PrimeField f(3);
    const auto a = abelian_pair(0, 1, 3, false);
    SearchOptions<Zp> opt;
    opt.leaf_cap = 2;
    CHECK_THROWS_AS(enumerate_mc(a, opt), SearchLimitExceeded);
    opt.leaf_cap = 3;
    CHECK(enumerate_mc(a, opt).size() == 3);
  }
  const auto q = abelian_pair<Rational>(0, 1, 3, false);
  CHECK_THROWS_AS(enumerate_mc(q), SearchLimitExceeded);
  SearchOptions<Rational> box;
  box.parameter_values = {Rational(-1), Rational(0), Rational(1, 2)};
  CHECK(enumerate_mc(q, box).size() == 3);
  CHECK(enumerate_mc(abelian_pair<Rational>(0, 1, 3)).size() == 1);
}

TEST_CASE("quasi-inverses in t·F2[t]/(t^3)", "[mc]") {
  PrimeField f(2);
  const auto c = truncated_polynomial(0);
  const Vec<Zp> t = v2(1, 0), t2 = v2(0, 1), zero = v2(0, 0);
  CHECK(quasi_inverse(c, zero) == zero);
  CHECK(quasi_inverse(c, t) == t + t2);
  CHECK(quasi_multiply(c, t, t) == t2);
  CHECK(quasi_multiply(c, t2, t) == t + t2);
  Vec<Zp> power = t;
  int order = 1;
  while (!is_zero_vec(power)) {
    power = quasi_multiply(c, power, t);
    ++order;
  }
  CHECK(order == 4);
}

TEST_CASE("quasi-multiplication is a group law", "[mc]") {
  Rng rng(11);
  PrimeField f(2);
  for (int trial = 0; trial < 6; ++trial) {
    RandomDGAOptions opt;
    opt.generator_degrees = {0};
    opt.max_dim = 5;
    opt.nilpotency = 4;
    const auto c = random_dga<Zp>(rng, opt);
    const auto elems = all_vectors(c.dim());
    const Vec<Zp> zero(c.dim(), Zp(0));
    for (const auto& a : elems) {
      CHECK(quasi_multiply(c, a, zero) == a);
      CHECK(quasi_multiply(c, a, quasi_inverse(c, a)) == zero);
      for (const auto& b : elems)
        for (const auto& d : elems)
          CHECK(quasi_multiply(c, quasi_multiply(c, a, b), d) == quasi_multiply(c, a, quasi_multiply(c, b, d)));
    }
  }
}

TEST_CASE("pushforward of Maurer-Cartan elements", "[mc]") {
  Rng rng(5);
  PrimeField f(2);
  const auto a = share(from_dga(truncated_polynomial(1)));
  for (const auto& x : enumerate_mc(*a)) CHECK(pushforward(InftyMorphism<Zp>::identity(a), x) == x);
  const auto k = share(abelian_pair(0, 1, 3, false));
  const auto prod = product(a, k);
  for (const auto& x : enumerate_mc(*prod.algebra))
    CHECK(pushforward(prod.pr_right, x) == Vec<Zp>(x.begin() + 2, x.end()));
  CHECK_THROWS_AS(pushforward(InftyMorphism<Zp>::identity(a), v2(1, 0)), InvariantError);

  for (int trial = 0; trial < 20; ++trial) {
    RandomAInftyOptions opt;
    opt.degrees = {-1, 0, 0, 1};
    opt.max_dim = 5;
    const auto src = share(random_ainfty<Zp>(rng, opt));
    const auto phi = random_isomorphism(rng, src);
    for (const auto& x : enumerate_mc(*src)) CHECK(is_maurer_cartan(phi.target(), pushforward(phi, x)));
    // The curvature of Φ_*(a) is carried by curv(a), for every degree-0 a.
    const auto idx = src->space().indices(0);
    for (int s = 0; s < 8; ++s) {
      Vec<Zp> x(src->dim(), Zp(0));
      for (int i : idx) x[i] = random_scalar<Zp>(rng);
      CHECK(phi.target().curvature(phi.pushforward(x)) == transported_curvature(phi, x));
    }
  }
}

TEST_CASE("gauge action on small dg algebras", "[mc][gauge]") {
  PrimeField f(2);
  // Abelian C with d u = v in degrees 0, 1 and a closed w in degree 1: g·x = x - dg.
  FilteredSpace s({{"u", 0, 1}, {"v", 1, 1}, {"w", 1, 1}}, 2);
  MultiMap<Zp> d(1, 1);
  d.add({0}, 1, Zp(1));
  const DGAlgebra<Zp> c(s, d, MultiMap<Zp>(2, 0));
  const Vec<Zp> x{Zp(0), Zp(0), Zp(1)}, g{Zp(1), Zp(0), Zp(0)};
  CHECK(gauge_action(c, Vec<Zp>(3, Zp(0)), x) == x);
  CHECK(gauge_action(c, g, x) == Vec<Zp>{Zp(0), Zp(1), Zp(1)});
  const auto orbits = gauge_orbits(c);
  CHECK(orbits.size() == 2);  // H^1 = F2
  CHECK_THROWS_AS(gauge_action(c, g, g), InvariantError);
}

TEST_CASE("gauge action is a group action", "[mc][gauge]") {
  Rng rng(3);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 15; ++trial) {
      RandomDGAOptions opt;
      opt.generator_degrees = {0, 1};
      opt.max_dim = 5;
      const auto c = random_dga<Zp>(rng, opt);
      const auto mc = enumerate_mc(from_dga(c));
      const auto idx = c.space().indices(0);
      std::size_t members = 0;
      for (const auto& o : gauge_orbits(c)) members += o.size();
      CHECK(members == mc.size());
      for (int s = 0; s < 6; ++s) {
        Vec<Zp> g(c.dim(), Zp(0)), h(c.dim(), Zp(0));
        for (int i : idx) g[i] = random_scalar<Zp>(rng), h[i] = random_scalar<Zp>(rng);
        for (const auto& x : mc) CHECK(gauge_action(c, quasi_multiply(c, g, h), x) == gauge_action(c, g, gauge_action(c, h, x)));
      }
    }
  }
}
