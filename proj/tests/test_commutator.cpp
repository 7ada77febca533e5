#include "ainf/commutator.hpp"
#include "ainf/random.hpp"
#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;
using fixtures::abelian_pair;
using fixtures::truncated_polynomial;

namespace {

using Q = Rational;

AInfinityAlgebra<Q> rational_instance(Rng& rng, bool need_q3) {
  RandomAInftyOptions opt;
  opt.nilpotency = 4;
  opt.max_dim = 4;
  opt.degrees = {-1, 0, 0, 0, 1};
  opt.weight_one = 0.7;
  while (true) {
    auto a = random_ainfty<Q>(rng, opt);
    if (!need_q3 || !a.op(3).empty()) return a;
  }
}

}  // namespace

TEST_CASE("commutators of small algebras", "[commutator]") {
  const auto ab = abelian_pair<Q>(0, 1, 3);
  const auto l = commutator(ab);
  CHECK(l.op(1) == ab.op(1));
  CHECK(l.op(2).empty());

  // The shifted commutator of a dg algebra.
  const auto c = from_dga(truncated_polynomial<Q>(0));
  const auto lc = commutator(c);
  const auto deg = c.space().degree_vector();
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      const Word xy{x, y}, yx{y, x};
      Vec<Q> expect(2, Q(0));
      if (const auto* s = c.op(2).find(xy)) axpy(expect, Q(1), to_dense(*s, 2));
      if (const auto* s = c.op(2).find(yx)) axpy(expect, (deg[x] * deg[y]) % 2 ? Q(-1) : Q(1), to_dense(*s, 2));
      const auto* got = lc.op(2).find(xy);
      CHECK((got ? to_dense(*got, 2) : Vec<Q>(2, Q(0))) == expect);
    }
  // t in shifted degree -1 squares to zero under the bracket.
  CHECK(lc.op(2).empty());

  // t in shifted degree 0: Q_2 is already symmetric, so l_2 = 2 Q_2.
  const auto e = from_dga(truncated_polynomial<Q>(1));
  CHECK(commutator(e).op(2) == e.op(2).scaled(Q(2)));
  CHECK(commutator(e).curvature(Vec<Q>{Q(1), Q(0)}) == e.curvature(Vec<Q>{Q(1), Q(0)}));
  CHECK(is_zero_vec(commutator(e).curvature(Vec<Q>{Q(0), Q(0)})));
}

TEST_CASE("commutators need characteristic zero", "[commutator]") {
  PrimeField f(2);
  CHECK_THROWS_AS(commutator(abelian_pair(0, 1, 3)), InvariantError);
}

TEST_CASE("graded symmetry and Jacobi are checked", "[commutator]") {
  FilteredSpace s({{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 2}}, 3);
  MultiMap<Q> l2(2, 1);
  l2.add({0, 1}, 2, Q(1));  // not symmetric: l(y, x) is missing
  CHECK_THROWS_AS(ShiftedLInfty<Q>(s, {MultiMap<Q>(1, 1), l2}), InvariantError);
  l2.add({1, 0}, 2, Q(1));
  CHECK_NOTHROW(ShiftedLInfty<Q>(s, {MultiMap<Q>(1, 1), l2}));
}

TEST_CASE("Maurer-Cartan sets agree on random rational algebras", "[commutator]") {
  Rng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = rational_instance(rng, trial % 2 == 0);
    CAPTURE(trial);
    const auto l = commutator(a);
    CHECK(curvature_polynomial(a) == curvature_polynomial(l));
    const auto rep = mc_equality_check(a, {Q(-1), Q(0), Q(1, 2)});
    CHECK(rep.ok());
    CHECK(rep.grid_points > 0);

    // A strict automorphism is a strict morphism of the commutators.
    const Matrix<Q> t = random_filtered_automorphism<Q>(rng, a.space());
    const auto b = conjugate_structure(a, {MultiMap<Q>::from_matrix(t, 0)});
    CHECK(is_strict_morphism(l, commutator(b), t));
    for (const auto& x : enumerate_mc(a, SearchOptions<Q>{.parameter_values = {Q(0), Q(1)}})) CHECK(is_zero_vec(commutator(b).curvature(t.apply(x))));
  }
}
