#include "ainf/ainfty.hpp"
#include "ainf/product.hpp"
#include "ainf/tensor.hpp"
#include "ainf/twist.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;

namespace {

// t·F[t]/(t^3) with t in unshifted degree `deg`, d = 0.
DGAlgebra<Zp> truncated(int deg) {
  FilteredSpace s({{"t", deg, 1}, {"t2", 2 * deg, 2}}, 3);
  MultiMap<Zp> mu(2, 0);
  mu.add({0, 0}, 1, Zp(1));
  return DGAlgebra<Zp>(s, MultiMap<Zp>(1, 1), mu);
}

// Abelian u -> v in shifted degrees (deg, deg + 1), both of weight w.
AInfinityAlgebra<Zp> abelian_pair(int deg, int w, int n) {
  FilteredSpace s({{"u", deg, w}, {"v", deg + 1, w}}, n);
  MultiMap<Zp> d(1, 1);
  d.add({0}, 1, Zp(1));
  return AInfinityAlgebra<Zp>(s, {d});
}

// x (w1), y (w2), z (w3), all of shifted degree -1, with a non-associative binary product.
AInfinityAlgebra<Zp> broken_associativity() {
  FilteredSpace s({{"x", -1, 1}, {"y", -1, 2}, {"z", -1, 3}}, 4);
  MultiMap<Zp> q2(2, 1);
  q2.add({0, 0}, 1, Zp(1));
  q2.add({0, 1}, 2, Zp(1));
  return AInfinityAlgebra<Zp>(s, {MultiMap<Zp>(1, 1), q2}, Validation::structural);
}

// truncated(0) plus a closed element e of shifted degree -2 and weight 2, so that a
// nonzero Φ_2(t, t) = e has the right degree.
DGAlgebra<Zp> truncated_with_spare() {
  FilteredSpace s({{"t", 0, 1}, {"t2", 0, 2}, {"e", -1, 2}}, 3);
  MultiMap<Zp> mu(2, 0);
  mu.add({0, 0}, 1, Zp(1));
  return DGAlgebra<Zp>(s, MultiMap<Zp>(1, 1), mu);
}

InftyMorphism<Zp> shear(const AlgebraPtr<Zp>& a) {
  MultiMap<Zp> p2(2, 0);
  p2.add({0, 0}, 2, Zp(1));
  return InftyMorphism<Zp>(a, a, {MultiMap<Zp>::from_matrix(Matrix<Zp>::identity(3), 0), p2});
}

}  // namespace

TEST_CASE("dg algebras become shifted A-infinity algebras", "[ainfty]") {
  PrimeField f(2);
  const auto a = from_dga(truncated(0));
  CHECK(a.space().degree(0) == -1);
  CHECK(a.space().degree(1) == -1);
  REQUIRE(a.op(2).find({0, 0}));
  CHECK(*a.op(2).find({0, 0}) == Sparse<Zp>{{1, Zp(1)}});
  CHECK(a.op(2).find({0, 1}) == nullptr);
  CHECK(check_stasheff(a));
  CHECK(check_stasheff(AInfinityAlgebra<Zp>::zero()));

  const auto b = from_dga(truncated(1));
  CHECK(b.curvature({Zp(1), Zp(0)}) == Vec<Zp>{Zp(0), Zp(1)});
  CHECK(is_zero_vec(b.curvature({Zp(0), Zp(0)})));
}

TEST_CASE("shifted product sign follows the unshifted degree", "[ainfty]") {
  PrimeField f(5);
  // a of unshifted degree 2: Q_2(s^-1 a, s^-1 a) = (-1)^{1} s^-1 a^2.
  FilteredSpace s({{"a", 2, 1}, {"a2", 4, 2}}, 3);
  MultiMap<Zp> mu(2, 0);
  mu.add({0, 0}, 1, Zp(1));
  const auto q = from_dga(DGAlgebra<Zp>(s, MultiMap<Zp>(1, 1), mu));
  CHECK(*q.op(2).find({0, 0}) == Sparse<Zp>{{1, Zp(-1)}});
}

TEST_CASE("broken associativity fails the arity-3 Stasheff identity", "[ainfty]") {
  PrimeField f(3);
  const auto a = broken_associativity();
  const Verdict v = check_stasheff(a);
  CHECK_FALSE(v);
  CHECK(v.detail.find("arity 3") != std::string::npos);
  CHECK(a.stasheff_defect(1).empty());
  CHECK(a.stasheff_defect(2).empty());
  CHECK_THROWS_AS(AInfinityAlgebra<Zp>(a.space(), a.ops()), InvariantError);

  FilteredSpace s({{"x", 0, 1}, {"y", 0, 2}, {"z", 0, 3}}, 4);
  MultiMap<Zp> mu(2, 0);
  mu.add({0, 0}, 1, Zp(1));
  mu.add({0, 1}, 2, Zp(1));
  CHECK_THROWS_WITH(DGAlgebra<Zp>(s, MultiMap<Zp>(1, 1), mu), Catch::Matchers::ContainsSubstring("associative"));
}

TEST_CASE("structure tables reject filtration violations", "[ainfty]") {
  PrimeField f(2);
  FilteredSpace s({{"t", -1, 1}, {"t2", -1, 2}}, 3);
  MultiMap<Zp> q2(2, 1);
  q2.add({0, 0}, 0, Zp(1));  // lands in weight 1 < 2
  CHECK_THROWS_WITH(AInfinityAlgebra<Zp>(s, {MultiMap<Zp>(1, 1), q2}), Catch::Matchers::ContainsSubstring("filtration"));
}

TEST_CASE("coderivation extension", "[ainfty]") {
  PrimeField f(3);
  // Q^2_2 = d ⊗ id + (-1)^{|x|} id ⊗ d.
  const auto e = extend_coderivation(abelian_pair(-1, 1, 3), 2, 2);
  REQUIRE(e.count({0, 0}));
  const Tensor<Zp> expected{{{1, 0}, Zp(1)}, {{0, 1}, Zp(-1)}};
  CHECK(e.at({0, 0}) == expected);
  // Q^1_n is the operation itself; Q_2(t, t) = -t2 for t of unshifted degree 0.
  const auto q = from_dga(truncated(0));
  const auto e12 = extend_coderivation(q, 1, 2);
  CHECK(e12.at({0, 0}) == Tensor<Zp>{{{1}, Zp(-1)}});
}

TEST_CASE("infinity-morphisms compose and invert", "[ainfty]") {
  PrimeField f(3);
  auto a = share(from_dga(truncated(0)));
  const auto id = InftyMorphism<Zp>::identity(a);
  CHECK(compose(id, id) == id);

  // Strict automorphism t -> -t, t2 -> t2 preserves Q_2(t,t) = t2.
  Matrix<Zp> m(2, 2);
  m(0, 0) = Zp(-1), m(1, 1) = Zp(1);
  const auto s = InftyMorphism<Zp>::strict(a, a, m);
  CHECK(compose(s, s) == id);
  CHECK(compose(s, s).is_strict());

  // Non-strict automorphism: Φ_1 = id, Φ_2(t, t) = e is a morphism since Q_1 = 0.
  auto b = share(from_dga(truncated_with_spare()));
  const auto phi = shear(b);
  const auto inv = invert(phi);
  CHECK_FALSE(inv.is_strict());
  CHECK(compose(inv, phi) == InftyMorphism<Zp>::identity(b));
  CHECK(compose(phi, inv) == InftyMorphism<Zp>::identity(b));
  Matrix<Zp> m3 = Matrix<Zp>::identity(3);
  m3(0, 0) = Zp(-1);
  const auto s3 = InftyMorphism<Zp>::strict(b, b, m3);
  CHECK(compose(phi, s3).tangent() == phi.tangent() * s3.tangent());
}

TEST_CASE("morphism identities are enforced", "[ainfty]") {
  PrimeField f(2);
  auto a = share(from_dga(truncated(0)));
  Matrix<Zp> m(2, 2);
  m(0, 0) = 1;  // kills t2 but keeps t: Φ(Q_2(t,t)) = 0 != Q_2(t,t)
  CHECK_THROWS_AS(InftyMorphism<Zp>::strict(a, a, m), InvariantError);
  const auto bad = InftyMorphism<Zp>::strict(a, a, m, Validation::structural);
  CHECK_FALSE(check_morphism(bad));
}

TEST_CASE("dg algebra morphisms lift to strict morphisms", "[ainfty]") {
  PrimeField f(3);
  const auto c = truncated(0);
  auto a = share(from_dga(c));
  // t -> t + t2 is an algebra map: (t + t2)^2 = t2.
  Matrix<Zp> m(2, 2);
  m(0, 0) = 1, m(1, 0) = 1, m(1, 1) = 1;
  CHECK(check_morphism(InftyMorphism<Zp>::strict(a, a, m)));
}

TEST_CASE("tensor with the ground field is the identity construction", "[tensor]") {
  PrimeField f(2);
  const auto a = from_dga(truncated(0));
  CHECK(tensor_with_dga(a, UnitalDGA<Zp>::ground()) == a);
  CHECK(tensor_with_dga(a, cochains<Zp>(0)->algebra()) == a);
}

TEST_CASE("tensor with the interval adds the cochain differential", "[tensor]") {
  PrimeField f(5);
  const auto a = abelian_pair(-1, 1, 3);
  const auto b = cochains<Zp>(1);
  const auto ab = tensor_with_dga(a, b->algebra());
  const auto nb = b->dim();
  const int u0 = tensor_index(0, b->vertex(0), nb);
  Vec<Zp> x(ab.dim(), Zp(0));
  x[u0] = 1;
  Vec<Zp> expected(ab.dim(), Zp(0));
  expected[tensor_index(1, b->vertex(0), nb)] = 1;             // du ⊗ φ_0
  expected[tensor_index(0, b->top_index(), nb)] = Zp(1);       // (-1)^{|u|} u ⊗ δφ_0 = u ⊗ φ_[1]
  CHECK(ab.differential().apply(x) == expected);
  CHECK(check_stasheff(ab));
}

TEST_CASE("evaluation at an endpoint after the constant inclusion is the identity", "[tensor]") {
  PrimeField f(3);
  auto a = share(from_dga(truncated(0)));
  auto a1 = share(tensor_with_dga(*a, cochains<Zp>(1)->algebra()));
  const auto ev = interval_evaluations<Zp>();
  Matrix<Zp> unit(cochains<Zp>(1)->dim(), 1);
  for (std::size_t i = 0; i < unit.rows(); ++i) unit(i, 0) = cochains<Zp>(1)->unit()[i];
  const auto incl = tensor_dga_map(a, a1, a->dim(), unit);
  const auto e0 = tensor_dga_map(a1, a, a->dim(), ev.ev0);
  const auto e1 = tensor_dga_map(a1, a, a->dim(), ev.ev1);
  CHECK(compose(e0, incl) == InftyMorphism<Zp>::identity(a));
  CHECK(compose(e1, incl) == InftyMorphism<Zp>::identity(a));
}

TEST_CASE("tensor is functorial in the dg algebra", "[tensor]") {
  PrimeField f(3);
  auto a = share(from_dga(truncated(0)));
  std::vector<AlgebraPtr<Zp>> levels;
  for (int n = 0; n <= 3; ++n) levels.push_back(share(tensor_with_dga(*a, cochains<Zp>(n)->algebra())));
  for (int i = 0; i <= 2; ++i)
    for (int j = i + 1; j <= 3; ++j) {
      const auto di = tensor_dga_map(levels[2], levels[1], a->dim(), face_map<Zp>(2, i));
      const auto dj = tensor_dga_map(levels[3], levels[2], a->dim(), face_map<Zp>(3, j));
      const auto both = tensor_dga_map(levels[3], levels[1], a->dim(), face_map<Zp>(2, i) * face_map<Zp>(3, j));
      CHECK(compose(di, dj) == both);
    }
}

TEST_CASE("tensor reparenthesizes", "[tensor]") {
  PrimeField f(3);
  const auto a = from_dga(truncated(0));
  for (int nb = 1; nb <= 2; ++nb)
    for (int nc = 1; nc <= 2; ++nc) {
      const auto& b = cochains<Zp>(nb)->algebra();
      const auto& c = cochains<Zp>(nc)->algebra();
      const auto left = tensor_with_dga(tensor_with_dga(a, b), c);
      const auto right = tensor_with_dga(a, tensor_dga(b, c));
      CHECK(left == right);
    }
}

TEST_CASE("tensor of morphisms", "[tensor]") {
  PrimeField f(3);
  auto a = share(from_dga(truncated_with_spare()));
  const auto phi = shear(a);
  for (int n = 1; n <= 2; ++n) {
    auto an = share(tensor_with_dga(*a, cochains<Zp>(n)->algebra()));
    CHECK(check_morphism(tensor_morphism(phi, cochains<Zp>(n)->algebra(), an, an)));
  }
}

TEST_CASE("products, projections and pairings", "[product]") {
  PrimeField f(2);
  AlgebraPtr<Zp> a = share(from_dga(truncated(0)));
  auto z = share(AInfinityAlgebra<Zp>::zero(3));
  const auto p = product(a, z);
  CHECK(p.algebra->ops() == a->ops());
  CHECK(compose(p.pr_left, p.in_left) == InftyMorphism<Zp>::identity(a));

  auto k = share(abelian_pair(-1, 1, 3));
  a = share(from_dga(truncated_with_spare()));
  const auto q = product(a, k);
  const auto phi = shear(a);
  const auto zero = InftyMorphism<Zp>::zero(a, k);
  const auto pair = pairing(phi, zero, q);
  CHECK(compose(q.pr_left, pair) == phi);
  CHECK(compose(q.pr_right, pair) == zero);
  const auto pm = product_map(phi, InftyMorphism<Zp>::identity(k), q, q);
  CHECK(compose(q.pr_left, pm) == compose(phi, q.pr_left));
  CHECK(is_fibration(q.algebra->tangent(), a->tangent(), q.pr_left.tangent_map()));
}

TEST_CASE("twisting by Maurer-Cartan elements", "[twist]") {
  PrimeField f(3);
  // Unshifted degree 1 generator: shifted degree 0, so t is a candidate MC element.
  FilteredSpace s({{"t", 1, 1}, {"t2", 2, 2}, {"e", 2, 1}}, 3);
  MultiMap<Zp> mu(2, 0);
  mu.add({0, 0}, 1, Zp(1));
  const auto a = from_dga(DGAlgebra<Zp>(s, MultiMap<Zp>(1, 1), mu));
  CHECK(twist_algebra(a, Vec<Zp>(3, Zp(0))) == a);
  CHECK_THROWS_AS(twist_algebra(a, Vec<Zp>{Zp(1), Zp(0), Zp(0)}), InvariantError);

  // Dg algebra with d(x) = y, product x*x = y2 ... twisting at MC alpha = t2 component.
  FilteredSpace s2({{"x", 1, 1}, {"y", 2, 2}, {"w", 1, 2}}, 3);
  MultiMap<Zp> mu2(2, 0);
  mu2.add({0, 0}, 1, Zp(1));
  const auto b = from_dga(DGAlgebra<Zp>(s2, MultiMap<Zp>(1, 1), mu2));
  const Vec<Zp> alpha{Zp(0), Zp(0), Zp(1)};
  REQUIRE(is_zero_vec(b.curvature(alpha)));
  const auto bt = twist_algebra(b, alpha);
  // d^α(x) = dx + Q_2(α, x) + Q_2(x, α); both products vanish by weight here.
  CHECK(bt.differential() == b.differential());
  CHECK(check_stasheff(bt));
}
