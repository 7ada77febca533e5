#include "ainf/complex.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;

namespace {

// u (deg 0) -> v (deg 1), both weight 1.
FilteredComplex<Zp> two_term() {
  FilteredSpace s({{"u", 0, 1}, {"v", 1, 1}}, 2);
  Matrix<Zp> d(2, 2);
  d(1, 0) = 1;
  return FilteredComplex<Zp>(s, d);
}

}  // namespace

TEST_CASE("prime field arithmetic is exact", "[scalar]") {
  PrimeField f(7);
  const Zp a = 3, b = 5;
  CHECK(a + b == Zp(1));
  CHECK(a * b == Zp(1));
  CHECK(a / b * b == a);
  CHECK(-a == Zp(4));
  CHECK(Zp(-1) == Zp(6));
  CHECK_THROWS(Zp(0).inverse());
  {
    PrimeField inner(2);
    CHECK(Zp(3) == Zp(1));
  }
  CHECK(Zp::modulus() == 7);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
}

TEST_CASE("rationals parse and format as exact fractions", "[scalar]") {
  const Rational r = FieldTraits<Rational>::parse("-6/4");
  CHECK(FieldTraits<Rational>::format(r) == "-3/2");
  CHECK(r * Rational(2) == Rational(-3));
  CHECK_THROWS_AS(FieldTraits<Rational>::parse("x"), std::invalid_argument);
}

TEST_CASE("solver returns particular solutions and kernels", "[linalg]") {
  Matrix<Rational> m(2, 3);
  m(0, 0) = 1, m(0, 1) = 2, m(0, 2) = 3;
  m(1, 0) = 2, m(1, 1) = 4, m(1, 2) = 7;
  const LinearSolver<Rational> solver(m);
  CHECK(solver.rank() == 2);
  const auto x = solver.solve({Rational(1), Rational(1)});
  REQUIRE(x);
  CHECK(m.apply(*x) == Vec<Rational>{Rational(1), Rational(1)});
  const auto ker = solver.kernel();
  REQUIRE(ker.size() == 1);
  CHECK(is_zero_vec(m.apply(ker[0])));

  Matrix<Rational> singular(2, 2);
  singular(0, 0) = 1, singular(1, 0) = 1;
  CHECK_FALSE(LinearSolver<Rational>(singular).solve({Rational(0), Rational(1)}));
  const Matrix<Rational> inv = inverse(Matrix<Rational>(m.submatrix({0, 1}, {0, 2})));
  CHECK(inv * m.submatrix({0, 1}, {0, 2}) == Matrix<Rational>::identity(2));
}

TEST_CASE("filtered spaces enforce weight bounds and unique names", "[space]") {
  CHECK_THROWS_AS(FilteredSpace({{"x", 0, 3}}, 3), InvariantError);
  CHECK_THROWS_AS(FilteredSpace({{"x", 0, 0}}, 3), InvariantError);
  CHECK_THROWS_AS(FilteredSpace({{"x", 0, 1}, {"x", 1, 1}}, 3), InvariantError);
  CHECK_THROWS_AS(FilteredSpace({}, 1), InvariantError);
  const FilteredSpace s({{"a", 0, 2}, {"b", 0, 1}}, 3);
  CHECK(s.indices(0, 2) == std::vector<int>{0});
  CHECK(s.filtration_order() == std::vector<int>{1, 0});
}

TEST_CASE("filtered linear maps reject weight-lowering entries", "[space]") {
  PrimeField f(2);
  const FilteredSpace s({{"a", 0, 1}, {"b", 0, 2}}, 3);
  Matrix<Zp> lower(2, 2);
  lower(0, 1) = 1;
  CHECK_THROWS_AS(FilteredLinearMap<Zp>(s, s, 0, lower), InvariantError);
  Matrix<Zp> raise(2, 2);
  raise(1, 0) = 1;
  CHECK_NOTHROW(FilteredLinearMap<Zp>(s, s, 0, raise));
  Matrix<Zp> d(2, 2);
  d(1, 0) = 1;
  CHECK_THROWS_AS(FilteredLinearMap<Zp>(s, s, 1, d), InvariantError);
}

TEST_CASE("cohomology of small complexes", "[complex]") {
  PrimeField f(2);
  const auto c = two_term();
  CHECK(cohomology_basis(c, 0, 1).dim() == 0);
  CHECK(cohomology_basis(c, 1, 1).dim() == 0);

  const FilteredSpace t({{"t", -1, 1}, {"t2", -1, 2}}, 3);
  const FilteredComplex<Zp> zero_d(t, Matrix<Zp>(2, 2));
  const auto h = cohomology_basis(zero_d, -1, 1);
  CHECK(h.dim() == 2);
  CHECK(cohomology_basis(zero_d, -1, 2).dim() == 1);

  Matrix<Zp> bad(2, 2);
  bad(0, 0) = 1;
  const FilteredSpace deg0({{"x", 0, 1}, {"y", 0, 1}}, 2);
  CHECK_THROWS(FilteredComplex<Zp>(deg0, bad));
}

TEST_CASE("cohomology representatives are independent cocycles", "[complex]") {
  PrimeField f(3);
  // x -> y + z, w closed; two cocycle classes in degree 1 modulo one boundary.
  const FilteredSpace s({{"x", 0, 1}, {"y", 1, 1}, {"z", 1, 2}, {"w", 0, 2}}, 3);
  Matrix<Zp> d(4, 4);
  d(1, 0) = 1, d(2, 0) = 1;
  const FilteredComplex<Zp> c(s, d);
  const auto h1 = cohomology_basis(c, 1, 1);
  REQUIRE(h1.dim() == 1);
  for (const auto& r : h1.representatives()) CHECK(is_zero_vec(d.apply(r)));
  CHECK(h1.is_coboundary({Zp(0), Zp(1), Zp(1), Zp(0)}));
  CHECK(cohomology_basis(c, 0, 1).dim() == 1);
  CHECK(cohomology_basis(c, 1, 2).dim() == 1);
}

TEST_CASE("weak equivalences and fibrations", "[complex]") {
  PrimeField f(2);
  const auto c = two_term();
  const auto id = FilteredLinearMap<Zp>::identity(c.space());
  CHECK(is_weak_equivalence(c, c, id));
  CHECK(is_fibration(c, c, id));

  const FilteredComplex<Zp> zero(FilteredSpace({}, 2), Matrix<Zp>(0, 0));
  CHECK(is_weak_equivalence(zero, c, FilteredLinearMap<Zp>::zero(zero.space(), c.space(), 0)));
  CHECK_FALSE(is_fibration(zero, c, FilteredLinearMap<Zp>::zero(zero.space(), c.space(), 0)));

  // F_2 C -> C where C = span(t (w1), t2 (w2)) with d = 0.
  const FilteredSpace big({{"t", 0, 1}, {"t2", 0, 2}}, 3);
  const FilteredSpace small({{"t2", 0, 2}}, 3);
  const FilteredComplex<Zp> cb(big, Matrix<Zp>(2, 2)), cs(small, Matrix<Zp>(1, 1));
  Matrix<Zp> incl(2, 1);
  incl(1, 0) = 1;
  CHECK_FALSE(is_weak_equivalence(cs, cb, FilteredLinearMap<Zp>(small, big, 0, incl)));

  Matrix<Zp> not_chain(2, 2);
  not_chain(0, 0) = 1;
  CHECK_THROWS(is_weak_equivalence(c, c, FilteredLinearMap<Zp>(c.space(), c.space(), 0, not_chain)));
}

TEST_CASE("acyclic fibrations contract", "[complex]") {
  PrimeField f(2);
  const auto c = two_term();
  SECTION("identity") {
    const auto r = contract_acyclic_fibration(c, c, FilteredLinearMap<Zp>::identity(c.space()));
    CHECK(r.section.matrix() == Matrix<Zp>::identity(2));
    CHECK(r.homotopy.matrix().is_zero_matrix());
  }
  SECTION("onto zero") {
    const FilteredComplex<Zp> zero(FilteredSpace({}, 2), Matrix<Zp>(0, 0));
    const auto r = contract_acyclic_fibration(c, zero, FilteredLinearMap<Zp>::zero(c.space(), zero.space(), 0));
    CHECK(r.homotopy.matrix()(0, 1) == Zp(1));
    CHECK(r.homotopy.matrix()(0, 0) == Zp(0));
  }
  SECTION("product with an acyclic factor") {
    const FilteredSpace s({{"a", 0, 1}, {"u", 0, 2}, {"v", 1, 2}}, 3);
    Matrix<Zp> d(3, 3);
    d(2, 1) = 1;
    const FilteredComplex<Zp> prod(s, d);
    const FilteredComplex<Zp> base(FilteredSpace({{"a", 0, 1}}, 3), Matrix<Zp>(1, 1));
    Matrix<Zp> pr(1, 3);
    pr(0, 0) = 1;
    const FilteredLinearMap<Zp> p(s, base.space(), 0, pr);
    const auto r = contract_acyclic_fibration(prod, base, p);
    CHECK(r.section.matrix().column(0) == Vec<Zp>{Zp(1), Zp(0), Zp(0)});
    CHECK(r.homotopy.matrix().row(0) == Vec<Zp>{Zp(0), Zp(0), Zp(0)});
  }
  SECTION("non-acyclic maps are refused") {
    const FilteredComplex<Zp> line(FilteredSpace({{"a", 0, 1}}, 2), Matrix<Zp>(1, 1));
    const FilteredComplex<Zp> zero(FilteredSpace({}, 2), Matrix<Zp>(0, 0));
    CHECK_THROWS_AS(contract_acyclic_fibration(line, zero, FilteredLinearMap<Zp>::zero(line.space(), zero.space(), 0)),
                    InvariantError);
  }
}

TEST_CASE("cohomology retracts satisfy the homotopy identity", "[complex]") {
  PrimeField f(3);
  const FilteredSpace s({{"x", 0, 1}, {"y", 1, 1}, {"z", 1, 2}, {"w", 0, 2}}, 3);
  Matrix<Zp> d(4, 4);
  d(1, 0) = 1, d(2, 0) = 1;
  const auto r = cohomology_retract(FilteredComplex<Zp>(s, d));
  CHECK(r.cohomology.dim() == 2);
  CHECK(r.pi * r.iota == Matrix<Zp>::identity(2));
}
