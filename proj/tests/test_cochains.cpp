#include "ainf/cochains.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;
using Q = Rational;

namespace {

Vec<Q> phi(int n, const SimplexLabel& s) { return cochains<Q>(n)->basis_vector(s); }
Vec<Q> delta(int n, const Vec<Q>& v) { return cochains<Q>(n)->algebra().differential(v); }
Vec<Q> cup(int n, const Vec<Q>& a, const Vec<Q>& b) { return cochains<Q>(n)->algebra().multiply(a, b); }

long long binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("interval cochains have the expected structure constants", "[cochains]") {
  const Vec<Q> top = phi(1, {0, 1});
  // Vertex signs are forced by the Leibniz rule on N*(Δ^2), see the triangle case below.
  CHECK(delta(1, phi(1, {0})) == scaled(Q(-1), top));
  CHECK(delta(1, phi(1, {1})) == top);
  CHECK(cup(1, phi(1, {0}), top) == top);
  CHECK(cup(1, top, phi(1, {1})) == top);
  CHECK(cup(1, phi(1, {0}), phi(1, {0})) == phi(1, {0}));
  CHECK(is_zero_vec(cup(1, top, phi(1, {0}))));
  CHECK(cochains<Q>(1)->unit() == phi(1, {0}) + phi(1, {1}));
}

TEST_CASE("triangle cochains: edge differentials and cup products", "[cochains]") {
  // d^j[1] is the edge of [2] missing vertex j.
  const std::vector<SimplexLabel> edge{{1, 2}, {0, 2}, {0, 1}};
  const Vec<Q> top = phi(2, {0, 1, 2});
  for (int j = 0; j < 3; ++j) CHECK(delta(2, phi(2, edge[j])) == scaled(sign<Q>(j), top));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Vec<Q> p = cup(2, phi(2, edge[i]), phi(2, edge[j]));
      if (i == 2 && j == 0) CHECK(p == top);
      else CHECK(is_zero_vec(p));
    }
}

TEST_CASE("the vertex sign of the differential is forced by Leibniz", "[cochains]") {
  // With δφ_1 = -φ_01 + φ_12 the identity δ(φ_01 ⌣ φ_1) = δφ_01 ⌣ φ_1 - φ_01 ⌣ δφ_1 would fail.
  const Vec<Q> a = phi(2, {0, 1}), b = phi(2, {1});
  const Vec<Q> lhs = delta(2, cup(2, a, b));
  CHECK(lhs == cup(2, delta(2, a), b) - cup(2, a, delta(2, b)));
  CHECK(delta(2, b) == phi(2, {0, 1}) - phi(2, {1, 2}));
}

TEST_CASE("cochain dimensions are binomial", "[cochains]") {
  for (int n = 0; n <= 6; ++n) {
    const auto c = cochains<Q>(n);
    for (int k = 0; k <= n; ++k) {
      long long count = 0;
      for (const auto& g : c->algebra().basis()) count += g.degree == k;
      CHECK(count == binomial(n + 1, k + 1));
    }
  }
  CHECK_THROWS(cochains<Q>(7));
}

TEST_CASE("faces and degeneracies are unital dg algebra maps", "[cochains]") {
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j <= n; ++j) {
      const Matrix<Q> dj = face_map<Q>(n, j);
      CHECK_NOTHROW(check_dga_morphism(cochains<Q>(n)->algebra(), cochains<Q>(n - 1)->algebra(), dj));
      CHECK(is_zero_vec(dj.apply(cochains<Q>(n)->top())));
    }
  for (int n = 0; n <= 3; ++n)
    for (int j = 0; j <= n; ++j)
      CHECK_NOTHROW(check_dga_morphism(cochains<Q>(n)->algebra(), cochains<Q>(n + 1)->algebra(), degeneracy_map<Q>(n, j)));
  CHECK(face_map<Q>(1, 0).apply(phi(1, {0})) == Vec<Q>{Q(0)});
  CHECK(face_map<Q>(1, 0).apply(phi(1, {1})) == Vec<Q>{Q(1)});
  CHECK(degeneracy_map<Q>(0, 0).apply(cochains<Q>(0)->unit()) == cochains<Q>(1)->unit());
  CHECK(degeneracy_map<Q>(1, 0).apply(phi(1, {0, 1})) == phi(2, {0, 2}) + phi(2, {1, 2}));
  CHECK_THROWS(face_map<Q>(2, 3));
  CHECK_THROWS(degeneracy_map<Q>(2, 3));
}

TEST_CASE("simplicial identities on cochains", "[cochains]") {
  for (int n = 1; n <= 3; ++n) {
    for (int j = 0; j <= n; ++j) {
      // d_j s_j = d_{j+1} s_j = id
      const Matrix<Q> s = degeneracy_map<Q>(n, j);
      CHECK(face_map<Q>(n + 1, j) * s == Matrix<Q>::identity(cochains<Q>(n)->dim()));
      CHECK(face_map<Q>(n + 1, j + 1) * s == Matrix<Q>::identity(cochains<Q>(n)->dim()));
    }
    for (int j = 1; j <= n + 1; ++j)
      for (int i = 0; i < j; ++i)
        CHECK(face_map<Q>(n, i) * face_map<Q>(n + 1, j) == face_map<Q>(n, j - 1) * face_map<Q>(n + 1, i));
  }
}

TEST_CASE("interval evaluations", "[cochains]") {
  const auto ev = interval_evaluations<Q>();
  CHECK(ev.ev0.apply(phi(1, {0})) == Vec<Q>{Q(1)});
  CHECK(ev.ev0.apply(phi(1, {1})) == Vec<Q>{Q(0)});
  CHECK(ev.ev0.apply(phi(1, {0, 1})) == Vec<Q>{Q(0)});
  CHECK(ev.ev1.apply(phi(1, {1})) == Vec<Q>{Q(1)});
  CHECK(ev.ev0.apply(cochains<Q>(1)->unit()) == Vec<Q>{Q(1)});
}
