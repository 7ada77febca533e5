#include "ainf/homotopy_ops.hpp"
#include "ainf/random.hpp"
#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;
using fixtures::abelian_pair;
using fixtures::truncated_polynomial;

namespace {

AlgebraPtr<Zp> instance(Rng& rng, int n, std::size_t max_dim = 3) {
  RandomAInftyOptions opt;
  opt.nilpotency = n;
  opt.max_dim = max_dim;
  opt.degrees = {-1, -1, 0, 0, 1};
  return share(random_ainfty<Zp>(rng, opt));
}

AlgebraPtr<Zp> acyclic(Rng& rng, int n) {
  std::vector<std::pair<int, int>> pairs;
  const int count = uniform(rng, 1, 2);
  for (int i = 0; i < count; ++i) pairs.emplace_back(uniform(rng, -1, 0), uniform(rng, 1, n - 1));
  return share(random_abelian<Zp>(rng, {}, pairs, n, 0.0));
}

// pr : (A × K) -> A, precomposed with a random isomorphism onto A × K.
InftyMorphism<Zp> scrambled_projection(Rng& rng, const AlgebraPtr<Zp>& a, const AlgebraPtr<Zp>& k) {
  const auto p = product(a, k);
  const auto iso = random_isomorphism(rng, p.algebra);
  return compose(p.pr_left, invert(iso));
}

// dim (ker f ∩ F_w) by direct elimination.
std::size_t kernel_dim_at(const FilteredLinearMap<Zp>& f, int w) {
  std::size_t total = 0;
  for (int k : f.source().degrees()) {
    const auto cols = f.source().indices(k, w);
    if (cols.empty()) continue;
    total += kernel_basis(f.matrix().submatrix(f.target().indices(k), cols)).size();
  }
  return total;
}

}  // namespace

TEST_CASE("filtered kernels have adapted bases", "[homotopy-ops]") {
  Rng rng(31);
  PrimeField f(3);
  for (int trial = 0; trial < 15; ++trial) {
    const auto a = instance(rng, 4, 3);
    const auto phi = scrambled_projection(rng, a, instance(rng, 4, 3));
    const auto lin = phi.tangent_map();
    const auto ker = filtered_kernel(lin);
    CHECK((lin.matrix() * ker.inclusion).is_zero_matrix());
    CHECK(ker.coordinates * ker.inclusion == Matrix<Zp>::identity(ker.space.dim()));
    for (int w = 1; w < 4; ++w) {
      std::size_t at_w = 0;
      for (std::size_t i = 0; i < ker.space.dim(); ++i) at_w += ker.space.weight(i) >= w;
      CHECK(at_w == kernel_dim_at(lin, w));
      // Each basis vector lies in F_w of its own weight.
      for (std::size_t i = 0; i < ker.space.dim(); ++i)
        CHECK(phi.source().space().leading_weight(ker.inclusion.column(i)) == ker.space.weight(i));
    }
  }
}

TEST_CASE("acyclic fibrations split as products with their kernel", "[homotopy-ops]") {
  Rng rng(8);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 8; ++trial) {
      const int n = uniform(rng, 3, 4);
      const auto a = instance(rng, n);
      const auto phi = scrambled_projection(rng, a, acyclic(rng, n));
      CAPTURE(p, trial);
      const auto dec = decompose_acyclic_fibration(phi);
      CHECK(dec.kernel->is_abelian());
      CHECK(is_weak_equivalence(InftyMorphism<Zp>::zero(share(AInfinityAlgebra<Zp>::zero(n)), dec.kernel)));
      CHECK(compose(dec.inverse, dec.iso) == InftyMorphism<Zp>::identity(phi.source_ptr()));
      CHECK(compose(dec.iso, dec.inverse) == InftyMorphism<Zp>::identity(dec.product.algebra));
      const auto chi = right_inverse(phi);
      CHECK(compose(phi, chi) == InftyMorphism<Zp>::identity(a));
      CHECK(is_weak_equivalence(chi));
    }
  }
  // Not acyclic: the kernel carries cohomology.
  PrimeField f(2);
  const auto line = share(fixtures::line(0, 1, 3));
  const auto p = product(line, line);
  CHECK_THROWS_AS(decompose_acyclic_fibration(p.pr_left), InvariantError);
}

TEST_CASE("path objects factor the diagonal", "[homotopy-ops]") {
  Rng rng(2);
  PrimeField f(2);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = instance(rng, uniform(rng, 3, 4));
    const auto po = path_object(a);
    CHECK(po.path->dim() == 3 * a->dim());
    CHECK(is_fibration(po.ev0));
    CHECK(is_weak_equivalence(po.ev0));
    CHECK(is_weak_equivalence(po.ev1));
    CHECK(compose(po.ev0, po.constant) == InftyMorphism<Zp>::identity(a));
  }
  const auto c = share(from_dga(truncated_polynomial(0)));
  CHECK(path_object(c).constant.is_strict());
}

TEST_CASE("pullbacks of strict fibrations", "[homotopy-ops]") {
  Rng rng(13);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 6; ++trial) {
      const int n = uniform(rng, 3, 4);
      const auto base = instance(rng, n);
      const auto fib = product(base, instance(rng, n)).pr_left;
      const auto theta = scrambled_projection(rng, base, instance(rng, n, 2));
      CAPTURE(p, trial);
      const StrictPullback<Zp> pb(fib, theta);
      CHECK(pb.algebra()->dim() == theta.source().dim() + fib.source().dim() - base->dim());
      CHECK(pb.mediation_is_unique());
      // The legs themselves form a cone; it mediates through the identity.
      CHECK(pb.mediate(pb.leg_a(), pb.leg_ap()) == InftyMorphism<Zp>::identity(pb.algebra()));
      CHECK(is_fibration(pb.leg_ap()));
    }
  }
  PrimeField f(2);
  // Φ_2(x, x) = y between abelian algebras with zero differential.
  const auto a = share(AInfinityAlgebra<Zp>(FilteredSpace({{"x", 0, 1}, {"y", 0, 2}}, 3), {}));
  MultiMap<Zp> quad(2, 0);
  quad.add({0, 0}, 1, Zp(1));
  const InftyMorphism<Zp> iso(a, a, {MultiMap<Zp>::from_matrix(Matrix<Zp>::identity(2), 0), quad});
  CHECK_THROWS_AS(StrictPullback<Zp>(iso, iso), InvariantError);
}

TEST_CASE("cones through the pullback of a path fibration", "[homotopy-ops]") {
  Rng rng(17);
  PrimeField f(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = uniform(rng, 3, 4);
    const auto base = instance(rng, n, 2);
    const auto po = path_object(base);
    const auto theta = scrambled_projection(rng, base, instance(rng, n, 2));
    const StrictPullback<Zp> pb(po.ev0, theta);
    const auto med = pb.mediate(compose(po.constant, theta), InftyMorphism<Zp>::identity(theta.source_ptr()));
    CHECK(compose(pb.leg_ap(), med) == InftyMorphism<Zp>::identity(theta.source_ptr()));
    CHECK(pb.leg_ap().is_strict());
    CHECK(is_weak_equivalence(pb.leg_ap()));
    // A non-commuting cone is rejected.
    CHECK_THROWS_AS(pb.mediate(compose(po.constant, theta), InftyMorphism<Zp>::zero(theta.source_ptr(), theta.source_ptr())), InvariantError);
  }
}

TEST_CASE("factorizations into a weak equivalence and a fibration", "[homotopy-ops]") {
  Rng rng(23);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 5; ++trial) {
      const int n = uniform(rng, 3, 4);
      const auto base = instance(rng, n, 2);
      CAPTURE(p, trial);
      // Weak equivalence: projection off an acyclic factor.
      const auto weq = scrambled_projection(rng, base, acyclic(rng, n));
      const auto fw = factorize(weq);
      CHECK(compose(fw.fibration, fw.psi) == weq);
      CHECK(is_weak_equivalence(fw.fibration));
      // Not a weak equivalence: projection off a factor with cohomology.
      const auto other = share(fixtures::line(0, 1, n));
      const auto proj = scrambled_projection(rng, base, other);
      const auto fp = factorize(proj);
      CHECK(compose(fp.fibration, fp.psi) == proj);
      CHECK_FALSE(is_weak_equivalence(fp.fibration));
    }
  }
  PrimeField f(2);
  const auto a = share(from_dga(truncated_polynomial(0)));
  const auto z = InftyMorphism<Zp>::zero(share(AInfinityAlgebra<Zp>::zero(3)), a);
  const auto fz = factorize(z);
  CHECK(fz.fibration.target() == *a);
  CHECK(is_fibration(fz.fibration));
}
