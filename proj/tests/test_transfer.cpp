#include "ainf/product.hpp"
#include "ainf/random.hpp"
#include "ainf/transfer.hpp"
#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

using namespace ainf;
using fixtures::truncated_polynomial;

TEST_CASE("transfer of minimal algebras", "[transfer]") {
  PrimeField f(2);
  const auto a = share(from_dga(truncated_polynomial(0)));
  const auto t = transfer(a);
  CHECK(t.minimal->dim() == a->dim());
  // h = 0, so Φ is the strict isomorphism onto the chosen representatives.
  CHECK(t.phi.is_strict());
  CHECK(rank(t.phi.tangent()) == 2);
  CHECK(t.minimal->op(2).entries().size() == 1);
}

TEST_CASE("transfer discards acyclic summands", "[transfer]") {
  PrimeField f(3);
  const auto m = share(from_dga(truncated_polynomial(0)));
  const auto k = share(fixtures::abelian_pair(-1, 1, 3));
  const auto p = product(m, k);
  const auto t = transfer(p.algebra);
  CHECK(t.minimal->dim() == 2);
  CHECK(t.minimal->op(2).entries().size() == 1);
  CHECK(is_weak_equivalence(t.minimal->tangent(), p.algebra->tangent(), t.phi.tangent_map()));
}

TEST_CASE("transfer of random algebras", "[transfer]") {
  Rng rng(29);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 15; ++trial) {
      RandomAInftyOptions opt;
      opt.homogeneous_differential = true;
      opt.max_dim = 5;
      opt.nilpotency = uniform(rng, 3, 4);
      opt.degrees = {-2, -1, -1, 0, 0, 1};
      const auto a = share(random_ainfty<Zp>(rng, opt));
      CAPTURE(p, trial);
      const auto t = transfer(a);
      CHECK(check_stasheff(*t.minimal));
      CHECK(check_morphism(t.phi));
      CHECK(t.minimal->op(1).empty());
    }
  }
  Rng qr(3);
  for (int trial = 0; trial < 5; ++trial) {
    RandomAInftyOptions opt;
    opt.homogeneous_differential = true;
    opt.max_dim = 4;
    const auto a = share(random_ainfty<Rational>(qr, opt));
    CHECK(check_morphism(transfer(a).phi));
  }
}
