#include "ainf/io.hpp"
#include "ainf/random.hpp"
#include "ainf/verify.hpp"
#include "fixtures.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

using namespace ainf;

namespace {

std::string sample(const std::string& name) { return std::string(AINF_SAMPLES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error_where(const std::string& text) {
  try {
    const auto doc = io::read_text(text);
    PrimeField f(2);
    (void)io::algebra_from_json<Zp>(doc);
  } catch (const io::ParseError& e) {
    return e.where();
  }
  return "no error";
}

}  // namespace

TEST_CASE("documents round-trip byte-identically", "[io]") {
  Rng rng(41);
  for (std::uint32_t p : {2U, 3U}) {
    PrimeField f(p);
    for (int trial = 0; trial < 10; ++trial) {
      RandomAInftyOptions o;
      o.nilpotency = uniform(rng, 2, 5);
      o.max_dim = 5;
      const auto a = random_ainfty<Zp>(rng, o);
      const std::string once = io::dump(io::to_json(a));
      CHECK(io::dump(io::to_json(io::algebra_from_json<Zp>(io::read_text(once)))) == once);
      const auto iso = random_isomorphism(rng, share(a));
      const std::string m = io::dump(io::to_json(iso));
      CHECK(io::dump(io::to_json(io::morphism_from_json<Zp>(io::read_text(m)))) == m);
    }
  }
  // Rational scalars survive as exact fractions.
  const auto q = io::algebra_from_json<Rational>(io::read_file(sample("ternary_q.json")));
  CHECK(io::dump(io::to_json(q)) == slurp(sample("ternary_q.json")));
}

TEST_CASE("sample documents load", "[io]") {
  PrimeField f(2);
  const auto tpoly = io::read_file(sample("tpoly_f2.json"));
  CHECK(io::dump(tpoly) == slurp(sample("tpoly_f2.json")));
  const auto c = io::dga_from_json<Zp>(tpoly);
  CHECK(c.dim() == 2);
  CHECK(c.mu().entries().size() == 1);
  CHECK(from_dga(c) == from_dga(fixtures::truncated_polynomial(0)));

  const auto empty = io::algebra_from_json<Zp>(io::read_file(sample("empty.json")));
  CHECK(empty.dim() == 0);
  CHECK(empty == AInfinityAlgebra<Zp>::zero(2));

  try {
    (void)io::algebra_from_json<Zp>(io::read_file(sample("weight_violation_f2.json")));
    FAIL("weight-violating product accepted");
  } catch (const InvariantError& e) {
    CHECK_THAT(e.what(), Catch::Matchers::ContainsSubstring("filtration"));
  }

  const auto g = io::group_from_json(io::read_file(sample("z2.json")));
  CHECK(g.order() == 2);
  const auto rho = io::representation_from_json<Zp>(io::read_file(sample("z2_trivial_f2.json")), g);
  CHECK(io::dump(io::to_json(rho)) == slurp(sample("z2_trivial_f2.json")));
  CHECK(io::morphism_from_json<Zp>(io::read_file(sample("tpoly_identity.json"))).is_strict());
}

TEST_CASE("malformed documents report their position", "[io]") {
  // Syntax errors point just past the offending token.
  CHECK(parse_error_where("{\"basis\": [\n  {\"name\": \"x\" \"degree\": 0}]}") == "line 2, column 23");
  CHECK(parse_error_where("{\"nilpotency\": \"3\"}") == "/nilpotency");
  CHECK(parse_error_where("{\"colour\": 1}") == "/colour");
  CHECK(parse_error_where("{\"field\": \"F4\"}") == "/field");
  CHECK(parse_error_where("{\"field\": \"F3\"}") == "/field");  // F3 document, F2 computation
  CHECK(parse_error_where(R"({"nilpotency": 3, "basis": [{"name": "x", "degree": 0, "weight": 1}],
                             "operations": [{"arity": 2, "entries": [{"in": ["x", "y"], "out": {"x": "1"}}]}]})") ==
        "/operations/0/entries/0/in/1");
  CHECK(parse_error_where(R"({"nilpotency": 3, "basis": [{"name": "x", "degree": 0, "weight": 1}],
                             "operations": [{"arity": 1, "entries": [{"in": ["x"], "out": {"x": 1}}]}]})") ==
        "/operations/0/entries/0/out/x");
  CHECK_THROWS_AS(io::parse_field("F1"), io::ParseError);
  CHECK(io::parse_field("Q").rational());
  CHECK(io::parse_field("F7").characteristic == 7);
}

TEST_CASE("vectors parse from comma-separated scalars", "[io]") {
  PrimeField f(3);
  CHECK(io::parse_vector<Zp>("1, 2,0", 3) == Vec<Zp>{Zp(1), Zp(2), Zp(0)});
  CHECK(io::parse_vector<Rational>("-1/2,3", 2) == Vec<Rational>{Rational(-1, 2), Rational(3)});
  CHECK_THROWS_AS(io::parse_vector<Zp>("1,2", 3), io::ParseError);
  CHECK_THROWS_AS(io::parse_vector<Zp>("1,x,2", 3), io::ParseError);
}

TEST_CASE("suite reports are deterministic", "[io][verify]") {
  verify::SuiteOptions one;
  one.seed = 9;
  one.instances = 4;
  verify::SuiteOptions serial = one;
  serial.threads = 1;
  for (const char* suite : {"stasheff", "gauge", "kan"}) {
    CAPTURE(suite);
    const auto a = verify::run_suite(suite, one), b = verify::run_suite(suite, serial);
    CHECK(a.ok());
    CHECK(io::dump(a.to_json(false)) == io::dump(b.to_json(false)));
  }
  CHECK_THROWS_AS(verify::run_suite("nope"), std::invalid_argument);
}

TEST_CASE("failing checks carry a reproducer that re-fails alone", "[io][verify]") {
  PrimeField f(2);
  const auto line = share(fixtures::line<Zp>(0));
  const auto zero = InftyMorphism<Zp>::zero(share(AInfinityAlgebra<Zp>::zero(line->nilpotency())), line);
  verify::Recorder rec("control");
  rec.expect("zero map is a weak equivalence", is_weak_equivalence(zero), "",
             [zero] { return verify::detail::repro("check", io::to_json(zero)); });
  const auto checks = rec.take();
  REQUIRE(checks.size() == 1);
  REQUIRE_FALSE(checks[0].ok);
  const auto& doc = checks[0].reproducer;
  CHECK(doc.at("command") == "check");
  const auto reloaded = io::morphism_from_json<Zp>(io::read_text(doc.at("document").dump()));
  CHECK_FALSE(is_weak_equivalence(reloaded));

  // A throwing check fails with the exception text.
  verify::Recorder throws("thrower");
  throws.attempt("throws", []() -> bool { throw InvariantError("boom"); });
  const auto t = throws.take();
  REQUIRE(t.size() == 1);
  CHECK_FALSE(t[0].ok);
  CHECK(t[0].detail == "boom");
}
