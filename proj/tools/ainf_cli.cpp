// ainf: load filtered A-infinity documents, compute Maurer-Cartan sets, nerves, homotopy groups,
// gauge orbits and deformation classes, and run the verification suites.
//
// Exit codes: 0 pass, 1 a check failed or a search cap was hit, 2 malformed input or usage.

#include "ainf/ainf.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

namespace {

using ainf::io::json;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int emit(const json& j, bool ok = true) {
  std::cout << ainf::io::dump(j);
  return ok ? kPass : kFail;
}

json group_json(const ainf::GroupTable& g) {
  return {{"order", g.order()}, {"identity", g.identity}, {"abelian", g.is_abelian()}, {"cyclic", g.is_cyclic()}, {"table", g.mul}};
}

template <class F>
json classes_json(const ainf::FilteredSpace& s, const ainf::Classes<F>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(ainf::io::vectors_json(s, c));
  return out;
}

ainf::ArtinLocalRing parse_ring(const std::string& text) {
  if (text.size() < 3 || text.rfind("t^", 0) != 0 || text.find_first_not_of("0123456789", 2) != std::string::npos)
    throw UsageError("--ring expects t^N, got \"" + text + "\"");
  const int order = std::stoi(text.substr(2));
  if (order < 2) throw UsageError("--ring needs N >= 2");
  return {order};
}

template <class F>
ainf::SearchOptions<F> search_options(const std::string& values) {
  ainf::SearchOptions<F> opt;
  if (!values.empty()) {
    const std::size_t count = static_cast<std::size_t>(std::count(values.begin(), values.end(), ',')) + 1;
    opt.parameter_values = ainf::io::parse_vector<F>(values, count, "--values");
  } else if (ainf::FieldTraits<F>::characteristic() == 0) {
    throw UsageError("over Q the search needs --values");
  }
  return opt;
}

// Finite-field-only computations reject Q up front rather than instantiating for it.
template <class Fn>
int with_prime_field(const ainf::io::FieldSpec& spec, const char* what, Fn&& fn) {
  if (spec.rational()) throw UsageError(std::string(what) + " needs a finite field");
  ainf::PrimeField scope(spec.characteristic);
  return fn.template operator()<ainf::Zp>();
}

struct Args {
  std::string file, second, values, basepoint, alpha, ring = "t^2", suite;
  int dim = 1, n = 1;
  bool oracle = false;
  std::uint64_t seed = 1;
  std::size_t instances = 0;
  unsigned threads = 0;
};

int cmd_check(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  const std::string kind = ainf::io::kind_of(doc);
  if (kind == "group") {
    const auto g = ainf::io::group_from_json(doc);
    return emit({{"kind", kind}, {"order", g.order()}, {"ok", true}});
  }
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    if (kind == "morphism") {
      const auto phi = ainf::io::morphism_from_json<F>(doc);
      return emit({{"kind", kind},
                   {"ok", true},
                   {"strict", phi.is_strict()},
                   {"weak_equivalence", ainf::is_weak_equivalence(phi)},
                   {"fibration", ainf::is_fibration(phi)}});
    }
    const auto a = ainf::io::algebra_from_json<F>(doc);
    return emit({{"kind", kind}, {"ok", true}, {"dim", a.dim()}, {"nilpotency", a.nilpotency()}, {"abelian", a.is_abelian()}});
  });
}

int cmd_mc(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    const auto a = ainf::io::algebra_from_json<F>(doc);
    const auto mc = ainf::enumerate_mc(a, search_options<F>(args.values));
    return emit({{"count", mc.size()}, {"elements", ainf::io::vectors_json(a.space(), mc)}});
  });
}

int cmd_nerve(const Args& args) {
  if (args.dim < 0) throw UsageError("--dim must be non-negative");
  const json doc = ainf::io::read_file(args.file);
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    const ainf::Nerve<F> nerve(ainf::share(ainf::io::algebra_from_json<F>(doc)));
    const auto simplices = nerve.simplices(args.dim, search_options<F>(args.values));
    return emit({{"dim", args.dim}, {"count", simplices.size()}, {"simplices", ainf::io::vectors_json(nerve.level(args.dim)->space(), simplices)}});
  });
}

int cmd_pi(const Args& args) {
  if (args.n < 1) throw UsageError("--n must be at least 1");
  const json doc = ainf::io::read_file(args.file);
  return with_prime_field(ainf::io::field_of(doc), "pi", [&]<class F>() {
    const auto a = ainf::share(ainf::io::algebra_from_json<F>(doc));
    const ainf::Vec<F> base = args.basepoint.empty() ? ainf::Vec<F>(a->dim(), F(0)) : ainf::io::parse_vector<F>(args.basepoint, a->dim(), "--basepoint");
    const auto theorem = ainf::pi_n_theorem(a, args.n, base);
    json out = {{"n", args.n}, {"basepoint", ainf::io::vector_json(a->space(), base)}, {"theorem", group_json(theorem.table)}};
    if (!args.oracle) return emit(out);
    const auto oracle = ainf::pi_n_oracle(a, args.n, base);
    const auto match = ainf::chi_matching(theorem, oracle);
    out["oracle"] = group_json(oracle.table);
    out["matching"] = match ? json(*match) : json(nullptr);
    out["ok"] = match.has_value();
    return emit(out, match.has_value());
  });
}

int cmd_gauge(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  return with_prime_field(ainf::io::field_of(doc), "gauge", [&]<class F>() {
    const auto c = ainf::io::dga_from_json<F>(doc);
    const auto orbits = ainf::gauge_orbits(c);
    return emit({{"count", orbits.size()}, {"orbits", classes_json(c.space(), orbits)}});
  });
}

int cmd_pullback(const Args& args) {
  const json phi_doc = ainf::io::read_file(args.file), theta_doc = ainf::io::read_file(args.second);
  const auto field = ainf::io::field_of(phi_doc);
  if (ainf::io::field_of(theta_doc).characteristic != field.characteristic)
    throw ainf::io::ParseError(args.second + "/field", "both morphisms must live over the same field");
  return ainf::io::with_field(field, [&]<class F>() {
    const ainf::StrictPullback<F> pb(ainf::io::morphism_from_json<F>(phi_doc), ainf::io::morphism_from_json<F>(theta_doc));
    return emit({{"algebra", ainf::io::to_json(*pb.algebra())},
                 {"leg", ainf::io::to_json(pb.leg_a())},
                 {"leg_prime", ainf::io::to_json(pb.leg_ap())},
                 {"mediation_unique", pb.mediation_is_unique()}});
  });
}

int cmd_factorize(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    const auto theta = ainf::io::morphism_from_json<F>(doc);
    const auto fz = ainf::factorize(theta);
    const bool ok = ainf::compose(fz.fibration, fz.psi) == theta;
    return emit({{"ok", ok},
                 {"weak_equivalence", ainf::is_weak_equivalence(theta)},
                 {"fibration_acyclic", ainf::is_weak_equivalence(fz.fibration)},
                 {"psi", ainf::io::to_json(fz.psi)},
                 {"fibration", ainf::io::to_json(fz.fibration)}},
                ok);
  });
}

int cmd_twist(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    const auto a = ainf::io::algebra_from_json<F>(doc);
    return emit(ainf::io::to_json(ainf::twist_algebra(a, ainf::io::parse_vector<F>(args.alpha, a.dim(), "--alpha"))));
  });
}

int cmd_commutator(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  if (!ainf::io::field_of(doc).rational()) throw UsageError("commutator needs characteristic 0 (field \"Q\")");
  const auto a = ainf::io::algebra_from_json<ainf::Rational>(doc);
  const auto l = ainf::commutator(a);
  std::vector<ainf::MultiMap<ainf::Rational>> ops;
  for (int k = 1; k <= l.max_arity(); ++k) ops.push_back(l.op(k));
  json out = ainf::io::detail::header<ainf::Rational>("linfty");
  out["nilpotency"] = a.nilpotency();
  out["basis"] = ainf::io::detail::space_json(a.space());
  out["operations"] = ainf::io::detail::tables_json(ops, a.space(), a.space());
  const bool agree = ainf::curvature_polynomial(a) == ainf::curvature_polynomial(l);
  out["curvature_polynomials_agree"] = agree;
  return emit(out, agree);
}

int cmd_defrep(const Args& args) {
  const json group_doc = ainf::io::read_file(args.file), rho_doc = ainf::io::read_file(args.second);
  const auto ring = parse_ring(args.ring);
  const auto g = ainf::io::group_from_json(group_doc);
  return with_prime_field(ainf::io::field_of(rho_doc), "defrep", [&]<class F>() {
    const auto rho = ainf::io::representation_from_json<F>(rho_doc, g);
    const auto c = ainf::classify_deformations(rho, ring);
    return emit({{"ring", args.ring},
                 {"gauge_classes", c.gauge.size()},
                 {"nerve_classes", c.nerve.size()},
                 {"transferred_classes", c.minimal.size()},
                 {"gauge_matches_nerve", c.gauge_matches_nerve},
                 {"transferred_to_nerve", c.minimal_to_nerve},
                 {"ok", c.agree()}},
                c.agree());
  });
}

int cmd_transfer(const Args& args) {
  const json doc = ainf::io::read_file(args.file);
  return ainf::io::with_field(ainf::io::field_of(doc), [&]<class F>() {
    const auto t = ainf::transfer(ainf::share(ainf::io::algebra_from_json<F>(doc)));
    const ainf::Verdict stasheff = ainf::check_stasheff(*t.minimal), morphism = ainf::check_morphism(t.phi);
    const bool weak = ainf::is_weak_equivalence(t.phi);
    const bool ok = stasheff.ok && morphism.ok && weak;
    return emit({{"ok", ok},
                 {"stasheff", stasheff.ok},
                 {"morphism", morphism.ok},
                 {"weak_equivalence", weak},
                 {"minimal", ainf::io::to_json(*t.minimal)},
                 {"phi", ainf::io::to_json(t.phi)}},
                ok);
  });
}

int cmd_verify(const Args& args) {
  const auto& names = ainf::verify::suite_names();
  if (std::find(names.begin(), names.end(), args.suite) == names.end()) throw UsageError("unknown suite \"" + args.suite + "\"");
  ainf::verify::SuiteOptions opt;
  opt.seed = args.seed;
  opt.instances = args.instances;
  opt.threads = args.threads;
  const auto report = ainf::verify::run_suite(args.suite, opt);
  return emit(report.to_json(), report.ok());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered A-infinity algebras, their Maurer-Cartan nerves, and deformation classes"};
  app.require_subcommand(1);
  Args args;
  std::function<int(const Args&)> run;

  auto add = [&](const char* name, const char* what, int (*fn)(const Args&)) {
    CLI::App* sub = app.add_subcommand(name, what);
    sub->callback([&run, fn] { run = fn; });
    return sub;
  };
  const auto file = [&](CLI::App* sub, const char* name, std::string& into) { sub->add_option(name, into, "JSON document")->required(); };

  auto* check = add("check", "Load a document and run its validity checks", cmd_check);
  file(check, "document", args.file);
  auto* mc = add("mc", "Enumerate Maurer-Cartan elements", cmd_mc);
  file(mc, "algebra", args.file);
  mc->add_option("--values", args.values, "Comma-separated coefficients tried along free directions (required over Q)");
  auto* nerve = add("nerve", "Enumerate n-simplices of the nerve", cmd_nerve);
  file(nerve, "algebra", args.file);
  nerve->add_option("--dim", args.dim, "Simplex dimension")->required();
  nerve->add_option("--values", args.values, "Comma-separated coefficients tried along free directions (required over Q)");
  auto* pi = add("pi", "Homotopy group of the nerve from cohomology, optionally against the simplicial oracle", cmd_pi);
  file(pi, "algebra", args.file);
  pi->add_option("--n", args.n, "Degree of the homotopy group")->required();
  pi->add_flag("--oracle", args.oracle, "Also compute the group simplicially and match the two");
  pi->add_option("--basepoint", args.basepoint, "Maurer-Cartan basepoint as comma-separated scalars");
  auto* gauge = add("gauge", "Gauge orbits on the Maurer-Cartan set of a dg algebra", cmd_gauge);
  file(gauge, "dga", args.file);
  auto* pullback = add("pullback", "Pullback of a strict fibration along a morphism", cmd_pullback);
  file(pullback, "fibration", args.file);
  file(pullback, "morphism", args.second);
  auto* factorize = add("factorize", "Factor a morphism as a fibration after a weak equivalence", cmd_factorize);
  file(factorize, "morphism", args.file);
  auto* twist = add("twist", "Twist an algebra by a Maurer-Cartan element", cmd_twist);
  file(twist, "algebra", args.file);
  twist->add_option("--alpha", args.alpha, "Maurer-Cartan element as comma-separated scalars")->required();
  auto* comm = add("commutator", "Commutator L-infinity algebra (characteristic 0)", cmd_commutator);
  file(comm, "algebra", args.file);
  auto* defrep = add("defrep", "Classify deformations of a representation over t-adic Artin rings", cmd_defrep);
  file(defrep, "group", args.file);
  file(defrep, "representation", args.second);
  defrep->add_option("--ring", args.ring, "Artin ring F[t]/(t^N), written t^N")->default_val("t^2");
  auto* transfer = add("transfer", "Minimal model with its weak equivalence", cmd_transfer);
  file(transfer, "algebra", args.file);
  auto* verify = add("verify", "Run a seeded verification suite", cmd_verify);
  verify->add_option("--suite", args.suite, "Suite name")->required();
  verify->add_option("--seed", args.seed, "Generator seed")->default_val(1);
  verify->add_option("--instances", args.instances, "Instance count (0 for the suite default)");
  verify->add_option("--threads", args.threads, "Worker threads (0 for hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  try {
    return run(args);
  } catch (const ainf::io::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kInputError;
  } catch (const ainf::InvariantError& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kFail;
  } catch (const ainf::SearchLimitExceeded& e) {
    std::cerr << "search cap exceeded: " << e.what() << "\n";
    return kFail;
  } catch (const ainf::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kFail;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
}
