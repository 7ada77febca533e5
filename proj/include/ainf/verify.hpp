#pragma once

#include "ainf/commutator.hpp"
#include "ainf/defrep.hpp"
#include "ainf/fixtures.hpp"
#include "ainf/homotopy_ops.hpp"
#include "ainf/io.hpp"
#include "ainf/nerve.hpp"
#include "ainf/random.hpp"
#include "ainf/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <string>
#include <thread>
#include <vector>

// Seeded theorem-verification suites. Instances run in parallel; each draws from its own
// generator derived from (seed, suite, index), so reports do not depend on scheduling.
namespace ainf::verify {

using json = io::json;

struct Check {
  std::string name;
  std::string instance;
  bool ok = true;
  std::string detail;
  json reproducer;  // null on success; otherwise {"command", "document"} that re-fails alone
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::vector<Check> checks;
  double seconds = 0;

  std::size_t failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.ok; }));
  }
  bool ok() const { return failures() == 0 && !checks.empty(); }

  json to_json(bool with_timing = true) const {
    json cs = json::array();
    for (const auto& c : checks) {
      json j = {{"name", c.name}, {"instance", c.instance}, {"ok", c.ok}};
      if (!c.detail.empty()) j["detail"] = c.detail;
      if (!c.reproducer.is_null()) j["reproducer"] = c.reproducer;
      cs.push_back(std::move(j));
    }
    json out = {{"suite", suite}, {"seed", seed},         {"instances", instances},
                {"ok", ok()},     {"failures", failures()}, {"checks", std::move(cs)}};
    if (with_timing) out["seconds"] = seconds;
    return out;
  }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 0;  // 0 selects the suite's default count
  unsigned threads = 0;       // 0 selects the hardware concurrency
};

// Collects the checks of one instance; a throwing check is a failed check.
class Recorder {
 public:
  using Reproducer = std::function<json()>;

  explicit Recorder(std::string instance) : instance_(std::move(instance)) {}

  void expect(const std::string& name, bool ok, const std::string& detail = {}, const Reproducer& repro = {}) {
    Check c{name, instance_, ok, ok ? std::string() : detail, nullptr};
    if (!ok && repro) c.reproducer = repro();
    checks_.push_back(std::move(c));
  }
  void expect(const std::string& name, const Verdict& v, const Reproducer& repro = {}) { expect(name, v.ok, v.detail, repro); }

  // Runs fn, which returns bool or Verdict; exceptions fail the check with their message.
  template <class Fn>
  void attempt(const std::string& name, Fn&& fn, const Reproducer& repro = {}) {
    try {
      const auto r = fn();
      if constexpr (std::is_same_v<std::decay_t<decltype(r)>, bool>) expect(name, r, std::string(), repro);
      else expect(name, r, repro);
    } catch (const std::exception& e) {
      expect(name, false, e.what(), repro);
    }
  }

  std::vector<Check> take() { return std::move(checks_); }

 private:
  std::string instance_;
  std::vector<Check> checks_;
};

namespace detail {

using Task = std::function<std::vector<Check>()>;

inline std::uint32_t fnv1a(const std::string& s) {
  std::uint32_t h = 2166136261U;
  for (unsigned char c : s) h = (h ^ c) * 16777619U;
  return h;
}

inline Rng instance_rng(std::uint64_t seed, const std::string& suite, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), fnv1a(suite),
                    static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

inline std::string describe(const std::string& suite, std::uint64_t seed, std::size_t index, const std::string& what) {
  return suite + " #" + std::to_string(index) + " (seed " + std::to_string(seed) + ", " + what + ")";
}

inline std::vector<Check> run_tasks(const std::vector<Task>& tasks, unsigned threads) {
  std::vector<std::vector<Check>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (const std::exception& e) {
        results[i] = {Check{"instance", "task " + std::to_string(i), false, e.what(), nullptr}};
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  std::vector<Check> out;
  for (auto& r : results) out.insert(out.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return out;
}

inline SuiteReport run(const std::string& suite, const SuiteOptions& opt, const std::vector<Task>& tasks) {
  const auto start = std::chrono::steady_clock::now();
  SuiteReport r{suite, opt.seed, tasks.size(), run_tasks(tasks, opt.threads), 0};
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline std::size_t count_or(const SuiteOptions& opt, std::size_t fallback) { return opt.instances ? opt.instances : fallback; }

inline json repro(const std::string& command, const json& document) {
  return {{"command", command}, {"document", document}};
}

// Small random algebras whose nerves are enumerable up to dimension 2.
template <class F>
AlgebraPtr<F> small_algebra(Rng& rng, std::vector<int> degrees, std::size_t max_dim = 4, int n_lo = 3, int n_hi = 4) {
  RandomAInftyOptions opt;
  opt.degrees = std::move(degrees);
  opt.max_dim = max_dim;
  opt.nilpotency = uniform(rng, n_lo, n_hi);
  return share(random_ainfty<F>(rng, opt));
}

// Abelian algebra of acyclic pairs: the kernel side of an acyclic fibration.
template <class F>
AlgebraPtr<F> acyclic_algebra(Rng& rng, int n) {
  std::vector<std::pair<int, int>> pairs;
  const int count = uniform(rng, 1, 2);
  for (int i = 0; i < count; ++i) pairs.emplace_back(uniform(rng, -1, 0), uniform(rng, 1, n - 1));
  return share(random_abelian<F>(rng, {}, pairs, n, 0.0));
}

// pr : A × K -> A precomposed with a random isomorphism onto A × K.
template <class F>
InftyMorphism<F> scrambled_projection(Rng& rng, const AlgebraPtr<F>& a, const AlgebraPtr<F>& k) {
  const auto p = product(a, k);
  return compose(p.pr_left, invert(random_isomorphism(rng, p.algebra)));
}

template <class F>
bool is_identity_family(const std::vector<MultiMap<F>>& maps, std::size_t dim, int max_arity) {
  const auto norm = ainf::detail::normalize_ops(maps, max_arity, 0, "family");
  const auto id = ainf::detail::normalize_ops(std::vector<MultiMap<F>>{MultiMap<F>::from_matrix(Matrix<F>::identity(dim), 0)},
                                              max_arity, 0, "identity");
  return norm == id;
}

template <class F>
std::string field_name() {
  return io::FieldSpec{FieldTraits<F>::characteristic()}.name();
}

}  // namespace detail

// Cochain algebras N*(Δ^n), n <= 4: dg algebra laws, simplicial identities, the top class, and
// the interval and triangle structure constants.
inline SuiteReport cochains_suite(const SuiteOptions& opt = {}) {
  using Q = Rational;
  std::vector<detail::Task> tasks;
  for (int n = 0; n <= 4; ++n)
    tasks.push_back([n, &opt] {
      Recorder rec(detail::describe("cochains", opt.seed, static_cast<std::size_t>(n), "Δ^" + std::to_string(n)));
      const auto c = cochains<Q>(n);
      const UnitalDGA<Q>& alg = c->algebra();
      const std::size_t dim = c->dim();
      const Matrix<Q> d = alg.d().matrix(dim, dim);
      const std::string tag = " on Δ^" + std::to_string(n);
      rec.expect("δ² = 0" + tag, (d * d).is_zero_matrix());

      // Exhaustive laws on basis elements, evaluated through the sparse structure constants.
      using S = std::map<int, Q>;
      auto clean = [](S x) {
        std::erase_if(x, [](const auto& e) { return is_zero(e.second); });
        return x;
      };
      auto mul = [&](const S& x, const S& y) {
        S out;
        for (const auto& [i, a] : x)
          for (const auto& [j, b] : y)
            if (const auto* t = alg.mu().find(Word{i, j}))
              for (const auto& [o, c] : *t) out[o] += a * b * c;
        return clean(out);
      };
      auto del = [&](const S& x) {
        S out;
        for (const auto& [i, a] : x)
          if (const auto* t = alg.d().find(Word{i}))
            for (const auto& [o, c] : *t) out[o] += a * c;
        return clean(out);
      };
      auto add = [&](S x, const S& y, const Q& k) {
        for (const auto& [i, b] : y) x[i] += k * b;
        return clean(x);
      };
      S one;
      for (std::size_t i = 0; i < dim; ++i)
        if (!is_zero(alg.unit()[i])) one[static_cast<int>(i)] = alg.unit()[i];
      std::vector<S> e(dim);
      for (std::size_t i = 0; i < dim; ++i) e[i] = {{static_cast<int>(i), Q(1)}};

      bool assoc = true, leibniz = true, unit = true;
      for (std::size_t a = 0; a < dim; ++a) {
        unit = unit && mul(one, e[a]) == e[a] && mul(e[a], one) == e[a];
        for (std::size_t b = 0; b < dim; ++b) {
          const S ab = mul(e[a], e[b]);
          const S rhs = add(mul(del(e[a]), e[b]), mul(e[a], del(e[b])), sign<Q>(alg.degree(static_cast<int>(a))));
          leibniz = leibniz && del(ab) == rhs;
          for (std::size_t x = 0; x < dim; ++x) assoc = assoc && mul(ab, e[x]) == mul(e[a], mul(e[b], e[x]));
        }
      }
      rec.expect("associativity" + tag, assoc);
      rec.expect("Leibniz rule" + tag, leibniz);
      rec.expect("unit laws" + tag, unit && del(one).empty());
      if (n >= 1) {
        rec.expect("top cochain is closed" + tag, is_zero_vec(d.apply(c->top())));
        rec.expect("top cochain squares to zero" + tag, is_zero_vec(alg.multiply(c->top(), c->top())));
      }

      // Operators between Δ^{n-1}, Δ^n, Δ^{n+1}, Δ^{n+2}, read as algebra maps out of N*(Δ^n).
      rec.attempt("faces and degeneracies are unital dg algebra maps" + tag, [&] {
        for (int j = 0; j <= n && n >= 1; ++j) check_dga_morphism(alg, cochains<Q>(n - 1)->algebra(), face_map<Q>(n, j));
        for (int j = 0; j <= n; ++j) check_dga_morphism(alg, cochains<Q>(n + 1)->algebra(), degeneracy_map<Q>(n, j));
        return true;
      });
      rec.attempt("simplicial identities" + tag, [&] {
        const Matrix<Q> id = Matrix<Q>::identity(dim);
        bool ok = true;
        // d_i d_j = d_{j-1} d_i for i < j, as maps N*(Δ^{n+1}) -> N*(Δ^{n-1}).
        for (int j = 1; j <= n + 1 && n >= 1; ++j)
          for (int i = 0; i < j; ++i) ok = ok && face_map<Q>(n, i) * face_map<Q>(n + 1, j) == face_map<Q>(n, j - 1) * face_map<Q>(n + 1, i);
        // s_i s_j = s_{j+1} s_i for i <= j, as maps N*(Δ^n) -> N*(Δ^{n+2}).
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            ok = ok && degeneracy_map<Q>(n + 1, i) * degeneracy_map<Q>(n, j) == degeneracy_map<Q>(n + 1, j + 1) * degeneracy_map<Q>(n, i);
        // d_i s_j as maps N*(Δ^n) -> N*(Δ^n).
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= n + 1; ++i) {
            const Matrix<Q> lhs = face_map<Q>(n + 1, i) * degeneracy_map<Q>(n, j);
            if (i == j || i == j + 1) ok = ok && lhs == id;
            else if (i < j) ok = ok && lhs == degeneracy_map<Q>(n - 1, j - 1) * face_map<Q>(n, i);
            else ok = ok && lhs == degeneracy_map<Q>(n - 1, j) * face_map<Q>(n, i - 1);
          }
        return ok;
      });
      return rec.take();
    });

  tasks.push_back([&opt] {
    Recorder rec(detail::describe("cochains", opt.seed, 5, "structure constants"));
    const auto i1 = cochains<Q>(1);
    const auto i2 = cochains<Q>(2);
    auto dlt = [](const CochainsPtr<Q>& c, const Vec<Q>& v) { return c->algebra().differential(v); };
    auto cup = [](const CochainsPtr<Q>& c, const Vec<Q>& a, const Vec<Q>& b) { return c->algebra().multiply(a, b); };
    const Vec<Q> p0 = i1->basis_vector({0}), p1 = i1->basis_vector({1}), top1 = i1->top();
    rec.expect("φ0 ⌣ φ[1] = φ[1]", cup(i1, p0, top1) == top1);
    rec.expect("φ[1] ⌣ φ1 = φ[1]", cup(i1, top1, p1) == top1);
    rec.expect("φ0 ⌣ φ0 = φ0 and φ1 ⌣ φ1 = φ1", cup(i1, p0, p0) == p0 && cup(i1, p1, p1) == p1);
    rec.expect("φ[1] ⌣ φ0 = 0 = φ1 ⌣ φ[1]", is_zero_vec(cup(i1, top1, p0)) && is_zero_vec(cup(i1, p1, top1)));
    rec.expect("1 = φ0 + φ1", i1->unit() == p0 + p1);
    // Vertex signs: δφ0 = -φ[1], δφ1 = φ[1]; the opposite pair is incompatible with Leibniz below.
    rec.expect("δφ0 = -φ[1] and δφ1 = φ[1]", dlt(i1, p0) == scaled(Q(-1), top1) && dlt(i1, p1) == top1);
    {
      const Vec<Q> a = i2->basis_vector({0, 1}), b = i2->basis_vector({1});
      auto flipped = [&](const Vec<Q>& v) {  // δ with the vertex signs reversed
        Vec<Q> out = dlt(i2, v);
        for (int vtx = 0; vtx <= 2; ++vtx) {
          const Q c = v[i2->vertex(vtx)];
          if (!is_zero(c)) axpy(out, Q(-2) * c, dlt(i2, i2->basis_vector({vtx})));
        }
        return out;
      };
      const bool breaks = !(flipped(cup(i2, a, b)) == cup(i2, flipped(a), b) - cup(i2, a, flipped(b)));
      rec.expect("reversed vertex signs violate Leibniz on Δ^2", breaks);
    }
    const std::vector<SimplexLabel> edge{{1, 2}, {0, 2}, {0, 1}};  // d^j[1] omits vertex j
    bool dedge = true, cups = true;
    for (int j = 0; j < 3; ++j) dedge = dedge && dlt(i2, i2->basis_vector(edge[j])) == scaled(sign<Q>(j), i2->top());
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Vec<Q> p = cup(i2, i2->basis_vector(edge[i]), i2->basis_vector(edge[j]));
        cups = cups && (i == 2 && j == 0 ? p == i2->top() : is_zero_vec(p));
      }
    rec.expect("δφ_{d^j[1]} = (-1)^j φ[2]", dedge);
    rec.expect("φ_{d^i[1]} ⌣ φ_{d^j[1]} = φ[2] exactly for (i, j) = (2, 0)", cups);
    return rec.take();
  });
  return detail::run("cochains", opt, tasks);
}

// Random A∞-algebras satisfy Stasheff, survive serialization, and transport along isomorphisms.
inline SuiteReport stasheff_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 12);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt]() -> std::vector<Check> {
      Rng rng = detail::instance_rng(opt.seed, "stasheff", i);
      auto body = [&]<class F>() {
        RandomAInftyOptions o;
        o.nilpotency = uniform(rng, 3, 5);
        o.max_dim = 5;
        const auto a = share(random_ainfty<F>(rng, o));
        Recorder rec(detail::describe("stasheff", opt.seed, i, detail::field_name<F>()));
        const auto doc = [a] { return detail::repro("check", io::to_json(*a)); };
        rec.expect("Stasheff identities", check_stasheff(*a), doc);
        rec.attempt("serialization round trip", [&] {
          const std::string once = io::dump(io::to_json(*a));
          const auto back = io::algebra_from_json<F>(io::read_text(once));
          return back == *a && io::dump(io::to_json(back)) == once;
        }, doc);
        rec.attempt("transport along a random isomorphism", [&] {
          const auto iso = random_isomorphism(rng, a);
          return check_morphism(iso).ok && check_stasheff(iso.target()).ok &&
                 compose(invert(iso), iso) == InftyMorphism<F>::identity(a);
        }, doc);
        return rec.take();
      };
      switch (i % 3) {
        case 0: { PrimeField f(2); return body.template operator()<Zp>(); }
        case 1: { PrimeField f(3); return body.template operator()<Zp>(); }
        default: return body.template operator()<Rational>();
      }
    });
  return detail::run("stasheff", opt, tasks);
}

namespace detail {

// Theorem and oracle π_n agree through the χ_n matching, at 0 and at a nonzero basepoint.
template <class F>
void compare_pi(Recorder& rec, const AlgebraPtr<F>& a, int n, bool other_basepoint) {
  const std::string tag = "π_" + std::to_string(n);
  const auto doc = [a, n] { return repro("pi --n " + std::to_string(n) + " --oracle", io::to_json(*a)); };
  rec.attempt(tag + " theorem = oracle at 0", [&] {
    const Nerve<F> nerve(a);
    return chi_matching(pi_n_theorem(nerve, n), pi_n_oracle(nerve, n)).has_value();
  }, doc);
  if (!other_basepoint) return;
  const auto mc = enumerate_mc(*a);
  const auto alpha = std::find_if(mc.begin(), mc.end(), [](const Vec<F>& x) { return !is_zero_vec(x); });
  if (alpha == mc.end()) return;
  const Vec<F> base = *alpha;
  rec.attempt(tag + " theorem = oracle at a nonzero basepoint", [&] {
    return chi_matching(pi_n_theorem(a, n, base), pi_n_oracle(a, n, base)).has_value();
  }, [a, n, base] {
    std::string b;
    for (std::size_t i = 0; i < base.size(); ++i) b += (i ? "," : "") + FieldTraits<F>::format(base[i]);
    return repro("pi --n " + std::to_string(n) + " --oracle --basepoint " + b, io::to_json(*a));
  });
}

}  // namespace detail

// π_1: random instances over F2 and F3 (dim <= 4, N <= 4) and the cyclic regression t·F2[t]/(t^3).
inline SuiteReport pi1_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 26);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      const std::uint32_t p = i % 2 ? 3 : 2;
      PrimeField f(p);
      Rng rng = detail::instance_rng(opt.seed, "pi1", i);
      const auto a = detail::small_algebra<Zp>(rng, {-1, -1, 0, 0, -2});
      Recorder rec(detail::describe("pi1", opt.seed, i, "F" + std::to_string(p) + ", dim " + std::to_string(a->dim())));
      detail::compare_pi(rec, a, 1, true);
      return rec.take();
    });
  tasks.push_back([&opt, count] {
    PrimeField f(2);
    Recorder rec(detail::describe("pi1", opt.seed, count, "t·F2[t]/(t^3)"));
    const auto a = share(from_dga(fixtures::truncated_polynomial(0)));
    const auto doc = [a] { return detail::repro("pi --n 1 --oracle", io::to_json(*a)); };
    const Nerve<Zp> nerve(a);
    const auto theorem = pi_n_theorem(nerve, 1);
    const auto oracle = pi_n_oracle(nerve, 1, {}, true);
    rec.expect("theorem group is Z/4", theorem.order() == 4 && theorem.table.is_cyclic(), "", doc);
    rec.expect("oracle group is Z/4", oracle.order() == 4 && oracle.table.is_cyclic(), "", doc);
    rec.expect("χ_1 matching is an isomorphism", chi_matching(theorem, oracle).has_value(), "", doc);
    // Addition on H^{-1} = F2^2 would give the Klein four-group: every element of order <= 2.
    const Vec<Zp> t{Zp(1), Zp(0)};
    const Vec<Zp> tt = quasi_multiply(t, t, [&](const Vec<Zp>& x, const Vec<Zp>& y) { return a->op(2).evaluate({&x, &y}, 2); });
    rec.expect("t ⊛ t differs from t + t", !is_zero_vec(tt), "", doc);
    return rec.take();
  });
  return detail::run("pi1", opt, tasks);
}

// π_2 on instances with nonzero H^{-2}, and π_1, π_2 of abelian algebras.
inline SuiteReport pi2_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 6);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      const std::uint32_t p = i % 2 ? 3 : 2;
      PrimeField f(p);
      Rng rng = detail::instance_rng(opt.seed, "pi2", i);
      AlgebraPtr<Zp> a;
      for (int tries = 0; tries < 1000 && !a; ++tries) {
        auto c = detail::small_algebra<Zp>(rng, {-2, -2, -1, 0, -3});
        if (cohomology_basis(c->tangent(), -2, 1).dim() > 0) a = c;
      }
      if (!a) throw std::runtime_error("no instance with nonzero H^-2 found");
      Recorder rec(detail::describe("pi2", opt.seed, i, "F" + std::to_string(p) + ", dim " + std::to_string(a->dim())));
      detail::compare_pi(rec, a, 2, false);
      return rec.take();
    });
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt, count] {
      const std::uint32_t p = i % 2 ? 3 : 2;
      PrimeField f(p);
      Rng rng = detail::instance_rng(opt.seed, "pi2-abelian", i);
      std::vector<std::pair<int, int>> cocycles, pairs;
      for (int k = uniform(rng, 1, 2); k > 0; --k) cocycles.emplace_back(uniform(rng, -2, -1), uniform(rng, 1, 2));
      for (int k = uniform(rng, 0, 1); k > 0; --k) pairs.emplace_back(uniform(rng, -3, -1), uniform(rng, 1, 2));
      const auto a = share(random_abelian<Zp>(rng, cocycles, pairs, 3));
      Recorder rec(detail::describe("pi2", opt.seed, count + i, "abelian over F" + std::to_string(p)));
      const Nerve<Zp> nerve(a);
      for (int n = 1; n <= 2; ++n) {
        const auto doc = [a, n] { return detail::repro("pi --n " + std::to_string(n) + " --oracle", io::to_json(*a)); };
        rec.attempt("abelian π_" + std::to_string(n) + " is H^{-n} under addition", [&] {
          const auto oracle = pi_n_oracle(nerve, n);
          std::size_t expected = 1;
          for (std::size_t k = cohomology_basis(a->tangent(), -n, 1).dim(); k > 0; --k) expected *= p;
          return oracle.table.is_abelian() && oracle.order() == expected &&
                 chi_matching(pi_n_theorem(nerve, n), oracle).has_value();
        }, doc);
      }
      return rec.take();
    });
  return detail::run("pi2", opt, tasks);
}

inline SuiteReport pi_suite(const SuiteOptions& opt = {}) {
  SuiteReport one = pi1_suite(opt), two = pi2_suite(opt);
  one.suite = "pi";
  one.instances += two.instances;
  one.seconds += two.seconds;
  one.checks.insert(one.checks.end(), two.checks.begin(), two.checks.end());
  return one;
}

// Gauge orbits coincide with path components of the nerve on random dg algebras over F2.
inline SuiteReport gauge_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 24);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      PrimeField f(2);
      Rng rng = detail::instance_rng(opt.seed, "gauge", i);
      RandomDGAOptions o;
      o.max_dim = 4;
      o.nilpotency = uniform(rng, 3, 4);
      const auto c = random_dga<Zp>(rng, o);
      const auto orbits = gauge_orbits(c);
      Recorder rec(detail::describe("gauge", opt.seed, i, "dim " + std::to_string(c.dim()) + ", " +
                                                               std::to_string(orbits.size()) + " orbits"));
      rec.attempt("gauge orbits = π_0 of the nerve", [&] { return same_partition(orbits, pi0(from_dga(c))); },
                  [c] { return detail::repro("gauge", io::to_json(c)); });
      return rec.take();
    });
  return detail::run("gauge", opt, tasks);
}

// Weak equivalences made three ways induce bijections on π_0 and isomorphisms on π_1 at every vertex.
inline SuiteReport gm_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 4);
  auto check = [](Recorder& rec, const std::string& what, const InftyMorphism<Zp>& phi) {
    const auto doc = [phi] { return detail::repro("check", io::to_json(phi)); };
    rec.expect(what + " is a weak equivalence", is_weak_equivalence(phi), "", doc);
    rec.attempt(what + " induces a homotopy equivalence of nerves", [&] {
      const auto r = check_homotopy_equivalence(phi);
      return Verdict{r.ok(), r.pi0_bijective ? std::to_string(r.pi1_failures.size()) + " vertices fail on π_1" : "no π_0 bijection"};
    }, doc);
  };
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt, check] {
      PrimeField f(2);
      Rng rng = detail::instance_rng(opt.seed, "gm", i);
      const auto a = detail::small_algebra<Zp>(rng, {-1, -1, 0, 0}, 3);
      const auto proj = detail::scrambled_projection(rng, a, detail::acyclic_algebra<Zp>(rng, a->nilpotency()));
      Recorder rec(detail::describe("gm", opt.seed, i, "dim " + std::to_string(proj.source().dim()) + " -> " + std::to_string(a->dim())));
      check(rec, "projection off an acyclic factor", proj);
      check(rec, "right inverse of that projection", right_inverse(proj));
      return rec.take();
    });
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt, check, count] {
      PrimeField f(2);
      Rng rng = detail::instance_rng(opt.seed, "gm-transfer", i);
      RandomAInftyOptions o;
      o.homogeneous_differential = true;
      o.max_dim = 4;
      o.nilpotency = uniform(rng, 3, 4);
      o.degrees = {-1, -1, 0, 0, 1};
      const auto a = share(random_ainfty<Zp>(rng, o));
      Recorder rec(detail::describe("gm", opt.seed, count + i, "transfer onto dim " + std::to_string(a->dim())));
      check(rec, "transfer morphism", transfer(a).phi);
      return rec.take();
    });
  tasks.push_back([&opt, count] {
    PrimeField f(2);
    Recorder rec(detail::describe("gm", opt.seed, 2 * count, "control"));
    const auto z = share(fixtures::line(0));
    const auto zero = share(AInfinityAlgebra<Zp>::zero(z->nilpotency()));
    rec.expect("a non-equivalence is detected", !check_homotopy_equivalence(InftyMorphism<Zp>::zero(zero, z)).ok());
    return rec.take();
  });
  return detail::run("gm", opt, tasks);
}

// Every Λ^1_k and Λ^2_k horn has a filler; the closed-form inner 2-horn filler always validates.
inline SuiteReport kan_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 8);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      const std::uint32_t p = i % 2 ? 3 : 2;
      PrimeField f(p);
      Rng rng = detail::instance_rng(opt.seed, "kan", i);
      const auto a = detail::small_algebra<Zp>(rng, {-1, -1, 0, 0}, 4);
      const Nerve<Zp> nerve(a);
      Recorder rec(detail::describe("kan", opt.seed, i, "F" + std::to_string(p) + ", dim " + std::to_string(a->dim())));
      const auto doc = [a] { return detail::repro("nerve --dim 2", io::to_json(*a)); };
      rec.attempt("every 1-horn has a filler", [&] {
        for (const auto& v : nerve.simplices(0))
          for (int k = 0; k <= 1; ++k)
            if (!(nerve.face(1, 1 - k, fill_horn(nerve, 1, k, {{1 - k, v}})) == v)) return false;
        return true;
      }, doc);
      std::size_t horns = 0, closed_form = 0;
      rec.attempt("every 2-horn has a filler", [&] {
        const auto edges = nerve.simplices(1);
        for (const auto& y0 : edges)
          for (const auto& y1 : edges)
            for (int k = 0; k <= 2; ++k) {
              const int x = k == 0 ? 1 : 0, y = k == 2 ? 1 : 2;
              if (!(nerve.face(1, x, y1) == nerve.face(1, y - 1, y0))) continue;
              ++horns;
              const Vec<Zp> w = fill_horn(nerve, 2, k, {{x, y0}, {y, y1}});
              if (!nerve.contains(2, w) || !(nerve.face(2, x, w) == y0) || !(nerve.face(2, y, w) == y1)) return false;
            }
        return horns > 0;
      }, doc);
      rec.attempt("closed-form inner 2-horn filler validates", [&] {
        FaceMap<Zp> sphere{{0, nerve.zero(0)}, {1, nerve.zero(0)}};
        const auto loops = nerve.with_faces(1, sphere);
        const AInfinityAlgebra<Zp>& alg = *a;
        for (const auto& l0 : loops)
          for (const auto& l2 : loops) {
            const Vec<Zp> w0 = spherical_reduce(nerve, 1, l0), w2 = spherical_reduce(nerve, 1, l2);
            Vec<Zp> w1 = w0 + w2;
            if (alg.max_arity() >= 2) w1 = w1 + alg.op(2).evaluate({&w2, &w0}, alg.dim());
            if (!mc2_check(nerve, w0, w1, w2, Vec<Zp>(alg.dim(), Zp(0)))) return false;
            const Vec<Zp> w = fill_horn(nerve, 2, 1, {{0, l0}, {2, l2}});
            if (!(nerve.face(2, 1, w) == chi(nerve, 1, w1))) return false;
            ++closed_form;
          }
        return closed_form > 0;
      }, doc);
      return rec.take();
    });
  return detail::run("kan", opt, tasks);
}

// Acyclic fibrations split, right inverses, strict pullbacks, and factorizations.
inline SuiteReport homotopy_ops_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 12);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      const std::uint32_t p = i % 2 ? 3 : 2;
      PrimeField f(p);
      Rng rng = detail::instance_rng(opt.seed, "homotopy-ops", i);
      const int n = uniform(rng, 3, 4);
      const auto degrees = std::vector<int>{-1, -1, 0, 0, 1};
      const auto a = detail::small_algebra<Zp>(rng, degrees, 3, n, n);
      Recorder rec(detail::describe("homotopy-ops", opt.seed, i, "F" + std::to_string(p) + ", N = " + std::to_string(n)));

      const auto phi = detail::scrambled_projection(rng, a, detail::acyclic_algebra<Zp>(rng, n));
      const auto phi_doc = [phi] { return detail::repro("check", io::to_json(phi)); };
      rec.attempt("acyclic fibration is pr ∘ iso with an acyclic abelian kernel", [&] {
        const auto dec = decompose_acyclic_fibration(phi);
        const auto zero = share(AInfinityAlgebra<Zp>::zero(n));
        return dec.kernel->is_abelian() && is_weak_equivalence(InftyMorphism<Zp>::zero(zero, dec.kernel)) &&
               compose(dec.inverse, dec.iso) == InftyMorphism<Zp>::identity(phi.source_ptr()) &&
               compose(dec.iso, dec.inverse) == InftyMorphism<Zp>::identity(dec.product.algebra) &&
               compose(dec.product.pr_left, dec.iso) == phi;
      }, phi_doc);
      rec.attempt("Φχ = id for the right inverse", [&] {
        const auto chi_map = right_inverse(phi);
        return compose(phi, chi_map) == InftyMorphism<Zp>::identity(a) && is_weak_equivalence(chi_map);
      }, phi_doc);

      const auto fib = product(a, detail::small_algebra<Zp>(rng, degrees, 2, n, n)).pr_left;
      const auto theta = detail::scrambled_projection(rng, a, detail::small_algebra<Zp>(rng, degrees, 2, n, n));
      const auto pb_doc = [fib, theta] {
        return json{{"command", "pullback"}, {"documents", {io::to_json(fib), io::to_json(theta)}}};
      };
      rec.attempt("pullback: HJ = JH = id, Q̃ is Stasheff, the square commutes", [&] {
        const StrictPullback<Zp> pb(fib, theta);
        const std::size_t dim = theta.source().dim() + fib.source().dim();
        const int top = n - 1;
        const bool hj = detail::is_identity_family(compose_maps(pb.h_maps(), pb.j_maps(), top), dim, top) &&
                        detail::is_identity_family(compose_maps(pb.j_maps(), pb.h_maps(), top), dim, top);
        return hj && check_stasheff(*pb.algebra()).ok && compose(fib, pb.leg_a()) == compose(theta, pb.leg_ap()) &&
               pb.mediation_is_unique() && pb.mediate(pb.leg_a(), pb.leg_ap()) == InftyMorphism<Zp>::identity(pb.algebra());
      }, pb_doc);

      const auto weak = detail::scrambled_projection(rng, a, detail::acyclic_algebra<Zp>(rng, n));
      const auto other = detail::scrambled_projection(rng, a, share(fixtures::line<Zp>(0, 1, n)));
      for (const auto* t : {&weak, &other}) {
        const InftyMorphism<Zp>& theta_f = *t;
        rec.attempt(std::string("factorization of a ") + (t == &weak ? "weak equivalence" : "non-equivalence"), [&] {
          const auto fz = factorize(theta_f);
          return compose(fz.fibration, fz.psi) == theta_f && is_fibration(fz.fibration) && is_weak_equivalence(fz.psi) &&
                 is_weak_equivalence(fz.fibration) == is_weak_equivalence(theta_f) &&
                 is_weak_equivalence(theta_f) == (t == &weak);
        }, [theta_f] { return detail::repro("factorize", io::to_json(theta_f)); });
      }
      return rec.take();
    });
  return detail::run("homotopy-ops", opt, tasks);
}

// Over Q the Maurer-Cartan sets of A and of its commutator L∞-algebra coincide.
inline SuiteReport mcnat_suite(const SuiteOptions& opt = {}) {
  using Q = Rational;
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 12);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt] {
      Rng rng = detail::instance_rng(opt.seed, "mcnat", i);
      RandomAInftyOptions o;
      o.nilpotency = 4;
      o.max_dim = 4;
      o.degrees = {-1, 0, 0, 0, 1};
      o.weight_one = 0.7;
      const bool need_q3 = i % 2 == 0;
      std::optional<AInfinityAlgebra<Q>> a;
      for (int tries = 0; tries < 1000 && !a; ++tries) {
        auto c = random_ainfty<Q>(rng, o);
        if (!need_q3 || !c.op(3).empty()) a = std::move(c);
      }
      if (!a) throw std::runtime_error("no instance with a nonzero ternary operation found");
      Recorder rec(detail::describe("mcnat", opt.seed, i, std::string("dim ") + std::to_string(a->dim()) +
                                                              (a->op(3).empty() ? "" : ", Q_3 != 0")));
      const auto doc = [&a] { return detail::repro("commutator", io::to_json(*a)); };
      rec.attempt("curvature polynomials and Maurer-Cartan sets agree", [&] {
        const auto r = mc_equality_check(*a, {Q(-1), Q(0), Q(1, 2), Q(2)});
        std::string why;
        if (!r.polynomials_agree) why += "polynomials differ; ";
        if (!r.layered_solutions_agree) why += "a layered solution is not Maurer-Cartan for the commutator; ";
        if (!r.grid_agrees) why += "zero sets differ on the grid";
        return Verdict{r.ok() && r.layered_count > 0, why};
      }, doc);
      return rec.take();
    });
  return detail::run("mcnat", opt, tasks);
}

// Transferred structures are minimal, Stasheff, and linked to A by a weak equivalence.
inline SuiteReport transfer_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  const std::size_t count = detail::count_or(opt, 12);
  for (std::size_t i = 0; i < count; ++i)
    tasks.push_back([i, &opt]() -> std::vector<Check> {
      Rng rng = detail::instance_rng(opt.seed, "transfer", i);
      auto body = [&]<class F>() {
        RandomAInftyOptions o;
        o.homogeneous_differential = true;
        o.max_dim = 5;
        o.nilpotency = uniform(rng, 3, 4);
        o.degrees = {-2, -1, -1, 0, 0, 1};
        const auto a = share(random_ainfty<F>(rng, o));
        Recorder rec(detail::describe("transfer", opt.seed, i, detail::field_name<F>() + ", dim " + std::to_string(a->dim())));
        rec.attempt("transfer output passes every gate", [&] {
          const auto t = transfer(a);
          return check_stasheff(*t.minimal).ok && check_morphism(t.phi).ok && is_weak_equivalence(t.phi) &&
                 t.minimal->op(1).empty();
        }, [a] { return detail::repro("transfer", io::to_json(*a)); });
        return rec.take();
      };
      switch (i % 3) {
        case 0: { PrimeField f(2); return body.template operator()<Zp>(); }
        case 1: { PrimeField f(3); return body.template operator()<Zp>(); }
        default: return body.template operator()<Rational>();
      }
    });
  tasks.push_back([&opt, count] {
    PrimeField f(2);
    Recorder rec(detail::describe("transfer", opt.seed, count, "Z/2, trivial F2, F2[t]/t^3"));
    const auto cr = deform_complex(hochschild_complex(trivial_representation<Zp>(cyclic_group(2)), 3), ArtinLocalRing{3});
    const auto a = share(from_dga(cr));
    rec.attempt("transferred product squares the degree-1 class to a nonzero class", [&] {
      const auto t = transfer(a);
      if (!check_stasheff(*t.minimal).ok || !check_morphism(t.phi).ok || !is_weak_equivalence(t.phi)) return false;
      // x ⊗ t spans H^1 ⊗ t: shifted degree 0, weight 1.
      for (std::size_t x = 0; x < t.minimal->dim(); ++x) {
        const auto& b = t.minimal->space()[x];
        if (b.degree != 0 || b.weight != 1) continue;
        const int xi = static_cast<int>(x);
        const auto* sq = t.minimal->op(2).find(Word{xi, xi});
        return sq != nullptr && !sq->empty();
      }
      return false;
    });
    return rec.take();
  });
  return detail::run("transfer", opt, tasks);
}

// Deformations of the trivial representation of Z/2 over F2 classified three ways.
inline SuiteReport defrep_suite(const SuiteOptions& opt = {}) {
  std::vector<detail::Task> tasks;
  for (int order : {2, 3})
    tasks.push_back([order, &opt] {
      PrimeField f(2);
      const auto rho = trivial_representation<Zp>(cyclic_group(2));
      Recorder rec(detail::describe("defrep", opt.seed, static_cast<std::size_t>(order - 2), "Z/2, trivial F2, F2[t]/t^" + std::to_string(order)));
      const auto doc = [rho, order] {
        return json{{"command", "defrep --ring t^" + std::to_string(order)},
                    {"documents", {io::to_json(rho.group), io::to_json(rho)}}};
      };
      rec.attempt("gauge orbits, nerve π_0, and transferred π_0 agree", [&] {
        const auto c = classify_deformations(rho, ArtinLocalRing{order});
        const bool two = order != 2 || (c.gauge.size() == 2 && c.nerve.size() == 2 && c.minimal.size() == 2);
        return Verdict{c.agree() && two, std::to_string(c.gauge.size()) + " gauge, " + std::to_string(c.nerve.size()) +
                                              " nerve, " + std::to_string(c.minimal.size()) + " transferred"};
      }, doc);
      return rec.take();
    });
  tasks.push_back([&opt] {
    PrimeField f(2);
    Recorder rec(detail::describe("defrep", opt.seed, 2, "trivial group"));
    rec.attempt("the trivial group has one deformation class", [&] {
      const auto c = classify_deformations(trivial_representation<Zp>(cyclic_group(1)), ArtinLocalRing{2});
      return c.agree() && c.nerve.size() == 1;
    });
    return rec.take();
  });
  return detail::run("defrep", opt, tasks);
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cochains", "stasheff", "gm",       "pi",       "kan",
                                              "gauge",    "mcnat",    "transfer", "homotopy-ops", "defrep"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteOptions& opt = {}) {
  if (name == "cochains") return cochains_suite(opt);
  if (name == "stasheff") return stasheff_suite(opt);
  if (name == "gm") return gm_suite(opt);
  if (name == "pi") return pi_suite(opt);
  if (name == "kan") return kan_suite(opt);
  if (name == "gauge") return gauge_suite(opt);
  if (name == "mcnat") return mcnat_suite(opt);
  if (name == "transfer") return transfer_suite(opt);
  if (name == "homotopy-ops") return homotopy_ops_suite(opt);
  if (name == "defrep") return defrep_suite(opt);
  throw std::invalid_argument("unknown suite \"" + name + "\"");
}

}  // namespace ainf::verify
