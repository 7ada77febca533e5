// One pass/fail line per acceptance criterion: the suite passes, covers the required instances,
// and finishes inside its time budget. Exit status is nonzero if any line fails.

#include "ainf/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>

namespace {

using ainf::verify::SuiteReport;

std::size_t count_checks(const SuiteReport& r, const std::string& name_part) {
  return static_cast<std::size_t>(std::count_if(r.checks.begin(), r.checks.end(), [&](const auto& c) {
    return c.name.find(name_part) != std::string::npos;
  }));
}

std::size_t count_instances(const SuiteReport& r, const std::string& instance_part) {
  std::set<std::string> seen;
  for (const auto& c : r.checks)
    if (c.instance.find(instance_part) != std::string::npos) seen.insert(c.instance);
  return seen.size();
}

struct Coverage {
  bool ok;
  std::string detail;
};

Coverage at_least(std::size_t have, std::size_t need, const std::string& what) {
  return {have >= need, std::to_string(have) + " " + what + (have >= need ? "" : " (need " + std::to_string(need) + ")")};
}

Coverage both(const Coverage& a, const Coverage& b) { return {a.ok && b.ok, a.detail + ", " + b.detail}; }

struct Criterion {
  int id;
  const char* title;
  const char* suite;
  double limit_seconds;
  std::function<Coverage(const SuiteReport&)> coverage;
};

}  // namespace

int main(int argc, char** argv) {
  ainf::verify::SuiteOptions opt;
  if (argc > 1) opt.seed = std::stoull(argv[1]);

  const std::vector<Criterion> criteria{
      {1, "cochain algebras N*(Δ^n), n <= 4", "cochains", 5,
       [](const SuiteReport& r) {
         return both(at_least(count_instances(r, "Δ^"), 5, "simplices"),
                     at_least(count_instances(r, "structure constants"), 1, "structure-constant runs"));
       }},
      {2, "π_1 from cohomology matches the nerve", "pi1", 60,
       [](const SuiteReport& r) {
         return both(at_least(count_checks(r, "π_1 theorem = oracle at 0"), 25, "random instances"),
                     at_least(count_checks(r, "Z/4"), 2, "cyclic regression checks"));
       }},
      {3, "π_2 from cohomology matches the nerve", "pi2", 60,
       [](const SuiteReport& r) {
         return both(at_least(count_checks(r, "π_2 theorem = oracle at 0"), 5, "instances with H^-2 != 0"),
                     at_least(count_instances(r, "abelian"), 1, "abelian instances"));
       }},
      {4, "gauge orbits are nerve components", "gauge", 30,
       [](const SuiteReport& r) { return at_least(r.instances, 20, "dg algebras"); }},
      {5, "weak equivalences are homotopy equivalences of nerves", "gm", 60,
       [](const SuiteReport& r) {
         return both(at_least(count_checks(r, "induces a homotopy equivalence"), 10, "weak equivalences"),
                     at_least(count_checks(r, "non-equivalence"), 1, "controls"));
       }},
      {6, "nerves are Kan in dimensions 1 and 2", "kan", 30,
       [](const SuiteReport& r) { return at_least(count_checks(r, "closed-form"), 1, "instances"); }},
      {7, "acyclic fibrations, pullbacks, factorizations", "homotopy-ops", 30,
       [](const SuiteReport& r) { return at_least(r.instances, 10, "instances"); }},
      {8, "Maurer-Cartan sets agree with the commutator L∞", "mcnat", 10,
       [](const SuiteReport& r) {
         return both(at_least(r.instances, 10, "rational instances"), at_least(count_instances(r, "Q_3 != 0"), 1, "with Q_3 != 0"));
       }},
      {9, "deformations of the trivial Z/2 representation", "defrep", 60,
       [](const SuiteReport& r) {
         return both(at_least(count_instances(r, "t^2"), 1, "t^2 runs"), at_least(count_instances(r, "t^3"), 1, "t^3 runs"));
       }},
      {10, "transferred minimal models", "transfer", 30,
       [](const SuiteReport& r) {
         return both(at_least(r.instances, 10, "instances"), at_least(count_checks(r, "squares the degree-1 class"), 1, "cup square checks"));
       }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    SuiteReport r;
    std::string why;
    try {
      if (std::string(c.suite) == "pi1") r = ainf::verify::pi1_suite(opt);
      else if (std::string(c.suite) == "pi2") r = ainf::verify::pi2_suite(opt);
      else r = ainf::verify::run_suite(c.suite, opt);
    } catch (const std::exception& e) {
      why = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const Coverage cov = why.empty() ? c.coverage(r) : Coverage{false, why};
    const bool in_time = seconds < c.limit_seconds;
    const bool ok = why.empty() && r.ok() && cov.ok && in_time;
    failed += !ok;
    std::printf("[%s] %2d %-52s %zu/%zu checks, %s, %.2f s (limit %.0f s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                r.checks.size() - r.failures(), r.checks.size(), cov.detail.c_str(), seconds, c.limit_seconds);
    for (const auto& check : r.checks)
      if (!check.ok) std::printf("       failed: %s | %s | %s\n", check.name.c_str(), check.instance.c_str(), check.detail.c_str());
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
