// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <cstdio>
#include <string>
#include <vector>

#include <polydeg/harness.hpp>

namespace {

using polydeg::harness::Options;
using polydeg::harness::Report;

constexpr std::uint64_t kSeed = 1;
constexpr double kDegreeBoundSeconds = 60.0;
constexpr double kOracleSeconds = 30.0;
constexpr std::size_t kReductionBudget = 64;

Report run(const std::string& suite, std::size_t cases, std::size_t budget = 64)
{
  Options o;
  o.cases = cases;
  o.seed = kSeed;
  o.budget = budget;
  return polydeg::harness::run(suite, o);
}

struct Line {
  int id;
  std::string title;
  bool pass;
  std::string detail;
};

std::string count(const Report& r, const std::string& key) { return key + "=" + std::to_string(r.get(key)); }

std::string first_failure(const Report& r) { return r.failures.empty() ? "" : "; first failure: " + r.failures.front(); }

} // namespace

int main()
{
  std::vector<Line> lines;

  // 300 words x 10 weights.
  const Report t = run("thm33", 300);
  lines.push_back({1, "degree lower bound deg_w F >= |w|",
                   t.get("c1_checks") == 3000 && t.get("c1_violations") == 0 && t.seconds < kDegreeBoundSeconds,
                   count(t, "c1_checks") + " " + count(t, "c1_violations") + " seconds=" + std::to_string(t.seconds) +
                       " (limit 60)"});
  lines.push_back({2, "minimality equivalences and inverse multidegree",
                   t.get("c2_checks") == 3000 && t.get("c2_mismatch") == 0 && t.get("c3_mismatch") == 0 &&
                       t.get("c2_minimal") > 0 && t.get("c3_checks") > 0,
                   count(t, "c2_checks") + " " + count(t, "c2_minimal") + " " + count(t, "c2_mismatch") + " " +
                       count(t, "c3_checks") + " " + count(t, "c3_mismatch") + first_failure(t)});

  // 200 words x 7 subsets x 5 weights.
  const Report d = run("dichotomy", 200);
  lines.push_back({3, "index-set dichotomy and free index above the minimum",
                   d.ok() && d.get("checks") == 7000 && d.get("violations") == 0 && d.get("cor12_checks") > 0,
                   count(d, "checks") + " " + count(d, "case_a") + " " + count(d, "case_b") + " " +
                       count(d, "cor12_checks") + first_failure(d)});

  const Report a = run("approx", 500);
  lines.push_back({4, "exact weight approximation oracles",
                   a.ok() && a.get("fm_checks") == 500 && a.get("approx_checks") == 500 &&
                       a.get("refine_checks") == 500 && a.seconds < kOracleSeconds,
                   count(a, "fm_checks") + " " + count(a, "approx_checks") + " " + count(a, "refine_checks") +
                       " seconds=" + std::to_string(a.seconds) + " (limit 30)" + first_failure(a)});

  const Report z = run("realize", 200);
  lines.push_back({5, "realizer certificates agree over Q, F5, Z/4, Z/6",
                   z.ok() && z.get("certificates") >= 200 && z.get("karas") > 0 && z.get("ring_checks") >= 600,
                   count(z, "certificates") + " " + count(z, "thm72") + " " + count(z, "lem73") + " " +
                       count(z, "chain") + " " + count(z, "karas") + " " + count(z, "ring_checks") + first_failure(z)});

  const Report f = run("factor", 100);
  lines.push_back({6, "factorization of minimal-degree maps recomposes exactly",
                   f.ok() && f.get("factored") == 100, count(f, "factored") + first_failure(f)});

  const Report r = run("reduction", 100, kReductionBudget);
  lines.push_back({7, "elementary reduction exists on S(w,Q) samples",
                   r.ok() && r.get("unsampled") == 0 && r.get("found") + r.get("budget_flagged") == 100 &&
                       r.get("found") > 0,
                   count(r, "found") + " " + count(r, "budget_flagged") + " " + count(r, "unsampled") +
                       first_failure(r)});

  const Report s = run("sured", 50);
  lines.push_back({8, "every SU candidate on S(w,Q) is refuted",
                   s.ok() && s.get("unsampled") == 0 && s.get("refuted") > 0,
                   count(s, "refuted") + " " + count(s, "unsampled") + first_failure(s)});

  const Report l = run("lemma61", 300);
  lines.push_back({9, "two-variable initial forms are power-proportional",
                   l.ok() && l.get("checks") == 300, count(l, "checks") + first_failure(l)});

  const Report q = run("suineq", 100);
  lines.push_back({10, "degree inequality for planted expressions",
                   q.ok() && q.get("checks") == 100 && q.get("holds") == 100,
                   count(q, "checks") + " " + count(q, "holds") + first_failure(q)});

  bool all = true;
  for (const auto& x : lines) {
    std::printf("[%s] criterion %d: %s (%s)\n", x.pass ? "PASS" : "FAIL", x.id, x.title.c_str(), x.detail.c_str());
    all = all && x.pass;
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
