#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

using nlohmann::json;

struct Outcome {
  std::string out;
  int code = -1;
  json j() const { return json::parse(out); }
};

std::string quote(const std::string& s)
{
  std::string q = "'";
  for (char c : s)
    q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Outcome run(const std::vector<std::string>& args, const std::string& input = "")
{
  std::string cmd;
  if (!input.empty())
    cmd = "printf '%s' " + quote(input) + " | ";
  cmd += POLYDEG_CLI;
  for (const auto& a : args)
    cmd += " " + quote(a);
  if (input.empty())
    cmd += " < /dev/null";
  cmd += " 2>/dev/null";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p)
    return r;
  std::array<char, 4096> buf{};
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0)
    r.out.append(buf.data(), k);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

} // namespace

TEST(Cli, MdegOfIdentity)
{
  Outcome r = run({"mdeg", "--w", "1,1,1", "--map", R"(["x1","x2","x3"])"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.j(), json::parse(R"({"schema":1,"mdeg":[[1],[1],[1]],"total":[3]})"));
}

TEST(Cli, SemigroupVerdicts)
{
  Outcome no = run({"semigroup", "--d", "1", "--gens", "2,3"});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.j()["member"], false);
  Outcome yes = run({"semigroup", "--d", "6", "--gens", "2,3"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.j()["member"], true);
  EXPECT_EQ(yes.j()["coefficients"], json::parse("[0,2]"));
}

TEST(Cli, DegreesAndForms)
{
  Outcome d = run({"deg", "--w", "1,2", "--poly", "x1^2+x2"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.j()["deg"], json::parse("[2]"));
  Outcome i = run({"initial", "--w", "1,1", "--poly", "(x1+x2)^3 + x1"});
  EXPECT_EQ(i.j()["initial"], "x1^3 + 3*x1^2*x2 + 3*x1*x2^2 + x2^3");
  Outcome w = run({"wedge", "--w", "1,1", "--map", R"(["x1","x2+x1^2"])"});
  EXPECT_EQ(w.j()["wedge_deg"], json::parse("[2]"));
  EXPECT_EQ(w.j()["jacobian"], "1");
  Outcome c = run({"cw", "--w", "2,3", "--d", "6"});
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(c.j()["coordinate"], "x1^3 + x2");
}

TEST(Cli, StdinAndFilePayloads)
{
  Outcome s = run({"mdeg", "--w", "1,1,1"}, R"(["x1","x2+x1^2","x3"])");
  EXPECT_EQ(s.code, 0);
  EXPECT_EQ(s.j()["total"], json::parse("[4]"));
  Outcome dash = run({"mdeg", "--w", "1,1,1", "--map", "-"}, R"(["x1","x2","x3+x1^3"])");
  EXPECT_EQ(dash.j()["total"], json::parse("[5]"));
  Outcome missing = run({"mdeg", "--w", "1,1", "--map", "@/nonexistent/map.json"});
  EXPECT_EQ(missing.code, 2);
}

TEST(Cli, RealizeAndFactor)
{
  Outcome r = run({"realize", "--w", "1,1,1", "--target", "2,3,5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["verified"], true);
  Outcome sc = run({"realize", "--w", "1,1,1", "--target", "1,2,1", "--fix-last"});
  EXPECT_EQ(sc.j()["tuple"], json::parse(R"(["x1","x1^2 + x2","x3"])"));
  Outcome chain = run({"realize", "--w", "1,1,1", "--target", "1,2,3", "--realizer", "chain", "--case",
                       R"({"sigma":[1,2,3],"tau":[1,2,3],"r":3,"e":[1,1,1]})"});
  EXPECT_EQ(chain.code, 0);
  EXPECT_EQ(chain.j()["target"], json::parse("[[1],[2],[3]]"));
  Outcome lem = run({"realize", "--w", "1,2,3", "--target", "2,4,6", "--realizer", "lem73", "--case",
                     R"({"d":2,"l":2,"m":2})"});
  EXPECT_EQ(lem.j()["verified"], true);
  Outcome none = run({"realize", "--w", "1,1", "--target", "2,3"});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.j()["realized"], false);
  Outcome f = run({"factor", "--w", "1,2,2", "--map", R"(["x1","x3+x1^2","x2+x1^2+x3"])"});
  EXPECT_EQ(f.code, 0);
  EXPECT_EQ(f.j()["verified"], true);
  Outcome bad = run({"factor", "--w", "1,2,2", "--map", R"(["x1","x3+x1^2","x2+x1^3"])"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(bad.j()["error"]["code"], "PreconditionFailed");
}

TEST(Cli, ReductionAndSu)
{
  Outcome r = run({"reduce", "--w", "1,1,1", "--map", R"(["x1","x2+x1^2","x3"])"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.j()["index"], 2);
  EXPECT_EQ(r.j()["h"], "x1^2");
  Outcome none = run({"reduce", "--w", "1,2,3", "--map", R"(["x1","x2","x3"])"});
  EXPECT_EQ(none.code, 1);
  EXPECT_EQ(none.j()["status"], "exhausted");
  Outcome su = run({"su-check", "--w", "1,1,1", "--pair",
                R"({"F":["x1+x2^2","x2","x3"],"G":["x1+x2^2","x2","x3"]})"});
  EXPECT_EQ(su.code, 1);
  EXPECT_EQ(su.j()["su"]["SU5"], false);
  Outcome d = run({"dichotomy", "--w", "1,1,1", "--v", "0,0,0", "--I", "1,2,3", "--map", R"(["x1","x2+x1^2","x3"])"});
  EXPECT_EQ(d.code, 0);
  EXPECT_EQ(d.j()["case"], "B");
  EXPECT_EQ(d.j()["witness"], 2);
}

TEST(Cli, Harness)
{
  Outcome h = run({"harness", "--suite", "thm33", "--cases", "300", "--seed", "7"});
  EXPECT_EQ(h.code, 0);
  EXPECT_EQ(h.j()["ok"], true);
  EXPECT_EQ(h.j()["failures"], 0);
}

TEST(Cli, ErrorsAndUsage)
{
  Outcome p = run({"deg", "--w", "1,2", "--poly", "x1 +"});
  EXPECT_EQ(p.code, 2);
  EXPECT_EQ(p.j()["schema"], 1);
  EXPECT_EQ(p.j()["error"]["code"], "ParseError");
  EXPECT_EQ(p.j()["error"]["offset"], 4);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"mdeg", "--w", "1,1", "--map", R"(["x1"])"}).code, 2);
  EXPECT_EQ(run({"harness", "--suite", "nope"}).code, 2);
  EXPECT_EQ(run({"deg", "--ring", "Zmod:1", "--w", "1", "--poly", "x1"}).code, 2);
}

TEST(Cli, DeterministicOutput)
{
  const std::vector<std::string> args{"harness", "--suite", "realize", "--cases", "20", "--seed", "3"};
  Outcome a = run(args), b = run(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const std::vector<std::string> r{"realize", "--w", "1,2,3", "--target", "2,4,6", "--ring", "Zmod:6"};
  EXPECT_EQ(run(r).out, run(r).out);
}

TEST(Cli, PrettyOutputParsesTheSame)
{
  const std::vector<std::string> a{"mdeg", "--w", "1,1", "--map", R"(["x1","x2+x1^3"])"};
  std::vector<std::string> b = a;
  b.push_back("--pretty");
  Outcome x = run(a), y = run(b);
  EXPECT_NE(x.out, y.out);
  EXPECT_EQ(x.j(), y.j());
}
