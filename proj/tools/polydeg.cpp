// polydeg: command-line front end.  Every command prints one JSON object.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <unistd.h>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include <polydeg/polydeg.hpp>

namespace {

using namespace polydeg;

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kViolated = 3 };

struct Globals {
  std::string ring = "Q";
  std::size_t rank = 0;
  std::string w;
  std::string map;
  std::uint64_t seed = 1;
  std::size_t budget = 0;
  std::size_t cases = 0;
  std::string suite;
  bool pretty = false;
};

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_stream(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

// "-" reads stdin, "@path" reads a file, anything else is the payload itself.
std::string payload(const std::string& arg, const char* flag)
{
  if (arg == "-" || (arg.empty() && !isatty(STDIN_FILENO))) {
    std::string s = read_stream(std::cin);
    if (s.find_first_not_of(" \t\r\n") == std::string::npos)
      throw Usage(std::string("missing ") + flag);
    return s;
  }
  if (arg.empty())
    throw Usage(std::string("missing ") + flag);
  if (arg.front() == '@') {
    std::ifstream f(arg.substr(1));
    if (!f)
      throw Usage("cannot read " + arg.substr(1));
    return read_stream(f);
  }
  return arg;
}

class Cli {
public:
  explicit Cli(const Globals& g) : g_(g) {}

  Ring ring() const { return Ring::parse(g_.ring); }

  Weight weight(const std::string& text, const char* flag = "--w") const
  {
    if (text.empty())
      throw Usage(std::string("missing ") + flag);
    return parse_weight(text, g_.rank);
  }
  Weight weight() const { return weight(g_.w); }

  std::vector<Gamma> degrees(const std::string& text, const char* flag) const
  {
    if (text.empty())
      throw Usage(std::string("missing ") + flag);
    return parse_gamma_list(text, g_.rank);
  }

  MapInput map(std::size_t n) const { return map_from_json(parse_json_text(payload(g_.map, "--map")), ring(), n); }

  std::size_t budget(std::size_t dflt) const { return g_.budget ? g_.budget : dflt; }

  int emit(json body, int code = kOk) const
  {
    json out{{"schema", kSchemaVersion}};
    for (auto& [k, v] : body.items())
      out[k] = std::move(v);
    std::cout << (g_.pretty ? out.dump(2) : out.dump()) << '\n';
    return code;
  }

  const Globals& globals() const { return g_; }

private:
  const Globals& g_;
};

json pair_table(const std::vector<IntVec>& S, const Weight& w, const IntVec& v)
{
  auto sign = [](auto a, auto b) { return a < b ? -1 : (a > b ? 1 : 0); };
  json rows = json::array();
  bool all = true;
  for (std::size_t a = 0; a < S.size(); ++a)
    for (std::size_t b = a + 1; b < S.size(); ++b) {
      int sw = sign(dot(S[a], w), dot(S[b], w));
      int sv = sign(dot(S[a], v), dot(S[b], v));
      all = all && sw == sv;
      rows.push_back(json{{"a", S[a]}, {"b", S[b]}, {"w", sw}, {"v", sv}});
    }
  return json{{"pairs", rows}, {"verified", all}};
}

std::vector<Polynomial> poly_list(const std::string& text, const Ring& ring, std::size_t n)
{
  json j = parse_json_text(text);
  if (!j.is_array())
    throw Usage("expected a JSON array of polynomial strings");
  if (n == 0)
    for (const auto& s : j)
      n = std::max(n, max_variable_index(s.get<std::string>()));
  std::vector<Polynomial> out;
  for (const auto& s : j)
    out.push_back(parse_polynomial(s.get<std::string>(), ring, std::max<std::size_t>(n, 1)));
  return out;
}

json report_json(const SUReport& r)
{
  json su = json::object(), props = json::object();
  for (const auto& c : r.su)
    su[c.name] = c.ok;
  for (const auto& c : r.props)
    props[c.name] = c.ok;
  json out{{"su", su}, {"properties", props}, {"all_su", r.all_su()}};
  if (auto f = r.first_failed())
    out["first_failed"] = *f;
  if (r.s)
    out["s"] = *r.s;
  if (r.Q)
    out["Q"] = to_string(*r.Q);
  return out;
}

int run_realize(const Cli& c, const std::string& target, const std::string& realizer, bool fix_last,
                const std::string& case_json)
{
  const Ring ring = c.ring();
  const Weight w = c.weight();
  const auto d = c.degrees(target, "--target");
  json cs = case_json.empty() ? json::object() : parse_json_text(payload(case_json, "--case"));
  auto index = [&](const char* key) {
    if (!cs.contains(key))
      throw Usage(std::string("--case needs \"") + key + "\"");
    return cs.at(key).get<std::size_t>() - 1;
  };
  auto perm = [&](const char* key, std::size_t n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    if (cs.contains(key)) {
      p.clear();
      for (const auto& v : cs.at(key))
        p.push_back(v.get<std::size_t>() - 1);
    }
    return p;
  };
  auto gamma = [](const json& v) {
    return v.is_array() ? Gamma(v.get<std::vector<std::int64_t>>()) : Gamma{v.get<std::int64_t>()};
  };

  std::optional<Certificate> cert;
  if (realizer == "auto") {
    cert = realize_auto(d, w, ring, fix_last);
  } else if (realizer == "2var") {
    cert = realize_2var(d, w, ring);
  } else if (realizer == "vdk3") {
    cert = realize_vdk3(d, w, ring);
  } else if (realizer == "karas") {
    std::vector<std::int64_t> dv;
    for (const auto& g : d) {
      if (g.rank() != 1)
        throw Usage("karas takes rank-1 degrees");
      dv.push_back(g.coords()[0]);
    }
    cert = realize_karas(dv, ring);
  } else if (realizer == "sc") {
    cert = realize_sc(d, w, ring);
  } else if (realizer == "thm16") {
    cert = realize_thm16(d, w, ring);
  } else if (realizer == "thm72") {
    cert = realize_thm72(d, w, ring);
  } else if (realizer == "lem73") {
    if (!cs.contains("d"))
      throw Usage("--case needs \"d\"");
    cert = realize_lem73(d, w, gamma(cs.at("d")), index("l"), index("m"), ring);
  } else if (realizer == "n3") {
    std::optional<Gamma> dp;
    if (cs.contains("d"))
      dp = gamma(cs.at("d"));
    cert = realize_n3_common(d, w, ring, dp);
  } else if (realizer == "chain") {
    const std::size_t n = w.size();
    std::vector<Gamma> e = w.entries();
    if (cs.contains("e") && cs.at("e").is_string()) {
      e = parse_gamma_list(cs.at("e").get<std::string>(), w.rank());
    } else if (cs.contains("e")) {
      e.clear();
      for (const auto& v : cs.at("e"))
        e.push_back(gamma(v));
    }
    cert = chain_realize(AutWord(ring, n), w, perm("sigma", n), perm("tau", n), cs.value("r", std::size_t{0}), d, e);
  } else {
    throw Usage("unknown realizer '" + realizer + "'");
  }
  if (!cert)
    return c.emit(json{{"realized", false}}, kNegative);
  json body = to_json(*cert);
  body["realized"] = true;
  return c.emit(body, cert->ok() ? kOk : kViolated);
}

int run_su_check(const Cli& c, const std::string& pair_arg, const std::string& wit_arg)
{
  const Ring ring = c.ring();
  const Weight w = c.weight();
  json pair = parse_json_text(payload(pair_arg, "--pair"));
  SUWitness wit;
  wit.F = map_from_json(pair.at("F"), ring, w.size()).tuple;
  wit.G = map_from_json(pair.at("G"), ring, w.size()).tuple;
  if (!wit_arg.empty()) {
    json j = parse_json_text(payload(wit_arg, "--witness"));
    if (j.contains("Q"))
      wit.Q = parse_polynomial(j.at("Q").get<std::string>(), ring, 2);
    for (const char* key : {"a", "b", "c"})
      if (j.contains(key)) {
        Scalar s = ring.parse_scalar(j.at(key).is_string() ? j.at(key).get<std::string>()
                                                           : std::to_string(j.at(key).get<std::int64_t>()));
        (key[0] == 'a' ? wit.a : key[0] == 'b' ? wit.b : wit.c) = s;
      }
  }
  SUReport r = su_check(wit, w);
  json body = report_json(r);
  return c.emit(body, r.all_su() ? kOk : kNegative);
}

} // namespace

int main(int argc, char** argv)
{
  Globals g;
  CLI::App app{"Weighted degrees of polynomial automorphisms"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--ring", g.ring, "Q, Fp:<p> or Zmod:<m>");
  app.add_option("--rank", g.rank, "rank r of the degree group Z^r (0 infers it)");
  app.add_option("--w", g.w, "weight, e.g. 1,2,3 or (1,0),(0,1)");
  app.add_option("--map", g.map, "map as JSON word or tuple; '-' or omitted reads stdin, '@file' reads a file");
  app.add_option("--seed", g.seed);
  app.add_option("--budget", g.budget);
  app.add_option("--cases", g.cases);
  app.add_option("--suite", g.suite);
  app.add_flag("--pretty", g.pretty, "indent the JSON output");

  Cli cli(g);
  std::function<int()> action;
  auto cmd = [&](const char* name, const char* help, std::function<int()> f) {
    auto* sub = app.add_subcommand(name, help);
    sub->callback([&action, f] { action = f; });
    return sub;
  };

  std::string poly;
  auto* deg = cmd("deg", "w-degree of a polynomial, or of a map", [&] {
    const Weight w = cli.weight();
    if (!poly.empty())
      return cli.emit(json{{"deg", to_json(deg_w(parse_polynomial(poly, cli.ring(), w.size()), w))}});
    return cli.emit(json{{"deg", to_json(mdeg_w(cli.map(w.size()).tuple, w).total)}});
  });
  deg->add_option("--poly", poly);

  cmd("mdeg", "multidegree of a map", [&] {
    const Weight w = cli.weight();
    return cli.emit(to_json(mdeg_w(cli.map(w.size()).tuple, w)));
  });

  auto* initial = cmd("initial", "w-initial form of a polynomial or of each component", [&] {
    const Weight w = cli.weight();
    if (!poly.empty())
      return cli.emit(json{{"initial", to_string(initial_form(parse_polynomial(poly, cli.ring(), w.size()), w))}});
    return cli.emit(json{{"initial", to_json(initial_tuple(cli.map(w.size()).tuple, w))}});
  });
  initial->add_option("--poly", poly);

  cmd("wedge", "w-degree of the Jacobian wedge", [&] {
    const Weight w = cli.weight();
    const Tuple T = cli.map(w.size()).tuple;
    Multidegree md = mdeg_w(T, w);
    return cli.emit(json{{"wedge_deg", to_json(wedge_deg(T, w))},
                         {"jacobian", to_string(jacobian_determinant(T))},
                         {"initial_injective", initial_injective(T, w)},
                         {"total", to_json(md.total)}});
  });

  std::string weight_text, support_text;
  bool signs = false;
  auto* approx = cmd("approx", "integer weight inducing the same order on a support", [&] {
    const Weight w = cli.weight(weight_text, "--weight");
    json s = parse_json_text(payload(support_text, "--support"));
    std::vector<IntVec> S;
    for (const auto& a : s)
      S.push_back(a.get<IntVec>());
    EquivWitness ew = approximate_weight(S, w, signs);
    json body{{"v", ew.v}};
    json table = pair_table(ew.S, w, ew.v);
    body["pairs"] = table["pairs"];
    body["verified"] = table["verified"].get<bool>() && equivalent_on(ew.S, w, ew.v);
    return cli.emit(body, body["verified"].get<bool>() ? kOk : kViolated);
  });
  approx->add_option("--weight", weight_text)->required();
  approx->add_option("--support", support_text, "JSON array of integer vectors, inline or @file")->required();
  approx->add_flag("--signs", signs, "also preserve the sign of every coordinate");

  std::string polys;
  auto* mono = cmd("monomialize", "weight whose initial forms are all monomials", [&] {
    std::vector<Polynomial> fs = poly_list(payload(polys, "--polys"), cli.ring(), 0);
    Weight v = monomializing_weight(fs);
    json forms = json::array();
    bool ok = true;
    for (const auto& f : fs) {
      Polynomial h = initial_form(f, v);
      ok = ok && h.size() <= 1;
      forms.push_back(to_string(h));
    }
    return cli.emit(json{{"v", to_json(v)}, {"initial", forms}, {"verified", ok}}, ok ? kOk : kViolated);
  });
  mono->add_option("--polys", polys, "JSON array of polynomial strings")->required();

  std::vector<std::string> weights;
  auto* refine = cmd("refine", "one weight reproducing a sequence of initial-form operations", [&] {
    if (weights.empty())
      throw Usage("missing --weights");
    std::vector<Weight> ws;
    for (const auto& t : weights)
      ws.push_back(cli.weight(t, "--weights"));
    std::vector<Polynomial> fs = poly_list(payload(polys, "--polys"), cli.ring(), ws.front().size());
    Weight v = refine_weight(ws, fs);
    json forms = json::array();
    bool ok = true;
    for (const auto& f : fs) {
      Polynomial h = initial_form(f, v);
      ok = ok && h == iterated_initial_form(f, ws);
      forms.push_back(to_string(h));
    }
    return cli.emit(json{{"v", to_json(v)}, {"initial", forms}, {"verified", ok}}, ok ? kOk : kViolated);
  });
  refine->add_option("--weights", weights, "weights applied in order (repeatable)")->required();
  refine->add_option("--polys", polys)->required();

  std::string d_text, gens_text;
  auto* semi = cmd("semigroup", "membership of d in the semigroup spanned by gens", [&] {
    const Gamma d = parse_gamma(d_text, cli.globals().rank);
    auto coeffs = semigroup_member(d, parse_gamma_list(gens_text, d.rank()));
    if (!coeffs)
      return cli.emit(json{{"member", false}}, kNegative);
    return cli.emit(json{{"member", true}, {"coefficients", *coeffs}});
  });
  semi->add_option("--d", d_text)->required();
  semi->add_option("--gens", gens_text)->required();

  auto* cw = cmd("cw", "coordinate of w-degree d", [&] {
    const Weight w = cli.weight();
    auto wit = cw_witness(parse_gamma(d_text, w.rank()), w, cli.ring());
    if (!wit)
      return cli.emit(json{{"member", false}}, kNegative);
    json body{{"member", true},
              {"kind", wit->kind == CwWitness::Kind::Variable ? "variable" : "composite"},
              {"index", wit->index + 1},
              {"coordinate", to_string(wit->coordinate)}};
    if (wit->kind == CwWitness::Kind::Composite)
      body["exponents"] = wit->exponents;
    return cli.emit(body);
  });
  cw->add_option("--d", d_text)->required();

  std::string target, realizer = "auto", case_json;
  bool fix_last = false;
  auto* realize = cmd("realize", "automorphism with a prescribed multidegree",
                      [&] { return run_realize(cli, target, realizer, fix_last, case_json); });
  realize->add_option("--target", target)->required();
  realize->add_option("--realizer", realizer, "auto, 2var, vdk3, chain, karas, sc, thm16, thm72, lem73, n3");
  realize->add_flag("--fix-last", fix_last, "require the last component to stay x_n");
  realize->add_option("--case", case_json, "structural data as JSON, e.g. {\"d\":2,\"l\":2,\"m\":2}");

  cmd("factor", "factor a minimal-degree automorphism into generators", [&] {
    const Weight w = cli.weight();
    Certificate cert = factor_min_degree(cli.map(w.size()).tuple, w);
    return cli.emit(to_json(cert), cert.ok() ? kOk : kViolated);
  });

  cmd("reduce", "search for an elementary reduction", [&] {
    const Weight w = cli.weight();
    const Tuple T = cli.map(w.size()).tuple;
    ReductionResult r = elementary_reduction_search(T, w, cli.budget(64));
    json body{{"status", std::string(status_name(r.status))}};
    if (r.status == ReductionResult::Status::Found) {
      body["index"] = r.index + 1;
      body["h"] = to_string(r.h);
      body["reduced"] = to_json(r.reduced);
      body["old_deg"] = to_json(r.old_deg);
      body["new_deg"] = to_json(r.new_deg);
    }
    if (!r.flagged.empty()) {
      json f = json::array();
      for (auto i : r.flagged)
        f.push_back(i + 1);
      body["flagged"] = f;
    }
    return cli.emit(body, r.status == ReductionResult::Status::Found ? kOk : kNegative);
  });

  std::string pair_arg, wit_arg;
  auto* su = cmd("su-check", "evaluate the Shestakov-Umirbaev conditions on a pair",
                 [&] { return run_su_check(cli, pair_arg, wit_arg); });
  su->add_option("--pair", pair_arg, "{\"F\": map, \"G\": map}")->required();
  su->add_option("--witness", wit_arg, "{\"Q\": \"...\", \"a\": .., \"b\": .., \"c\": ..}");

  std::string subset, v_text;
  auto* dich = cmd("dichotomy", "degree bijection or free index for a variable subset", [&] {
    const Weight w = cli.weight();
    const Tuple T = cli.map(w.size()).tuple;
    std::vector<std::size_t> I;
    for (const auto& g : parse_gamma_list(subset, 1)) {
      if (g.coords()[0] < 1)
        throw Usage("--I entries are 1-based");
      I.push_back(static_cast<std::size_t>(g.coords()[0] - 1));
    }
    const Weight v = v_text.empty() ? w : cli.weight(v_text, "--v");
    Dichotomy d = thm11_dichotomy(T, I, w, v);
    auto one_based = [](const std::vector<std::size_t>& xs) {
      json a = json::array();
      for (auto x : xs)
        a.push_back(x + 1);
      return a;
    };
    json body{{"J", one_based(d.sets.J)}, {"I0", one_based(d.sets.I0)}};
    if (d.which == Dichotomy::Case::A) {
      body["case"] = "A";
      json s = json::array();
      for (auto [j, i] : d.sigma)
        s.push_back(json::array({j + 1, i + 1}));
      body["sigma"] = s;
    } else {
      body["case"] = "B";
      body["witness"] = d.witness + 1;
    }
    json cor = json(nullptr);
    if (auto i = cor12_index(T, w))
      cor = *i + 1;
    body["cor12_index"] = cor;
    return cli.emit(body);
  });
  dich->add_option("--I", subset, "variable indices, e.g. 1,3")->required();
  dich->add_option("--v", v_text, "secondary weight (defaults to --w)");

  cmd("harness", "run a property suite", [&] {
    if (g.suite.empty())
      throw Usage("missing --suite (one of thm33, dichotomy, approx, realize, factor, reduction, sured, lemma61, suineq)");
    harness::Options o{g.cases, g.seed, cli.budget(64)};
    harness::Report r = harness::run(g.suite, o);
    json body = harness::to_json(r);
    return cli.emit(body, r.ok() ? kOk : kNegative);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  auto error_json = [&](std::string_view code, const std::string& msg) {
    json e{{"schema", kSchemaVersion}, {"error", {{"code", code}, {"message", msg}}}};
    std::cout << e.dump() << '\n';
  };
  try {
    return action();
  } catch (const Usage& e) {
    error_json("Usage", e.what());
    return kUsage;
  } catch (const ParseError& e) {
    json err{{"schema", kSchemaVersion}, {"error", {{"code", "ParseError"}, {"message", e.what()}, {"offset", e.offset()}}}};
    std::cout << err.dump() << '\n';
    return kUsage;
  } catch (const Error& e) {
    error_json(errc_name(e.code()), e.what());
    switch (e.code()) {
    case Errc::TheoremViolated:
    case Errc::InternalInfeasible:
      return kViolated;
    case Errc::ArityMismatch:
    case Errc::InvalidArgument:
    case Errc::NotAField:
      return kUsage;
    default:
      return kNegative;
    }
  } catch (const json::exception& e) {
    error_json("ParseError", e.what());
    return kUsage;
  }
}
