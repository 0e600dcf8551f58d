#ifndef POLYDEG_IO_HPP
#define POLYDEG_IO_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "autmap.hpp"
#include "parse.hpp"
#include "sured.hpp"
#include "tamecert.hpp"
#include "worder.hpp"

namespace polydeg {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Text forms of degrees and weights: "2,3,5" or "[(0,1),(1,0)]".

namespace detail {

inline std::string strip(std::string_view s)
{
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

inline std::int64_t parse_int(std::string_view s, std::size_t offset)
{
  std::string t = strip(s);
  if (t.empty())
    throw ParseError(offset, "expected an integer");
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ParseError(offset, "bad integer '" + t + "'");
  }
  if (used != t.size())
    throw ParseError(offset, "bad integer '" + t + "'");
  return v;
}

} // namespace detail

// Comma-separated entries, each an integer or a parenthesized tuple.
inline std::vector<Gamma> parse_gamma_list(std::string_view text, std::size_t rank = 0)
{
  std::string s = detail::strip(text);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']')
    s = s.substr(1, s.size() - 2);
  std::vector<Gamma> out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
  };
  skip();
  if (i == s.size())
    throw ParseError(0, "empty list");
  while (i < s.size()) {
    skip();
    std::vector<std::int64_t> coords;
    if (i < s.size() && s[i] == '(') {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos)
        throw ParseError(i, "unclosed '('");
      std::string inner = s.substr(i + 1, close - i - 1);
      std::size_t start = 0;
      for (;;) {
        std::size_t comma = inner.find(',', start);
        coords.push_back(detail::parse_int(inner.substr(start, comma - start), i + 1 + start));
        if (comma == std::string::npos)
          break;
        start = comma + 1;
      }
      i = close + 1;
    } else {
      std::size_t comma = s.find(',', i);
      coords.push_back(detail::parse_int(s.substr(i, comma - i), i));
      i = comma == std::string::npos ? s.size() : comma;
    }
    if (rank != 0 && coords.size() != rank)
      throw ParseError(i, "entry of rank " + std::to_string(coords.size()) + ", expected " + std::to_string(rank));
    if (!out.empty() && out.front().rank() != coords.size())
      throw ParseError(i, "entries of mixed rank");
    out.emplace_back(std::move(coords));
    skip();
    if (i < s.size()) {
      if (s[i] != ',')
        throw ParseError(i, std::string("expected ',' but found '") + s[i] + "'");
      ++i;
    }
  }
  return out;
}

inline Gamma parse_gamma(std::string_view text, std::size_t rank = 0)
{
  auto v = parse_gamma_list(text, rank);
  if (v.size() != 1)
    throw ParseError(0, "expected a single degree");
  return v.front();
}

inline Weight parse_weight(std::string_view text, std::size_t rank = 0) { return Weight(parse_gamma_list(text, rank)); }

// ---------------------------------------------------------------------------
// JSON forms.

inline json to_json(const Gamma& g) { return json(g.coords()); }

inline json to_json(const DegValue& d) { return d.is_finite() ? to_json(d.value()) : json("-inf"); }

inline json to_json(const Multidegree& m)
{
  json arr = json::array();
  for (const auto& e : m.entries)
    arr.push_back(to_json(e));
  return json{{"mdeg", arr}, {"total", to_json(m.total)}};
}

inline json to_json(const Weight& w)
{
  json arr = json::array();
  for (const auto& g : w.entries())
    arr.push_back(to_json(g));
  return arr;
}

inline json to_json(const std::vector<Gamma>& v)
{
  json arr = json::array();
  for (const auto& g : v)
    arr.push_back(to_json(g));
  return arr;
}

inline json to_json(const Tuple& T)
{
  json arr = json::array();
  for (const auto& p : T)
    arr.push_back(to_string(p));
  return arr;
}

inline json to_json(const Generator& g)
{
  if (auto* e = std::get_if<ElementaryGen>(&g))
    return json{{"kind", "elem"}, {"l", e->index + 1}, {"a", e->unit.get_str()}, {"p", to_string(e->p)}};
  if (auto* p = std::get_if<PermutationGen>(&g)) {
    json s = json::array();
    for (auto v : p->sigma)
      s.push_back(v + 1);
    return json{{"kind", "perm"}, {"sigma", s}};
  }
  const auto& a = std::get<AffineGen>(g);
  json m = json::array();
  for (const auto& row : a.matrix) {
    json r = json::array();
    for (const auto& c : row)
      r.push_back(c.get_str());
    m.push_back(r);
  }
  json sh = json::array();
  for (const auto& c : a.shift)
    sh.push_back(c.get_str());
  return json{{"kind", "affine"}, {"matrix", m}, {"shift", sh}};
}

inline json to_json(const AutWord& w)
{
  json arr = json::array();
  for (const auto& g : w.generators())
    arr.push_back(to_json(g));
  return arr;
}

inline json to_json(const Certificate& c)
{
  json checks = json::object();
  for (const auto& r : c.checks)
    checks[r.name] = r.ok;
  json out{{"realizer", c.realizer}, {"w", to_json(c.w)}, {"target", to_json(c.target)},
           {"word", to_json(c.word)}, {"tuple", to_json(c.word.tuple())}};
  if (c.fixed_from != kNoFixedTail)
    out["fixed_from"] = c.fixed_from + 1;
  out["checks"] = checks;
  out["verified"] = c.ok();
  return out;
}

inline json to_json(const CheckRecord& r) { return json{{"name", r.name}, {"ok", r.ok}}; }

// ---------------------------------------------------------------------------
// Reading maps: a word (array of generator objects) or a tuple (array of strings).

namespace detail {

inline std::string scalar_text(const json& j)
{
  if (j.is_string())
    return j.get<std::string>();
  if (j.is_number_integer())
    return std::to_string(j.get<std::int64_t>());
  fail(Errc::ParseError, "expected a scalar as string or integer");
}

inline std::size_t json_index(const json& j, const char* what)
{
  if (!j.is_number_integer() || j.get<std::int64_t>() < 1)
    fail(Errc::ParseError, std::string(what) + " must be a positive integer");
  return static_cast<std::size_t>(j.get<std::int64_t>());
}

// Smallest n that the generator objects need.
inline std::size_t word_arity(const json& arr)
{
  std::size_t n = 0;
  for (const auto& g : arr) {
    if (!g.is_object() || !g.contains("kind"))
      fail(Errc::ParseError, "generator must be an object with a \"kind\"");
    std::string kind = g.at("kind").get<std::string>();
    if (kind == "elem") {
      n = std::max(n, json_index(g.at("l"), "l"));
      if (g.contains("p"))
        n = std::max(n, max_variable_index(g.at("p").get<std::string>()));
    } else if (kind == "perm") {
      n = std::max(n, g.at("sigma").size());
    } else if (kind == "affine") {
      n = std::max(n, g.at("matrix").size());
    } else {
      fail(Errc::ParseError, "unknown generator kind '" + kind + "'");
    }
  }
  return n;
}

} // namespace detail

inline Generator generator_from_json(const json& g, const Ring& ring, std::size_t n)
{
  std::string kind = g.at("kind").get<std::string>();
  if (kind == "elem") {
    ElementaryGen e;
    e.index = detail::json_index(g.at("l"), "l") - 1;
    e.unit = g.contains("a") ? ring.parse_scalar(detail::scalar_text(g.at("a"))) : Scalar(1);
    e.p = g.contains("p") ? parse_polynomial(g.at("p").get<std::string>(), ring, n) : Polynomial(ring, n);
    return e;
  }
  if (kind == "perm") {
    PermutationGen p;
    for (const auto& v : g.at("sigma"))
      p.sigma.push_back(detail::json_index(v, "sigma entry") - 1);
    return p;
  }
  if (kind == "affine") {
    AffineGen a;
    for (const auto& row : g.at("matrix")) {
      std::vector<Scalar> r;
      for (const auto& c : row)
        r.push_back(ring.parse_scalar(detail::scalar_text(c)));
      a.matrix.push_back(std::move(r));
    }
    if (g.contains("shift"))
      for (const auto& c : g.at("shift"))
        a.shift.push_back(ring.parse_scalar(detail::scalar_text(c)));
    else
      a.shift.assign(a.matrix.size(), 0);
    return a;
  }
  fail(Errc::ParseError, "unknown generator kind '" + kind + "'");
}

struct MapInput {
  Tuple tuple;
  std::optional<AutWord> word;
};

// n = 0 infers the number of variables from the payload.
inline MapInput map_from_json(const json& j, const Ring& ring, std::size_t n = 0)
{
  if (!j.is_array() || j.empty())
    fail(Errc::ParseError, "map must be a nonempty JSON array");
  MapInput out;
  if (j.front().is_string()) {
    std::size_t need = j.size();
    for (const auto& s : j) {
      if (!s.is_string())
        fail(Errc::ParseError, "tuple entries must all be strings");
      need = std::max(need, max_variable_index(s.get<std::string>()));
    }
    if (n == 0)
      n = j.size();
    if (need > n || j.size() != n)
      fail(Errc::ArityMismatch, "tuple has " + std::to_string(j.size()) + " components but mentions x" +
                                    std::to_string(need));
    for (const auto& s : j)
      out.tuple.push_back(parse_polynomial(s.get<std::string>(), ring, n));
    return out;
  }
  if (n == 0)
    n = detail::word_arity(j);
  std::vector<Generator> gens;
  for (const auto& g : j)
    gens.push_back(generator_from_json(g, ring, n));
  out.word = AutWord::from_generators(ring, n, gens);
  out.tuple = out.word->tuple();
  return out;
}

inline json parse_json_text(std::string_view text)
{
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.byte == 0 ? 0 : e.byte - 1, std::string("invalid JSON: ") + e.what());
  }
}

} // namespace polydeg

#endif
