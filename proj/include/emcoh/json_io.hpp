#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "emcoh/extensions.hpp"

namespace emcoh {

using json = nlohmann::json;

// Inline JSON text, or @path for a file.
inline json load_json(const std::string& arg) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    require(static_cast<bool>(in), "cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

inline FinAbGroup group_from_json(const json& j) {
  if (j.is_string()) return FinAbGroup::parse(j.get<std::string>());
  if (j.is_number_integer()) return FinAbGroup::cyclic(j.get<Int>());
  throw ValidationError("group must be an invariant-factor literal such as \"2,4\"");
}

inline Element element_from_json(const FinAbGroup& a, const json& j) {
  Element x;
  if (j.is_number_integer() && a.rank() <= 1) {
    x.push_back(j.get<Int>());
  } else {
    require(j.is_array(), "element must be a coordinate array");
    for (const auto& v : j) {
      require(v.is_number_integer(), "element coordinates must be integers");
      x.push_back(v.get<Int>());
    }
  }
  require(x.size() == a.rank(), "element " + j.dump() + " does not have " + std::to_string(a.rank()) + " coordinates");
  return a.reduce(x);
}

inline json element_json(const Element& x) { return json(std::vector<Int>(x.begin(), x.end())); }

inline json value_json(const FinAbGroup& m, const Element& v) {
  if (m.rank() == 1) return v[0];
  return element_json(v);
}

inline Element value_from_json(const FinAbGroup& m, const json& j) {
  if (m.rank() == 1 && j.is_number_integer()) return m.reduce({j.get<Int>()});
  return element_from_json(m, j);
}

// ---- cochains ----

inline json cochain_json(const Cochain& c) {
  json comps = json::object();
  const auto& a = c.group();
  for (std::size_t s = 0; s < c.shape_list().size(); ++s) {
    json rows = json::array();
    for (std::size_t b = c.shape_offset(s); b < c.shape_offset(s) + c.shape_size(s); ++b) {
      auto [shape, args] = c.basis_tuple(b);
      Element v = c.value(shape, args);
      if (c.coeff().is_zero(v)) continue;
      json row = json::array();
      for (Int e : args) row.push_back(element_json(a.element(e)));
      row.push_back(value_json(c.coeff(), v));
      rows.push_back(row);
    }
    comps[c.shape_list()[s].name] = rows;
  }
  return {{"group", a.literal()},
          {"coeff", c.coeff().literal()},
          {"level", level_name(c.level())},
          {"degree", c.degree()},
          {"components", comps}};
}

inline Cochain cochain_from_json(const json& j) {
  require(j.is_object(), "cochain must be a JSON object");
  for (auto key : {"group", "coeff", "level", "degree"}) require(j.contains(key), std::string("cochain: missing ") + key);
  auto a = group_from_json(j["group"]);
  auto m = group_from_json(j["coeff"]);
  Cochain c(a, m, parse_level(j["level"].get<std::string>()), j["degree"].get<int>());
  if (!j.contains("components")) return c;
  for (const auto& [name, rows] : j["components"].items()) {
    const int s = c.shape_index(name);
    const int arity = c.shape_list()[s].arity;
    for (const auto& row : rows) {
      require(row.is_array() && static_cast<int>(row.size()) == arity + 1,
              "cochain: component " + name + " rows need " + std::to_string(arity) + " arguments and a value");
      std::vector<Int> args;
      for (int i = 0; i < arity; ++i) args.push_back(a.index_of(element_from_json(a, row[i])));
      if (std::find(args.begin(), args.end(), 0) != args.end()) {
        require(m.is_zero(value_from_json(m, row[arity])), "cochain: nonzero value at an identity argument");
        continue;
      }
      c.set(s, args, value_from_json(m, row[arity]));
    }
  }
  return c;
}

// ---- quadratic forms ----

inline json form_json(const QuadraticForm& q) {
  json vals = json::array();
  for (Int i = 0; i < q.group().order(); ++i) {
    json row = json::array();
    for (Int v : q.group().element(i)) row.push_back(v);
    row.push_back(value_json(q.coeff(), q(i)));
    vals.push_back(row);
  }
  return {{"group", q.group().literal()}, {"coeff", q.coeff().literal()}, {"values", vals}};
}

// Named bases: zero (Z/2, q = 0), semion (Z/2, q(1) = 1/4), radical (Z/2 x Z/2, q = (1/4, 1/2)), all over Z/8.
inline QuadraticForm preset_form(const std::string& name) {
  const auto z2 = FinAbGroup::parse("2"), m = FinAbGroup::parse("8");
  if (name == "zero") return QuadraticForm::from_generators(z2, m, {{0}}, {});
  if (name == "semion") return QuadraticForm::from_generators(z2, m, {{2}}, {});
  if (name == "radical") return QuadraticForm::from_generators(FinAbGroup::parse("2,2"), m, {{2}, {4}}, {{0}});
  throw ValidationError("unknown form preset: " + name);
}

// Preset name or JSON.
inline json load_form_arg(const std::string& s) {
  if (s == "zero" || s == "semion" || s == "radical") return s;
  return load_json(s);
}

// {"group", "coeff", "values": [[coords..., value], ...]} with unlisted elements 0,
// or {"group", "coeff", "diag": [...], "polar": [...]} on the generators.
inline QuadraticForm form_from_json(const json& j) {
  if (j.is_string()) return preset_form(j.get<std::string>());
  require(j.is_object() && j.contains("group") && j.contains("coeff"), "quadratic form: need group and coeff");
  auto a = group_from_json(j["group"]);
  auto m = group_from_json(j["coeff"]);
  if (j.contains("diag")) {
    std::vector<Element> diag, polar;
    for (const auto& v : j["diag"]) diag.push_back(value_from_json(m, v));
    if (j.contains("polar"))
      for (const auto& v : j["polar"]) polar.push_back(value_from_json(m, v));
    return QuadraticForm::from_generators(a, m, diag, polar);
  }
  std::vector<Element> vals(a.order(), m.zero());
  if (j.contains("values"))
    for (const auto& row : j["values"]) {
      require(row.is_array() && row.size() >= a.rank() + 1, "quadratic form: rows are [coords..., value]");
      json coords = json::array();
      for (std::size_t i = 0; i < a.rank(); ++i) coords.push_back(row[i]);
      json val;
      if (row.size() == a.rank() + 1) {
        val = row[a.rank()];
      } else {
        val = json::array();
        for (std::size_t i = a.rank(); i < row.size(); ++i) val.push_back(row[i]);
      }
      vals[a.index_of(element_from_json(a, coords))] = value_from_json(m, val);
    }
  return QuadraticForm(a, m, vals);
}

// ---- finite groups ----

// Invariant literal, "D<2m>", "Q8", or {"order": n, "table": [[...]], "labels": [...]}.
inline FiniteGroup finite_group_from_string(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '@')) {
    auto j = load_json(s);
    require(j.contains("table"), "group table JSON needs a table");
    auto t = j["table"].get<std::vector<std::vector<Int>>>();
    if (j.contains("order")) require(j["order"].get<Int>() == static_cast<Int>(t.size()), "group order does not match table");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FiniteGroup(t, labels);
  }
  if (s == "Q8") return FiniteGroup::quaternion();
  if (s.size() > 1 && s[0] == 'D') {
    Int n = 0;
    try {
      n = std::stoll(s.substr(1));
    } catch (const std::exception&) {
      throw ValidationError("bad dihedral name: " + s);
    }
    require(n >= 2 && n % 2 == 0, "dihedral name D<n> needs even order n");
    return FiniteGroup::dihedral(n / 2);
  }
  return FiniteGroup::abelian(FinAbGroup::parse(s));
}

inline std::vector<Int> parse_coords(std::string s) {
  std::erase_if(s, [](char c) { return c == '[' || c == ']' || c == ' '; });
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      require(used == tok.size(), "bad coordinate: " + tok);
    } catch (const std::logic_error&) {
      throw ValidationError("bad coordinate: " + tok);
    }
  }
  return out;
}

// Group element: "e" or "1" is the identity; bracketed or comma coordinates for abelian groups;
// otherwise a label.
inline Int finite_group_element(const FiniteGroup& g, const std::string& s) {
  const bool bracketed = !s.empty() && s[0] == '[';
  if (!bracketed && (s == "e" || (s == "1" && g.structure()))) return g.identity();
  if (g.structure() && (bracketed || s.find_first_not_of("0123456789,- ") == std::string::npos)) {
    const auto& a = *g.structure();
    auto c = parse_coords(s);
    require(c.size() == a.rank(), "element " + s + " needs " + std::to_string(a.rank()) + " coordinates");
    return a.index_of(a.reduce(c));
  }
  for (Int x = 0; x < g.order(); ++x)
    if (g.label(x) == s) return x;
  throw ValidationError("unknown group element: " + s);
}

inline json finite_group_json(const FiniteGroup& g) {
  json labels = json::array();
  for (Int x = 0; x < g.order(); ++x) labels.push_back(g.label(x));
  return {{"order", g.order()}, {"table", g.table()}, {"labels", labels}};
}

// ---- zesting data ----

// Tables are indexed by the lexicographic element order of A and A0.
inline json datum_json(const ZestingDatum& d) {
  const Int k = d.a_order(), m = d.base_order();
  const auto& a0 = d.base.group();
  json f = json::array(), L = json::array(), xi = json::array(), kappa = json::array();
  for (Int x = 0; x < k; ++x) {
    json fr = json::array(), lr = json::array(), kr = json::array(), xr = json::array();
    for (Int X = 0; X < m; ++X) fr.push_back(d.fv(x, X));
    for (Int y = 0; y < k; ++y) {
      lr.push_back(element_json(a0.element(d.Lv(x, y))));
      kr.push_back(d.kappav(x, y));
      json xz = json::array();
      for (Int z = 0; z < k; ++z) xz.push_back(d.xiv(x, y, z));
      xr.push_back(xz);
    }
    f.push_back(fr), L.push_back(lr), kappa.push_back(kr), xi.push_back(xr);
  }
  return {{"base", form_json(d.base)}, {"grading", d.grading.literal()}, {"f", f}, {"L", L},
          {"xi", xi},                  {"kappa", kappa},                   {"twist", cochain_json(d.twist)}};
}

inline ZestingDatum datum_from_json(const json& j) {
  require(j.is_object(), "zesting datum must be a JSON object");
  require(j.contains("base") && j.contains("grading"), "zesting datum: need base and grading");
  auto base = form_from_json(j["base"]);
  auto a = group_from_json(j["grading"]);
  auto d = trivial_datum(base, a);
  const Int k = a.order(), m = base.group().order();
  auto table = [&](const char* key, std::size_t rows, std::size_t cols) {
    const auto& t = j[key];
    require(t.is_array() && t.size() == rows, std::string("zesting datum: ") + key + " has the wrong shape");
    for (const auto& r : t) require(r.is_array() && r.size() == cols, std::string("zesting datum: ") + key + " has the wrong shape");
    return t;
  };
  if (j.contains("f")) {
    auto t = table("f", k, m);
    for (Int x = 0; x < k; ++x)
      for (Int X = 0; X < m; ++X) d.f[x * m + X] = mod(t[x][X].get<Int>(), d.modulus());
  }
  if (j.contains("L")) {
    auto t = table("L", k, k);
    for (Int x = 0; x < k; ++x)
      for (Int y = 0; y < k; ++y) d.L[x * k + y] = base.group().index_of(element_from_json(base.group(), t[x][y]));
  }
  if (j.contains("kappa")) {
    auto t = table("kappa", k, k);
    for (Int x = 0; x < k; ++x)
      for (Int y = 0; y < k; ++y) d.kappa[x * k + y] = mod(t[x][y].get<Int>(), d.modulus());
  }
  if (j.contains("xi")) {
    auto t = table("xi", k, k);
    for (Int x = 0; x < k; ++x)
      for (Int y = 0; y < k; ++y) {
        require(t[x][y].is_array() && static_cast<Int>(t[x][y].size()) == k, "zesting datum: xi has the wrong shape");
        for (Int z = 0; z < k; ++z) d.xi[(x * k + y) * k + z] = mod(t[x][y][z].get<Int>(), d.modulus());
      }
  }
  if (j.contains("twist")) d.twist = cochain_from_json(j["twist"]);
  return d;
}

}  // namespace emcoh
