#pragma once

// Instance files: a JSON document with sections groups, actions, mu,
// bimodule, lattice, task and bounds. Parsing checks structure and resolves
// names; semantic validation happens when the instance is built.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

using json = nlohmann::ordered_json;

inline constexpr std::string_view tasks[] = {"verify", "classify", "der", "h0", "h1", "report"};
inline constexpr std::string_view group_constructors[] = {
    "cyclic", "dihedral", "symmetric", "quaternion", "heisenberg", "elementary_abelian",
    "product", "quotient", "automorphisms"};

struct GroupDecl {
  std::string name;
  std::string constructor;  // empty for an explicit table
  json params = json::array();
  Table table;
  std::vector<std::string> labels;
  bool operator==(GroupDecl const&) const = default;
};

struct ActionDecl {
  std::string name;
  std::string actor;
  std::string target;
  std::string kind;   // named | table | generators
  std::string named;  // trivial | conjugation | natural | inversion | sign
  Table table;
  json generators = json::object();  // element -> image list; elements by label or index
  bool operator==(ActionDecl const&) const = default;
};

struct MuDecl {
  std::string name;
  std::string domain;    // empty: the bimodule's A
  std::string codomain;  // empty: the bimodule's R
  std::string kind;      // map | named
  std::string named;     // trivial | identity | canonical-projection | inner
  json map = json::array();
  bool operator==(MuDecl const&) const = default;
};

struct BimoduleDecl {
  std::string construction;  // empty for explicit wiring
  std::string G, R, A;
  std::string actGA, actGR, actRA, actRG;
  std::string mu;
  json subgroup;             // normal_inclusion: element list, "center" or "commutator"
  bool restrict = false;
  bool operator==(BimoduleDecl const&) const = default;
};

struct LatticeDecl {
  std::size_t rank = 0;
  std::vector<std::string> generators;
  std::vector<std::vector<std::vector<std::int64_t>>> matrices;  // one per generator
  std::vector<std::string> relators;
  std::vector<std::uint64_t> crosscheck;                           // moduli
  bool operator==(LatticeDecl const&) const = default;
};

struct Bounds {
  std::uint64_t max_der = 20'000;
  std::uint64_t max_assignments = 50'000'000;
  std::uint64_t max_aut = 24;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  bool operator==(Bounds const&) const = default;
};

struct InstanceSpec {
  std::vector<GroupDecl> groups;
  std::vector<ActionDecl> actions;
  std::vector<MuDecl> mus;
  std::optional<BimoduleDecl> bimodule;
  std::optional<LatticeDecl> lattice;
  std::string task = "report";
  Bounds bounds;

  GroupDecl const* find_group(std::string_view n) const {
    for (auto const& g : groups)
      if (g.name == n) return &g;
    return nullptr;
  }
  ActionDecl const* find_action(std::string_view n) const {
    for (auto const& a : actions)
      if (a.name == n) return &a;
    return nullptr;
  }
  MuDecl const* find_mu(std::string_view n) const {
    for (auto const& m : mus)
      if (m.name == n) return &m;
    return nullptr;
  }
  bool operator==(InstanceSpec const&) const = default;
};

inline bool is_task(std::string_view t) {
  for (auto x : tasks)
    if (x == t) return true;
  return false;
}

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] inline void shape(std::string const& path, std::string const& what) {
  throw Error(ErrorKind::ShapeMismatch, path + ": " + what);
}

[[noreturn]] inline void unresolved(std::string const& path, std::string const& name) {
  throw Error(ErrorKind::UnresolvedReference, path + ": unknown name '" + name + "'");
}

inline json const& member(json const& obj, std::string const& key, std::string const& path) {
  if (!obj.contains(key)) shape(path, "missing key '" + key + "'");
  return obj.at(key);
}

inline std::string get_string(json const& obj, std::string const& key, std::string const& path) {
  auto const& v = member(obj, key, path);
  if (!v.is_string()) shape(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

inline std::string opt_string(json const& obj, std::string const& key, std::string const& path) {
  if (!obj.contains(key)) return {};
  auto const& v = obj.at(key);
  if (!v.is_string()) shape(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

inline std::uint64_t get_count(json const& v, std::string const& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    shape(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline Table parse_table(json const& v, std::string const& path) {
  if (!v.is_array()) shape(path, "expected an array of rows");
  Table t;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto const& row = v[i];
    if (!row.is_array()) shape(path + "/" + std::to_string(i), "expected a row");
    if (row.size() != v[0].size())
      shape(path + "/" + std::to_string(i), cat("row has length ", row.size(), ", expected ", v[0].size()));
    std::vector<Elem> r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      auto x = get_count(row[j], path + "/" + std::to_string(i) + "/" + std::to_string(j));
      r.push_back(Elem(x));
    }
    t.push_back(std::move(r));
  }
  return t;
}

inline bool is_elem_ref(json const& v) {
  return v.is_string() || v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

inline void check_group_params(InstanceSpec const& spec, std::string const& ctor, json const& params,
                               std::string const& path);

inline void check_group_ref(InstanceSpec const& spec, json const& v, std::string const& path) {
  if (v.is_string()) {
    if (!spec.find_group(v.get<std::string>())) unresolved(path, v.get<std::string>());
  } else if (v.is_array() && !v.empty() && v[0].is_string()) {
    json rest(json::value_t::array);
    for (std::size_t i = 1; i < v.size(); ++i) rest.push_back(v[i]);
    check_group_params(spec, v[0].get<std::string>(), rest, path);
  } else {
    shape(path, "expected a group name or a constructor array");
  }
}

inline void check_group_params(InstanceSpec const& spec, std::string const& ctor, json const& params,
                               std::string const& path) {
  bool known = false;
  for (auto c : group_constructors) known = known || c == ctor;
  if (ctor == "quaternion8" || ctor == "trivial") known = true;
  if (!known) throw Error(ErrorKind::UnknownConstructor, path + ": unknown constructor '" + ctor + "'");
  if (ctor == "product") {
    if (params.size() < 2) shape(path, "product needs at least two factors");
    for (std::size_t i = 0; i < params.size(); ++i) check_group_ref(spec, params[i], path + "/" + std::to_string(i + 1));
  } else if (ctor == "quotient") {
    if (params.size() != 2 || !params[1].is_string()) shape(path, "quotient takes a group and 'center' or 'commutator'");
    check_group_ref(spec, params[0], path + "/1");
    auto what = params[1].get<std::string>();
    if (what != "center" && what != "commutator") shape(path + "/2", "expected 'center' or 'commutator'");
  } else if (ctor == "automorphisms") {
    if (params.size() != 1) shape(path, "automorphisms takes one group");
    check_group_ref(spec, params[0], path + "/1");
  } else {
    std::size_t want = ctor == "elementary_abelian" ? 2 : (ctor == "trivial" || ctor == "quaternion8") ? 0 : 1;
    if (ctor == "quaternion") want = params.size() == 0 ? 0 : 1;
    if (params.size() != want) shape(path, ctor + " takes " + std::to_string(want) + " parameter(s)");
    for (std::size_t i = 0; i < params.size(); ++i) get_count(params[i], path + "/" + std::to_string(i + 1));
  }
}

}  // namespace detail

/// Parses and resolves an instance. Syntax errors carry line and column;
/// dangling names raise UnresolvedReference with the JSON path.
inline InstanceSpec parse_instance(std::string_view text) {
  using namespace detail;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (json::parse_error const& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorKind::Syntax, cat("line ", line, ", column ", col, ": ", e.what()),
                {std::int64_t(line), std::int64_t(col)});
  }
  if (!doc.is_object()) shape("", "instance must be a JSON object");
  for (auto const& [key, _] : doc.items()) {
    static constexpr std::string_view known[] = {"groups", "actions", "mu", "bimodule", "lattice", "task", "bounds", "description"};
    bool ok = false;
    for (auto k : known) ok = ok || k == key;
    if (!ok) shape("/" + key, "unknown section");
  }

  InstanceSpec spec;
  if (doc.contains("description") && !doc["description"].is_string()) shape("/description", "expected a string");

  if (doc.contains("groups")) {
    auto const& gs = doc["groups"];
    if (!gs.is_object()) shape("/groups", "expected an object");
    for (auto const& [name, v] : gs.items()) {
      std::string path = "/groups/" + name;
      if (spec.find_group(name)) shape(path, "duplicate group");
      if (!v.is_object()) shape(path, "expected an object");
      GroupDecl d;
      d.name = name;
      if (v.contains("constructor")) {
        auto const& c = v["constructor"];
        if (!c.is_array() || c.empty() || !c[0].is_string()) shape(path + "/constructor", "expected [name, params...]");
        d.constructor = c[0].get<std::string>();
        for (std::size_t i = 1; i < c.size(); ++i) d.params.push_back(c[i]);
        check_group_params(spec, d.constructor, d.params, path + "/constructor");
      } else if (v.contains("table")) {
        d.table = parse_table(v["table"], path + "/table");
        if (v.contains("labels")) {
          auto const& l = v["labels"];
          if (!l.is_array()) shape(path + "/labels", "expected an array of strings");
          for (auto const& s : l) {
            if (!s.is_string()) shape(path + "/labels", "expected an array of strings");
            d.labels.push_back(s.get<std::string>());
          }
        }
      } else {
        shape(path, "expected 'constructor' or 'table'");
      }
      spec.groups.push_back(std::move(d));
    }
  }

  auto require_group = [&](std::string const& name, std::string const& path) {
    if (!spec.find_group(name)) unresolved(path, name);
  };

  if (doc.contains("actions")) {
    auto const& as = doc["actions"];
    if (!as.is_object()) shape("/actions", "expected an object");
    for (auto const& [name, v] : as.items()) {
      std::string path = "/actions/" + name;
      if (spec.find_action(name)) shape(path, "duplicate action");
      if (!v.is_object()) shape(path, "expected an object");
      ActionDecl d;
      d.name = name;
      d.actor = get_string(v, "actor", path);
      d.target = get_string(v, "target", path);
      require_group(d.actor, path + "/actor");
      require_group(d.target, path + "/target");
      if (v.contains("named")) {
        d.kind = "named";
        d.named = get_string(v, "named", path);
        if (d.named != "trivial" && d.named != "conjugation" && d.named != "inversion" && d.named != "sign" &&
            d.named != "natural")
          throw Error(ErrorKind::UnknownConstructor, path + "/named: unknown action '" + d.named + "'");
      } else if (v.contains("table")) {
        d.kind = "table";
        d.table = parse_table(v["table"], path + "/table");
      } else if (v.contains("generators")) {
        d.kind = "generators";
        auto const& g = v["generators"];
        if (!g.is_object()) shape(path + "/generators", "expected an object of element -> image list");
        for (auto const& [elem, img] : g.items()) {
          if (!img.is_array()) shape(path + "/generators/" + elem, "expected an image list");
          for (auto const& x : img)
            if (!is_elem_ref(x)) shape(path + "/generators/" + elem, "images are labels or indices");
        }
        d.generators = g;
      } else {
        shape(path, "expected 'named', 'table' or 'generators'");
      }
      spec.actions.push_back(std::move(d));
    }
  }

  if (doc.contains("mu")) {
    auto const& ms = doc["mu"];
    if (!ms.is_object()) shape("/mu", "expected an object");
    auto parse_mu = [&](std::string const& name, json const& v, std::string const& path) {
      if (!v.is_object()) shape(path, "expected an object");
      MuDecl d;
      d.name = name;
      d.domain = opt_string(v, "domain", path);
      d.codomain = opt_string(v, "codomain", path);
      if (!d.domain.empty()) require_group(d.domain, path + "/domain");
      if (!d.codomain.empty()) require_group(d.codomain, path + "/codomain");
      if (v.contains("map")) {
        d.kind = "map";
        if (!v["map"].is_array()) shape(path + "/map", "expected an array");
        for (auto const& x : v["map"])
          if (!is_elem_ref(x)) shape(path + "/map", "images are labels or indices");
        d.map = v["map"];
      } else if (v.contains("named")) {
        d.kind = "named";
        d.named = get_string(v, "named", path);
        if (d.named != "trivial" && d.named != "identity" && d.named != "canonical-projection" && d.named != "inner")
          throw Error(ErrorKind::UnknownConstructor, path + "/named: unknown map '" + d.named + "'");
      } else {
        shape(path, "expected 'map' or 'named'");
      }
      spec.mus.push_back(std::move(d));
    };
    if (ms.contains("map") || ms.contains("named")) {
      parse_mu("mu", ms, "/mu");
    } else {
      for (auto const& [name, v] : ms.items()) parse_mu(name, v, "/mu/" + name);
    }
  }

  if (doc.contains("bimodule")) {
    auto const& v = doc["bimodule"];
    std::string const path = "/bimodule";
    if (!v.is_object()) shape(path, "expected an object");
    BimoduleDecl d;
    d.construction = opt_string(v, "construction", path);
    d.G = opt_string(v, "G", path);
    d.R = opt_string(v, "R", path);
    d.A = opt_string(v, "A", path);
    d.actGA = opt_string(v, "actGA", path);
    d.actGR = opt_string(v, "actGR", path);
    d.actRA = opt_string(v, "actRA", path);
    d.actRG = opt_string(v, "actRG", path);
    d.mu = opt_string(v, "mu", path);
    if (v.contains("subgroup")) d.subgroup = v["subgroup"];
    if (v.contains("restrict")) {
      if (!v["restrict"].is_boolean()) shape(path + "/restrict", "expected a boolean");
      d.restrict = v["restrict"].get<bool>();
    }
    auto need_group = [&](std::string const& key, std::string const& val) {
      if (val.empty()) shape(path, "missing key '" + key + "'");
      require_group(val, path + "/" + key);
    };
    auto need_action = [&](std::string const& key, std::string const& val) {
      if (val.empty()) shape(path, "missing key '" + key + "'");
      if (!spec.find_action(val)) unresolved(path + "/" + key, val);
    };
    if (!d.actRG.empty()) need_action("actRG", d.actRG);
    std::string const& c = d.construction;
    if (c.empty()) {
      need_group("G", d.G);
      need_group("R", d.R);
      need_group("A", d.A);
      need_action("actGA", d.actGA);
      need_action("actGR", d.actGR);
      need_action("actRA", d.actRA);
      if (d.mu.empty()) {
        if (spec.mus.size() != 1) shape(path, "missing key 'mu'");
        d.mu = spec.mus.front().name;
      }
      if (!spec.find_mu(d.mu)) unresolved(path + "/mu", d.mu);
    } else if (c == "central_quotient" || c == "aut") {
      need_action("actGA", d.actGA);
    } else if (c == "trivial_mu") {
      need_action("actGA", d.actGA);
      need_group("R", d.R);
    } else if (c == "nilpotent") {
      need_group("A", d.A);
    } else if (c == "self") {
      need_group("G", d.G);
    } else if (c == "normal_inclusion") {
      need_group("G", d.G);
      auto const& s = d.subgroup;
      bool ok = (s.is_string() && (s == "center" || s == "commutator")) || s.is_array();
      if (s.is_array())
        for (auto const& x : s) ok = ok && is_elem_ref(x);
      if (!ok) shape(path + "/subgroup", "expected an element list, 'center' or 'commutator'");
    } else {
      throw Error(ErrorKind::UnknownConstructor, path + "/construction: unknown construction '" + c + "'");
    }
    spec.bimodule = std::move(d);
  }

  if (doc.contains("lattice")) {
    auto const& v = doc["lattice"];
    std::string const path = "/lattice";
    if (!v.is_object()) shape(path, "expected an object");
    LatticeDecl d;
    d.rank = get_count(member(v, "rank", path), path + "/rank");
    auto const& gens = member(v, "generators", path);
    if (!gens.is_array()) shape(path + "/generators", "expected an array of names");
    for (auto const& g : gens) {
      if (!g.is_string()) shape(path + "/generators", "expected an array of names");
      d.generators.push_back(g.get<std::string>());
    }
    auto const& mats = member(v, "matrices", path);
    auto read_matrix = [&](json const& m, std::string const& p) {
      std::vector<std::vector<std::int64_t>> out;
      if (!m.is_array()) shape(p, "expected a matrix");
      for (auto const& row : m) {
        if (!row.is_array()) shape(p, "expected a matrix");
        std::vector<std::int64_t> r;
        for (auto const& x : row) {
          if (!x.is_number_integer()) shape(p, "entries must be integers");
          r.push_back(x.get<std::int64_t>());
        }
        out.push_back(std::move(r));
      }
      return out;
    };
    if (mats.is_object()) {
      for (auto const& g : d.generators) {
        if (!mats.contains(g)) shape(path + "/matrices", "missing matrix for '" + g + "'");
        d.matrices.push_back(read_matrix(mats[g], path + "/matrices/" + g));
      }
      for (auto const& [g, _] : mats.items())
        if (std::find(d.generators.begin(), d.generators.end(), g) == d.generators.end())
          unresolved(path + "/matrices", g);
    } else if (mats.is_array()) {
      for (std::size_t i = 0; i < mats.size(); ++i)
        d.matrices.push_back(read_matrix(mats[i], path + "/matrices/" + std::to_string(i)));
    } else {
      shape(path + "/matrices", "expected an object or array");
    }
    auto const& rels = member(v, "relators", path);
    if (!rels.is_array()) shape(path + "/relators", "expected an array of words");
    for (auto const& r : rels) {
      if (!r.is_string()) shape(path + "/relators", "expected an array of words");
      d.relators.push_back(r.get<std::string>());
    }
    if (v.contains("crosscheck")) {
      auto const& cc = v["crosscheck"];
      if (!cc.is_array()) shape(path + "/crosscheck", "expected an array of moduli");
      for (std::size_t i = 0; i < cc.size(); ++i)
        d.crosscheck.push_back(get_count(cc[i], path + "/crosscheck/" + std::to_string(i)));
    }
    spec.lattice = std::move(d);
  }

  if (doc.contains("task")) {
    if (!doc["task"].is_string()) shape("/task", "expected a string");
    spec.task = doc["task"].get<std::string>();
    if (!is_task(spec.task)) throw Error(ErrorKind::UnknownTask, "/task: unknown task '" + spec.task + "'");
  }

  if (doc.contains("bounds")) {
    auto const& b = doc["bounds"];
    if (!b.is_object()) shape("/bounds", "expected an object");
    for (auto const& [key, v] : b.items()) {
      std::string p = "/bounds/" + key;
      if (key == "max_der") spec.bounds.max_der = get_count(v, p);
      else if (key == "max_assignments") spec.bounds.max_assignments = get_count(v, p);
      else if (key == "max_aut") spec.bounds.max_aut = get_count(v, p);
      else if (key == "threads") spec.bounds.threads = unsigned(get_count(v, p));
      else if (key == "seed") spec.bounds.seed = get_count(v, p);
      else shape(p, "unknown bound");
    }
  }
  return spec;
}

/// Canonical JSON form; parse_instance(emit_instance(s).dump()) == s.
inline json emit_instance(InstanceSpec const& spec) {
  json doc;
  if (!spec.groups.empty()) {
    json gs = json::object();
    for (auto const& g : spec.groups) {
      json v;
      if (!g.constructor.empty()) {
        json c = json::array({g.constructor});
        for (auto const& p : g.params) c.push_back(p);
        v["constructor"] = c;
      } else {
        v["table"] = g.table;
        if (!g.labels.empty()) v["labels"] = g.labels;
      }
      gs[g.name] = v;
    }
    doc["groups"] = gs;
  }
  if (!spec.actions.empty()) {
    json as = json::object();
    for (auto const& a : spec.actions) {
      json v;
      v["actor"] = a.actor;
      v["target"] = a.target;
      if (a.kind == "named") v["named"] = a.named;
      else if (a.kind == "table") v["table"] = a.table;
      else v["generators"] = a.generators;
      as[a.name] = v;
    }
    doc["actions"] = as;
  }
  if (!spec.mus.empty()) {
    json ms = json::object();
    for (auto const& m : spec.mus) {
      json v;
      if (!m.domain.empty()) v["domain"] = m.domain;
      if (!m.codomain.empty()) v["codomain"] = m.codomain;
      if (m.kind == "map") v["map"] = m.map;
      else v["named"] = m.named;
      ms[m.name] = v;
    }
    doc["mu"] = ms;
  }
  if (spec.bimodule) {
    auto const& b = *spec.bimodule;
    json v = json::object();
    auto put = [&](char const* key, std::string const& val) {
      if (!val.empty()) v[key] = val;
    };
    put("construction", b.construction);
    put("G", b.G);
    put("R", b.R);
    put("A", b.A);
    put("actGA", b.actGA);
    put("actGR", b.actGR);
    put("actRA", b.actRA);
    put("actRG", b.actRG);
    put("mu", b.mu);
    if (!b.subgroup.is_null()) v["subgroup"] = b.subgroup;
    if (b.restrict) v["restrict"] = true;
    doc["bimodule"] = v;
  }
  if (spec.lattice) {
    auto const& l = *spec.lattice;
    json v;
    v["rank"] = l.rank;
    v["generators"] = l.generators;
    json mats = json::object();
    for (std::size_t i = 0; i < l.generators.size() && i < l.matrices.size(); ++i) mats[l.generators[i]] = l.matrices[i];
    if (l.matrices.size() == l.generators.size())
      v["matrices"] = mats;
    else
      v["matrices"] = l.matrices;
    v["relators"] = l.relators;
    if (!l.crosscheck.empty()) v["crosscheck"] = l.crosscheck;
    doc["lattice"] = v;
  }
  doc["task"] = spec.task;
  Bounds const defaults;
  json b = json::object();
  if (spec.bounds.max_der != defaults.max_der) b["max_der"] = spec.bounds.max_der;
  if (spec.bounds.max_assignments != defaults.max_assignments) b["max_assignments"] = spec.bounds.max_assignments;
  if (spec.bounds.max_aut != defaults.max_aut) b["max_aut"] = spec.bounds.max_aut;
  if (spec.bounds.threads != defaults.threads) b["threads"] = spec.bounds.threads;
  if (spec.bounds.seed != defaults.seed) b["seed"] = spec.bounds.seed;
  if (!b.empty()) doc["bounds"] = b;
  return doc;
}

}  // namespace nacoh
