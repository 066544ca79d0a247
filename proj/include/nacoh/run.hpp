#pragma once

// Building an instance from its declarations and running a task on it.

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/automorphism.hpp"
#include "nacoh/catalog.hpp"
#include "nacoh/cohomology.hpp"
#include "nacoh/crossed_module.hpp"
#include "nacoh/derivation.hpp"
#include "nacoh/instance.hpp"
#include "nacoh/lattice.hpp"

namespace nacoh {

inline constexpr char version[] = "0.1.0";

struct RunOptions {
  std::optional<std::string> task;   // overrides the file
  bool lattice = false;              // h1 on the lattice section
  bool cayley = false;               // include the H^1 Cayley table
  std::optional<std::uint64_t> max_der;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
};

struct RunResult {
  json report;
  int exit_code = 0;
};

/// Semantic objects of an instance, built in declaration order.
struct BuiltInstance {
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, Quotient> quotients;   // groups declared as quotients, with their parent
  std::map<std::string, std::string> quotient_parent;
  std::map<std::string, AutGroup> auts;
  std::map<std::string, std::string> aut_parent;
  std::map<std::string, Action> actions;
  std::optional<Bimodule> bimodule;
  std::optional<Action> act_rg;
  Report validation;
  std::optional<IntRep> lattice;
};

namespace detail {

inline Elem resolve_elem(FiniteGroup const& g, json const& v, std::string const& where) {
  if (v.is_string()) {
    if (auto e = g.find_label(v.get<std::string>())) return *e;
    throw Error(ErrorKind::UnresolvedReference, where + ": no element labelled '" + v.get<std::string>() + "'");
  }
  auto x = v.get<std::uint64_t>();
  if (x >= g.order()) throw Error(ErrorKind::ShapeMismatch, cat(where, ": element ", x, " out of range"));
  return Elem(x);
}

/// Nontrivial homomorphisms G -> Z/2, as kernels, in canonical order.
inline std::vector<Subgroup> index_two_kernels(GroupPtr const& g, DerOptions const& opts) {
  auto homs = enumerate_crossed_homs(trivial_action(g, catalog::cyclic(2)), opts);
  std::vector<Subgroup> out;
  for (auto const& h : homs) {
    std::vector<Elem> k;
    for (Elem x = 0; x < h.size(); ++x)
      if (h[x] == 0) k.push_back(x);
    if (k.size() != g->order()) out.push_back(Subgroup{g, k});
  }
  return out;
}

class Builder {
 public:
  Builder(InstanceSpec const& spec, BuiltInstance& out, DerOptions const& der) : spec_(spec), out_(out), der_(der) {}

  GroupPtr group_expr(json const& v, std::string const& where) {
    if (v.is_string()) return out_.groups.at(v.get<std::string>());
    json rest = json::array();
    for (std::size_t i = 1; i < v.size(); ++i) rest.push_back(v[i]);
    return construct(v[0].get<std::string>(), rest, where, {});
  }

  GroupPtr construct(std::string const& ctor, json const& p, std::string const& where, std::string const& name) {
    auto num = [&](std::size_t i) { return std::size_t(p[i].get<std::uint64_t>()); };
    if (ctor == "trivial") return catalog::cyclic(1);
    if (ctor == "cyclic") return catalog::cyclic(num(0));
    if (ctor == "dihedral") return catalog::dihedral(num(0));
    if (ctor == "symmetric") return catalog::symmetric(num(0));
    if (ctor == "heisenberg") return catalog::heisenberg(num(0));
    if (ctor == "elementary_abelian") return catalog::elementary_abelian(num(0), num(1));
    if (ctor == "quaternion" || ctor == "quaternion8") {
      if (!p.empty() && num(0) != 8)
        throw Error(ErrorKind::ParamOutOfRange, where + ": only the quaternion group of order 8 is available");
      return catalog::quaternion8();
    }
    if (ctor == "product") {
      GroupPtr g = group_expr(p[0], where);
      for (std::size_t i = 1; i < p.size(); ++i) g = direct_product(*g, *group_expr(p[i], where));
      return g;
    }
    if (ctor == "quotient") {
      GroupPtr parent = group_expr(p[0], where);
      auto n = p[1] == "center" ? center(parent) : commutator_subgroup(parent);
      auto q = quotient(parent, n);
      if (!name.empty() && p[0].is_string()) {
        out_.quotients.emplace(name, q);
        out_.quotient_parent[name] = p[0].get<std::string>();
      }
      return q.group;
    }
    if (ctor == "automorphisms") {
      GroupPtr base = group_expr(p[0], where);
      auto aut = automorphism_group(base, spec_.bounds.max_aut);
      if (!name.empty() && p[0].is_string()) {
        out_.aut_parent[name] = p[0].get<std::string>();
        out_.auts.emplace(name, aut);
      }
      return aut.group;
    }
    throw Error(ErrorKind::UnknownConstructor, where + ": unknown constructor '" + ctor + "'");
  }

  void groups() {
    for (auto const& d : spec_.groups) {
      std::string where = "/groups/" + d.name;
      GroupPtr g = d.constructor.empty() ? validate_group(d.table, d.labels, assoc()) : construct(d.constructor, d.params, where, d.name);
      out_.groups[d.name] = g;
    }
  }

  Action action(ActionDecl const& d) {
    std::string const where = "/actions/" + d.name;
    auto const& G = out_.groups.at(d.actor);
    auto const& A = out_.groups.at(d.target);
    if (d.kind == "table") return validate_action(G, A, d.table);
    if (d.kind == "generators") {
      std::map<Elem, std::vector<Elem>> assigned;
      for (auto const& [key, img] : d.generators.items()) {
        json k = key;
        if (!G->find_label(key) && !key.empty() && std::all_of(key.begin(), key.end(), ::isdigit))
          k = std::stoull(key);
        Elem g = resolve_elem(*G, k, where + "/generators");
        std::vector<Elem> perm;
        for (auto const& x : img) perm.push_back(resolve_elem(*A, x, where + "/generators/" + key));
        assigned[g] = std::move(perm);
      }
      return expand_action(G, A, assigned);
    }
    if (d.named == "trivial") return trivial_action(G, A);
    if (d.named == "conjugation") return conjugation(d, G, A, where);
    if (d.named == "natural") {
      auto it = out_.auts.find(d.actor);
      if (it == out_.auts.end() || out_.aut_parent.at(d.actor) != d.target)
        throw Error(ErrorKind::ShapeMismatch, where + ": 'natural' needs actor = automorphisms(target)");
      return it->second.action;
    }
    // inversion / sign
    auto kernels = index_two_kernels(G, der_);
    if (kernels.empty())
      throw Error(ErrorKind::NoCharacter, where + ": the actor has no homomorphism onto Z/2");
    if (d.named == "sign" && kernels.size() != 1)
      throw Error(ErrorKind::NoCharacter, cat(where, ": the actor has ", kernels.size(), " characters onto Z/2, 'sign' needs exactly one"));
    return inversion_action(G, A, kernels.front());
  }

  /// Conjugation of a group on itself (or on a copy with the same table),
  /// of G on a quotient G/N, or of A/Z(A) on A through coset representatives.
  Action conjugation(ActionDecl const& d, GroupPtr const& G, GroupPtr const& A, std::string const& where) {
    if (G == A) return conjugation_action(G);
    if (G->table() == A->table()) return validate_action(G, A, conjugation_action(G).table);
    if (auto q = out_.quotients.find(d.target); q != out_.quotients.end() && out_.quotient_parent[d.target] == d.actor) {
      Table t(G->order(), std::vector<Elem>(A->order()));
      for (Elem g = 0; g < G->order(); ++g)
        for (Elem c = 0; c < A->order(); ++c) t[g][c] = q->second.projection(G->conj(g, q->second.cosets[c].front()));
      return validate_action(G, A, std::move(t));
    }
    if (auto q = out_.quotients.find(d.actor); q != out_.quotients.end() && out_.quotient_parent[d.actor] == d.target) {
      Table t(G->order(), std::vector<Elem>(A->order()));
      for (Elem c = 0; c < G->order(); ++c)
        for (Elem b = 0; b < A->order(); ++b) {
          t[c][b] = A->conj(q->second.cosets[c].front(), b);
          for (Elem rep : q->second.cosets[c])
            if (A->conj(rep, b) != t[c][b])
              throw Error(ErrorKind::WellDefinednessFailure, where + ": conjugation depends on the coset representative", {c, rep, b});
        }
      return validate_action(G, A, std::move(t));
    }
    throw Error(ErrorKind::ShapeMismatch, where + ": conjugation needs actor = target or a quotient relation between them");
  }

  void actions() {
    for (auto const& d : spec_.actions) out_.actions.emplace(d.name, action(d));
  }

  Homomorphism mu(MuDecl const& d, std::string const& dom_name, std::string const& cod_name) {
    std::string const where = "/mu/" + d.name;
    auto const& dom = out_.groups.at(dom_name);
    auto const& cod = out_.groups.at(cod_name);
    if (d.kind == "map") {
      if (d.map.size() != dom->order()) throw Error(ErrorKind::ShapeMismatch, where + ": map needs one image per element");
      std::vector<Elem> m;
      for (auto const& x : d.map) m.push_back(resolve_elem(*cod, x, where + "/map"));
      return validate_homomorphism(dom, cod, std::move(m));
    }
    if (d.named == "trivial") return trivial_hom(dom, cod);
    if (d.named == "identity") {
      if (dom != cod) throw Error(ErrorKind::ShapeMismatch, where + ": identity needs domain = codomain");
      return identity_hom(dom);
    }
    if (d.named == "canonical-projection") {
      auto q = out_.quotients.find(cod_name);
      if (q == out_.quotients.end() || out_.quotient_parent[cod_name] != dom_name)
        throw Error(ErrorKind::ShapeMismatch, where + ": canonical-projection needs codomain = quotient(domain, ...)");
      return q->second.projection;
    }
    // inner
    auto a = out_.auts.find(cod_name);
    if (a == out_.auts.end() || out_.aut_parent[cod_name] != dom_name)
      throw Error(ErrorKind::ShapeMismatch, where + ": inner needs codomain = automorphisms(domain)");
    std::vector<Elem> m(dom->order());
    for (Elem x = 0; x < dom->order(); ++x) {
      std::vector<Elem> c(dom->order());
      for (Elem y = 0; y < dom->order(); ++y) c[y] = dom->conj(x, y);
      m[x] = *a->second.index_of(c);
    }
    return validate_homomorphism(dom, cod, std::move(m));
  }

  void bimodule() {
    if (!spec_.bimodule) return;
    auto const& d = *spec_.bimodule;
    auto& v = out_.validation;
    auto const& c = d.construction;
    std::optional<Bimodule> b;
    std::optional<Action> rg;
    auto conj_rg = [&](GroupPtr const& g) { rg = conjugation_action(g); };
    if (c.empty()) {
      auto const& md = *spec_.find_mu(d.mu);
      auto m = mu(md, md.domain.empty() ? d.A : md.domain, md.codomain.empty() ? d.R : md.codomain);
      auto cm = step("precrossed_module", [&] {
        return validate_precrossed_module(out_.groups.at(d.R), out_.groups.at(d.A), m, out_.actions.at(d.actRA));
      });
      if (!cm) return;
      b = step("bimodule", [&] {
        return validate_bimodule(out_.groups.at(d.G), *cm, out_.actions.at(d.actGA), out_.actions.at(d.actGR));
      });
    } else if (c == "central_quotient") {
      b = step("central_quotient", [&] { return build_central_quotient_bimodule(out_.actions.at(d.actGA)); });
    } else if (c == "aut") {
      auto ab = step("aut", [&] { return build_aut_bimodule(out_.actions.at(d.actGA), spec_.bounds.max_aut); });
      if (ab) {
        v.append(ab->checks);
        b = ab->bimodule;
      }
    } else if (c == "trivial_mu") {
      b = step("trivial_mu", [&] { return trivial_mu_bimodule(out_.actions.at(d.actGA), out_.groups.at(d.R)); });
    } else if (c == "nilpotent") {
      b = step("nilpotent", [&] { return as_bimodule(build_nilpotent_example(out_.groups.at(d.A))); });
      if (b) conj_rg(b->G);
    } else if (c == "self") {
      b = step("self", [&] { return as_bimodule(self_crossed_module(out_.groups.at(d.G))); });
      if (b) conj_rg(b->G);
    } else if (c == "normal_inclusion") {
      auto const& G = out_.groups.at(d.G);
      Subgroup n;
      if (d.subgroup == "center") {
        n = center(G);
      } else if (d.subgroup == "commutator") {
        n = commutator_subgroup(G);
      } else {
        std::vector<Elem> e;
        for (auto const& x : d.subgroup) e.push_back(resolve_elem(*G, x, "/bimodule/subgroup"));
        n = make_subgroup(G, e);
      }
      b = step("normal_inclusion", [&] { return as_bimodule(normal_inclusion_crossed_module(n)); });
      if (b) conj_rg(b->G);
    }
    if (!b) return;
    v.append(bimodule_checks(*b));
    if (!d.actRG.empty()) rg = out_.actions.at(d.actRG);
    if (d.restrict) {
      b = step("restrict_to_image", [&] { return restrict_to_image(*b); });
      rg.reset();
      if (!b) return;
    }
    out_.bimodule = std::move(b);
    out_.act_rg = std::move(rg);
  }

  void lattice() {
    if (!spec_.lattice) return;
    auto const& l = *spec_.lattice;
    std::vector<IntMatrix> rho;
    for (auto const& m : l.matrices) {
      IntMatrix x(m.size(), m.empty() ? 0 : m.front().size());
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != x.cols()) throw Error(ErrorKind::ShapeMismatch, "/lattice/matrices: ragged matrix");
        for (std::size_t j = 0; j < m[i].size(); ++j) x(i, j) = m[i][j];
      }
      rho.push_back(std::move(x));
    }
    std::vector<Word> rels;
    for (auto const& r : l.relators) rels.push_back(parse_word(r, l.generators));
    out_.lattice = make_int_rep(l.rank, l.generators, std::move(rho), std::move(rels));
  }

 private:
  AssocCheck assoc() const {
    AssocCheck a;
    a.seed = spec_.bounds.seed;
    return a;
  }

  /// Runs a validating constructor, recording pass or the thrown failure.
  template <class F>
  auto step(std::string const& name, F&& f) -> std::optional<decltype(f())> {
    try {
      auto r = f();
      out_.validation.add(pass(name));
      return r;
    } catch (Error const& e) {
      out_.validation.add(fail(name, e.witness(), e.what()));
      return std::nullopt;
    }
  }

  InstanceSpec const& spec_;
  BuiltInstance& out_;
  DerOptions der_;
};

inline json witness_json(std::vector<std::int64_t> const& w) { return json(w); }

inline json report_json(Report const& r) {
  json checks = json::array();
  for (auto const& c : r.checks) {
    json j;
    j["name"] = c.name;
    j["ok"] = c.ok;
    if (!c.ok) {
      j["witness"] = c.witness;
      if (!c.detail.empty()) j["detail"] = c.detail;
    }
    checks.push_back(j);
  }
  json out;
  out["ok"] = r.ok();
  out["checks"] = checks;
  return out;
}

inline json descriptor_json(GroupDescriptor const& d) {
  json j;
  j["order"] = d.order;
  j["abelian"] = d.is_abelian;
  j["abelian_invariants"] = d.abelian_invariants;
  j["exponent"] = d.exponent;
  return j;
}

inline json derivation_json(Bimodule const& b, Derivation const& d) {
  json alpha = json::array();
  for (Elem a : d.alpha) alpha.push_back(b.A()->label(a));
  json j;
  j["alpha"] = alpha;
  j["r"] = b.R()->label(d.r);
  return j;
}

inline json fg_json(FgAbelianGroup const& g) {
  json j;
  j["invariant_factors"] = g.invariant_factors;
  j["free_rank"] = g.free_rank;
  return j;
}

}  // namespace detail

inline BuiltInstance build_instance(InstanceSpec const& spec, DerOptions const& der = {}) {
  BuiltInstance out;
  detail::Builder b(spec, out, der);
  b.groups();
  b.actions();
  b.bimodule();
  b.lattice();
  return out;
}

/// Runs the task and assembles the report. Failures inside the pipeline are
/// reported with their kind and witness and give exit code 1.
inline RunResult run_task(InstanceSpec const& spec, RunOptions const& ro = {}) {
  using detail::report_json;
  auto const t0 = std::chrono::steady_clock::now();
  std::string const task = ro.task.value_or(spec.task);
  if (!is_task(task)) throw Error(ErrorKind::UnknownTask, "unknown task '" + task + "'");

  CohOptions co;
  co.der.max_der = ro.max_der.value_or(spec.bounds.max_der);
  co.der.max_assignments = spec.bounds.max_assignments;
  co.der.threads = ro.threads.value_or(spec.bounds.threads);
  co.der.assoc.seed = ro.seed.value_or(spec.bounds.seed);
  co.seed = co.der.assoc.seed;

  RunResult res;
  json& rep = res.report;
  rep["task"] = task;
  rep["ok"] = true;
  bool ok = true;

  bool const want_lattice = spec.lattice && (ro.lattice || !spec.bimodule) && (task == "h1" || task == "report");
  bool const all = task == "report";

  try {
    auto built = build_instance(spec, co.der);
    if (spec.bimodule) {
      rep["validation"] = report_json(built.validation);
      ok = ok && built.validation.ok();
    }
    if (built.bimodule && !(ro.lattice && task == "h1")) {
      auto const& b = *built.bimodule;
      if (task == "classify" || all) {
        auto c = classify_crossedness(b.base);
        json j;
        j["level"] = to_string(c.level);
        auto wit = [&](std::optional<std::pair<Elem, Elem>> const& w) -> json {
          if (!w) return nullptr;
          json x;
          x["a"] = b.A()->label(w->first);
          x["b"] = b.A()->label(w->second);
          x["indices"] = {w->first, w->second};
          return x;
        };
        j["peiffer_witness"] = wit(c.peiffer_witness);
        j["partial_witness"] = wit(c.partial_witness);
        rep["crossedness"] = j;
      }
      if (task == "der" || all) {
        if (built.act_rg) {
          auto dr = verify_der_bimodule(b, *built.act_rg, co.der);
          if (dr.der) rep["der_order"] = dr.der->size();
          rep["der_bimodule"] = report_json(dr.report);
          ok = ok && dr.report.ok();
        } else {
          rep["der_order"] = enumerate_derivations(b, co.der)->size();
        }
      }
      if (task == "h0" || all) {
        auto h0 = fixed_points(b.act_gr);
        json labels = json::array();
        for (Elem r : h0.elements) labels.push_back(b.R()->label(r));
        json j;
        j["order"] = h0.size();
        j["elements"] = labels;
        j["normal"] = is_normal(h0);
        rep["h0"] = j;
      }
      if (task == "h1" || all) {
        auto h = h1(b, co);
        if (!rep.contains("der_order")) rep["der_order"] = h.der->size();
        rep["thm32"] = report_json(*h.thm32);
        json j;
        j["class_count"] = h.class_count();
        j["is_group"] = h.group.has_value();
        j["descriptor"] = h.group ? detail::descriptor_json(h.group->descriptor) : json(nullptr);
        json reps = json::array();
        for (Elem r : h.representatives) {
          json x = detail::derivation_json(b, (*h.der)[r]);
          x["index"] = r;
          reps.push_back(x);
        }
        j["representatives"] = reps;
        j["classes"] = h.classes;
        j["relation"] = report_json(h.relation);
        if (ro.cayley && h.group) j["cayley"] = h.group->group->table();
        rep["h1"] = j;
        ok = ok && h.relation.ok();
      }
    }
    if (want_lattice) {
      auto const& r = *built.lattice;
      auto basis = derivation_lattice(r);
      auto g = lattice_quotient(basis, principal_lattice(r));
      json j = detail::fg_json(g);
      j["rank"] = r.rank;
      j["derivation_rank"] = basis.cols();
      json cc = json::array();
      for (auto m : spec.lattice->crosscheck) {
        auto x = crosscheck_finite(r, m, co);
        json c;
        c["modulus"] = m;
        c["group_order"] = x.group_order;
        c["lattice_mod_m"] = x.lattice_mod_m;
        c["finite"] = x.finite;
        c["coprime"] = x.coprime;
        c["equal"] = x.equal;
        c["embeds"] = x.embeds;
        cc.push_back(c);
        ok = ok && x.embeds;
      }
      if (!cc.empty()) j["crosscheck"] = cc;
      rep["lattice"] = j;
    } else if (ro.lattice && task == "h1") {
      throw Error(ErrorKind::ShapeMismatch, "--lattice needs a lattice section");
    }
  } catch (Error const& e) {
    json err;
    err["kind"] = to_string(e.kind());
    err["message"] = e.what();
    err["witness"] = e.witness();
    rep["error"] = err;
    ok = false;
  }
  rep["ok"] = ok;
  res.exit_code = ok ? 0 : 1;
  auto const ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep["timing"] = {{"total_ms", ms}};
  rep["version"] = version;
  return res;
}

/// Short human-readable rendering of a report.
inline std::string summarize(json const& rep) {
  std::ostringstream os;
  os << "task: " << rep.value("task", "") << "\n";
  if (rep.contains("validation")) {
    for (auto const& c : rep["validation"]["checks"]) {
      os << "  " << (c["ok"].get<bool>() ? "ok   " : "FAIL ") << c["name"].get<std::string>();
      if (!c["ok"].get<bool>()) os << " " << c["witness"].dump() << " " << c.value("detail", "");
      os << "\n";
    }
  }
  if (rep.contains("crossedness")) {
    auto const& c = rep["crossedness"];
    os << "crossedness: " << c["level"].get<std::string>();
    if (!c["peiffer_witness"].is_null())
      os << " (Peiffer fails at a=" << c["peiffer_witness"]["a"].get<std::string>()
         << ", b=" << c["peiffer_witness"]["b"].get<std::string>() << ")";
    os << "\n";
  }
  if (rep.contains("der_order")) os << "|Der| = " << rep["der_order"] << "\n";
  if (rep.contains("der_bimodule"))
    os << "Der bimodule: " << (rep["der_bimodule"]["ok"].get<bool>() ? "ok" : "FAIL") << "\n";
  if (rep.contains("h0")) os << "|H0| = " << rep["h0"]["order"] << (rep["h0"]["normal"].get<bool>() ? " (normal)" : " (not normal)") << "\n";
  if (rep.contains("thm32")) os << "group structure hypotheses: " << (rep["thm32"]["ok"].get<bool>() ? "hold" : "fail") << "\n";
  if (rep.contains("h1")) {
    auto const& h = rep["h1"];
    os << "|H1| = " << h["class_count"];
    if (!h["descriptor"].is_null()) {
      auto const& d = h["descriptor"];
      os << ", " << (d["abelian"].get<bool>() ? "abelian" : "non-abelian") << ", invariants " << d["abelian_invariants"].dump();
    } else {
      os << " (pointed set)";
    }
    os << "\n";
  }
  if (rep.contains("lattice")) {
    auto const& l = rep["lattice"];
    os << "H1 over Z: invariant factors " << l["invariant_factors"].dump() << ", free rank " << l["free_rank"] << "\n";
    if (l.contains("crosscheck"))
      for (auto const& c : l["crosscheck"])
        os << "  mod " << c["modulus"] << ": lattice " << c["lattice_mod_m"].dump() << ", finite " << c["finite"].dump()
           << (c["equal"].get<bool>() ? " (equal)" : " (differ)") << "\n";
  }
  if (rep.contains("error"))
    os << "error: " << rep["error"]["message"].get<std::string>() << " " << rep["error"]["witness"].dump() << "\n";
  os << (rep["ok"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace nacoh
