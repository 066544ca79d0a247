#pragma once

// Left actions by automorphisms, stored elementwise: table[g][x] = ^g x.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "nacoh/check.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

struct Action {
  GroupPtr actor;
  GroupPtr target;
  Table table;

  Elem operator()(Elem g, Elem x) const { return table[g][x]; }
};

namespace detail {

inline void check_action_shape(FiniteGroup const& actor, FiniteGroup const& target,
                               Table const& table) {
  if (table.size() != actor.order())
    throw Error(ErrorKind::ShapeMismatch,
                cat("action table has ", table.size(), " rows, actor order is ", actor.order()));
  for (std::size_t g = 0; g < table.size(); ++g) {
    if (table[g].size() != target.order())
      throw Error(ErrorKind::ShapeMismatch, cat("action row ", g, " has wrong length"),
                  {std::int64_t(g)});
    for (Elem x : table[g])
      if (x >= target.order())
        throw Error(ErrorKind::ShapeMismatch, cat("action row ", g, " out of range"),
                    {std::int64_t(g)});
  }
}

inline bool is_automorphism(FiniteGroup const& target, std::vector<Elem> const& p) {
  std::vector<char> hit(target.order(), 0);
  for (Elem y : p) {
    if (hit[y]) return false;
    hit[y] = 1;
  }
  for (Elem x = 0; x < target.order(); ++x)
    for (Elem y = 0; y < target.order(); ++y)
      if (p[target.mul(x, y)] != target.mul(p[x], p[y])) return false;
  return true;
}

}  // namespace detail

/// Verifies all three action axioms exhaustively.
inline Action validate_action(GroupPtr actor, GroupPtr target, Table table) {
  detail::check_action_shape(*actor, *target, table);
  for (Elem x = 0; x < target->order(); ++x)
    if (table[actor->identity()][x] != x)
      throw Error(ErrorKind::IdentityNotFixed, detail::cat("identity moves ", x), {x});
  for (Elem g = 0; g < actor->order(); ++g)
    if (!detail::is_automorphism(*target, table[g]))
      throw Error(ErrorKind::NotAutomorphism,
                  detail::cat("actor element ", g, " is not an automorphism"), {g});
  for (Elem g = 0; g < actor->order(); ++g)
    for (Elem h = 0; h < actor->order(); ++h) {
      auto const& gh = table[actor->mul(g, h)];
      for (Elem x = 0; x < target->order(); ++x)
        if (gh[x] != table[g][table[h][x]])
          throw Error(ErrorKind::NotHomomorphic,
                      detail::cat("^(", g, "*", h, ") != ^", g, " o ^", h), {g, h});
    }
  return Action{std::move(actor), std::move(target), std::move(table)};
}

inline Action trivial_action(GroupPtr const& actor, GroupPtr const& target) {
  std::vector<Elem> id(target->order());
  for (Elem x = 0; x < id.size(); ++x) id[x] = x;
  return Action{actor, target, Table(actor->order(), id)};
}

/// ^g x = g x g^-1
inline Action conjugation_action(GroupPtr const& g) {
  Table t(g->order(), std::vector<Elem>(g->order()));
  for (Elem a = 0; a < g->order(); ++a)
    for (Elem x = 0; x < g->order(); ++x) t[a][x] = g->conj(a, x);
  return Action{g, g, std::move(t)};
}

/// Pulls an action back along f: ^h x = ^{f(h)} x.
inline Action pullback(Action const& act, Homomorphism const& f) {
  Table t(f.dom->order());
  for (Elem h = 0; h < f.dom->order(); ++h) t[h] = act.table[f(h)];
  return Action{f.dom, act.target, std::move(t)};
}

/// Expands permutations assigned to some actor elements (typically
/// generators) to a full table along the Cayley graph, using
/// table[g s] = table[g] o table[s]. Inconsistent assignments raise
/// NotHomomorphic; the result is validated.
inline Action expand_action(GroupPtr const& actor, GroupPtr const& target,
                            std::map<Elem, std::vector<Elem>> const& assigned) {
  std::vector<Elem> gens;
  for (auto const& [g, perm] : assigned) {
    if (g >= actor->order()) throw Error(ErrorKind::ShapeMismatch, "generator index out of range");
    if (perm.size() != target->order())
      throw Error(ErrorKind::ShapeMismatch, "generator image has wrong length", {g});
    for (Elem x : perm)
      if (x >= target->order()) throw Error(ErrorKind::ShapeMismatch, "generator image out of range", {g});
    gens.push_back(g);
  }
  if (generated_subgroup(actor, gens).size() != actor->order())
    throw Error(ErrorKind::NotGenerating, "assigned elements do not generate the actor");

  std::vector<std::optional<std::vector<Elem>>> table(actor->order());
  std::vector<Elem> id(target->order());
  for (Elem x = 0; x < id.size(); ++x) id[x] = x;
  table[actor->identity()] = id;
  std::deque<Elem> queue{actor->identity()};
  while (!queue.empty()) {
    Elem g = queue.front();
    queue.pop_front();
    for (auto const& [s, perm] : assigned) {
      std::vector<Elem> composed(target->order());
      for (Elem x = 0; x < target->order(); ++x) composed[x] = (*table[g])[perm[x]];
      Elem gs = actor->mul(g, s);
      if (!table[gs]) {
        table[gs] = std::move(composed);
        queue.push_back(gs);
      } else if (*table[gs] != composed) {
        throw Error(ErrorKind::NotHomomorphic,
                    detail::cat("generator assignment is inconsistent at ", g, "*", s), {g, s});
      }
    }
  }
  Table full(actor->order());
  for (Elem g = 0; g < actor->order(); ++g) full[g] = std::move(*table[g]);
  return validate_action(actor, target, std::move(full));
}

/// Abelian target; elements outside `kernel` act by inversion. `kernel`
/// must have index 1 or 2.
inline Action inversion_action(GroupPtr const& actor, GroupPtr const& target,
                               Subgroup const& kernel) {
  if (!target->is_abelian())
    throw Error(ErrorKind::NotAbelian, "inversion acts by automorphisms only on abelian targets");
  if (kernel.size() * 2 != actor->order() && kernel.size() != actor->order())
    throw Error(ErrorKind::ParamOutOfRange, "inversion kernel must have index 1 or 2");
  Table t(actor->order(), std::vector<Elem>(target->order()));
  for (Elem g = 0; g < actor->order(); ++g)
    for (Elem x = 0; x < target->order(); ++x)
      t[g][x] = kernel.contains(g) ? x : target->inv(x);
  return validate_action(actor, target, std::move(t));
}

/// H^0: the elements of the target fixed by every actor element.
inline Subgroup fixed_points(Action const& act) {
  Subgroup h{act.target, {}};
  for (Elem x = 0; x < act.target->order(); ++x) {
    bool fixed = true;
    for (Elem g = 0; g < act.actor->order() && fixed; ++g) fixed = act(g, x) == x;
    if (fixed) h.elements.push_back(x);
  }
  return h;
}

/// Two groups acting on each other:
///   ^(^r g) s = ^r ^g ^(r^-1) s   for r, s in R, g in G
///   ^(^g r) h = ^g ^r ^(g^-1) h   for g, h in G, r in R
/// Each group acts on itself by conjugation.
inline Report check_mutual_compatibility(Action const& act_gr, Action const& act_rg) {
  auto const& g = *act_gr.actor;
  auto const& r = *act_gr.target;
  Report rep;
  Check c1 = pass("mutual_R_side");
  for (Elem ri = 0; ri < r.order() && c1.ok; ++ri)
    for (Elem gi = 0; gi < g.order() && c1.ok; ++gi)
      for (Elem s = 0; s < r.order() && c1.ok; ++s) {
        Elem lhs = act_gr(act_rg(ri, gi), s);
        Elem rhs = r.conj(ri, act_gr(gi, r.conj(r.inv(ri), s)));
        if (lhs != rhs) c1 = fail("mutual_R_side", {ri, gi, s}, "^(^r g) s != ^(r g r^-1) s");
      }
  rep.add(c1);
  Check c2 = pass("mutual_G_side");
  for (Elem gi = 0; gi < g.order() && c2.ok; ++gi)
    for (Elem ri = 0; ri < r.order() && c2.ok; ++ri)
      for (Elem h = 0; h < g.order() && c2.ok; ++h) {
        Elem lhs = act_rg(act_gr(gi, ri), h);
        Elem rhs = g.conj(gi, act_rg(ri, g.conj(g.inv(gi), h)));
        if (lhs != rhs) c2 = fail("mutual_G_side", {gi, ri, h}, "^(^g r) h != ^(g r g^-1) h");
      }
  rep.add(c2);
  return rep;
}

/// G and R acting on A compatibly:
///   ^(^r g) a = ^r ^g ^(r^-1) a   and   ^(^g r) a = ^g ^r ^(g^-1) a.
inline Report check_joint_compatibility_on_A(Action const& act_ga, Action const& act_ra,
                                             Action const& act_gr, Action const& act_rg) {
  auto const& g = *act_ga.actor;
  auto const& r = *act_ra.actor;
  auto const& a = *act_ga.target;
  Report rep;
  Check c1 = pass("joint_R_conjugates_G");
  for (Elem ri = 0; ri < r.order() && c1.ok; ++ri)
    for (Elem gi = 0; gi < g.order() && c1.ok; ++gi)
      for (Elem x = 0; x < a.order() && c1.ok; ++x) {
        Elem lhs = act_ga(act_rg(ri, gi), x);
        Elem rhs = act_ra(ri, act_ga(gi, act_ra(r.inv(ri), x)));
        if (lhs != rhs) c1 = fail("joint_R_conjugates_G", {ri, gi, x}, "^(^r g) a != ^(r g r^-1) a");
      }
  rep.add(c1);
  Check c2 = pass("joint_G_conjugates_R");
  for (Elem gi = 0; gi < g.order() && c2.ok; ++gi)
    for (Elem ri = 0; ri < r.order() && c2.ok; ++ri)
      for (Elem x = 0; x < a.order() && c2.ok; ++x) {
        Elem lhs = act_ra(act_gr(gi, ri), x);
        Elem rhs = act_ga(gi, act_ra(ri, act_ga(g.inv(gi), x)));
        if (lhs != rhs) c2 = fail("joint_G_conjugates_R", {gi, ri, x}, "^(^g r) a != ^(g r g^-1) a");
      }
  rep.add(c2);
  return rep;
}

}  // namespace nacoh
