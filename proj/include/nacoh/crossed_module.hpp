#pragma once

// Precrossed, partially crossed and crossed modules, G-R-bimodules, and the
// canonical constructions: central quotient, automorphism group, class-two
// quotient, restriction to the image of mu.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/automorphism.hpp"
#include "nacoh/check.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

/// mu : A -> R with R acting on A.
struct CrossedModule {
  GroupPtr R;
  GroupPtr A;
  Homomorphism mu;
  Action act_ra;
};

/// A precrossed R-module (A, mu) together with G acting on A and on R.
struct Bimodule {
  GroupPtr G;
  CrossedModule base;
  Action act_ga;
  Action act_gr;

  GroupPtr const& R() const noexcept { return base.R; }
  GroupPtr const& A() const noexcept { return base.A; }
  Homomorphism const& mu() const noexcept { return base.mu; }
  Action const& act_ra() const noexcept { return base.act_ra; }
};

enum class CrossednessLevel { Precrossed = 0, PartiallyCrossed = 1, Crossed = 2 };

inline std::string_view to_string(CrossednessLevel l) {
  switch (l) {
    case CrossednessLevel::Precrossed: return "Precrossed";
    case CrossednessLevel::PartiallyCrossed: return "PartiallyCrossed";
    case CrossednessLevel::Crossed: return "Crossed";
  }
  return "?";
}

struct Crossedness {
  CrossednessLevel level = CrossednessLevel::Precrossed;
  std::optional<std::pair<Elem, Elem>> peiffer_witness;
  std::optional<std::pair<Elem, Elem>> partial_witness;
};

namespace detail {

inline void require_same(GroupPtr const& x, GroupPtr const& y, char const* what) {
  if (x != y) throw Error(ErrorKind::ShapeMismatch, what);
}

}  // namespace detail

inline std::optional<std::pair<Elem, Elem>> equivariance_witness(CrossedModule const& m) {
  for (Elem r = 0; r < m.R->order(); ++r)
    for (Elem a = 0; a < m.A->order(); ++a)
      if (m.mu(m.act_ra(r, a)) != m.R->conj(r, m.mu(a))) return std::pair{r, a};
  return std::nullopt;
}

/// Checks mu(^r a) = r mu(a) r^-1 for all r, a.
inline CrossedModule validate_precrossed_module(GroupPtr R, GroupPtr A, Homomorphism mu,
                                                Action act_ra) {
  detail::require_same(mu.dom, A, "mu must be defined on A");
  detail::require_same(mu.cod, R, "mu must take values in R");
  detail::require_same(act_ra.actor, R, "R-action has the wrong actor");
  detail::require_same(act_ra.target, A, "R-action has the wrong target");
  CrossedModule m{std::move(R), std::move(A), std::move(mu), std::move(act_ra)};
  if (auto w = equivariance_witness(m))
    throw Error(ErrorKind::NotEquivariant,
                detail::cat("mu(^r a) != r mu(a) r^-1 at r = ", w->first, ", a = ", w->second),
                {w->first, w->second});
  return m;
}

/// Exhaustive Peiffer scan ^{mu(a)} b = a b a^-1, and the same scan restricted
/// to a with mu(a) in [R, R].
inline Crossedness classify_crossedness(CrossedModule const& m) {
  Crossedness c;
  auto const comm = commutator_subgroup(m.R);
  for (Elem a = 0; a < m.A->order(); ++a) {
    bool const partial_relevant = comm.contains(m.mu(a));
    for (Elem b = 0; b < m.A->order(); ++b) {
      if (m.act_ra(m.mu(a), b) == m.A->conj(a, b)) continue;
      if (!c.peiffer_witness) c.peiffer_witness = std::pair{a, b};
      if (partial_relevant && !c.partial_witness) c.partial_witness = std::pair{a, b};
    }
  }
  c.level = c.peiffer_witness   ? (c.partial_witness ? CrossednessLevel::Precrossed
                                                     : CrossednessLevel::PartiallyCrossed)
                                : CrossednessLevel::Crossed;
  return c;
}

/// Non-throwing scan of the bimodule axioms; used for reports.
inline Report bimodule_checks(Bimodule const& b) {
  Report rep;
  auto const& m = b.base;
  if (auto w = equivariance_witness(m))
    rep.add(fail("R_equivariance", {w->first, w->second}, "mu(^r a) != r mu(a) r^-1"));
  else
    rep.add(pass("R_equivariance"));

  Check gh = pass("mu_G_equivariant");
  for (Elem g = 0; g < b.G->order() && gh.ok; ++g)
    for (Elem a = 0; a < m.A->order() && gh.ok; ++a)
      if (m.mu(b.act_ga(g, a)) != b.act_gr(g, m.mu(a)))
        gh = fail("mu_G_equivariant", {g, a}, "mu(^g a) != ^g mu(a)");
  rep.add(gh);

  Check comp = pass("compatibility");
  for (Elem g = 0; g < b.G->order() && comp.ok; ++g)
    for (Elem r = 0; r < m.R->order() && comp.ok; ++r)
      for (Elem a = 0; a < m.A->order() && comp.ok; ++a) {
        Elem lhs = m.act_ra(b.act_gr(g, r), a);
        Elem rhs = b.act_ga(g, m.act_ra(r, b.act_ga(b.G->inv(g), a)));
        if (lhs != rhs) comp = fail("compatibility", {g, r, a}, "^(^g r) a != ^(g r g^-1) a");
      }
  rep.add(comp);
  return rep;
}

/// Checks that mu is a G-homomorphism and the compatibility condition
/// ^(^g r) a = ^g ^r ^(g^-1) a.
inline Bimodule validate_bimodule(GroupPtr G, CrossedModule m, Action act_ga, Action act_gr) {
  detail::require_same(act_ga.actor, G, "G-action on A has the wrong actor");
  detail::require_same(act_ga.target, m.A, "G-action on A has the wrong target");
  detail::require_same(act_gr.actor, G, "G-action on R has the wrong actor");
  detail::require_same(act_gr.target, m.R, "G-action on R has the wrong target");
  Bimodule b{std::move(G), std::move(m), std::move(act_ga), std::move(act_gr)};
  auto rep = bimodule_checks(b);
  if (auto const* c = rep.find("R_equivariance"); !c->ok)
    throw Error(ErrorKind::NotEquivariant, "mu(^r a) != r mu(a) r^-1", c->witness);
  if (auto const* c = rep.find("mu_G_equivariant"); !c->ok)
    throw Error(ErrorKind::MuNotGEquivariant,
                detail::cat("mu(^g a) != ^g mu(a) at g = ", c->witness[0], ", a = ", c->witness[1]),
                c->witness);
  if (auto const* c = rep.find("compatibility"); !c->ok)
    throw Error(ErrorKind::CompatibilityFailure,
                detail::cat("^(^g r) a != ^(g r g^-1) a at (g, r, a) = (", c->witness[0], ", ",
                            c->witness[1], ", ", c->witness[2], ")"),
                c->witness);
  return b;
}

/// (G, id, conjugation): every group is a crossed module over itself.
inline CrossedModule self_crossed_module(GroupPtr const& g) {
  return validate_precrossed_module(g, g, identity_hom(g), conjugation_action(g));
}

/// Inclusion of a normal subgroup N into G with G acting by conjugation.
inline CrossedModule normal_inclusion_crossed_module(Subgroup const& n) {
  if (auto w = normality_witness(n))
    throw Error(ErrorKind::NotNormal, "inclusion crossed module needs a normal subgroup", {*w});
  auto emb = subgroup_as_group(n);
  auto const& g = *n.parent;
  Table t(g.order(), std::vector<Elem>(emb.group->order()));
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem i = 0; i < emb.group->order(); ++i) {
      Elem y = g.conj(x, n.elements[i]);
      t[x][i] = Elem(std::lower_bound(n.elements.begin(), n.elements.end(), y) - n.elements.begin());
    }
  auto act = validate_action(n.parent, emb.group, std::move(t));
  return validate_precrossed_module(n.parent, emb.group, emb.inclusion, std::move(act));
}

/// An R-module viewed as an R-R-bimodule; R acts on itself by conjugation.
inline Bimodule as_bimodule(CrossedModule const& m) {
  return validate_bimodule(m.R, m, m.act_ra, conjugation_action(m.R));
}

/// (A, 1): A abelian, mu trivial, R acted on trivially and acting trivially.
inline Bimodule trivial_mu_bimodule(Action const& act_ga, GroupPtr const& R) {
  auto const& A = act_ga.target;
  auto m = validate_precrossed_module(R, A, trivial_hom(A, R), trivial_action(R, A));
  return validate_bimodule(act_ga.actor, std::move(m), act_ga, trivial_action(act_ga.actor, R));
}

/// R = A/Z(A), ^{aZ} b = a b a^-1, ^g (aZ) = (^g a) Z, mu = projection.
/// Both induced actions are checked against every coset representative.
inline Bimodule build_central_quotient_bimodule(Action const& act_ga) {
  auto const& A = act_ga.target;
  auto const& G = act_ga.actor;
  auto const Z = center(A);
  for (Elem g = 0; g < G->order(); ++g)
    for (Elem z : Z.elements)
      if (!Z.contains(act_ga(g, z)))
        throw Error(ErrorKind::CenterNotStable, "Z(A) is not G-stable", {g, z});
  auto q = quotient(A, Z);
  GroupPtr const& R = q.group;

  Table ra(R->order(), std::vector<Elem>(A->order()));
  for (Elem c = 0; c < R->order(); ++c)
    for (Elem b = 0; b < A->order(); ++b) {
      ra[c][b] = A->conj(q.cosets[c].front(), b);
      for (Elem rep : q.cosets[c])
        if (A->conj(rep, b) != ra[c][b])
          throw Error(ErrorKind::WellDefinednessFailure,
                      "R-action depends on the coset representative", {c, rep, b});
    }
  Table gr(G->order(), std::vector<Elem>(R->order()));
  for (Elem g = 0; g < G->order(); ++g)
    for (Elem c = 0; c < R->order(); ++c) {
      gr[g][c] = q.projection(act_ga(g, q.cosets[c].front()));
      for (Elem rep : q.cosets[c])
        if (q.projection(act_ga(g, rep)) != gr[g][c])
          throw Error(ErrorKind::WellDefinednessFailure,
                      "G-action on A/Z(A) depends on the coset representative", {g, c, rep});
    }
  auto act_ra = validate_action(R, A, std::move(ra));
  auto act_gr = validate_action(G, R, std::move(gr));
  auto m = validate_precrossed_module(R, A, q.projection, std::move(act_ra));
  auto b = validate_bimodule(G, std::move(m), act_ga, std::move(act_gr));
  if (auto c = classify_crossedness(b.base); c.level != CrossednessLevel::Crossed)
    throw Error(ErrorKind::NotCrossed, "central quotient bimodule fails the Peiffer identity",
                {c.peiffer_witness->first, c.peiffer_witness->second});
  return b;
}

struct AutBimodule {
  Bimodule bimodule;
  AutGroup aut;
  Report checks;  // iota_G_homomorphism, iota_Aut_homomorphism, peiffer, compatibility
};

/// (A, iota) as a G-Aut(A)-bimodule, iota(a) = conjugation by a,
/// ^alpha x = alpha(x), (^g alpha)(x) = ^g alpha(^(g^-1) x).
inline AutBimodule build_aut_bimodule(Action const& act_ga, std::size_t bound = default_aut_bound) {
  auto const& A = act_ga.target;
  auto const& G = act_ga.actor;
  auto aut = automorphism_group(A, bound);
  GroupPtr const& R = aut.group;
  auto const& act_ra = aut.action;

  auto lookup = [&](std::vector<Elem> const& perm) {
    auto idx = aut.index_of(perm);
    if (!idx) throw Error(ErrorKind::NotAutomorphism, "map is not in Aut(A)");
    return *idx;
  };
  std::vector<Elem> iota(A->order());
  for (Elem a = 0; a < A->order(); ++a) {
    std::vector<Elem> c(A->order());
    for (Elem b = 0; b < A->order(); ++b) c[b] = A->conj(a, b);
    iota[a] = lookup(c);
  }
  Table gr(G->order(), std::vector<Elem>(R->order()));
  for (Elem g = 0; g < G->order(); ++g)
    for (Elem s = 0; s < R->order(); ++s) {
      std::vector<Elem> p(A->order());
      for (Elem x = 0; x < A->order(); ++x) p[x] = act_ga(g, act_ra(s, act_ga(G->inv(g), x)));
      gr[g][s] = lookup(p);
    }
  auto mu = validate_homomorphism(A, R, iota);
  auto act_gr = validate_action(G, R, std::move(gr));

  Report rep;
  Check c1 = pass("iota_G_homomorphism");
  for (Elem g = 0; g < G->order() && c1.ok; ++g)
    for (Elem a = 0; a < A->order() && c1.ok; ++a)
      if (mu(act_ga(g, a)) != act_gr(g, mu(a))) c1 = fail("iota_G_homomorphism", {g, a});
  rep.add(c1);
  Check c2 = pass("iota_Aut_homomorphism");
  for (Elem s = 0; s < R->order() && c2.ok; ++s)
    for (Elem x = 0; x < A->order() && c2.ok; ++x)
      if (mu(act_ra(s, x)) != R->conj(s, mu(x))) c2 = fail("iota_Aut_homomorphism", {s, x});
  rep.add(c2);
  Check c3 = pass("peiffer");
  for (Elem a = 0; a < A->order() && c3.ok; ++a)
    for (Elem b = 0; b < A->order() && c3.ok; ++b)
      if (act_ra(mu(a), b) != A->conj(a, b)) c3 = fail("peiffer", {a, b});
  rep.add(c3);
  Check c4 = pass("compatibility");
  for (Elem g = 0; g < G->order() && c4.ok; ++g)
    for (Elem s = 0; s < R->order() && c4.ok; ++s)
      for (Elem x = 0; x < A->order() && c4.ok; ++x)
        if (act_ra(act_gr(g, s), x) != act_ga(g, act_ra(s, act_ga(G->inv(g), x))))
          c4 = fail("compatibility", {g, s, x});
  rep.add(c4);

  auto m = validate_precrossed_module(R, A, std::move(mu), act_ra);
  auto b = validate_bimodule(G, std::move(m), act_ga, std::move(act_gr));
  return AutBimodule{std::move(b), std::move(aut), std::move(rep)};
}

/// A of nilpotency class two, R = A/[A,A], mu the projection, R acting
/// trivially. Partially crossed but never crossed.
inline CrossedModule build_nilpotent_example(GroupPtr const& A) {
  if (A->is_abelian()) throw Error(ErrorKind::Abelian, "A must be non-abelian");
  auto const comm = commutator_subgroup(A);
  auto const Z = center(A);
  for (Elem x : comm.elements)
    if (!Z.contains(x))
      throw Error(ErrorKind::NotClassTwo, "[A,A] is not contained in Z(A)", {x});
  auto q = quotient(A, comm);
  return validate_precrossed_module(q.group, A, q.projection, trivial_action(q.group, A));
}

/// Replaces R by the image mu(A), renumbered densely in increasing index
/// order, with restricted actions.
inline Bimodule restrict_to_image(Bimodule const& b) {
  auto const img = image(b.mu());
  for (Elem g = 0; g < b.G->order(); ++g)
    for (Elem r : img.elements)
      if (!img.contains(b.act_gr(g, r)))
        throw Error(ErrorKind::ImageNotStable, "mu(A) is not G-stable", {g, r});
  auto emb = subgroup_as_group(img);
  auto local = [&](Elem r) {
    return Elem(std::lower_bound(img.elements.begin(), img.elements.end(), r) - img.elements.begin());
  };
  std::vector<Elem> mu(b.A()->order());
  for (Elem a = 0; a < mu.size(); ++a) mu[a] = local(b.mu()(a));
  Table gr(b.G->order(), std::vector<Elem>(emb.group->order()));
  for (Elem g = 0; g < b.G->order(); ++g)
    for (Elem i = 0; i < emb.group->order(); ++i) gr[g][i] = local(b.act_gr(g, img.elements[i]));
  auto act_ra = validate_action(emb.group, b.A(), pullback(b.act_ra(), emb.inclusion).table);
  auto m = validate_precrossed_module(emb.group, b.A(), validate_homomorphism(b.A(), emb.group, mu),
                                      std::move(act_ra));
  return validate_bimodule(b.G, std::move(m), b.act_ga,
                           validate_action(b.G, emb.group, std::move(gr)));
}

}  // namespace nacoh
