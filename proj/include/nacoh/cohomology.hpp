#pragma once

// H^1(G, (A, mu)): the twisting relation on Der, its classes, and the group
// structure when H^0(G, R) is normal and H^0-twists are inner through ker mu.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/catalog.hpp"
#include "nacoh/check.hpp"
#include "nacoh/crossed_module.hpp"
#include "nacoh/derivation.hpp"
#include "nacoh/describe.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"
#include "nacoh/union_find.hpp"

namespace nacoh {

struct CohOptions {
  DerOptions der{};
  /// Pairwise scans (neighbour cross-check, well-definedness of the quotient
  /// product) are exhaustive up to this many pairs and sampled beyond.
  std::uint64_t pair_limit = 4'000'000;
  std::uint64_t samples = 200'000;
  std::uint64_t seed = 0;
};

/// (alpha, r) ~ (beta, s) is witnessed by a in A and z in H^0(G, R) with
/// beta(g) = a^-1 alpha(g) ^g a for all g and s = mu(a)^-1 r z.
struct EquivWitness {
  Elem a;
  Elem z;
  bool operator==(EquivWitness const&) const = default;
};

/// First witness in canonical order (a, then z), or nothing.
inline std::optional<EquivWitness> equivalent(Derivation const& d1, Derivation const& d2,
                                              Bimodule const& b, Subgroup const& h0) {
  auto const& A = *b.A();
  auto const& R = *b.R();
  for (Elem a = 0; a < A.order(); ++a) {
    Elem const ainv = A.inv(a);
    bool twisted = true;
    for (Elem g = 0; g < b.G->order() && twisted; ++g)
      twisted = d2.alpha[g] == A.mul(A.mul(ainv, d1.alpha[g]), b.act_ga(g, a));
    if (!twisted) continue;
    Elem const shifted = R.mul(R.inv(b.mu()(a)), d1.r);
    Elem const z = R.mul(R.inv(shifted), d2.r);
    if (h0.contains(z)) return EquivWitness{a, z};
  }
  return std::nullopt;
}

inline std::optional<EquivWitness> equivalent(Derivation const& d1, Derivation const& d2,
                                              Bimodule const& b) {
  return equivalent(d1, d2, b, fixed_points(b.act_gr));
}

namespace detail {

/// Indices of every element related to d, generated from all (a, z).
inline std::vector<Elem> relation_neighbours(DerGroup const& dg, Subgroup const& h0, Elem i) {
  auto const& b = dg.bimodule();
  auto const& A = *b.A();
  auto const& R = *b.R();
  auto const& d = dg[i];
  std::vector<Elem> out;
  Derivation t{std::vector<Elem>(d.alpha.size()), 0};
  for (Elem a = 0; a < A.order(); ++a) {
    Elem const ainv = A.inv(a);
    for (Elem g = 0; g < t.alpha.size(); ++g)
      t.alpha[g] = A.mul(A.mul(ainv, d.alpha[g]), b.act_ga(g, a));
    Elem const shifted = R.mul(R.inv(b.mu()(a)), d.r);
    for (Elem z : h0.elements) {
      t.r = R.mul(shifted, z);
      out.push_back(dg.require_index(t));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

struct H1Group {
  GroupPtr group;           // classes in representative order
  Homomorphism projection;  // Der -> H^1
  GroupDescriptor descriptor;
};

struct H1Result {
  DerGroupPtr der;                           // null for a non-abelian plain module
  std::vector<std::vector<Elem>> cocycles;   // plain non-abelian module: the crossed homs
  Subgroup h0;                               // H^0(G, R)
  std::vector<std::vector<Elem>> classes;    // sorted; ordered by least member
  std::vector<Elem> representatives;         // least member of each class
  std::vector<Elem> class_of;                // Der (or cocycle) index -> class index
  Report relation;                           // reflexive / symmetric / transitive
  std::optional<Report> thm32;
  std::optional<H1Group> group;

  std::size_t class_count() const noexcept { return classes.size(); }
};

namespace detail {

/// Partition of {0..n-1} by union-find over the neighbour lists, plus an
/// exact check of the equivalence axioms: a reflexive, symmetric relation is
/// transitive iff every connected component is a clique. `pred` is the
/// pairwise definition the neighbour lists are checked against.
inline void partition(H1Result& res, std::vector<std::vector<Elem>> const& nb,
                      std::function<bool(Elem, Elem)> const& pred, CohOptions const& opts) {
  std::size_t const n = nb.size();
  auto related = [&](Elem i, Elem j) { return std::binary_search(nb[i].begin(), nb[i].end(), j); };

  Check pairwise = pass("matches_pairwise_predicate");
  auto check_pair = [&](Elem i, Elem j) {
    if (pred(i, j) != related(i, j)) pairwise = fail("matches_pairwise_predicate", {i, j});
  };
  if (std::uint64_t(n) * n <= opts.pair_limit) {
    for (Elem i = 0; i < n && pairwise.ok; ++i)
      for (Elem j = 0; j < n && pairwise.ok; ++j) check_pair(i, j);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Elem> pick(0, Elem(n - 1));
    for (std::uint64_t s = 0; s < opts.samples && pairwise.ok; ++s) check_pair(pick(rng), pick(rng));
  }

  Check refl = pass("reflexive");
  for (Elem i = 0; i < n && refl.ok; ++i)
    if (!related(i, i)) refl = fail("reflexive", {i});
  Check sym = pass("symmetric");
  for (Elem i = 0; i < n && sym.ok; ++i)
    for (Elem j : nb[i])
      if (!related(j, i)) {
        sym = fail("symmetric", {i, j});
        break;
      }

  UnionFind uf(n);
  for (Elem i = 0; i < n; ++i)
    for (Elem j : nb[i]) uf.unite(i, j);

  Check trans = pass("transitive");
  for (Elem i = 0; i < n && trans.ok; ++i) {
    if (nb[i].size() == uf.component_size(i)) continue;
    // shortest path from i to a non-neighbour in its component
    std::vector<Elem> prev(n, ~Elem(0));
    std::deque<Elem> queue{i};
    prev[i] = i;
    std::optional<Elem> target;
    while (!queue.empty() && !target) {
      Elem x = queue.front();
      queue.pop_front();
      for (Elem y : nb[x]) {
        if (prev[y] != ~Elem(0)) continue;
        prev[y] = x;
        if (!related(i, y)) {
          target = y;
          break;
        }
        queue.push_back(y);
      }
    }
    // target is two steps away: i ~ prev ~ target but not i ~ target
    trans = fail("transitive", {i, prev[*target], *target});
  }
  res.relation.add(refl);
  res.relation.add(sym);
  res.relation.add(trans);
  res.relation.add(pairwise);

  std::vector<std::size_t> root_class(n, SIZE_MAX);
  res.class_of.assign(n, 0);
  for (Elem i = 0; i < n; ++i) {
    std::size_t r = uf.find(i);
    if (root_class[r] == SIZE_MAX) {
      root_class[r] = res.classes.size();
      res.classes.emplace_back();
      res.representatives.push_back(i);
    }
    res.class_of[i] = Elem(root_class[r]);
    res.classes[root_class[r]].push_back(i);
  }
}

}  // namespace detail

/// Partition of Der into classes of the relation.
inline H1Result h1_set(Bimodule const& b, CohOptions const& opts = {}) {
  H1Result res;
  res.der = enumerate_derivations(b, opts.der);
  res.h0 = fixed_points(b.act_gr);
  auto const& dg = *res.der;
  std::vector<std::vector<Elem>> nb(dg.size());
  for (Elem i = 0; i < dg.size(); ++i) nb[i] = detail::relation_neighbours(dg, res.h0, i);
  detail::partition(
      res, nb, [&](Elem i, Elem j) { return equivalent(dg[i], dg[j], b, res.h0).has_value(); }, opts);
  return res;
}

/// (i) H^0(G, R) normal in R; (ii) for every c in H^0 and (alpha, r) in Der
/// some a in ker mu has ^c alpha(g) = a^-1 alpha(g) ^g a for all g.
inline Report check_thm32(DerGroup const& dg, Subgroup const& h0) {
  auto const& b = dg.bimodule();
  auto const& A = *b.A();
  Report rep;
  if (auto w = normality_witness(h0))
    rep.add(fail("H0_normal", {*w}, "r H0 r^-1 != H0"));
  else
    rep.add(pass("H0_normal"));

  auto const ker = kernel(b.mu());
  Check twist = pass("H0_twist_inner_in_ker_mu");
  for (Elem c : h0.elements) {
    for (Elem i = 0; i < dg.size() && twist.ok; ++i) {
      auto const& alpha = dg[i].alpha;
      bool found = false;
      for (Elem a : ker.elements) {
        Elem const ainv = A.inv(a);
        bool ok = true;
        for (Elem g = 0; g < b.G->order() && ok; ++g)
          ok = b.act_ra()(c, alpha[g]) == A.mul(A.mul(ainv, alpha[g]), b.act_ga(g, a));
        if (ok) {
          found = true;
          break;
        }
      }
      if (!found) twist = fail("H0_twist_inner_in_ker_mu", {c, i});
    }
    if (!twist.ok) break;
  }
  rep.add(twist);
  return rep;
}

inline Report check_thm32(Bimodule const& b, CohOptions const& opts = {}) {
  auto dg = enumerate_derivations(b, opts.der);
  return check_thm32(*dg, fixed_points(b.act_gr));
}

/// Inn(G, (A, mu)) = {(Inn(a), mu(a) z) : a in A, z in H^0}, Inn(a)(g) = a ^g a^-1.
inline std::vector<Elem> inner_derivations(DerGroup const& dg, Subgroup const& h0) {
  auto const& b = dg.bimodule();
  auto const& A = *b.A();
  auto const& R = *b.R();
  std::vector<Elem> out;
  for (Elem a = 0; a < A.order(); ++a) {
    Derivation d{std::vector<Elem>(b.G->order()), 0};
    for (Elem g = 0; g < b.G->order(); ++g) d.alpha[g] = A.mul(a, A.inv(b.act_ga(g, a)));
    for (Elem z : h0.elements) {
      d.r = R.mul(b.mu()(a), z);
      out.push_back(dg.require_index(d));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// H^1 as the quotient group Der / Inn(G, (A, mu)). The class of (1, 1) must
/// coincide with Inn, be normal, and the classes must be its cosets; the
/// product [d1][d2] = [d1 * d2] is then re-checked pair by pair.
inline H1Result h1_group(Bimodule const& b, CohOptions const& opts = {}) {
  H1Result res = h1_set(b, opts);
  auto const& dg = *res.der;
  res.thm32 = check_thm32(dg, res.h0);
  if (auto const* f = res.thm32->first_failure())
    throw Error(ErrorKind::Thm32Unsatisfied, f->name, f->witness);
  if (!res.relation.ok())
    throw Error(ErrorKind::WellDefinednessFailure, "relation is not an equivalence",
                res.relation.first_failure()->witness);

  Elem const one = dg.identity();
  auto const& kernel_class = res.classes[res.class_of[one]];
  auto const inn = inner_derivations(dg, res.h0);
  if (inn != kernel_class)
    throw Error(ErrorKind::WellDefinednessFailure, "class of (1,1) differs from Inn(G,(A,mu))");

  Quotient q;
  try {
    q = quotient(dg.group(), Subgroup{dg.group(), kernel_class});
  } catch (Error const& e) {
    throw Error(ErrorKind::WellDefinednessFailure,
                detail::cat("Inn(G,(A,mu)) is not normal in Der: ", e.what()), e.witness());
  }
  if (q.cosets != res.classes)
    throw Error(ErrorKind::WellDefinednessFailure, "classes are not the cosets of Inn(G,(A,mu))");

  auto const& H = *q.group;
  std::size_t const n = dg.size();
  auto check_pair = [&](Elem i, Elem j) {
    if (res.class_of[dg.group()->mul(i, j)] != H.mul(res.class_of[i], res.class_of[j]))
      throw Error(ErrorKind::WellDefinednessFailure, "[d1][d2] != [d1 * d2]", {i, j});
  };
  if (std::uint64_t(n) * n <= opts.pair_limit) {
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j) check_pair(i, j);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<Elem> pick(0, Elem(n - 1));
    for (std::uint64_t s = 0; s < opts.samples; ++s) check_pair(pick(rng), pick(rng));
  }

  std::vector<std::string> labels(H.order());
  for (Elem c = 0; c < H.order(); ++c) labels[c] = "[d" + std::to_string(res.representatives[c]) + "]";
  auto group = validate_group(H.table(), std::move(labels), opts.der.assoc);
  auto proj = validate_homomorphism(dg.group(), group, res.class_of);
  res.group = H1Group{group, std::move(proj), describe(group)};
  return res;
}

/// H^1 with group structure when the hypotheses hold, the bare quotient set
/// otherwise (thm32 report attached either way).
inline H1Result h1(Bimodule const& b, CohOptions const& opts = {}) {
  H1Result res = h1_set(b, opts);
  res.thm32 = check_thm32(*res.der, res.h0);
  if (res.thm32->ok() && res.relation.ok()) return h1_group(b, opts);
  return res;
}

////////////////////////////////////////////////////////////////////////////////
// Plain G-modules
////////////////////////////////////////////////////////////////////////////////

struct InnModule {
  std::vector<std::vector<Elem>> maps;  // distinct principal crossed homs, sorted
  Report checks;                        // crossed_hom, and subgroup when A is abelian
};

inline InnModule inn_module(Action const& act_ga) {
  auto const& G = *act_ga.actor;
  auto const& A = *act_ga.target;
  InnModule out;
  for (Elem a = 0; a < A.order(); ++a) {
    std::vector<Elem> m(G.order());
    for (Elem g = 0; g < G.order(); ++g) m[g] = A.mul(a, A.inv(act_ga(g, a)));
    out.maps.push_back(std::move(m));
  }
  std::sort(out.maps.begin(), out.maps.end());
  out.maps.erase(std::unique(out.maps.begin(), out.maps.end()), out.maps.end());

  Check ch = pass("crossed_hom");
  for (std::size_t i = 0; i < out.maps.size() && ch.ok; ++i)
    if (auto w = crossed_hom_witness(act_ga, out.maps[i]))
      ch = fail("crossed_hom", {std::int64_t(i), w->first, w->second});
  out.checks.add(ch);
  if (A.is_abelian()) {
    Check sub = pass("subgroup");
    for (std::size_t i = 0; i < out.maps.size() && sub.ok; ++i)
      for (std::size_t j = 0; j < out.maps.size() && sub.ok; ++j) {
        std::vector<Elem> p(G.order());
        for (Elem g = 0; g < G.order(); ++g) p[g] = A.mul(out.maps[i][g], out.maps[j][g]);
        if (!std::binary_search(out.maps.begin(), out.maps.end(), p))
          sub = fail("subgroup", {std::int64_t(i), std::int64_t(j)});
      }
    out.checks.add(sub);
  }
  return out;
}

/// H^1(G, A) for a plain G-module. Abelian A gives the group Der / Inn with
/// R trivial; otherwise the pointed set of orbits of the crossed homs under
/// alpha -> (g -> a^-1 alpha(g) ^g a), with no group structure.
inline H1Result h1_module(Action const& act_ga, CohOptions const& opts = {}) {
  auto b = trivial_mu_bimodule(act_ga, catalog::cyclic(1));
  if (act_ga.target->is_abelian()) return h1_group(b, opts);

  auto const& G = *act_ga.actor;
  auto const& A = *act_ga.target;
  H1Result res;
  res.h0 = fixed_points(b.act_gr);
  res.cocycles = enumerate_crossed_homs(act_ga, opts.der);
  auto const& z = res.cocycles;
  auto twist = [&](std::vector<Elem> const& alpha, Elem a) {
    std::vector<Elem> t(G.order());
    for (Elem g = 0; g < G.order(); ++g) t[g] = A.mul(A.mul(A.inv(a), alpha[g]), act_ga(g, a));
    return t;
  };
  auto index = [&](std::vector<Elem> const& alpha) {
    auto it = std::lower_bound(z.begin(), z.end(), alpha);
    if (it == z.end() || *it != alpha) throw Error(ErrorKind::NotADerivation, "twisted map is not a crossed homomorphism");
    return Elem(it - z.begin());
  };
  std::vector<std::vector<Elem>> nb(z.size());
  for (Elem i = 0; i < z.size(); ++i) {
    for (Elem a = 0; a < A.order(); ++a) nb[i].push_back(index(twist(z[i], a)));
    std::sort(nb[i].begin(), nb[i].end());
    nb[i].erase(std::unique(nb[i].begin(), nb[i].end()), nb[i].end());
  }
  auto pred = [&](Elem i, Elem j) {
    for (Elem a = 0; a < A.order(); ++a)
      if (twist(z[i], a) == z[j]) return true;
    return false;
  };
  detail::partition(res, nb, pred, opts);
  return res;
}

struct TrivialMuComparison {
  H1Result bimodule_side;         // H^1(G, (A, 1)) with G-R-bimodule structure
  H1Result module_side;           // H^1(G, A)
  std::vector<Elem> bijection;    // class of (alpha, r) -> class of alpha
  Report checks;                  // well_defined, injective, surjective
};

/// For abelian A and any R (acted on trivially), [(alpha, r)] -> [alpha] is a
/// bijection H^1(G, (A, 1)) -> H^1(G, A).
inline TrivialMuComparison compare_trivial_mu(Action const& act_ga, GroupPtr const& R,
                                              CohOptions const& opts = {}) {
  if (!act_ga.target->is_abelian()) throw Error(ErrorKind::NotAbelian, "A must be abelian");
  TrivialMuComparison out;
  out.bimodule_side = h1_set(trivial_mu_bimodule(act_ga, R), opts);
  out.module_side = h1_module(act_ga, opts);
  auto const& left = out.bimodule_side;
  auto const& right = out.module_side;
  Elem const one = right.der->bimodule().R()->identity();

  constexpr Elem unset = ~Elem(0);
  out.bijection.assign(left.class_count(), unset);
  Check wd = pass("well_defined");
  for (Elem i = 0; i < left.der->size() && wd.ok; ++i) {
    Elem const target = right.class_of[right.der->require_index(Derivation{(*left.der)[i].alpha, one})];
    Elem& slot = out.bijection[left.class_of[i]];
    if (slot == unset)
      slot = target;
    else if (slot != target)
      wd = fail("well_defined", {i});
  }
  out.checks.add(wd);
  std::vector<char> hit(right.class_count(), 0);
  Check inj = pass("injective");
  for (Elem c = 0; c < out.bijection.size() && inj.ok; ++c) {
    if (hit[out.bijection[c]]) inj = fail("injective", {c});
    hit[out.bijection[c]] = 1;
  }
  out.checks.add(inj);
  Check sur = pass("surjective");
  for (Elem c = 0; c < hit.size() && sur.ok; ++c)
    if (!hit[c]) sur = fail("surjective", {c});
  out.checks.add(sur);
  return out;
}

struct HomAbelianizationIso {
  std::size_t hom_g = 0;     // |Hom(G, A)|
  std::size_t hom_ab = 0;    // |Hom(G/[G,G], A)|
  std::vector<Elem> correspondence;  // Hom(G/[G,G], A) index -> Hom(G, A) index via f -> f o pi
  Report checks;             // lands_in_hom, injective, surjective, homomorphism
};

/// f -> f o pi between Hom(G/[G,G], A) and Hom(G, A) for abelian A.
inline HomAbelianizationIso hom_abelianization_iso(GroupPtr const& G, GroupPtr const& A,
                                                   DerOptions const& opts = {}) {
  if (!A->is_abelian()) throw Error(ErrorKind::NotAbelian, "A must be abelian");
  auto const q = quotient(G, commutator_subgroup(G));
  auto const homs_g = enumerate_crossed_homs(trivial_action(G, A), opts);
  auto const homs_q = enumerate_crossed_homs(trivial_action(q.group, A), opts);
  HomAbelianizationIso out;
  out.hom_g = homs_g.size();
  out.hom_ab = homs_q.size();

  auto index_in_g = [&](std::vector<Elem> const& f) -> std::optional<Elem> {
    auto it = std::lower_bound(homs_g.begin(), homs_g.end(), f);
    if (it == homs_g.end() || *it != f) return std::nullopt;
    return Elem(it - homs_g.begin());
  };
  auto pull = [&](std::vector<Elem> const& f) {
    std::vector<Elem> p(G->order());
    for (Elem g = 0; g < G->order(); ++g) p[g] = f[q.projection(g)];
    return p;
  };

  Check lands = pass("lands_in_hom");
  for (Elem i = 0; i < homs_q.size(); ++i) {
    auto idx = index_in_g(pull(homs_q[i]));
    if (!idx) {
      lands = fail("lands_in_hom", {i});
      break;
    }
    out.correspondence.push_back(*idx);
  }
  out.checks.add(lands);
  if (!lands.ok) return out;

  std::vector<char> hit(homs_g.size(), 0);
  Check inj = pass("injective");
  for (Elem i = 0; i < out.correspondence.size() && inj.ok; ++i) {
    if (hit[out.correspondence[i]]) inj = fail("injective", {i});
    hit[out.correspondence[i]] = 1;
  }
  out.checks.add(inj);
  Check sur = pass("surjective");
  for (Elem j = 0; j < hit.size() && sur.ok; ++j)
    if (!hit[j]) sur = fail("surjective", {j});
  out.checks.add(sur);

  // pointwise products correspond
  Check hom = pass("homomorphism");
  for (Elem i = 0; i < homs_q.size() && hom.ok; ++i)
    for (Elem j = 0; j < homs_q.size() && hom.ok; ++j) {
      std::vector<Elem> fq(q.group->order());
      for (Elem x = 0; x < fq.size(); ++x) fq[x] = A->mul(homs_q[i][x], homs_q[j][x]);
      std::vector<Elem> fg(G->order());
      auto const& a = homs_g[out.correspondence[i]];
      auto const& c = homs_g[out.correspondence[j]];
      for (Elem g = 0; g < fg.size(); ++g) fg[g] = A->mul(a[g], c[g]);
      if (pull(fq) != fg) hom = fail("homomorphism", {i, j});
    }
  out.checks.add(hom);
  return out;
}

}  // namespace nacoh
