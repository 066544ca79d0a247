#pragma once

// Crossed homomorphisms, the derivation group Der(G, (A, mu)) under the star
// product, and the actions of G and R on it.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/check.hpp"
#include "nacoh/crossed_module.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

/// A pair (alpha, r) with alpha : G -> A a crossed homomorphism and
/// mu(alpha(g)) = r (^g r)^-1 for all g. Ordered lexicographically by
/// (alpha as an index vector, r).
struct Derivation {
  std::vector<Elem> alpha;
  Elem r = 0;

  auto operator<=>(Derivation const&) const = default;
  bool operator==(Derivation const&) const = default;
};

struct DerOptions {
  std::size_t max_der = 20'000;
  std::uint64_t max_assignments = 50'000'000;
  unsigned threads = 1;
  AssocCheck assoc{};
};

/// First (g, h) with alpha(gh) != alpha(g) ^g alpha(h), if any.
inline std::optional<std::pair<Elem, Elem>> crossed_hom_witness(Action const& act_ga,
                                                                std::vector<Elem> const& alpha) {
  auto const& G = *act_ga.actor;
  auto const& A = *act_ga.target;
  for (Elem g = 0; g < G.order(); ++g)
    for (Elem h = 0; h < G.order(); ++h)
      if (alpha[G.mul(g, h)] != A.mul(alpha[g], act_ga(g, alpha[h]))) return std::pair{g, h};
  return std::nullopt;
}

inline bool twisting_law_holds(Bimodule const& b, Derivation const& d) {
  auto const& R = *b.R();
  for (Elem g = 0; g < b.G->order(); ++g)
    if (b.mu()(d.alpha[g]) != R.mul(d.r, R.inv(b.act_gr(g, d.r)))) return false;
  return true;
}

inline bool is_derivation(Bimodule const& b, Derivation const& d) {
  return d.alpha.size() == b.G->order() && d.r < b.R()->order() &&
         !crossed_hom_witness(b.act_ga, d.alpha) && twisting_law_holds(b, d);
}

namespace detail {

inline void require_derivation(Bimodule const& b, Derivation const& d, char const* where) {
  if (!is_derivation(b, d)) throw Error(ErrorKind::NotADerivation, where);
}

/// Propagates generator images along the Cayley graph using
/// alpha(x s) = alpha(x) ^x alpha(s). Consistency on every edge is equivalent
/// to g -> (alpha(g), g) being a homomorphism into A x| G.
inline std::optional<std::vector<Elem>> propagate_crossed_hom(Action const& act_ga,
                                                              std::vector<Elem> const& gens,
                                                              std::vector<Elem> const& images) {
  auto const& G = *act_ga.actor;
  auto const& A = *act_ga.target;
  constexpr Elem unset = ~Elem(0);
  std::vector<Elem> alpha(G.order(), unset);
  alpha[G.identity()] = A.identity();
  std::deque<Elem> queue{G.identity()};
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Elem y = G.mul(x, gens[i]);
      Elem v = A.mul(alpha[x], act_ga(x, images[i]));
      if (alpha[y] == unset) {
        alpha[y] = v;
        queue.push_back(y);
      } else if (alpha[y] != v) {
        return std::nullopt;
      }
    }
  }
  return alpha;
}

}  // namespace detail

/// All crossed homomorphisms G -> A, sorted. Each assignment of images to
/// `generators` is propagated independently; with threads > 1 the
/// assignments are split on the image of the first generator and merged
/// deterministically.
inline std::vector<std::vector<Elem>> enumerate_crossed_homs(Action const& act_ga,
                                                             std::vector<Elem> const& generators,
                                                             DerOptions const& opts = {}) {
  auto const& G = act_ga.actor;
  std::size_t const na = act_ga.target->order();
  for (Elem s : generators)
    if (s >= G->order()) throw Error(ErrorKind::ShapeMismatch, "generator out of range", {s});
  if (generated_subgroup(G, generators).size() != G->order())
    throw Error(ErrorKind::NotGenerating, "generators do not generate G");

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    total *= na;
    if (total > opts.max_assignments)
      throw Error(ErrorKind::TooLarge, "too many generator image assignments",
                  {std::int64_t(opts.max_assignments)});
  }

  std::size_t const k = generators.size();
  if (k == 0) return {std::vector<Elem>(G->order(), act_ga.target->identity())};

  auto work = [&](Elem first_lo, Elem first_hi, std::vector<std::vector<Elem>>& out) {
    std::vector<Elem> images(k, 0);
    for (Elem first = first_lo; first < first_hi; ++first) {
      images[0] = first;
      std::fill(images.begin() + 1, images.end(), Elem(0));
      while (true) {
        if (auto alpha = detail::propagate_crossed_hom(act_ga, generators, images))
          out.push_back(std::move(*alpha));
        std::size_t i = 1;
        while (i < k && ++images[i] == na) images[i++] = 0;
        if (i == k) break;
      }
    }
  };

  unsigned const threads = std::max(1u, std::min<unsigned>(opts.threads, unsigned(na)));
  std::vector<std::vector<std::vector<Elem>>> parts(threads);
  if (threads == 1) {
    work(0, Elem(na), parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      Elem lo = Elem(na * t / threads), hi = Elem(na * (t + 1) / threads);
      pool.emplace_back(work, lo, hi, std::ref(parts[t]));
    }
    for (auto& th : pool) th.join();
  }
  std::vector<std::vector<Elem>> result;
  for (auto& p : parts)
    for (auto& a : p) result.push_back(std::move(a));
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

inline std::vector<std::vector<Elem>> enumerate_crossed_homs(Action const& act_ga,
                                                             DerOptions const& opts = {}) {
  return enumerate_crossed_homs(act_ga, small_generating_set(act_ga.actor), opts);
}

/// (alpha, r) * (beta, s) = (g -> ^r beta(g) alpha(g), r s)
inline Derivation star_unchecked(Bimodule const& b, Derivation const& d1, Derivation const& d2) {
  auto const& A = *b.A();
  Derivation p{std::vector<Elem>(d1.alpha.size()), b.R()->mul(d1.r, d2.r)};
  for (Elem g = 0; g < p.alpha.size(); ++g) p.alpha[g] = A.mul(b.act_ra()(d1.r, d2.alpha[g]), d1.alpha[g]);
  return p;
}

/// (alpha, r)^-1 = (g -> ^(r^-1) (alpha(g)^-1), r^-1)
inline Derivation inverse_unchecked(Bimodule const& b, Derivation const& d) {
  auto const& A = *b.A();
  Elem const rinv = b.R()->inv(d.r);
  Derivation p{std::vector<Elem>(d.alpha.size()), rinv};
  for (Elem g = 0; g < p.alpha.size(); ++g) p.alpha[g] = b.act_ra()(rinv, A.inv(d.alpha[g]));
  return p;
}

inline Derivation star(Derivation const& d1, Derivation const& d2, Bimodule const& b) {
  detail::require_derivation(b, d1, "star: left operand is not a derivation");
  detail::require_derivation(b, d2, "star: right operand is not a derivation");
  auto p = star_unchecked(b, d1, d2);
  detail::require_derivation(b, p, "star: product left Der");
  return p;
}

inline Derivation inverse(Derivation const& d, Bimodule const& b) {
  detail::require_derivation(b, d, "inverse: operand is not a derivation");
  auto p = inverse_unchecked(b, d);
  detail::require_derivation(b, p, "inverse: result left Der");
  return p;
}

/// ^g (alpha, r) = (h -> ^g alpha(^(g^-1) h), ^g r), G acting on itself by
/// conjugation.
inline Derivation g_act(Elem g, Derivation const& d, Bimodule const& b) {
  auto const& G = *b.G;
  Elem const ginv = G.inv(g);
  Derivation p{std::vector<Elem>(d.alpha.size()), b.act_gr(g, d.r)};
  for (Elem h = 0; h < p.alpha.size(); ++h) p.alpha[h] = b.act_ga(g, d.alpha[G.conj(ginv, h)]);
  return p;
}

/// ^r (alpha, s) = (g -> ^r alpha(^(r^-1) g), r s r^-1). Only defined once both
/// compatibility reports for R acting on G have passed.
inline Derivation r_act(Elem r, Derivation const& d, Bimodule const& b, Action const& act_rg,
                        Report const& mutual, Report const& joint) {
  if (!mutual.ok() || !joint.ok())
    throw Error(ErrorKind::CompatibilityNotEstablished,
                "R acts on Der only when G and R act compatibly on each other and on A");
  auto const& R = *b.R();
  Elem const rinv = R.inv(r);
  Derivation p{std::vector<Elem>(d.alpha.size()), R.conj(r, d.r)};
  for (Elem g = 0; g < p.alpha.size(); ++g) p.alpha[g] = b.act_ra()(r, d.alpha[act_rg(rinv, g)]);
  return p;
}

/// Der(G, (A, mu)) materialised as a finite group. Elements are sorted
/// canonically; element i of `group()` is `elements()[i]`.
class DerGroup {
 public:
  Bimodule const& bimodule() const noexcept { return b_; }
  std::vector<Derivation> const& elements() const noexcept { return elems_; }
  Derivation const& operator[](Elem i) const { return elems_[i]; }
  std::size_t size() const noexcept { return elems_.size(); }
  GroupPtr const& group() const noexcept { return group_; }
  Elem identity() const noexcept { return group_->identity(); }

  std::optional<Elem> index_of(Derivation const& d) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), d);
    if (it == elems_.end() || *it != d) return std::nullopt;
    return Elem(it - elems_.begin());
  }

  Elem require_index(Derivation const& d) const {
    auto i = index_of(d);
    if (!i) throw Error(ErrorKind::NotADerivation, "element is not in the enumerated Der");
    return *i;
  }

  /// Enumerates every (alpha, r): crossed homomorphisms first, then every r
  /// in R satisfying the twisting law (found by scanning R). The Cayley table
  /// under star is checked for closure and group axioms.
  static std::shared_ptr<DerGroup const> enumerate(Bimodule const& b, DerOptions const& opts = {}) {
    auto dg = std::shared_ptr<DerGroup>(new DerGroup());
    dg->b_ = b;
    auto const homs = enumerate_crossed_homs(b.act_ga, opts);
    auto const& R = *b.R();
    for (auto const& alpha : homs) {
      for (Elem r = 0; r < R.order(); ++r) {
        Derivation d{alpha, r};
        if (!twisting_law_holds(b, d)) continue;
        dg->elems_.push_back(std::move(d));
        if (dg->elems_.size() > opts.max_der)
          throw Error(ErrorKind::TooLarge,
                      detail::cat("|Der| exceeds the bound ", opts.max_der),
                      {std::int64_t(opts.max_der)});
      }
    }
    std::sort(dg->elems_.begin(), dg->elems_.end());
    std::size_t const n = dg->elems_.size();
    Table t(n, std::vector<Elem>(n));
    std::vector<std::string> labels(n);
    for (Elem i = 0; i < n; ++i) {
      labels[i] = "d" + std::to_string(i);
      for (Elem j = 0; j < n; ++j) {
        auto p = star_unchecked(b, dg->elems_[i], dg->elems_[j]);
        auto idx = dg->index_of(p);
        if (!idx)
          throw Error(ErrorKind::NotADerivation, "Der is not closed under the star product", {i, j});
        t[i][j] = *idx;
      }
    }
    dg->group_ = validate_group(t, std::move(labels), opts.assoc);
    Derivation const one{std::vector<Elem>(b.G->order(), b.A()->identity()), b.R()->identity()};
    if (dg->elems_[dg->group_->identity()] != one)
      throw Error(ErrorKind::NotADerivation, "identity of Der is not (1, 1)");
    return dg;
  }

 private:
  DerGroup() = default;

  Bimodule b_;
  std::vector<Derivation> elems_;
  GroupPtr group_;
};

using DerGroupPtr = std::shared_ptr<DerGroup const>;

inline DerGroupPtr enumerate_derivations(Bimodule const& b, DerOptions const& opts = {}) {
  return DerGroup::enumerate(b, opts);
}

/// The G-action on Der as an Action on the group Der.
inline Action der_g_action(DerGroup const& dg) {
  auto const& b = dg.bimodule();
  Table t(b.G->order(), std::vector<Elem>(dg.size()));
  for (Elem g = 0; g < b.G->order(); ++g)
    for (Elem i = 0; i < dg.size(); ++i) t[g][i] = dg.require_index(g_act(g, dg[i], b));
  return validate_action(b.G, dg.group(), std::move(t));
}

inline Action der_r_action(DerGroup const& dg, Action const& act_rg, Report const& mutual,
                           Report const& joint) {
  auto const& b = dg.bimodule();
  Table t(b.R()->order(), std::vector<Elem>(dg.size()));
  for (Elem r = 0; r < b.R()->order(); ++r)
    for (Elem i = 0; i < dg.size(); ++i)
      t[r][i] = dg.require_index(r_act(r, dg[i], b, act_rg, mutual, joint));
  return validate_action(b.R(), dg.group(), std::move(t));
}

/// Checks for (Der, gamma) as a precrossed G-R-bimodule with an explicit
/// gamma table (gamma[i] in R for Der element i).
inline Report check_gamma(DerGroup const& dg, std::vector<Elem> const& gamma, Action const& der_g,
                          Action const& der_r) {
  auto const& b = dg.bimodule();
  auto const& D = *dg.group();
  auto const& R = *b.R();
  auto const n = Elem(dg.size());
  Report rep;

  Check hom = pass("gamma_G_homomorphism");
  for (Elem i = 0; i < n && hom.ok; ++i)
    for (Elem j = 0; j < n && hom.ok; ++j)
      if (gamma[D.mul(i, j)] != R.mul(gamma[i], gamma[j]))
        hom = fail("gamma_G_homomorphism", {i, j}, "gamma(d1 * d2) != gamma(d1) gamma(d2)");
  for (Elem g = 0; g < b.G->order() && hom.ok; ++g)
    for (Elem i = 0; i < n && hom.ok; ++i)
      if (gamma[der_g(g, i)] != b.act_gr(g, gamma[i]))
        hom = fail("gamma_G_homomorphism", {g, i}, "gamma(^g d) != ^g gamma(d)");
  rep.add(hom);

  auto const conj_r = conjugation_action(b.R());
  Check rhom = pass("gamma_R_homomorphism");
  for (Elem r = 0; r < R.order() && rhom.ok; ++r)
    for (Elem i = 0; i < n && rhom.ok; ++i)
      if (gamma[der_r(r, i)] != conj_r(r, gamma[i]))
        rhom = fail("gamma_R_homomorphism", {r, i}, "gamma(^r d) != ^r gamma(d)");
  rep.add(rhom);

  Check pre = pass("precrossed_law");
  for (Elem r = 0; r < R.order() && pre.ok; ++r)
    for (Elem i = 0; i < n && pre.ok; ++i)
      if (gamma[der_r(r, i)] != R.mul(R.mul(r, gamma[i]), R.inv(r)))
        pre = fail("precrossed_law", {r, i}, "gamma(^r d) != r gamma(d) r^-1");
  rep.add(pre);

  Check comp = pass("compatibility");
  Elem const ng = Elem(b.G->order());
  for (Elem g = 0; g < ng && comp.ok; ++g)
    for (Elem r = 0; r < R.order() && comp.ok; ++r)
      for (Elem i = 0; i < n && comp.ok; ++i) {
        Elem lhs = der_r(b.act_gr(g, r), i);
        Elem rhs = der_g(g, der_r(r, der_g(b.G->inv(g), i)));
        if (lhs != rhs) comp = fail("compatibility", {g, r, i}, "^(^g r) d != ^(g r g^-1) d");
      }
  rep.add(comp);
  return rep;
}

struct DerBimoduleReport {
  Report report;
  DerGroupPtr der;
};

/// Builds Der, installs gamma(alpha, r) = r and checks that (Der, gamma) is a
/// precrossed G-R-bimodule given R acting on G by `act_rg`.
inline DerBimoduleReport verify_der_bimodule(Bimodule const& b, Action const& act_rg,
                                             DerOptions const& opts = {}) {
  DerBimoduleReport out;
  auto const mutual = check_mutual_compatibility(b.act_gr, act_rg);
  auto const joint = check_joint_compatibility_on_A(b.act_ga, b.act_ra(), b.act_gr, act_rg);
  out.report.append(mutual);
  out.report.append(joint);
  if (!mutual.ok() || !joint.ok()) return out;

  out.der = enumerate_derivations(b, opts);
  auto const& dg = *out.der;
  std::optional<Action> der_g, der_r;
  try {
    der_g = der_g_action(dg);
    out.report.add(pass("G_acts_on_Der"));
  } catch (Error const& e) {
    out.report.add(fail("G_acts_on_Der", e.witness(), e.what()));
  }
  try {
    der_r = der_r_action(dg, act_rg, mutual, joint);
    out.report.add(pass("R_acts_on_Der"));
  } catch (Error const& e) {
    out.report.add(fail("R_acts_on_Der", e.witness(), e.what()));
  }
  if (!der_g || !der_r) return out;

  std::vector<Elem> gamma(dg.size());
  for (Elem i = 0; i < dg.size(); ++i) gamma[i] = dg[i].r;
  out.report.append(check_gamma(dg, gamma, *der_g, *der_r));
  return out;
}

}  // namespace nacoh
