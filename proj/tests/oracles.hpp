#pragma once

// Independent brute-force reference computations. Nothing here reuses the
// library's search strategies: crossed homomorphisms are found by scanning
// every map G -> A, automorphisms by scanning every permutation, and Smith
// invariants from gcds of minors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nacoh/nacoh.hpp"

namespace oracle {

using nacoh::Elem;
using nacoh::FiniteGroup;
using nacoh::GroupPtr;

/// Every alpha : G -> A with alpha(gh) = alpha(g) ^g alpha(h), by odometer
/// over all |A|^|G| maps.
inline std::vector<std::vector<Elem>> crossed_homs(nacoh::Action const& act) {
  auto const& G = *act.actor;
  auto const& A = *act.target;
  std::size_t const n = G.order(), m = A.order();
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> f(n, 0);
  while (true) {
    bool ok = true;
    for (Elem g = 0; g < n && ok; ++g)
      for (Elem h = 0; h < n && ok; ++h) ok = f[G.mul(g, h)] == A.mul(f[g], act(g, f[h]));
    if (ok) out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Pairs (alpha, r) with alpha crossed and mu alpha(g) = r (^g r)^-1, brute force.
inline std::vector<nacoh::Derivation> derivations(nacoh::Bimodule const& b) {
  std::vector<nacoh::Derivation> out;
  auto const& R = *b.R();
  for (auto const& alpha : crossed_homs(b.act_ga))
    for (Elem r = 0; r < R.order(); ++r) {
      bool ok = true;
      for (Elem g = 0; g < b.G->order() && ok; ++g)
        ok = b.mu()(alpha[g]) == R.mul(r, R.inv(b.act_gr(g, r)));
      if (ok) out.push_back({alpha, r});
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Number of equivalence classes of the twisting relation, by closing each
/// class with a naive fixpoint over the raw definition.
inline std::size_t class_count(nacoh::Bimodule const& b, std::vector<nacoh::Derivation> const& der) {
  auto const& A = *b.A();
  auto const& R = *b.R();
  std::vector<Elem> h0;
  for (Elem r = 0; r < R.order(); ++r) {
    bool fixed = true;
    for (Elem g = 0; g < b.G->order(); ++g) fixed = fixed && b.act_gr(g, r) == r;
    if (fixed) h0.push_back(r);
  }
  auto related = [&](nacoh::Derivation const& x, nacoh::Derivation const& y) {
    for (Elem a = 0; a < A.order(); ++a) {
      bool ok = true;
      for (Elem g = 0; g < b.G->order() && ok; ++g)
        ok = y.alpha[g] == A.mul(A.mul(A.inv(a), x.alpha[g]), b.act_ga(g, a));
      if (!ok) continue;
      for (Elem z : h0)
        if (y.r == R.mul(R.mul(R.inv(b.mu()(a)), x.r), z)) return true;
    }
    return false;
  };
  std::vector<int> cls(der.size(), -1);
  int count = 0;
  for (std::size_t i = 0; i < der.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = count;
    bool grew = true;
    while (grew) {
      grew = false;
      for (std::size_t j = 0; j < der.size(); ++j) {
        if (cls[j] >= 0) continue;
        for (std::size_t k = 0; k < der.size(); ++k)
          if (cls[k] == count && (related(der[k], der[j]) || related(der[j], der[k]))) {
            cls[j] = count;
            grew = true;
            break;
          }
      }
    }
    ++count;
  }
  return std::size_t(count);
}

/// All automorphisms by scanning every permutation fixing the identity.
inline std::vector<std::vector<Elem>> automorphisms(FiniteGroup const& a) {
  std::size_t const n = a.order();
  std::vector<Elem> p(n);
  std::iota(p.begin(), p.end(), Elem(0));
  std::vector<std::vector<Elem>> out;
  do {
    if (p[a.identity()] != a.identity()) continue;
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x)
      for (Elem y = 0; y < n && ok; ++y) ok = p[a.mul(x, y)] == a.mul(p[x], p[y]);
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline std::vector<Elem> center(FiniteGroup const& g) {
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x) {
    bool c = true;
    for (Elem y = 0; y < g.order() && c; ++y) c = g.mul(x, y) == g.mul(y, x);
    if (c) out.push_back(x);
  }
  return out;
}

/// Subgroup generated by all commutators, closing under products.
inline std::vector<Elem> commutator_subgroup(FiniteGroup const& g) {
  std::vector<char> in(g.order(), 0);
  in[g.identity()] = 1;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y = 0; y < g.order(); ++y) in[g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y)))] = 1;
  bool grew = true;
  while (grew) {
    grew = false;
    for (Elem x = 0; x < g.order(); ++x)
      for (Elem y = 0; y < g.order(); ++y)
        if (in[x] && in[y] && !in[g.mul(x, y)]) in[g.mul(x, y)] = grew = 1;
  }
  std::vector<Elem> out;
  for (Elem x = 0; x < g.order(); ++x)
    if (in[x]) out.push_back(x);
  return out;
}

inline std::int64_t gcd_all(std::vector<std::int64_t> const& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

inline std::int64_t det(std::vector<std::vector<std::int64_t>> m) {
  std::size_t const n = m.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  __int128 prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return std::int64_t(sign * a[n - 1][n - 1]);
}

/// d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}.
inline std::vector<std::int64_t> smith_invariants(std::vector<std::vector<std::int64_t>> const& m) {
  std::size_t const rows = m.size(), cols = rows ? m[0].size() : 0;
  std::vector<std::int64_t> d{1};
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    std::vector<std::int64_t> minors;
    std::vector<bool> rs(rows, false), cs(cols, false);
    std::fill(rs.begin(), rs.begin() + k, true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + k, true);
      do {
        std::vector<std::vector<std::int64_t>> sub;
        for (std::size_t i = 0; i < rows; ++i) {
          if (!rs[i]) continue;
          std::vector<std::int64_t> row;
          for (std::size_t j = 0; j < cols; ++j)
            if (cs[j]) row.push_back(m[i][j]);
          sub.push_back(row);
        }
        minors.push_back(det(sub));
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
    std::int64_t g = gcd_all(minors);
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<std::int64_t> out;
  for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] / d[k - 1]);
  return out;
}

/// Catalog groups up to a given order, with names for reporting.
struct Named {
  std::string name;
  GroupPtr group;
};

inline std::vector<Named> small_groups(std::size_t max_order) {
  using namespace nacoh::catalog;
  std::vector<Named> all = {
      {"Z1", cyclic(1)},  {"Z2", cyclic(2)},   {"Z3", cyclic(3)},   {"Z4", cyclic(4)},
      {"Z2xZ2", elementary_abelian(2, 2)},     {"Z5", cyclic(5)},   {"Z6", cyclic(6)},
      {"S3", symmetric(3)}, {"Z7", cyclic(7)}, {"Z8", cyclic(8)},   {"D4", dihedral(4)},
      {"Q8", quaternion8()}, {"Z2^3", elementary_abelian(2, 3)},
  };
  std::vector<Named> out;
  for (auto& g : all)
    if (g.group->order() <= max_order) out.push_back(g);
  return out;
}

/// Every action of G on A, by assigning automorphisms to a generating set
/// and keeping the homomorphic assignments.
inline std::vector<nacoh::Action> all_actions(GroupPtr const& G, GroupPtr const& A) {
  auto auts = automorphisms(*A);
  auto gens = nacoh::small_generating_set(G);
  std::vector<nacoh::Action> out;
  std::vector<std::size_t> pick(gens.size(), 0);
  while (true) {
    std::map<Elem, std::vector<Elem>> assigned;
    for (std::size_t i = 0; i < gens.size(); ++i) assigned[gens[i]] = auts[pick[i]];
    try {
      if (gens.empty())
        out.push_back(nacoh::trivial_action(G, A));
      else
        out.push_back(nacoh::expand_action(G, A, assigned));
    } catch (nacoh::Error const&) {
    }
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == auts.size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return out;
}

}  // namespace oracle
