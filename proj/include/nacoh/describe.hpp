#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <vector>

#include "nacoh/group.hpp"
#include "nacoh/integer_matrix.hpp"

namespace nacoh {

struct GroupDescriptor {
  std::size_t order = 0;
  bool is_abelian = false;
  std::vector<std::uint64_t> abelian_invariants;  // invariant factors of G/[G,G]
  std::size_t exponent = 0;

  bool operator==(GroupDescriptor const&) const = default;
};

/// Invariant factors of a finite abelian group. Relations are the Schreier
/// generators v_q + e_i - v_{q s_i} of the kernel of Z^k -> A, where v_q is
/// the exponent vector of a breadth-first word for q.
inline std::vector<std::uint64_t> abelian_invariants(GroupPtr const& a) {
  if (!a->is_abelian()) throw Error(ErrorKind::NotAbelian, "abelian_invariants needs an abelian group");
  auto const gens = small_generating_set(a);
  std::size_t const k = gens.size();
  if (k == 0) return {};
  std::size_t const n = a->order();
  std::vector<std::vector<std::int64_t>> word(n);
  std::vector<char> seen(n, 0);
  word[a->identity()] = std::vector<std::int64_t>(k, 0);
  seen[a->identity()] = 1;
  std::deque<Elem> queue{a->identity()};
  while (!queue.empty()) {
    Elem q = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < k; ++i) {
      Elem y = a->mul(q, gens[i]);
      if (!seen[y]) {
        seen[y] = 1;
        word[y] = word[q];
        ++word[y][i];
        queue.push_back(y);
      }
    }
  }
  IntMatrix rel(n * k, k);
  for (Elem q = 0; q < n; ++q)
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t const row = std::size_t(q) * k + i;
      Elem y = a->mul(q, gens[i]);
      for (std::size_t j = 0; j < k; ++j)
        rel(row, j) = word[q][j] + (i == j ? 1 : 0) - word[y][j];
    }
  auto f = smith_normal_form(rel);
  std::vector<std::uint64_t> inv;
  for (auto const& d : f.diagonal())
    if (d > 1) inv.push_back(static_cast<std::uint64_t>(d));
  return inv;
}

inline GroupDescriptor describe(GroupPtr const& g) {
  GroupDescriptor d;
  d.order = g->order();
  d.is_abelian = g->is_abelian();
  d.exponent = exponent(*g);
  if (d.is_abelian) {
    d.abelian_invariants = abelian_invariants(g);
  } else {
    d.abelian_invariants = abelian_invariants(quotient(g, commutator_subgroup(g)).group);
  }
  return d;
}

}  // namespace nacoh
