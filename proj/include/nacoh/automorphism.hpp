#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

struct AutGroup {
  GroupPtr group;        // elements index automorphisms, sorted lexicographically
  Action action;         // natural action of Aut(A) on A
  std::optional<Elem> index_of(std::vector<Elem> const& perm) const {
    for (Elem s = 0; s < action.table.size(); ++s)
      if (action.table[s] == perm) return s;
    return std::nullopt;
  }
};

inline constexpr std::size_t default_aut_bound = 24;

/// All automorphisms of A, found by assigning images to a greedy generating
/// set (orders must match) and propagating along the Cayley graph.
/// Composition is (st)(a) = s(t(a)).
inline AutGroup automorphism_group(GroupPtr const& a, std::size_t bound = default_aut_bound) {
  if (a->order() > bound)
    throw Error(ErrorKind::TooLarge,
                detail::cat("|A| = ", a->order(), " exceeds automorphism bound ", bound),
                {std::int64_t(a->order()), std::int64_t(bound)});
  std::size_t const n = a->order();
  auto const gens = small_generating_set(a);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::size_t const ord = a->element_order(gens[i]);
    for (Elem x = 0; x < n; ++x)
      if (a->element_order(x) == ord) candidates[i].push_back(x);
  }

  auto extend = [&](std::vector<Elem> const& images) -> std::optional<std::vector<Elem>> {
    constexpr Elem unset = ~Elem(0);
    std::vector<Elem> phi(n, unset);
    phi[a->identity()] = a->identity();
    std::deque<Elem> queue{a->identity()};
    while (!queue.empty()) {
      Elem x = queue.front();
      queue.pop_front();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        Elem y = a->mul(x, gens[i]);
        Elem v = a->mul(phi[x], images[i]);
        if (phi[y] == unset) {
          phi[y] = v;
          queue.push_back(y);
        } else if (phi[y] != v) {
          return std::nullopt;
        }
      }
    }
    std::vector<char> hit(n, 0);
    for (Elem v : phi) {
      if (hit[v]) return std::nullopt;
      hit[v] = 1;
    }
    return phi;
  };

  std::vector<std::vector<Elem>> autos;
  std::vector<Elem> images(gens.size());
  std::vector<std::size_t> pos(gens.size(), 0);
  // odometer over candidate image tuples
  while (true) {
    for (std::size_t i = 0; i < gens.size(); ++i) images[i] = candidates[i][pos[i]];
    if (auto phi = extend(images)) autos.push_back(std::move(*phi));
    std::size_t i = 0;
    while (i < gens.size() && ++pos[i] == candidates[i].size()) pos[i++] = 0;
    if (i == gens.size()) break;
  }
  std::sort(autos.begin(), autos.end());

  std::size_t const m = autos.size();
  std::map<std::vector<Elem>, Elem> index;
  for (std::size_t s = 0; s < m; ++s) index.emplace(autos[s], Elem(s));
  Table t(m, std::vector<Elem>(m));
  std::vector<std::string> labels(m);
  for (std::size_t s = 0; s < m; ++s) {
    labels[s] = "aut" + std::to_string(s);
    for (std::size_t u = 0; u < m; ++u) {
      std::vector<Elem> c(n);
      for (Elem x = 0; x < n; ++x) c[x] = autos[s][autos[u][x]];
      t[s][u] = index.at(c);
    }
  }
  auto group = validate_group(t, std::move(labels));
  auto action = validate_action(group, a, autos);
  return AutGroup{group, std::move(action)};
}

}  // namespace nacoh
