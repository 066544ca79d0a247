#pragma once

// Finite groups as validated Cayley tables, subgroups, homomorphisms and
// quotients. Elements are dense indices 0..n-1; labels are cosmetic.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "nacoh/error.hpp"

namespace nacoh {

using Elem = std::uint32_t;
using Table = std::vector<std::vector<Elem>>;

class FiniteGroup;
using GroupPtr = std::shared_ptr<FiniteGroup const>;

/// Controls the associativity scan of validate_group. Tables with at most
/// `exhaustive_limit` triples are checked exhaustively, larger ones on
/// `samples` random triples drawn from `seed`.
struct AssocCheck {
  std::uint64_t exhaustive_limit = 1'000'000;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
};

class FiniteGroup {
 public:
  std::size_t order() const noexcept { return n_; }
  Elem identity() const noexcept { return identity_; }
  Elem mul(Elem x, Elem y) const noexcept { return mul_[std::size_t(x) * n_ + y]; }
  Elem inv(Elem x) const noexcept { return inv_[x]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const noexcept { return mul(mul(g, x), inv(g)); }
  /// x y x^-1 y^-1
  Elem commutator(Elem x, Elem y) const noexcept {
    return mul(mul(x, y), mul(inv(x), inv(y)));
  }
  Elem pow(Elem x, std::int64_t k) const {
    Elem base = k < 0 ? inv(x) : x;
    std::uint64_t e = k < 0 ? std::uint64_t(-k) : std::uint64_t(k);
    Elem acc = identity_;
    while (e != 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  std::size_t element_order(Elem x) const {
    std::size_t k = 1;
    for (Elem y = x; y != identity_; y = mul(y, x)) ++k;
    return k;
  }

  bool is_abelian() const noexcept { return abelian_; }

  std::string const& label(Elem x) const { return labels_[x]; }
  std::vector<std::string> const& labels() const noexcept { return labels_; }

  std::optional<Elem> find_label(std::string_view s) const {
    for (Elem x = 0; x < n_; ++x) {
      if (labels_[x] == s) return x;
    }
    return std::nullopt;
  }

  Table table() const {
    Table t(n_, std::vector<Elem>(n_));
    for (Elem x = 0; x < n_; ++x)
      for (Elem y = 0; y < n_; ++y) t[x][y] = mul(x, y);
    return t;
  }

  /// Validates a raw Cayley table: shape, identity, inverses, associativity.
  /// Identity and inverse are located, not assumed.
  static GroupPtr make(Table const& table, std::vector<std::string> labels = {},
                       AssocCheck const& check = {}) {
    std::size_t const n = table.size();
    if (n == 0) throw Error(ErrorKind::ShapeMismatch, "empty table");
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->mul_.resize(n * n);
    for (std::size_t x = 0; x < n; ++x) {
      if (table[x].size() != n) {
        throw Error(ErrorKind::ShapeMismatch,
                    detail::cat("row ", x, " has length ", table[x].size(),
                                ", expected ", n),
                    {std::int64_t(x)});
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (table[x][y] >= n) {
          throw Error(ErrorKind::ShapeMismatch,
                      detail::cat("entry (", x, ",", y, ") out of range"),
                      {std::int64_t(x), std::int64_t(y)});
        }
        g->mul_[x * n + y] = table[x][y];
      }
    }

    std::optional<Elem> e;
    for (Elem c = 0; c < n && !e; ++c) {
      bool ok = true;
      for (Elem x = 0; x < n && ok; ++x) ok = g->mul(c, x) == x && g->mul(x, c) == x;
      if (ok) e = c;
    }
    if (!e) throw Error(ErrorKind::NoIdentity, "no two-sided identity");
    g->identity_ = *e;

    g->inv_.assign(n, 0);
    for (Elem x = 0; x < n; ++x) {
      bool found = false;
      for (Elem y = 0; y < n && !found; ++y) {
        if (g->mul(x, y) == *e && g->mul(y, x) == *e) {
          g->inv_[x] = y;
          found = true;
        }
      }
      if (!found) {
        throw Error(ErrorKind::NoInverse, detail::cat("element ", x, " has no inverse"),
                    {std::int64_t(x)});
      }
    }

    auto assoc_fail = [&](Elem x, Elem y, Elem z) {
      return g->mul(g->mul(x, y), z) != g->mul(x, g->mul(y, z));
    };
    auto throw_assoc = [](Elem x, Elem y, Elem z) {
      throw Error(ErrorKind::NotAssociative,
                  detail::cat("(", x, "*", y, ")*", z, " != ", x, "*(", y, "*", z, ")"),
                  {x, y, z});
    };
    std::uint64_t const triples = std::uint64_t(n) * n * n;
    if (triples <= check.exhaustive_limit) {
      for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y)
          for (Elem z = 0; z < n; ++z)
            if (assoc_fail(x, y, z)) throw_assoc(x, y, z);
    } else {
      std::mt19937_64 rng(check.seed);
      std::uniform_int_distribution<Elem> pick(0, Elem(n - 1));
      for (std::uint64_t i = 0; i < check.samples; ++i) {
        Elem x = pick(rng), y = pick(rng), z = pick(rng);
        if (assoc_fail(x, y, z)) throw_assoc(x, y, z);
      }
    }

    g->abelian_ = true;
    for (Elem x = 0; x < n && g->abelian_; ++x)
      for (Elem y = x + 1; y < n && g->abelian_; ++y)
        g->abelian_ = g->mul(x, y) == g->mul(y, x);

    if (labels.empty()) {
      labels.resize(n);
      for (std::size_t x = 0; x < n; ++x) labels[x] = std::to_string(x);
    } else if (labels.size() != n) {
      throw Error(ErrorKind::ShapeMismatch, "label count differs from order");
    }
    g->labels_ = std::move(labels);
    return g;
  }

 private:
  FiniteGroup() = default;

  std::size_t n_ = 0;
  std::vector<Elem> mul_;
  Elem identity_ = 0;
  std::vector<Elem> inv_;
  std::vector<std::string> labels_;
  bool abelian_ = false;
};

inline GroupPtr validate_group(Table const& table, std::vector<std::string> labels = {},
                               AssocCheck const& check = {}) {
  return FiniteGroup::make(table, std::move(labels), check);
}

inline std::size_t exponent(FiniteGroup const& g) {
  std::size_t e = 1;
  for (Elem x = 0; x < g.order(); ++x) e = std::lcm(e, g.element_order(x));
  return e;
}

////////////////////////////////////////////////////////////////////////////////
// Subgroups
////////////////////////////////////////////////////////////////////////////////

struct Subgroup {
  GroupPtr parent;
  std::vector<Elem> elements;  // sorted

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(Elem x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  bool operator==(Subgroup const& o) const {
    return parent == o.parent && elements == o.elements;
  }
};

/// Checks identity, closure under products and inverses.
inline Subgroup make_subgroup(GroupPtr const& g, std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  Subgroup h{g, std::move(elems)};
  if (!h.contains(g->identity()))
    throw Error(ErrorKind::NotSubgroup, "identity missing");
  for (Elem x : h.elements) {
    if (!h.contains(g->inv(x)))
      throw Error(ErrorKind::NotSubgroup, "not closed under inverse", {x});
    for (Elem y : h.elements) {
      if (!h.contains(g->mul(x, y)))
        throw Error(ErrorKind::NotSubgroup, "not closed under product", {x, y});
    }
  }
  return h;
}

/// Closure of `gens` by saturation under right multiplication.
inline Subgroup generated_subgroup(GroupPtr const& g, std::vector<Elem> const& gens) {
  std::vector<char> in(g->order(), 0);
  std::deque<Elem> queue{g->identity()};
  in[g->identity()] = 1;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (Elem s : gens) {
      Elem y = g->mul(x, s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  Subgroup h{g, {}};
  for (Elem x = 0; x < g->order(); ++x)
    if (in[x]) h.elements.push_back(x);
  return h;
}

inline Subgroup whole_group(GroupPtr const& g) {
  Subgroup h{g, std::vector<Elem>(g->order())};
  std::iota(h.elements.begin(), h.elements.end(), Elem(0));
  return h;
}

inline Subgroup trivial_subgroup(GroupPtr const& g) { return Subgroup{g, {g->identity()}}; }

inline Subgroup center(GroupPtr const& g) {
  Subgroup z{g, {}};
  for (Elem x = 0; x < g->order(); ++x) {
    bool central = true;
    for (Elem y = 0; y < g->order() && central; ++y)
      central = g->mul(x, y) == g->mul(y, x);
    if (central) z.elements.push_back(x);
  }
  return z;
}

inline Subgroup commutator_subgroup(GroupPtr const& g) {
  std::vector<Elem> comms;
  for (Elem x = 0; x < g->order(); ++x)
    for (Elem y = 0; y < g->order(); ++y) comms.push_back(g->commutator(x, y));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return generated_subgroup(g, comms);
}

/// Returns an element g with g N g^-1 != N, or nothing when N is normal.
inline std::optional<Elem> normality_witness(Subgroup const& n) {
  auto const& g = *n.parent;
  for (Elem x = 0; x < g.order(); ++x)
    for (Elem y : n.elements)
      if (!n.contains(g.conj(x, y))) return x;
  return std::nullopt;
}

inline bool is_normal(Subgroup const& n) { return !normality_witness(n).has_value(); }

/// Greedy generating set: scan elements in index order, keep those not yet
/// generated. Deterministic.
inline std::vector<Elem> small_generating_set(GroupPtr const& g) {
  std::vector<Elem> gens;
  Subgroup h = trivial_subgroup(g);
  for (Elem x = 0; x < g->order() && h.size() < g->order(); ++x) {
    if (!h.contains(x)) {
      gens.push_back(x);
      h = generated_subgroup(g, gens);
    }
  }
  return gens;
}

////////////////////////////////////////////////////////////////////////////////
// Homomorphisms
////////////////////////////////////////////////////////////////////////////////

struct Homomorphism {
  GroupPtr dom;
  GroupPtr cod;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }
};

inline Homomorphism validate_homomorphism(GroupPtr dom, GroupPtr cod, std::vector<Elem> map) {
  if (map.size() != dom->order())
    throw Error(ErrorKind::ShapeMismatch, "homomorphism map has wrong length");
  for (Elem x : map)
    if (x >= cod->order()) throw Error(ErrorKind::ShapeMismatch, "homomorphism image out of range");
  for (Elem x = 0; x < dom->order(); ++x)
    for (Elem y = 0; y < dom->order(); ++y)
      if (map[dom->mul(x, y)] != cod->mul(map[x], map[y]))
        throw Error(ErrorKind::NotHomomorphism,
                    detail::cat("f(", x, "*", y, ") != f(", x, ")f(", y, ")"), {x, y});
  return Homomorphism{std::move(dom), std::move(cod), std::move(map)};
}

inline Homomorphism identity_hom(GroupPtr const& g) {
  std::vector<Elem> m(g->order());
  std::iota(m.begin(), m.end(), Elem(0));
  return Homomorphism{g, g, std::move(m)};
}

inline Homomorphism trivial_hom(GroupPtr const& dom, GroupPtr const& cod) {
  return Homomorphism{dom, cod, std::vector<Elem>(dom->order(), cod->identity())};
}

inline Subgroup kernel(Homomorphism const& f) {
  Subgroup k{f.dom, {}};
  for (Elem x = 0; x < f.dom->order(); ++x)
    if (f(x) == f.cod->identity()) k.elements.push_back(x);
  return k;
}

inline Subgroup image(Homomorphism const& f) {
  std::vector<Elem> im(f.map);
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return Subgroup{f.cod, std::move(im)};
}

////////////////////////////////////////////////////////////////////////////////
// Quotients and subgroups as groups
////////////////////////////////////////////////////////////////////////////////

struct Quotient {
  GroupPtr group;
  Homomorphism projection;
  std::vector<std::vector<Elem>> cosets;  // cosets[i] is the preimage of element i
};

/// G/N with cosets ordered by minimal representative index.
inline Quotient quotient(GroupPtr const& g, Subgroup const& n) {
  if (auto w = normality_witness(n)) {
    throw Error(ErrorKind::NotNormal, detail::cat("g N g^-1 != N for g = ", *w), {*w});
  }
  std::size_t const order = g->order();
  constexpr Elem unset = ~Elem(0);
  std::vector<Elem> coset_of(order, unset);
  std::vector<std::vector<Elem>> cosets;
  for (Elem x = 0; x < order; ++x) {
    if (coset_of[x] != unset) continue;
    Elem const id = Elem(cosets.size());
    std::vector<Elem> c;
    for (Elem h : n.elements) {
      Elem y = g->mul(x, h);
      coset_of[y] = id;
      c.push_back(y);
    }
    std::sort(c.begin(), c.end());
    cosets.push_back(std::move(c));
  }
  std::size_t const m = cosets.size();
  Table t(m, std::vector<Elem>(m));
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = g->label(cosets[i].front()) + "N";
    for (std::size_t j = 0; j < m; ++j)
      t[i][j] = coset_of[g->mul(cosets[i].front(), cosets[j].front())];
  }
  auto q = validate_group(t, std::move(labels));
  auto proj = validate_homomorphism(g, q, coset_of);
  return Quotient{q, std::move(proj), std::move(cosets)};
}

struct Embedding {
  GroupPtr group;
  Homomorphism inclusion;  // group -> parent
};

/// Renumbers a subgroup densely (in increasing parent index order).
inline Embedding subgroup_as_group(Subgroup const& h) {
  auto const& g = *h.parent;
  std::size_t const m = h.size();
  std::vector<Elem> local(g.order(), ~Elem(0));
  for (std::size_t i = 0; i < m; ++i) local[h.elements[i]] = Elem(i);
  Table t(m, std::vector<Elem>(m));
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    labels[i] = g.label(h.elements[i]);
    for (std::size_t j = 0; j < m; ++j) {
      Elem p = g.mul(h.elements[i], h.elements[j]);
      if (local[p] == ~Elem(0))
        throw Error(ErrorKind::NotSubgroup, "not closed under product",
                    {h.elements[i], h.elements[j]});
      t[i][j] = local[p];
    }
  }
  auto sub = validate_group(t, std::move(labels));
  return Embedding{sub, validate_homomorphism(sub, h.parent, h.elements)};
}

/// G x H, element (x, y) at index x * |H| + y.
inline GroupPtr direct_product(FiniteGroup const& a, FiniteGroup const& b) {
  std::size_t const na = a.order(), nb = b.order(), n = na * nb;
  Table t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (Elem x = 0; x < n; ++x) {
    labels[x] = "(" + a.label(Elem(x / nb)) + "," + b.label(Elem(x % nb)) + ")";
    for (Elem y = 0; y < n; ++y)
      t[x][y] = Elem(a.mul(Elem(x / nb), Elem(y / nb)) * nb + b.mul(Elem(x % nb), Elem(y % nb)));
  }
  return validate_group(t, std::move(labels));
}

}  // namespace nacoh
