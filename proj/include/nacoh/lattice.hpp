#pragma once

// Integral representations of finitely presented finite groups on Z^n, the
// lattices of derivations and principal derivations, and H^1 as a finitely
// generated abelian group.

#include <cstddef>
#include <cstdint>
#include <map>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "nacoh/action.hpp"
#include "nacoh/catalog.hpp"
#include "nacoh/cohomology.hpp"
#include "nacoh/coset_enumeration.hpp"
#include "nacoh/error.hpp"
#include "nacoh/integer_matrix.hpp"

namespace nacoh {

struct IntRep {
  std::size_t rank = 0;
  std::vector<std::string> gens;
  std::vector<IntMatrix> rho;
  std::vector<Word> relators;
};

/// Inverse of a matrix with determinant +-1.
inline IntMatrix unimodular_inverse(IntMatrix const& m) {
  auto f = smith_normal_form(m);
  if (m.rows() != m.cols() || f.rank != m.rows() || f.S != IntMatrix::identity(m.rows()))
    throw Error(ErrorKind::InvalidRep, "matrix is not invertible over the integers");
  return f.V * f.U;
}

inline IntMatrix evaluate(IntRep const& rep, Word const& w) {
  IntMatrix out = IntMatrix::identity(rep.rank);
  for (auto const& l : w) {
    IntMatrix step = l.exp < 0 ? unimodular_inverse(rep.rho[l.gen]) : rep.rho[l.gen];
    std::int64_t const reps = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t t = 0; t < reps; ++t) out = out * step;
  }
  return out;
}

inline IntRep make_int_rep(std::size_t rank, std::vector<std::string> gens, std::vector<IntMatrix> rho,
                           std::vector<Word> relators) {
  if (gens.size() != rho.size()) throw Error(ErrorKind::ShapeMismatch, "one matrix per generator is required");
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (rho[i].rows() != rank || rho[i].cols() != rank)
      throw Error(ErrorKind::ShapeMismatch, detail::cat("matrix of ", gens[i], " is not ", rank, "x", rank),
                  {std::int64_t(i)});
    Integer d = determinant(rho[i]);
    if (d != 1 && d != -1)
      throw Error(ErrorKind::InvalidRep, detail::cat("matrix of ", gens[i], " has determinant ", d),
                  {std::int64_t(i)});
  }
  IntRep rep{rank, std::move(gens), std::move(rho), std::move(relators)};
  for (std::size_t r = 0; r < rep.relators.size(); ++r) {
    for (auto const& l : rep.relators[r])
      if (l.gen >= rep.gens.size()) throw Error(ErrorKind::ShapeMismatch, "relator uses an unknown generator");
    if (evaluate(rep, rep.relators[r]) != IntMatrix::identity(rank))
      throw Error(ErrorKind::InvalidRep,
                  detail::cat("relator ", format_word(rep.relators[r], rep.gens), " does not act trivially"),
                  {std::int64_t(r)});
  }
  return rep;
}

/// Row block r is the linear map (x_1..x_k) -> alpha(relator r), with
/// alpha(w s) = alpha(w) + rho(w) x_s and alpha(w s^-1) = alpha(w) - rho(w s^-1) x_s.
inline IntMatrix relator_matrix(IntRep const& rep) {
  std::size_t const n = rep.rank, k = rep.gens.size();
  std::vector<IntMatrix> inv;
  for (auto const& m : rep.rho) inv.push_back(unimodular_inverse(m));
  IntMatrix c(n * rep.relators.size(), n * k);
  for (std::size_t r = 0; r < rep.relators.size(); ++r) {
    IntMatrix prefix = IntMatrix::identity(n);
    for (auto const& l : rep.relators[r]) {
      std::int64_t const reps = l.exp < 0 ? -l.exp : l.exp;
      for (std::int64_t t = 0; t < reps; ++t) {
        if (l.exp < 0) prefix = prefix * inv[l.gen];
        Integer const sign = l.exp < 0 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) c(r * n + i, l.gen * n + j) += sign * prefix(i, j);
        if (l.exp > 0) prefix = prefix * rep.rho[l.gen];
      }
    }
  }
  return c;
}

/// Columns form a basis of the derivations, as generator images stacked
/// into Z^{nk}.
inline IntMatrix derivation_lattice(IntRep const& rep) {
  auto c = relator_matrix(rep);
  std::size_t const dim = rep.rank * rep.gens.size();
  if (c.rows() == 0) return IntMatrix::identity(dim);
  auto f = smith_normal_form(c);
  IntMatrix basis(dim, dim - f.rank);
  for (std::size_t j = f.rank; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) basis(i, j - f.rank) = f.V(i, j);
  return basis;
}

/// Column span is the principal derivations a -> (a - rho(g_i) a)_i.
inline IntMatrix principal_lattice(IntRep const& rep) {
  std::size_t const n = rep.rank, k = rep.gens.size();
  IntMatrix p(n * k, n);
  for (std::size_t g = 0; g < k; ++g)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) p(g * n + i, j) = (i == j ? 1 : 0) - rep.rho[g](i, j);
  return p;
}

struct FgAbelianGroup {
  std::vector<std::uint64_t> invariant_factors;  // each >= 2, dividing the next
  std::size_t free_rank = 0;

  bool operator==(FgAbelianGroup const&) const = default;
  bool is_trivial() const noexcept { return invariant_factors.empty() && free_rank == 0; }

  /// Invariant factors of this group tensored with Z/m.
  std::vector<std::uint64_t> tensor_mod(std::uint64_t m) const {
    std::vector<std::uint64_t> out;
    for (auto d : invariant_factors)
      if (auto g = std::gcd(d, m); g > 1) out.push_back(g);
    if (m > 1) out.insert(out.end(), free_rank, m);
    return out;
  }
};

inline std::uint64_t to_u64(Integer const& x) {
  if (x < 0 || x > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorKind::TooLarge, "invariant factor does not fit in 64 bits");
  return static_cast<std::uint64_t>(x);
}

/// Invariants of span(K) / span(P), where K has independent columns and
/// every column of P lies in span(K).
inline FgAbelianGroup lattice_quotient(IntMatrix const& basis, IntMatrix const& sub) {
  std::size_t const d = basis.cols();
  FgAbelianGroup out;
  if (d == 0) {
    if (!sub.is_zero()) throw Error(ErrorKind::InclusionViolated, "principal lattice is not inside zero lattice");
    return out;
  }
  auto fk = smith_normal_form(basis);
  IntMatrix coords(d, sub.cols());
  for (std::size_t j = 0; j < sub.cols(); ++j) {
    auto y = solve_integer(fk, sub.column(j));
    if (!y)
      throw Error(ErrorKind::InclusionViolated, "principal derivation outside the derivation lattice",
                  {std::int64_t(j)});
    for (std::size_t i = 0; i < d; ++i) coords(i, j) = (*y)(i, 0);
  }
  std::size_t rank = 0;
  if (coords.cols() > 0) {
    auto fs = smith_normal_form(coords);
    rank = fs.rank;
    for (std::size_t i = 0; i < fs.rank; ++i)
      if (fs.S(i, i) > 1) out.invariant_factors.push_back(to_u64(fs.S(i, i)));
  }
  out.free_rank = d - rank;
  return out;
}

inline FgAbelianGroup h1_fg_abelian(IntRep const& rep) {
  return lattice_quotient(derivation_lattice(rep), principal_lattice(rep));
}

////////////////////////////////////////////////////////////////////////////////
// Reduction mod m and comparison with the finite pipeline
////////////////////////////////////////////////////////////////////////////////

struct FiniteReduction {
  PresentedGroup presented;
  Action action;  // on (Z/m)^n, coordinates big-endian in the element index
};

inline FiniteReduction reduce_mod(IntRep const& rep, std::uint64_t m, std::size_t max_cosets = 100'000) {
  if (m < 2) throw Error(ErrorKind::ParamOutOfRange, "modulus must be at least 2", {std::int64_t(m)});
  if (rep.rank == 0) throw Error(ErrorKind::ParamOutOfRange, "rank must be positive");
  auto pg = enumerate_presentation(rep.gens, rep.relators, max_cosets);
  GroupPtr a = catalog::cyclic(m);
  for (std::size_t i = 1; i < rep.rank; ++i) a = direct_product(*a, *catalog::cyclic(m));

  std::size_t const n = rep.rank, size = a->order();
  auto decode = [&](std::size_t x) {
    std::vector<std::uint64_t> v(n);
    for (std::size_t i = n; i-- > 0;) {
      v[i] = x % m;
      x /= m;
    }
    return v;
  };
  std::map<Elem, std::vector<Elem>> assigned;
  for (std::size_t g = 0; g < rep.gens.size(); ++g) {
    std::vector<Elem> perm(size);
    for (std::size_t x = 0; x < size; ++x) {
      auto v = decode(x);
      std::size_t y = 0;
      for (std::size_t i = 0; i < n; ++i) {
        Integer s = 0;
        for (std::size_t j = 0; j < n; ++j) s += rep.rho[g](i, j) * v[j];
        s %= m;
        if (s < 0) s += m;
        y = y * m + static_cast<std::size_t>(s);
      }
      perm[x] = Elem(y);
    }
    Elem e = pg.generator_images[g];
    if (auto it = assigned.find(e); it != assigned.end() && it->second != perm)
      throw Error(ErrorKind::NotHomomorphic, "equal generators act differently", {std::int64_t(g)});
    assigned[e] = std::move(perm);
  }
  if (assigned.empty()) assigned[pg.group->identity()] = trivial_action(pg.group, a).table[0];
  auto act = expand_action(pg.group, a, assigned);
  return FiniteReduction{std::move(pg), std::move(act)};
}

struct LatticeCrosscheck {
  FgAbelianGroup lattice;
  std::uint64_t modulus = 0;
  std::size_t group_order = 0;
  std::vector<std::uint64_t> lattice_mod_m;  // H^1(G, Z^n) (x) Z/m
  std::vector<std::uint64_t> finite;         // H^1(G, (Z/m)^n) from the finite pipeline
  bool coprime = false;                      // gcd(|G|, m) = 1
  bool equal = false;
  bool embeds = false;                       // |lattice_mod_m| divides |finite|
};

/// H^1(G, Z^n) (x) Z/m injects into H^1(G, (Z/m)^n) with cokernel the
/// m-torsion of H^2(G, Z^n); equality is reported, not assumed.
inline LatticeCrosscheck crosscheck_finite(IntRep const& rep, std::uint64_t m, CohOptions const& opts = {}) {
  LatticeCrosscheck out;
  out.lattice = h1_fg_abelian(rep);
  out.modulus = m;
  out.lattice_mod_m = out.lattice.tensor_mod(m);
  auto red = reduce_mod(rep, m);
  out.group_order = red.presented.group->order();
  out.coprime = std::gcd<std::uint64_t>(out.group_order, m) == 1;
  auto h = h1_module(red.action, opts);
  out.finite = h.group->descriptor.abelian_invariants;
  out.equal = out.finite == out.lattice_mod_m;
  std::uint64_t lo = 1, hi = 1;
  for (auto d : out.lattice_mod_m) lo *= d;
  for (auto d : out.finite) hi *= d;
  out.embeds = hi % lo == 0;
  return out;
}

}  // namespace nacoh
