#pragma once

// Named finite groups. Every constructor puts the identity at index 0.

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh::catalog {

namespace detail {

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline void require(bool ok, std::string const& msg) {
  if (!ok) throw Error(ErrorKind::ParamOutOfRange, msg);
}

}  // namespace detail

inline GroupPtr cyclic(std::size_t n) {
  detail::require(n >= 1 && n <= 4096, "cyclic: order must be in [1, 4096]");
  Table t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    labels[x] = std::to_string(x);
    for (std::size_t y = 0; y < n; ++y) t[x][y] = Elem((x + y) % n);
  }
  return validate_group(t, std::move(labels));
}

/// Symmetries of the n-gon, order 2n. Index i is r^i, index n+i is s r^i.
inline GroupPtr dihedral(std::size_t n) {
  detail::require(n >= 1 && n <= 512, "dihedral: n must be in [1, 512]");
  std::size_t const order = 2 * n;
  Table t(order, std::vector<Elem>(order));
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t const f1 = x / n, i = x % n;
    std::string rot = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
    labels[x] = f1 ? "s" + rot : (rot.empty() ? "1" : rot);
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t const f2 = y / n, j = y % n;
      // s^f1 r^i s^f2 r^j = s^(f1+f2) r^((f2 ? -i : i) + j)
      std::size_t const rot_part = ((f2 ? n - i : i) + j) % n;
      t[x][y] = Elem(((f1 + f2) % 2) * n + rot_part);
    }
  }
  return validate_group(t, std::move(labels));
}

/// Sym(n) for n <= 5; permutations of {1..n} in lexicographic order of their
/// one-line form, composed as (st)(x) = s(t(x)). Labels use cycle notation.
inline GroupPtr symmetric(std::size_t n) {
  detail::require(n >= 1 && n <= 5, "symmetric: degree must be in [1, 5]");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t(0));
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::size_t const order = perms.size();
  auto index_of = [&](std::vector<std::size_t> const& q) {
    return Elem(std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
  };
  Table t(order, std::vector<Elem>(order));
  std::vector<std::string> labels(order);
  for (std::size_t a = 0; a < order; ++a) {
    std::string lbl;
    std::vector<char> seen(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (seen[s] || perms[a][s] == s) continue;
      lbl += "(";
      for (std::size_t c = s; !seen[c]; c = perms[a][c]) {
        seen[c] = 1;
        if (lbl.back() != '(') lbl += " ";
        lbl += std::to_string(c + 1);
      }
      lbl += ")";
    }
    labels[a] = lbl.empty() ? "()" : lbl;
    for (std::size_t b = 0; b < order; ++b) {
      std::vector<std::size_t> c(n);
      for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(c);
    }
  }
  return validate_group(t, std::move(labels));
}

/// Elements in the order 1, -1, i, -i, j, -j, k, -k.
inline GroupPtr quaternion8() {
  // unit product table on {1, i, j, k}: sign and unit of u*v
  constexpr std::array<std::array<int, 4>, 4> sign{{{1, 1, 1, 1},
                                                    {1, -1, 1, -1},
                                                    {1, -1, -1, 1},
                                                    {1, 1, -1, -1}}};
  constexpr std::array<std::array<int, 4>, 4> unit{{{0, 1, 2, 3},
                                                    {1, 0, 3, 2},
                                                    {2, 3, 0, 1},
                                                    {3, 2, 1, 0}}};
  Table t(8, std::vector<Elem>(8));
  std::vector<std::string> const labels{"1", "-1", "i", "-i", "j", "-j", "k", "-k"};
  for (int x = 0; x < 8; ++x) {
    for (int y = 0; y < 8; ++y) {
      int const ux = x / 2, uy = y / 2;
      int s = (x % 2 ? -1 : 1) * (y % 2 ? -1 : 1) * sign[ux][uy];
      t[x][y] = Elem(2 * unit[ux][uy] + (s < 0 ? 1 : 0));
    }
  }
  return validate_group(t, labels);
}

/// Upper unitriangular 3x3 matrices over F_p, order p^3. (a,b,c) is the
/// matrix with a, b on the superdiagonal and c in the corner, at index
/// a p^2 + b p + c.
inline GroupPtr heisenberg(std::size_t p) {
  detail::require(detail::is_prime(p) && p <= 7, "heisenberg: p must be a prime <= 7");
  std::size_t const n = p * p * p;
  Table t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t const a = x / (p * p), b = (x / p) % p, c = x % p;
    labels[x] = "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      std::size_t const a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      std::size_t const na = (a + a2) % p, nb = (b + b2) % p, nc = (c + c2 + a * b2) % p;
      t[x][y] = Elem(na * p * p + nb * p + nc);
    }
  }
  return validate_group(t, std::move(labels));
}

/// (Z/p)^k, vectors stored in base-p digits with the first coordinate most
/// significant.
inline GroupPtr elementary_abelian(std::size_t p, std::size_t k) {
  detail::require(detail::is_prime(p), "elementary_abelian: p must be prime");
  std::size_t n = 1;
  for (std::size_t i = 0; i < k; ++i) {
    n *= p;
    detail::require(n <= 4096, "elementary_abelian: order exceeds 4096");
  }
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> d(k);
    for (std::size_t i = k; i-- > 0;) {
      d[i] = x % p;
      x /= p;
    }
    return d;
  };
  Table t(n, std::vector<Elem>(n));
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto dx = digits(x);
    std::string lbl = "(";
    for (std::size_t i = 0; i < k; ++i) lbl += (i ? "," : "") + std::to_string(dx[i]);
    labels[x] = lbl + ")";
    for (std::size_t y = 0; y < n; ++y) {
      auto dy = digits(y);
      std::size_t z = 0;
      for (std::size_t i = 0; i < k; ++i) z = z * p + (dx[i] + dy[i]) % p;
      t[x][y] = Elem(z);
    }
  }
  return validate_group(t, std::move(labels));
}

}  // namespace nacoh::catalog
