#pragma once

// Finitely presented groups: words, and Todd-Coxeter enumeration of the
// cosets of the trivial subgroup, which yields the Cayley table when the
// presented group is finite.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "nacoh/error.hpp"
#include "nacoh/group.hpp"

namespace nacoh {

struct Letter {
  std::size_t gen = 0;
  std::int64_t exp = 1;
  bool operator==(Letter const&) const = default;
};
using Word = std::vector<Letter>;

/// Whitespace-separated tokens `x`, `x^k` or `x^-k`, e.g. "a b a^-1 b^-1".
inline Word parse_word(std::string_view text, std::vector<std::string> const& gens) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    std::string_view name = tok;
    std::int64_t exp = 1;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      std::string_view e = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(e.data(), e.data() + e.size(), exp);
      if (ec != std::errc{} || ptr != e.data() + e.size() || e.empty())
        throw Error(ErrorKind::Syntax, detail::cat("bad exponent in '", tok, "'"));
    }
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) throw Error(ErrorKind::UnresolvedReference, detail::cat("unknown generator '", name, "'"));
    if (exp != 0) w.push_back(Letter{std::size_t(it - gens.begin()), exp});
  }
  return w;
}

inline std::string format_word(Word const& w, std::vector<std::string> const& gens) {
  std::string out;
  for (auto const& l : w) {
    if (!out.empty()) out += ' ';
    out += gens[l.gen];
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

struct PresentedGroup {
  GroupPtr group;
  std::vector<Elem> generator_images;  // element represented by each generator
};

namespace detail {

class CosetTable {
 public:
  static constexpr std::int64_t undef = -1;

  CosetTable(std::size_t cols, std::size_t limit) : cols_(cols), limit_(limit) { add_row(); }

  std::size_t size() const noexcept { return table_.size(); }
  bool alive(std::size_t c) const { return parent_[c] == c; }
  std::int64_t get(std::size_t c, std::size_t x) const { return table_[c][x]; }

  void define(std::size_t c, std::size_t x) {
    if (table_.size() >= limit_)
      throw Error(ErrorKind::CosetLimit, "coset enumeration exceeded its limit", {std::int64_t(limit_)});
    std::size_t n = add_row();
    table_[c][x] = std::int64_t(n);
    table_[n][x ^ 1] = std::int64_t(c);
  }

  void scan_and_fill(std::size_t c, std::vector<std::size_t> const& w) {
    std::size_t f = c, b = c;
    std::ptrdiff_t i = 0, j = std::ptrdiff_t(w.size()) - 1;
    while (true) {
      while (i <= j && table_[f][w[i]] != undef) f = std::size_t(table_[f][w[i++]]);
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][w[j] ^ 1] != undef) b = std::size_t(table_[b][w[j--] ^ 1]);
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = std::int64_t(b);
        table_[b][w[i] ^ 1] = std::int64_t(f);
        return;
      }
      define(f, w[i]);
    }
  }

 private:
  std::size_t add_row() {
    table_.emplace_back(cols_, undef);
    parent_.push_back(parent_.size());
    return table_.size() - 1;
  }

  std::size_t rep(std::size_t k) {
    std::size_t r = k;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[k] != r) {
      std::size_t next = parent_[k];
      parent_[k] = r;
      k = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    if (k > l) std::swap(k, l);
    parent_[l] = k;
    queue.push_back(l);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t e = queue[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        if (table_[e][x] == undef) continue;
        std::size_t f = std::size_t(table_[e][x]);
        table_[f][x ^ 1] = undef;
        std::size_t e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] != undef) {
          merge(f1, std::size_t(table_[e1][x]), queue);
        } else if (table_[f1][x ^ 1] != undef) {
          merge(e1, std::size_t(table_[f1][x ^ 1]), queue);
        } else {
          table_[e1][x] = std::int64_t(f1);
          table_[f1][x ^ 1] = std::int64_t(e1);
        }
      }
    }
  }

  std::size_t cols_;
  std::size_t limit_;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::size_t> parent_;
};

/// Column of a unit letter: generator i is column 2i, its inverse 2i+1.
inline std::vector<std::size_t> unit_letters(Word const& w) {
  std::vector<std::size_t> out;
  for (auto const& l : w) {
    std::size_t const col = 2 * l.gen + (l.exp < 0 ? 1 : 0);
    std::int64_t const reps = l.exp < 0 ? -l.exp : l.exp;
    for (std::int64_t t = 0; t < reps; ++t) out.push_back(col);
  }
  return out;
}

}  // namespace detail

/// Cayley table of <gens | relators>, by HLT coset enumeration over the
/// trivial subgroup. Elements are numbered breadth-first from the identity
/// along generator columns (g1, g1^-1, g2, ...), and labelled by those words.
inline PresentedGroup enumerate_presentation(std::vector<std::string> const& gens,
                                             std::vector<Word> const& relators,
                                             std::size_t max_cosets = 100'000) {
  std::size_t const k = gens.size();
  std::size_t const cols = 2 * k;
  for (auto const& r : relators)
    for (auto const& l : r)
      if (l.gen >= k) throw Error(ErrorKind::ShapeMismatch, "relator uses an unknown generator");

  std::vector<std::vector<std::size_t>> rels;
  for (auto const& r : relators) rels.push_back(detail::unit_letters(r));

  detail::CosetTable ct(cols, max_cosets);
  for (std::size_t c = 0; c < ct.size(); ++c) {
    for (auto const& r : rels) {
      if (!ct.alive(c)) break;
      ct.scan_and_fill(c, r);
    }
    if (!ct.alive(c)) continue;
    for (std::size_t x = 0; x < cols; ++x)
      if (ct.get(c, x) == detail::CosetTable::undef) ct.define(c, x);
  }

  // breadth-first renumbering of the live cosets
  std::vector<std::int64_t> number(ct.size(), -1);
  std::vector<std::size_t> order{0};
  std::vector<std::vector<std::size_t>> words{{}};
  number[0] = 0;
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    std::size_t c = order[qi];
    for (std::size_t x = 0; x < cols; ++x) {
      std::size_t d = std::size_t(ct.get(c, x));
      if (number[d] >= 0) continue;
      number[d] = std::int64_t(order.size());
      order.push_back(d);
      auto w = words[qi];
      w.push_back(x);
      words.push_back(std::move(w));
    }
  }
  std::size_t const n = order.size();

  // right multiplication by a unit letter, in the new numbering
  std::vector<std::vector<Elem>> step(n, std::vector<Elem>(cols));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t x = 0; x < cols; ++x) step[i][x] = Elem(number[std::size_t(ct.get(order[i], x))]);

  Table t(n, std::vector<Elem>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Elem e = Elem(x);
      for (std::size_t col : words[y]) e = step[e][col];
      t[x][y] = e;
    }

  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    Word w;
    for (std::size_t col : words[i]) {
      Letter l{col / 2, (col & 1) ? -1 : 1};
      if (!w.empty() && w.back().gen == l.gen && (w.back().exp > 0) == (l.exp > 0))
        w.back().exp += l.exp;
      else
        w.push_back(l);
    }
    labels[i] = w.empty() ? "1" : format_word(w, gens);
  }

  PresentedGroup out;
  out.group = validate_group(t, std::move(labels));
  for (std::size_t g = 0; g < k; ++g) out.generator_images.push_back(step[0][2 * g]);
  return out;
}

}  // namespace nacoh
