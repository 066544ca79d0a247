#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"

using namespace nacoh;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (Error const& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ShapeMismatch;
}

using Dense = std::vector<std::vector<std::int64_t>>;

IntMatrix from_dense(Dense const& d) {
  IntMatrix m(d.size(), d.empty() ? 0 : d[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = d[i][j];
  return m;
}

Dense random_dense(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> v(lo, hi);
  Dense d(r, std::vector<std::int64_t>(c));
  for (auto& row : d)
    for (auto& x : row) x = v(rng);
  return d;
}

/// Product of random elementary operations.
IntMatrix random_unimodular(std::mt19937& rng, std::size_t n) {
  auto m = IntMatrix::identity(n);
  if (n < 2) return m;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> q(-2, 2);
  for (int t = 0; t < 6; ++t) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a != b) m.add_row(a, b, q(rng));
    if (t % 3 == 0) m.swap_rows(a, b);
  }
  return m;
}

IntRep rep_of(std::size_t rank, std::vector<std::string> gens, std::vector<IntMatrix> rho,
              std::vector<std::string> const& relators) {
  std::vector<Word> words;
  for (auto const& r : relators) words.push_back(parse_word(r, gens));
  return make_int_rep(rank, std::move(gens), std::move(rho), std::move(words));
}

IntRep conjugate(IntRep const& rep, IntMatrix const& w) {
  auto winv = unimodular_inverse(w);
  std::vector<IntMatrix> rho;
  for (auto const& m : rep.rho) rho.push_back(w * m * winv);
  return make_int_rep(rep.rank, rep.gens, std::move(rho), rep.relators);
}

}  // namespace

TEST_CASE("Smith form of a small matrix") {
  auto f = smith_normal_form(IntMatrix{{2, 4}, {6, 8}});
  CHECK(f.diagonal() == std::vector<Integer>{2, 4});
  CHECK(f.U * IntMatrix{{2, 4}, {6, 8}} * f.V == f.S);
  auto z = smith_normal_form(IntMatrix(2, 3));
  CHECK(z.rank == 0);
}

TEST_CASE("Smith invariants agree with gcds of minors") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  for (int t = 0; t < 200; ++t) {
    auto d = random_dense(rng, dim(rng), dim(rng), -6, 6);
    auto f = smith_normal_form(from_dense(d));
    std::vector<std::int64_t> got;
    for (std::size_t i = 0; i < f.rank; ++i) got.push_back(std::int64_t(f.S(i, i)));
    CHECK(got == oracle::smith_invariants(d));
  }
}

TEST_CASE("property: U M V = S with unimodular U and V") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 100; ++t) {
    auto m = from_dense(random_dense(rng, dim(rng), dim(rng), -20, 20));
    auto f = smith_normal_form(m);
    CHECK(f.U * m * f.V == f.S);
    CHECK(abs(determinant(f.U)) == 1);
    CHECK(abs(determinant(f.V)) == 1);
    for (std::size_t i = 0; i < f.S.rows(); ++i)
      for (std::size_t j = 0; j < f.S.cols(); ++j)
        if (i != j) CHECK(f.S(i, j) == 0);
    for (std::size_t i = 0; i < f.rank; ++i) {
      CHECK(f.S(i, i) > 0);
      if (i + 1 < f.rank) CHECK(f.S(i + 1, i + 1) % f.S(i, i) == 0);
    }
    for (std::size_t i = f.rank; i < std::min(f.S.rows(), f.S.cols()); ++i) CHECK(f.S(i, i) == 0);
    if (m.rows() == m.cols()) {
      Integer p = 1;
      for (auto const& x : f.diagonal()) p *= x;
      CHECK(abs(determinant(m)) == p);
    }
  }
}

TEST_CASE("solve_integer") {
  auto f = smith_normal_form(IntMatrix{{2, 0}, {0, 3}});
  auto y = solve_integer(f, IntMatrix{{4}, {9}});
  REQUIRE(y);
  CHECK(*y == IntMatrix{{2}, {3}});
  CHECK_FALSE(solve_integer(f, IntMatrix{{1}, {0}}));
}

TEST_CASE("coset enumeration orders") {
  auto order = [](std::vector<std::string> gens, std::vector<std::string> rels) {
    std::vector<Word> w;
    for (auto const& r : rels) w.push_back(parse_word(r, gens));
    return enumerate_presentation(gens, w).group->order();
  };
  CHECK(order({"t"}, {"t^2"}) == 2);
  CHECK(order({"t"}, {"t^5"}) == 5);
  CHECK(order({"a", "b"}, {"a^3", "b^2", "a b a b"}) == 6);
  CHECK(order({"a", "b"}, {"a^2", "b^2", "a b a^-1 b^-1"}) == 4);
  CHECK(order({"a", "b"}, {"a^4", "b^2", "b a b^-1 a"}) == 8);
  CHECK(order({"i", "j"}, {"i^4", "i^2 j^-2", "j^-1 i j i"}) == 8);
  CHECK(order({"s", "t"}, {"s^2", "t^3", "s t s t s t s t"}) == 24);
  CHECK(order({}, {}) == 1);
  CHECK(kind_of([] { enumerate_presentation({"t"}, {}, 50); }) == ErrorKind::CosetLimit);
}

TEST_CASE("presented groups validate as groups with generator images") {
  std::vector<std::string> gens{"a", "b"};
  auto pg = enumerate_presentation(gens, {parse_word("a^3", gens), parse_word("b^2", gens), parse_word("a b a b", gens)});
  CHECK_FALSE(pg.group->is_abelian());
  CHECK(generated_subgroup(pg.group, pg.generator_images).size() == 6);
  CHECK(pg.group->element_order(pg.generator_images[0]) == 3);
  CHECK(pg.group->label(pg.group->identity()) == "1");
}

TEST_CASE("word parsing") {
  std::vector<std::string> gens{"a", "b"};
  auto w = parse_word("a b^-1 a^2", gens);
  CHECK(w == Word{{0, 1}, {1, -1}, {0, 2}});
  CHECK(format_word(w, gens) == "a b^-1 a^2");
  CHECK(kind_of([&] { parse_word("a^x", gens); }) == ErrorKind::Syntax);
  CHECK(kind_of([&] { parse_word("c", gens); }) == ErrorKind::UnresolvedReference);
}

TEST_CASE("Z/2 acting on Z by -1 has H1 = Z/2") {
  auto rep = rep_of(1, {"t"}, {IntMatrix{{-1}}}, {"t^2"});
  auto h = h1_fg_abelian(rep);
  CHECK(h.invariant_factors == std::vector<std::uint64_t>{2});
  CHECK(h.free_rank == 0);
}

TEST_CASE("trivial actions of finite cyclic groups on Z have trivial H1") {
  for (int n = 1; n <= 6; ++n) {
    auto rep = rep_of(1, {"t"}, {IntMatrix{{1}}}, {"t^" + std::to_string(n)});
    CHECK(h1_fg_abelian(rep).is_trivial());
  }
}

TEST_CASE("Z/2 acting on Z^2 by -I has H1 = (Z/2)^2") {
  auto rep = rep_of(2, {"t"}, {IntMatrix{{-1, 0}, {0, -1}}}, {"t^2"});
  CHECK(h1_fg_abelian(rep).invariant_factors == std::vector<std::uint64_t>{2, 2});
}

TEST_CASE("Z/2 x Z/2 acting on Z through a sign character has H1 = Z/2") {
  auto rep = rep_of(1, {"a", "b"}, {IntMatrix{{-1}}, IntMatrix{{1}}}, {"a^2", "b^2", "a b a^-1 b^-1"});
  CHECK(h1_fg_abelian(rep).invariant_factors == std::vector<std::uint64_t>{2});
}

TEST_CASE("infinite cyclic groups give free parts") {
  CHECK(h1_fg_abelian(rep_of(1, {"t"}, {IntMatrix{{1}}}, {})) == FgAbelianGroup{{}, 1});
  CHECK(h1_fg_abelian(rep_of(1, {"t"}, {IntMatrix{{-1}}}, {})) == FgAbelianGroup{{2}, 0});
  CHECK(h1_fg_abelian(rep_of(2, {"t"}, {IntMatrix{{0, 1}, {1, 0}}}, {})) == FgAbelianGroup{{}, 1});
}

TEST_CASE("every principal derivation lies in the derivation lattice") {
  auto rep = rep_of(2, {"s", "t"}, {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}},
                    {"s^2", "t^2", "s t s^-1 t^-1"});
  auto c = relator_matrix(rep);
  auto p = principal_lattice(rep);
  CHECK((c * p).is_zero());
  auto k = derivation_lattice(rep);
  CHECK((c * k).is_zero());
  CHECK(k.cols() == 2);
}

TEST_CASE("property: H1 is invariant under a change of lattice basis") {
  std::mt19937 rng(47);
  std::vector<IntRep> reps = {
      rep_of(1, {"t"}, {IntMatrix{{-1}}}, {"t^2"}),
      rep_of(2, {"t"}, {IntMatrix{{-1, 0}, {0, -1}}}, {"t^2"}),
      rep_of(2, {"t"}, {IntMatrix{{0, 1}, {1, 0}}}, {"t^2"}),
      rep_of(2, {"t"}, {IntMatrix{{0, -1}, {1, -1}}}, {"t^3"}),
      rep_of(2, {"t"}, {IntMatrix{{0, -1}, {1, 0}}}, {"t^4"}),
      rep_of(2, {"s", "t"}, {IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{-1, 0}, {0, -1}}}, {"s^2", "t^2", "s t s^-1 t^-1"}),
  };
  for (auto const& rep : reps) {
    auto base = h1_fg_abelian(rep);
    for (int t = 0; t < 10; ++t) CHECK(h1_fg_abelian(conjugate(rep, random_unimodular(rng, rep.rank))) == base);
  }
}

TEST_CASE("invalid representations") {
  CHECK(kind_of([] { rep_of(1, {"t"}, {IntMatrix{{2}}}, {"t^2"}); }) == ErrorKind::InvalidRep);
  CHECK(kind_of([] { rep_of(1, {"t"}, {IntMatrix{{-1}}}, {"t^3"}); }) == ErrorKind::InvalidRep);
  CHECK(kind_of([] { rep_of(2, {"t"}, {IntMatrix{{-1}}}, {"t^2"}); }) == ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { rep_of(1, {"a", "b"}, {IntMatrix{{-1}}}, {}); }) == ErrorKind::ShapeMismatch);
}

TEST_CASE("crosscheck against the finite pipeline") {
  auto minus = rep_of(1, {"t"}, {IntMatrix{{-1}}}, {"t^2"});
  auto c4 = crosscheck_finite(minus, 4);
  CHECK(c4.group_order == 2);
  CHECK(c4.lattice_mod_m == std::vector<std::uint64_t>{2});
  CHECK(c4.finite == std::vector<std::uint64_t>{2});
  CHECK(c4.equal);
  CHECK(c4.embeds);

  auto neg = rep_of(2, {"t"}, {IntMatrix{{-1, 0}, {0, -1}}}, {"t^2"});
  auto n4 = crosscheck_finite(neg, 4);
  CHECK(n4.finite == std::vector<std::uint64_t>{2, 2});
  CHECK(n4.equal);

  // trivial action, coprime modulus: both sides vanish
  auto triv = rep_of(1, {"t"}, {IntMatrix{{1}}}, {"t^2"});
  auto t3 = crosscheck_finite(triv, 3);
  CHECK(t3.coprime);
  CHECK(t3.finite.empty());
  CHECK(t3.equal);
  // non-coprime modulus: Hom(Z/2, Z/2) is not reached from Hom(Z/2, Z) = 0
  auto t2 = crosscheck_finite(triv, 2);
  CHECK_FALSE(t2.coprime);
  CHECK(t2.finite == std::vector<std::uint64_t>{2});
  CHECK_FALSE(t2.equal);
  CHECK(t2.embeds);

  auto v = rep_of(1, {"a", "b"}, {IntMatrix{{-1}}, IntMatrix{{1}}}, {"a^2", "b^2", "a b a^-1 b^-1"});
  auto v3 = crosscheck_finite(v, 3);
  CHECK(v3.coprime);
  CHECK(v3.equal);
  auto v4 = crosscheck_finite(v, 4);
  CHECK(v4.lattice_mod_m == std::vector<std::uint64_t>{2});
  CHECK(v4.finite == std::vector<std::uint64_t>{2, 2});
  CHECK(v4.embeds);
}

TEST_CASE("property: coprime moduli agree with the lattice") {
  std::vector<IntRep> reps = {
      rep_of(1, {"t"}, {IntMatrix{{-1}}}, {"t^2"}),
      rep_of(2, {"t"}, {IntMatrix{{0, 1}, {1, 0}}}, {"t^2"}),
      rep_of(2, {"t"}, {IntMatrix{{0, -1}, {1, -1}}}, {"t^3"}),
  };
  for (auto const& rep : reps)
    for (std::uint64_t m : {5u, 7u}) {
      auto c = crosscheck_finite(rep, m);
      CHECK(c.coprime);
      CHECK(c.equal);
    }
}
