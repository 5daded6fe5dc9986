#include <doctest.h>

#include <random>

#include "lhyp/ordgroup.hpp"

using namespace lhyp;

namespace {
LexElem Z(std::initializer_list<long> c) { return LexElem::integers(c); }
LexElem Q(std::initializer_list<mpq_class> c) { return LexElem(Domain::Rational, std::vector<mpq_class>(c)); }

// all vectors of the given rank with coordinates in [-r, r]
std::vector<LexElem> grid(std::size_t rank, long r) {
  std::vector<LexElem> out;
  std::vector<long> c(rank, -r);
  while (true) {
    std::vector<mpq_class> q(c.begin(), c.end());
    out.emplace_back(Domain::Integer, q);
    std::size_t i = 0;
    while (i < rank && c[i] == r) c[i++] = -r;
    if (i == rank) break;
    ++c[i];
  }
  return out;
}
}  // namespace

TEST_CASE("right lex order decides on the rightmost coordinate") {
  CHECK(lex_cmp(Z({1, 0}), Z({0, 1})) == std::strong_ordering::less);
  CHECK(lex_cmp(Z({2, 3}), Z({1, 3})) == std::strong_ordering::greater);
  CHECK(lex_cmp(Z({0, 0}), Z({0, 0})) == std::strong_ordering::equal);
  CHECK(abs(Z({5, -1})) == Z({-5, 1}));
  CHECK(abs(Z({-5, 0})) == Z({5, 0}));
  CHECK_THROWS_AS((void)lex_cmp(Z({1}), Z({1, 0})), InputError);
  CHECK_THROWS_AS((void)lex_cmp(Z({1}), Q({1})), InputError);
}

TEST_CASE("qdiv") {
  QLexElem a = qdiv(Z({3, 1}), 2);
  CHECK(a.num() == Z({3, 1}));
  CHECK(a.den() == 2);
  CHECK(qdiv(Z({2, 0}), 4) == qdiv(Z({1, 0}), 2));
  QLexElem q = qdiv(Q({3, 1}), 2);
  CHECK(q.den() == 1);
  CHECK(q.num() == Q({mpq_class(3, 2), mpq_class(1, 2)}));
  CHECK_THROWS_AS(qdiv(Z({1}), 0), InputError);
  CHECK(qdiv(Z({1, 1}), -1) == QLexElem(Z({-1, -1})));
  // embedding preserves order
  CHECK(QLexElem(Z({1, 0})) < QLexElem(Z({0, 1})));
  CHECK(qdiv(Z({1}), 2) < QLexElem(Z({1})));
}

TEST_CASE("height, projection, convex membership") {
  CHECK(height(Z({0, 0, 0})) == 0);
  CHECK(height(Z({5, 0, 0})) == 1);
  CHECK(height(Z({0, 2, 0})) == 2);
  CHECK(project_quotient(Z({3, 2, 1}), {1}) == Z({2, 1}));
  CHECK(project_quotient(Z({7, 0}), {1}) == Z({0}));
  CHECK(project_quotient(Z({1, 2}), {0}) == Z({1, 2}));
  CHECK(in_convex(Z({3, 0}), {1}));
  CHECK_FALSE(in_convex(Z({0, 1}), {1}));
  CHECK(in_convex(Z({0, 0}), {0}));
}

TEST_CASE("text round trip") {
  CHECK(Z({1, -2}).str() == "(1,-2)");
  CHECK(parse_lex("(1,-2)", Domain::Integer) == Z({1, -2}));
  CHECK(parse_lex(" 4 ", Domain::Integer) == Z({4}));
  CHECK(parse_lex("(1/2,3)", Domain::Rational) == Q({mpq_class(1, 2), 3}));
  CHECK_THROWS_AS(parse_lex("(1/2,3)", Domain::Integer), InputError);
  CHECK_THROWS_AS(parse_lex("(1,", Domain::Integer), InputError);
  CHECK_THROWS_AS(parse_lex("(x)", Domain::Integer), InputError);
  CHECK(qdiv(Z({3, 1}), 2).str() == "(3,1)/2");
  CHECK(parse_qlex("(3,1)/2", Domain::Integer) == qdiv(Z({3, 1}), 2));
  CHECK(parse_qlex("(6,2)/4", Domain::Integer).str() == "(3,1)/2");
  CHECK(parse_qlex("(3,1)", Domain::Integer) == QLexElem(Z({3, 1})));
  CHECK(parse_qlex("1/2", Domain::Integer) == qdiv(Z({1}), 2));
  CHECK(render(qdiv(Z({1}), 2)) == "1/2");
  CHECK(render(QLexElem(Z({0}))) == "0");
  CHECK(render(qdiv(Z({1, 1}), 2)) == "(1,1)/2");
}

TEST_CASE("translation invariance on an exhaustive grid") {
  auto g = grid(2, 2);
  for (const auto& a : g)
    for (const auto& b : g) {
      if (!(a <= b)) continue;
      for (const auto& c : g) REQUIRE(a + c <= b + c);
    }
}

TEST_CASE("translation invariance, random rank-3 samples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> U(-1000, 1000);
  auto rnd = [&] { return Z({U(rng), U(rng), U(rng)}); };
  for (int it = 0; it < 2000; ++it) {
    LexElem a = rnd(), b = rnd(), c = rnd();
    CHECK(((a <= b) == (a + c <= b + c)));
    // exactly one of <, =, >
    int n = (a < b) + (a == b) + (a > b);
    CHECK(n == 1);
  }
}

TEST_CASE("Z^n is discrete with minimal positive (1,0,...,0)") {
  auto g = grid(2, 2);
  LexElem e1 = Z({1, 0});
  for (const auto& a : g)
    for (const auto& b : g) CHECK_FALSE((a < b && b < a + e1));
  for (const auto& a : g)
    if (a.sign() > 0) CHECK(e1 <= a);
}

TEST_CASE("qdiv equality is an equivalence relation") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> U(-6, 6), M(1, 6);
  std::vector<QLexElem> s;
  for (int i = 0; i < 60; ++i) {
    long k = M(rng);
    long a = U(rng), b = U(rng);
    s.push_back(qdiv(Z({a * k, b * k}), k * M(rng)));
  }
  for (const auto& x : s) {
    CHECK(x == x);
    for (const auto& y : s) {
      CHECK((x == y) == (y == x));
      if (x != y) continue;
      for (const auto& z : s)
        if (y == z) CHECK(x == z);
    }
  }
}

TEST_CASE("projection is additive; height of sums") {
  auto g = grid(3, 1);
  for (const auto& a : g)
    for (const auto& b : g) {
      for (std::size_t i = 0; i <= 3; ++i)
        CHECK(project_quotient(a + b, {i}) == project_quotient(a, {i}) + project_quotient(b, {i}));
      CHECK(height(a + b) <= std::max(height(a), height(b)));
      if (height(a) != height(b)) CHECK(height(a + b) == std::max(height(a), height(b)));
    }
}

TEST_CASE("QLexElem arithmetic") {
  QLexElem h = qdiv(Z({1}), 2);
  CHECK(h + h == QLexElem(Z({1})));
  CHECK((h * 3).str() == "(3)/2");
  CHECK(h.floor_scalar() == 0);
  CHECK(h.ceil_scalar() == 1);
  CHECK(qdiv(Z({-3}), 2).floor_scalar() == -2);
  CHECK(qdiv(h, 2) == qdiv(Z({1}), 4));
}
