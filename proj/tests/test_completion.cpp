#include <doctest.h>

#include <functional>
#include <map>
#include <random>

#include "helpers.hpp"
#include "lhyp/completion.hpp"
#include "lhyp/geodspace.hpp"

using namespace lhyp;

namespace {
QLexElem q(long v) { return QLexElem(LexElem::of_int(v)); }

FiniteLambdaSpace equilateral(long d) {
  return FiniteLambdaSpace::from_integers({{0, d, d}, {d, 0, d}, {d, d, 0}});
}

// plain recursion, no table
long tau_oracle(long n, long delta) {
  if (n <= 2 * delta) return n;
  long best = 0;
  for (long a = 1; a < n; ++a)
    for (long b = 1; b < n; ++b)
      if (a + b >= n && a + b <= n + 2 * delta) best = std::max(best, tau_oracle(a, delta) + tau_oracle(b, delta));
  return best;
}
}  // namespace

TEST_CASE("gamma1 of two points is a path") {
  auto X = FiniteLambdaSpace::from_integers({{0, 3}, {3, 0}});
  auto r = gamma1(X, q(0));
  REQUIRE(r.graph.size() == 4);
  CHECK(r.graph.edges.size() == 3);
  CHECK(r.graph.find("a:0-1:1") != SIZE_MAX);
  CHECK(r.graph.find("a:0-1:2") != SIZE_MAX);
  CHECK(r.graph.vertices[2].cls == VClass::Auxiliary);
  CHECK(r.delta_out.exact);
  CHECK(r.delta_out.value == q(0));
}

TEST_CASE("gamma1 of a tree metric at δ=0 merges tripod legs") {
  // star with legs 2,2,2 seen from the leaves
  auto X = equilateral(4);
  auto r = gamma1(X, q(0));
  // 3 leaves + centre + 3 middle vertices
  CHECK(r.graph.size() == 7);
  CHECK(r.merges > 0);
  CHECK(r.delta_out.value == q(0));
  auto D = r.graph.distances();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(D[i][j] == X.zd(i, j));
}

TEST_CASE("geodesic inputs are fixed") {
  auto P = FiniteLambdaSpace::from_integers(testutil::path(5));
  auto g1 = gamma1(P, q(0));
  CHECK(g1.graph.size() == 5);
  CHECK(g1.graph.edges.size() == 4);
  auto g2 = gamma2(P, q(0));
  CHECK(g2.graph.size() == 5);
  CHECK(g2.graph.edges.size() == 4);
  CHECK(g2.monotone.value_or(false));

  auto C6 = FiniteLambdaSpace::from_integers(testutil::cycle(6));
  auto delta = min_delta_4pt(C6).value;
  auto h = gamma2(C6, delta);
  CHECK(h.graph.size() == 6);
  CHECK(h.graph.edges.size() == 6);
}

TEST_CASE("three points at distance 2 give a hexagon") {
  auto X = equilateral(2);
  auto r = gamma2(X, q(1));
  CHECK(r.H == 0);
  CHECK(r.removed.empty());
  CHECK(r.graph.size() == 6);
  CHECK(r.graph.edges.size() == 6);
  CHECK(r.gamma1.graph.size() == 6);
  CHECK(r.B == mpq_class(58));
  CHECK(r.delta_pp == delta_double_prime(1, 0));
  CHECK(r.delta_out.value <= QLexElem(LexElem::of_int(1)));
  CHECK(QLexElem(LexElem::of_int(r.delta_pp.get_num().get_si())) >= r.delta_out.value);
}

TEST_CASE("delta double prime formula") {
  // δ'=29: 240*29^3 + 64*29^2 + 48 + 8H + 8*29 + 2
  CHECK(delta_double_prime(1, 3) == mpq_class(240 * 24389 + 64 * 841 + 48 + 24 + 232 + 2));
  CHECK(delta_double_prime(0, 0) == mpq_class(2));
}

TEST_CASE("tau_max") {
  CHECK(tau_max(3, 1) == 4);
  CHECK(tau_max(4, 1) == 8);
  for (long d = 1; d <= 3; ++d) {
    CHECK(tau_max(2 * d + 1, d) == 4 * d);
    for (long n = 0; n <= 12; ++n) {
      CHECK(tau_max(n, d) == tau_oracle(n, d));
      CHECK(tau_max(n, d) <= 4 * d * n);
    }
  }
  CHECK(tau_max(9, 0) == 9);
}

TEST_CASE("RS condition") {
  CHECK_FALSE(check_RS(equilateral(10), q(1)).holds);
  CHECK(check_RS(FiniteLambdaSpace::from_integers({{0}}), q(0)).holds);
  // C4: the oracle picks points whose three Gromov products are all <= 2δ
  auto C4 = FiniteLambdaSpace::from_integers(testutil::cycle(4));
  auto rs = check_RS(C4, q(0));
  for (const auto& [t, mids] : rs.table) {
    std::vector<std::size_t> want;
    for (std::size_t v = 0; v < 4; ++v) {
      auto gp = [&](std::size_t a, std::size_t b) { return C4.zd(a, v) + C4.zd(v, b) - C4.zd(a, b); };
      if (gp(t[0], t[1]) == 0 && gp(t[0], t[2]) == 0 && gp(t[1], t[2]) == 0) want.push_back(v);
    }
    CHECK(mids == want);
  }
  CHECK(rs.holds);  // every triple of C4 contains a point between the other two
  CHECK(check_RS(C4, q(1)).holds);
}

TEST_CASE("input below the hyperbolicity constant is rejected") {
  auto C4 = FiniteLambdaSpace::from_integers(testutil::cycle(4));
  CHECK_THROWS_AS(gamma1(C4, q(0)), InputError);
  CHECK_THROWS_AS(gamma2(equilateral(10), q(1)), InputError);  // RS fails
}

TEST_CASE("order invariance") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 6; ++trial) {
    auto m = testutil::random_tree_metric(rng, 5, 9, 3);
    auto X = FiniteLambdaSpace::from_integers(m);
    auto base = gamma1(X, q(0)).graph.canonical();
    for (unsigned long s = 1; s <= 4; ++s) {
      CompletionOptions o;
      o.shuffle_seed = s;
      CHECK(gamma1(X, q(0), o).graph.canonical() == base);
    }
  }
  auto C5 = FiniteLambdaSpace::from_integers(testutil::cycle(5));
  auto d5 = min_delta_4pt(C5).value;
  auto b2 = gamma2(C5, d5).graph.canonical();
  for (unsigned long s = 1; s <= 4; ++s) {
    CompletionOptions o;
    o.shuffle_seed = s;
    CHECK(gamma2(C5, d5, o).graph.canonical() == b2);
  }
}

TEST_CASE("gamma1 postconditions on small graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto e = testutil::random_connected_graph(rng, 6, 0.4);
    auto X = FiniteLambdaSpace::from_integers(testutil::graph_distances(6, e));
    auto d = min_delta_4pt(X).value;
    auto r = gamma1(X, d);
    auto D = r.graph.distances();
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) CHECK(D[i][j] == X.zd(i, j));
    CHECK(r.geodesic);
    CHECK(is_geodesic(as_space(r.graph.graph())).geodesic);
    CHECK(r.delta_out.value <= r.delta_bound);
  }
}

TEST_CASE("extension of isometries") {
  auto X = equilateral(2);
  auto r = gamma2(X, q(1));
  Perm rot{1, 2, 0};
  auto e = extend_isometry(X, rot, r.graph);
  CHECK(e.defined);
  CHECK(e.isometry);
  CHECK(e.restricts);
  CHECK(e.unique.value_or(false));
  // a transposition reverses one basic path
  auto f = extend_isometry(X, Perm{1, 0, 2}, r.graph);
  CHECK(f.isometry);
  CHECK(f.map[r.graph.find("a:0-1:1")] == r.graph.find("a:0-1:1"));
  CHECK(f.map[r.graph.find("a:0-2:1")] == r.graph.find("a:1-2:1"));

  auto Y = FiniteLambdaSpace::from_integers({{0, 3}, {3, 0}});
  auto g = gamma1(Y, q(0));
  auto s = extend_isometry(Y, Perm{1, 0}, g.graph);
  CHECK(s.isometry);
  CHECK(s.map[g.graph.find("a:0-1:1")] == g.graph.find("a:0-1:2"));
  CHECK(s.unique.value_or(false));
}

TEST_CASE("gamma2 of two points and stretch") {
  auto X = FiniteLambdaSpace::from_integers({{0, 3}, {3, 0}});
  auto r = gamma2(X, q(0));
  CHECK(r.graph.size() == 4);
  CHECK(r.graph.edges.size() == 3);
  CHECK(r.stretch == 0);
  // graph distances never undercut the input
  std::mt19937_64 rng(5);
  for (int t = 0; t < 8; ++t) {
    auto Y = FiniteLambdaSpace::from_integers(testutil::random_metric(rng, 5, 4));
    auto d = min_delta_4pt(Y).value;
    if (!check_RS(Y, d).holds) continue;
    auto g = gamma2(Y, d);
    auto D = g.graph.distances();
    long s = 0;
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 5; ++j) {
        CHECK(D[i][j] >= Y.zd(i, j));
        s = std::max(s, D[i][j] - Y.zd(i, j));
      }
    CHECK(s == g.stretch);
  }
}
