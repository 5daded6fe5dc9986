#include <doctest.h>

#include "lhyp/relhyp.hpp"

using namespace lhyp;

namespace {
LengthTable scaled(const LengthTable& l, long k) {
  LengthTable t(l.group(), l.domain(), l.rank(), l.radius());
  for (const auto& [g, v] : l.entries()) t.set(g, v * k);
  return t;
}
LengthTable zero_table(GroupHandle G, long radius) {
  LengthTable t(G, Domain::Integer, 1, radius);
  for (const auto& g : cayley_ball(*G, G->generators(), radius).elements) t.set(g, LexElem::of_int(0));
  return t;
}
}  // namespace

TEST_CASE("coset graph of Z") {
  auto Z = free_group(1);
  auto l = word_length_table(Z, Z->generators(), 7);
  auto R = rel_cayley(l, Z->generators(), 2, 5);
  REQUIRE(R.size() == 11);
  CHECK(R.connected);
  CHECK(R.weight_conflicts == 0);
  // n has edges to n±1 (weight 1) and n±2 (weight 2) inside [-5,5]
  std::size_t expect = 10 + 9;
  CHECK(R.edges.size() == expect);
  auto v = [&](const char* s) { return R.coset_of[R.ball.index.at(Z->parse(s))]; };
  CHECK(*R.dist[v("1")][v("aaaaa")] == 5);
  CHECK(*R.dist[v("AAAAA")][v("aaaaa")] == 10);
  CHECK(R.weight(v("1"), v("aa")) == mpq_class(2));
  CHECK_FALSE(R.weight(v("1"), v("aaa")).has_value());
  CHECK_THROWS_AS(rel_cayley(l, {Z->parse("aaa")}, 2, 5), InputError);
}

TEST_CASE("coset graph of F2 with N=1 is the Cayley ball") {
  auto F = free_group(2);
  auto l = word_length_table(F, F->generators(), 3);
  auto R = rel_cayley(l, F->generators(), 1, 2);
  auto C = cayley_graph(*F, F->generators(), 2);
  CHECK(R.size() == C.size());
  CHECK(R.edges.size() == C.edges().size());
  for (const auto& e : R.edges) CHECK(e.w == 1);
}

TEST_CASE("kernel cosets collapse") {
  // Z/2 x Z with the Z coordinate as length: G_x = Z/2
  auto G = direct_product(cyclic_group(2), free_group(1));
  auto gens = G->generators();
  LengthTable l(G, Domain::Integer, 1, 6);
  for (const auto& g : cayley_ball(*G, gens, 6).elements) {
    auto [a, b] = components(*G, g);
    l.set(g, LexElem::of_int(static_cast<long>(b.size())));
  }
  auto R = rel_cayley(l, gens, 1, 4);
  CHECK(R.kernel_size == 2);
  CHECK(R.size() == 9);  // n in [-4,4] for the ball of radius 4
  CHECK(R.weight_conflicts == 0);
  auto qi = check_qi_bounds(R, l);
  CHECK(qi.pairs > 0);
  CHECK(qi.upper_violations == 0);
  CHECK(qi.lower_violations == 0);
}

TEST_CASE("properness") {
  auto F = free_group(2);
  auto l = word_length_table(F, F->generators(), 4);
  auto p = check_proper(l, F->generators(), 2, 4);
  CHECK(p.bounded);
  CHECK(*p.min_outside == 1);
  CHECK(p.n_prime == 2);
  auto z = check_proper(zero_table(F, 3), F->generators(), 2, 3);
  CHECK_FALSE(z.min_outside.has_value());
  CHECK(z.bounded);
  auto Z = free_group(1);
  auto lz = word_length_table(Z, Z->generators(), 6);
  auto pz = check_proper(lz, Z->generators(), 3, 6);
  CHECK(pz.bounded);
  CHECK(pz.n_prime == 3);
}

TEST_CASE("geodesic inequalities") {
  auto F = free_group(2);
  auto l = word_length_table(F, F->generators(), 6);
  auto R = rel_cayley(l, F->generators(), 2, 5);
  auto g = verify_relhyp_geodesics(R, l, 1, 0);
  CHECK(g.two_edge > 0);
  CHECK(g.three_edge > 0);
  CHECK(g.violations_i == 0);
  CHECK(g.violations_ii == 0);
  CHECK(g.worst_slack_i == 0);
  // two short edges only appear next to a chord of equal weight
  CHECK(g.short_pairs > 0);
  CHECK(g.short_pairs_without_chord == 0);

  auto Z = free_group(1);
  auto lz = word_length_table(Z, Z->generators(), 9);
  auto Rz = rel_cayley(lz, Z->generators(), 3, 8);
  auto gz = verify_relhyp_geodesics(Rz, lz, 1, 0);
  CHECK(gz.two_edge > 0);
  CHECK(gz.violations_i + gz.violations_ii == 0);
  CHECK(gz.worst_slack_i == 0);

  // Z/6 word length: δ = 1
  auto C6 = cyclic_group(6);
  auto gens = std::vector<Word>{C6->parse("1")};
  auto l6 = word_length_table(C6, gens, 3);
  auto d6 = check_axioms(l6, l6.domain_elements()).min_delta;
  CHECK(d6 == QLexElem(LexElem::of_int(1)));
  auto R6 = rel_cayley(l6, gens, 2, 3);
  auto g6 = verify_relhyp_geodesics(R6, l6, 1, 1);
  CHECK(g6.violations_i == 0);
  CHECK(g6.violations_ii == 0);
  CHECK(g6.worst_slack_i <= 2);
}

TEST_CASE("quasi-isometry bounds") {
  auto Z = free_group(1);
  auto l = word_length_table(Z, Z->generators(), 7);
  auto R = rel_cayley(l, Z->generators(), 2, 5);
  auto q = check_qi_bounds(R, l);
  CHECK(q.alpha == 1);
  CHECK(q.n_prime == 2);
  CHECK(q.pairs == 55);
  CHECK(q.upper_violations == 0);
  CHECK(q.lower_violations == 0);
}

TEST_CASE("property P(n)") {
  auto F = free_group(2);
  auto l = word_length_table(F, F->generators(), 3);
  auto p = check_Pn(l, F->generators(), 1, 3, 0);
  CHECK(*p.alpha == 0);
  CHECK(p.generates);
  CHECK(p.bn_size == 5);
  CHECK(p.double_cosets == 5);
  CHECK(p.above_threshold == false);
  auto z = check_Pn(zero_table(F, 2), F->generators(), 1, 2, 0);
  CHECK(z.double_cosets == 1);
  // rescaling a tree action leaves the verdicts alone
  for (long k = 1; k <= 4; ++k) {
    auto s = check_Pn(scaled(l, k), F->generators(), k, 3, 0);
    CHECK(s.generates == p.generates);
    CHECK(s.double_cosets == p.double_cosets);
    CHECK(s.bn_size == p.bn_size);
  }
}

TEST_CASE("threshold brackets") {
  // oracle: p/q < log2(154) iff 2^p < 154^q
  auto below = [](long p, long q) {
    mpz_class a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), 2, p);
    mpz_ui_pow_ui(b.get_mpz_t(), 154, q);
    return a < b;
  };
  auto [lo, hi] = pn_threshold(0).bracket();
  CHECK(hi - lo == mpq_class(3, 32));
  // 6144 log2(154) + 768 lies in (45415, 45416)
  CHECK(below(45415 - 768, 6144));
  CHECK_FALSE(below(45416 - 768, 6144));
  CHECK(lo > 45415);
  CHECK(hi < 45416);
  auto [l2, h2] = log2_154_bracket(10);
  CHECK(l2 < h2);
  CHECK(below(static_cast<long>(l2.get_num().get_si()), static_cast<long>(l2.get_den().get_si())));
  CHECK_FALSE(below(static_cast<long>(h2.get_num().get_si()), static_cast<long>(h2.get_den().get_si())));
  auto [a, b] = pn_L(1).bracket();
  CHECK(a > 1536 * 7 + 192 + 572);
  CHECK(b < 1536 * 8 + 192 + 572);
  auto t1 = pn_threshold(1);
  CHECK(t1.b == 768 + 2288);
}
