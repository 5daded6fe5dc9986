#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lhyp/catalog.hpp"
#include "lhyp/lenfun.hpp"

namespace lhyp {

// Weighted coset graph over a Cayley ball. Lengths must be rank 1.
struct RelCayley {
  GroupHandle group;
  std::vector<Word> gens;             // symmetric S
  Ball ball;
  std::vector<std::size_t> coset_of;  // ball index -> vertex
  std::vector<Word> reps;             // vertex -> representative (first in BFS order)
  std::size_t base = 0;               // the vertex G_x
  mpq_class N;
  struct Edge {
    std::size_t u, v;
    mpq_class w;
  };
  std::vector<Edge> edges;  // u < v, sorted
  std::vector<std::vector<std::pair<std::size_t, mpq_class>>> adj;
  std::vector<std::vector<std::optional<mpq_class>>> dist;  // d_Γ, nullopt if unreachable
  std::size_t weight_conflicts = 0;  // same coset pair reached with different l(h)
  std::size_t kernel_size = 0;       // |G_x ∩ ball|
  bool connected = true;

  std::size_t size() const noexcept { return reps.size(); }
  std::optional<mpq_class> weight(std::size_t u, std::size_t v) const;
};

// S ⊄ B_N is an InputError; l must cover the ball
RelCayley rel_cayley(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& N, long radius);

struct ProperReport {
  long radius = 0;
  std::optional<mpq_class> min_outside;  // min l(g), g outside G_x (the α of the lemma)
  long n_prime = 0;                      // max d'(1,h) over h in B_N, relative Cayley graph
  bool bounded = true;                   // every B_N element reachable inside the ball
  std::vector<Word> unreachable;
};
ProperReport check_proper(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& N, long radius);

// d' on the ball: Cayley graph relative to S ∪ (G_x ∩ ball); -1 if unreachable
std::vector<std::vector<long>> relative_word_metric(const RelCayley& G, const LengthTable& l);

struct QIBoundReport {
  std::size_t pairs = 0;
  std::size_t upper_violations = 0;  // d_Γ > N d'
  std::size_t lower_violations = 0;  // d' > (2N'/α) d_Γ
  std::size_t skipped = 0;           // d' unreachable in the truncated graph
  mpq_class alpha;
  long n_prime = 0;
  std::vector<Word> witness;
};
// pairs of ball elements in distinct cosets
QIBoundReport check_qi_bounds(const RelCayley& G, const LengthTable& l);

struct GeodesicReport {
  std::size_t two_edge = 0, three_edge = 0;
  std::size_t violations_i = 0, violations_ii = 0;
  std::size_t short_pairs = 0;  // consecutive edges both of weight <= N/2
  std::size_t short_pairs_without_chord = 0;  // ... and no direct edge of the same total
  mpq_class worst_slack_i, worst_slack_ii;  // max of lhs deficit seen
  std::vector<Word> witness_i, witness_ii;
};
// geodesics from the base vertex; k and δ as in (R2,k)
GeodesicReport verify_relhyp_geodesics(const RelCayley& G, const LengthTable& l, long k, const mpq_class& delta);

// a·log2(154) + b with certified rational brackets
struct LogAffine {
  mpq_class a, b;
  // lo <= value < hi, width a / 2^bits
  std::pair<mpq_class, mpq_class> bracket(unsigned bits = 16) const;
};
std::pair<mpq_class, mpq_class> log2_154_bracket(unsigned bits);
LogAffine pn_threshold(const mpq_class& delta);  // 6144 log2(154) + 768 + 2288δ
LogAffine pn_L(const mpq_class& delta);          // 1536 log2(154) + 192 + 572δ

struct PnReport {
  long radius = 0;
  std::optional<mpq_class> alpha;  // B_α = G_x inside the ball
  bool generates = false;          // B_n generates the ball (products kept inside it)
  std::size_t double_cosets = 0;
  std::size_t bn_size = 0;
  LogAffine threshold;
  std::optional<bool> above_threshold;  // n vs the certified bracket; nullopt if inside it
};
PnReport check_Pn(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& n, long radius,
                  const mpq_class& delta);

}  // namespace lhyp
