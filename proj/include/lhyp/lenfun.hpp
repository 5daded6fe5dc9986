#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lhyp/catalog.hpp"
#include "lhyp/lspace.hpp"

namespace lhyp {

// Every check below works on a finite sample of group elements. Lookups that
// leave the table are skipped and counted, never guessed.
using Sample = std::vector<Word>;

struct Verdict {
  bool holds = true;
  std::vector<Word> witness;
  std::string detail;
};

struct AxiomReport {
  Verdict l1, l2, l3;
  std::size_t skipped = 0;           // pairs with a missing lookup
  QLexElem min_delta;                // minimal δ for (Λ4,δ) over sample triples
  std::vector<Word> delta_at;        // (f,g,h) attaining it
  long radius = 0;
};

AxiomReport check_axioms(const LengthTable& l, const Sample& sample, const ScanOptions& opt = {});

struct Lambda4Count {
  std::size_t violations = 0;
  std::size_t triples = 0;
  std::vector<Word> first;  // (f,g,h)
};
// counts triples with 2c(f,g) < min(2c(f,h), 2c(g,h)) - 2δ
Lambda4Count lambda4_violations(const LengthTable& l, const Sample& sample, const QLexElem& delta);

// partial action: g·x, or nullopt when it leaves the finite space
using PointMap = std::function<std::optional<std::size_t>(const Word& g, std::size_t x)>;

// action given by one permutation of X per generator, extended along the ball
PointMap permutation_action(const Group& G, const std::vector<Word>& gens,
                            const std::vector<std::vector<std::size_t>>& perms, long radius);

// l_v(g) = d(v, g v) on the sample; throws InputError if some g is not an isometry
LengthTable from_action(const FiniteLambdaSpace& X, const PointMap& act, std::size_t v, GroupHandle G,
                        const Sample& sample);

struct KernelReport {
  Sample elements;
  bool coset_constant = true;
  std::vector<Word> witness;  // (a, g) with l(ag) or l(ga) != l(g)
};
KernelReport kernel(const LengthTable& l, const Sample& sample);

struct Lambda0Report {
  Sample elements;
  std::optional<bool> restriction_hyperbolic;  // only when a δ outside Λ0 was supplied
  std::vector<Word> witness;
};
Lambda0Report lambda0_kernel(const LengthTable& l, ConvexIndex i, const Sample& sample,
                             const std::optional<LexElem>& delta = std::nullopt);

struct LengthSpace {
  FiniteLambdaSpace space;
  std::size_t base = 0;
  std::vector<std::size_t> point_of;  // sample index -> point
  Sample representatives;             // point -> sample element
  bool well_defined = true;
  std::vector<Word> witness;
};
// points are cosets of ker(l) meeting the sample
LengthSpace to_space(const LengthTable& l, const Sample& sample);
// g·(hA) = (gh)A when gh lies in the sample
PointMap coset_action(const LengthTable& l, const Sample& sample, const LengthSpace& S);

struct RegularReport {
  Verdict r1, r2;
  std::size_t skipped = 0;
  // per-u implications of the R1/R2 comparison lemma
  std::size_t r1_to_r2_violations = 0, r2_to_r1_violations = 0;
  std::size_t implication_checks = 0;
  long radius = 0;
};
RegularReport check_regular(const LengthTable& l, const Sample& sample, long k, const QLexElem& delta);

struct CompleteReport {
  bool supported = true;  // Z-valued only
  Verdict complete;
  std::size_t decompositions = 0;
  std::size_t pairs_checked = 0;  // Lemma-30 style pairs
  std::size_t bound_violations = 0;
  long worst = 0;                 // max l(u^-1 v) seen
  std::vector<Word> bound_witness; // (g,h,u,v)
  long radius = 0;
};
CompleteReport check_complete(const LengthTable& l, const Sample& sample, const QLexElem& delta);

struct FreeReport {
  Verdict free;
  std::size_t skipped = 0;
  bool kernel_trivial = true;
};
FreeReport check_free(const LengthTable& l, const Sample& sample, const QLexElem& delta);

struct QuasiGeodesicReport {
  bool supported = true;
  bool holds = true;
  std::size_t pairs = 0;
  std::size_t missing = 0;         // parameters with no point on an interval
  long worst_excess = 0;           // max d(γα,γβ) - (β-α)
  std::vector<std::size_t> witness; // (x, y, α, β)
};
// γ(α): lowest-index point w with d(x,w)=α, d(x,w)+d(w,y)=d(x,y)
QuasiGeodesicReport quasigeodesic_check(const FiniteLambdaSpace& X, long C);

struct BallDiagnostic {
  std::size_t small = 0;  // |{g : l(g) <= 1}|
  bool generates = false;
  std::vector<Word> undecomposed;
  QLexElem min_delta;
  long radius = 0;
};
BallDiagnostic finite_ball_check(const LengthTable& l, const Sample& sample);

}  // namespace lhyp
