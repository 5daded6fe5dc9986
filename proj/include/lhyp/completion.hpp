#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lhyp/geodspace.hpp"
#include "lhyp/isometry.hpp"
#include "lhyp/lspace.hpp"

namespace lhyp {

// Thrown when a completion violates one of its own postconditions.
struct ConstructionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class VClass { Essential = 0, Auxiliary = 1, Negligible = 2 };
std::string to_string(VClass c);

// Vertex keys:
//   e:i              input point i
//   a:i-j:t          basic path between i<j, t steps from i
//   n:<ku>|<kv>:s    bridge between vertices keyed ku<kv, s steps from ku
// A vertex carries several keys only when zero-length bridges merged vertices.
struct CVertex {
  VClass cls = VClass::Essential;
  std::vector<std::string> keys;  // keys[0] is the canonical one
};

struct CompletionGraph {
  std::vector<CVertex> vertices;  // essential vertices first, in input order
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // unit edges, u < v, sorted
  std::unordered_map<std::string, std::size_t> by_key;

  std::size_t size() const noexcept { return vertices.size(); }
  std::size_t find(const std::string& key) const;  // SIZE_MAX if absent
  GeodesicGraph graph() const;
  std::vector<std::vector<long>> distances() const;
  // independent of vertex numbering
  std::string canonical() const;
};

std::vector<std::size_t> midpoints(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z,
                                   const QLexElem& delta);

struct RSReport {
  bool holds = true;
  std::vector<std::size_t> witness;  // triple without a mid-point
  std::map<std::array<std::size_t, 3>, std::vector<std::size_t>> table;  // sorted triples
};
RSReport check_RS(const FiniteLambdaSpace& X, const QLexElem& delta);

struct CompletionOptions {
  std::optional<unsigned long> shuffle_seed;  // process pairs/triples in a random order
  std::size_t exact_delta_limit = 160;        // above this many vertices δ is bounded by diam/2
  std::optional<long> hausdorff_override;
  bool check_monotone = true;
};

struct DeltaCertificate {
  QLexElem value;
  bool exact = true;  // false: value is the diam/2 upper bound
};

struct Gamma1Result {
  CompletionGraph graph;
  std::size_t bridges = 0, merges = 0;
  bool geodesic = true;
  DeltaCertificate delta_out;
  QLexElem delta_bound;  // 29δ
};
Gamma1Result gamma1(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionOptions& opt = {});

struct Removal {
  std::size_t x, y, z, v;
  bool blocker = false;  // z lies exactly between x and y
};

struct Gamma2Result {
  CompletionGraph graph;
  CompletionGraph partial;  // after step (5)
  Gamma1Result gamma1;
  std::vector<Removal> removed;
  long H = 0;
  mpq_class B, delta_pp;
  std::size_t bridges = 0;
  bool geodesic = true;
  std::optional<bool> monotone;
  DeltaCertificate delta_out;
  // essential distances are inherited from X; the graph metric may only stretch them
  long stretch = 0;  // max over essential pairs of d_graph - d_X
};
Gamma2Result gamma2(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionOptions& opt = {});

// Γ2^n: only pairs at distance <= n, bridges use the given B
CompletionGraph gamma2_level(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionGraph& g1,
                             long n, const mpq_class& B, std::vector<Removal>* removed = nullptr);

long hausdorff_const(const CompletionGraph& g1, const CompletionGraph& partial2);

long tau_max(long n, long delta);

// 240δ'^3 + 64δ'^2 + 48δ^2 + 8H + 8δ' + 2 with δ' = 29δ
mpq_class delta_double_prime(const mpq_class& delta, long H);

struct Extension {
  Perm map;  // completion vertex -> vertex
  bool defined = true;
  bool isometry = false;
  bool restricts = false;
  std::optional<bool> unique;
  std::size_t alternatives = 0;  // extensions found by the exhaustive search
  std::string detail;
};
// uniqueness search runs when the completion has at most `search_limit` vertices
Extension extend_isometry(const FiniteLambdaSpace& X, const Perm& pi, const CompletionGraph& G,
                          std::size_t search_limit = 400);

}  // namespace lhyp
