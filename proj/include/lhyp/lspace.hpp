#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lhyp/ordgroup.hpp"

namespace lhyp {

class FiniteLambdaSpace {
 public:
  FiniteLambdaSpace() = default;
  // dist is row-major size*size
  FiniteLambdaSpace(Domain domain, std::size_t rank, std::vector<std::string> labels, std::vector<LexElem> dist);

  // rank-1 Z space; labels default to 0..n-1
  static FiniteLambdaSpace from_integers(const std::vector<std::vector<long>>& d,
                                         std::vector<std::string> labels = {});

  std::size_t size() const noexcept { return labels_.size(); }
  Domain domain() const noexcept { return domain_; }
  std::size_t rank() const noexcept { return rank_; }
  const LexElem& d(std::size_t x, std::size_t y) const { return dist_[x * size() + y]; }
  const std::vector<LexElem>& table() const noexcept { return dist_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::size_t index_of(std::string_view label) const;

  // rank 1 over Z
  bool z_valued() const noexcept { return domain_ == Domain::Integer && rank_ == 1; }
  long zd(std::size_t x, std::size_t y) const;

  friend bool operator==(const FiniteLambdaSpace& a, const FiniteLambdaSpace& b) {
    return a.domain_ == b.domain_ && a.rank_ == b.rank_ && a.labels_ == b.labels_ && a.dist_ == b.dist_;
  }

 private:
  Domain domain_ = Domain::Integer;
  std::size_t rank_ = 1;
  std::vector<std::string> labels_;
  std::vector<LexElem> dist_;
};

struct MetricViolation {
  std::string axiom;  // LM1..LM4
  std::vector<std::size_t> points;
};

std::vector<MetricViolation> validate_metric(const FiniteLambdaSpace& X);

QLexElem gromov_product(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t v);

struct ScanOptions {
  unsigned workers = 1;     // 0: machine default (capped by LHYP_THREADS)
  bool force_exact = false; // skip the int64 path
};

struct DeltaWitness {
  QLexElem value;
  std::vector<std::size_t> at;  // (x,y,z) for triple scans, (x,y,z,t) for the 4-point scan
};

DeltaWitness min_delta_at(const FiniteLambdaSpace& X, std::size_t v, const ScanOptions& opt = {});
DeltaWitness min_delta_4pt(const FiniteLambdaSpace& X, const ScanOptions& opt = {});

// re-evaluation of a single term, used to confirm witnesses
QLexElem triple_term(const FiniteLambdaSpace& X, std::size_t v, std::size_t x, std::size_t y, std::size_t z);
QLexElem four_point_term(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z, std::size_t t);

struct HyperbolicityReport {
  std::vector<DeltaWitness> delta_triple_at;  // per basepoint
  DeltaWitness delta_triple_all;              // max over basepoints; at = (v,x,y,z)
  DeltaWitness delta_4pt;
};

HyperbolicityReport hyperbolicity(const FiniteLambdaSpace& X, const ScanOptions& opt = {});

struct Subspace {
  FiniteLambdaSpace space;
  std::vector<std::size_t> members;  // indices into the parent
};
Subspace subspace_at(const FiniteLambdaSpace& X, std::size_t x, ConvexIndex i);

struct Quotient {
  FiniteLambdaSpace space;              // over Λ/Λ_i, rank n-i
  std::vector<std::size_t> class_of;    // parent index -> class index
  std::vector<std::vector<std::size_t>> classes;
};
Quotient quotient_by_convex(const FiniteLambdaSpace& X, ConvexIndex i);

FiniteLambdaSpace scale(const FiniteLambdaSpace& X, long k);
FiniteLambdaSpace induced(const FiniteLambdaSpace& X, const std::vector<std::size_t>& pts);

// Smallest i with every distance in Λ_i. The usual convention expects rank().
std::size_t convex_support(const FiniteLambdaSpace& X);

}  // namespace lhyp
