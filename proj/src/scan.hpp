#pragma once
// Max-reduction scans shared by lspace and lenfun. V is int64_t, FastLex or
// LexElem. Within one task tuples are visited in lexicographic order; the
// cross-worker reduction breaks ties on the tuple, so results never depend
// on the partitioning.

#include <array>
#include <cstdint>
#include <vector>

#include "fastlex.hpp"
#include "lhyp/parallel.hpp"

namespace lhyp::detail {

inline int vcmp(std::int64_t a, std::int64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }
inline int vcmp(const FastLex& a, const FastLex& b) { return fcmp(a, b); }
inline int vcmp(const LexElem& a, const LexElem& b) {
  auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}
inline std::int64_t vadd(std::int64_t a, std::int64_t b) { return a + b; }
inline FastLex vadd(const FastLex& a, const FastLex& b) { return fadd(a, b); }
inline LexElem vadd(const LexElem& a, const LexElem& b) { return a + b; }
inline std::int64_t vsub(std::int64_t a, std::int64_t b) { return a - b; }
inline FastLex vsub(const FastLex& a, const FastLex& b) { return fsub(a, b); }
inline LexElem vsub(const LexElem& a, const LexElem& b) { return a - b; }

template <class V>
struct Cand {
  V val{};
  std::array<std::size_t, 4> at{};
  bool set = false;

  void offer(const V& v, const std::array<std::size_t, 4>& where) {
    if (!set) {
      val = v;
      at = where;
      set = true;
      return;
    }
    int c = vcmp(v, val);
    if (c > 0 || (c == 0 && where < at)) {
      val = v;
      at = where;
    }
  }
  void merge(const Cand& o) {
    if (o.set) offer(o.val, o.at);
  }
};

// max over i<j<k<l of (largest - middle) of the three pair sums; the witness
// is the sorted quadruple (see orient_quadruple).
template <class V>
Cand<V> scan_four_point(const std::vector<V>& D, std::size_t n, unsigned workers) {
  std::vector<Cand<V>> local(std::max(1u, workers));
  parallel_tasks(n, workers, [&](std::size_t i, unsigned w) {
    Cand<V>& best = local[w];
    const V* Di = &D[i * n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const V* Dj = &D[j * n];
      for (std::size_t k = j + 1; k < n; ++k) {
        const V* Dk = &D[k * n];
        const V s1a = Di[j], s2a = Di[k], s3b = Dj[k];
        for (std::size_t l = k + 1; l < n; ++l) {
          V s1 = vadd(s1a, Dk[l]);
          V s2 = vadd(s2a, Dj[l]);
          V s3 = vadd(Di[l], s3b);
          const V* top;
          const V* mid;
          if (vcmp(s1, s2) >= 0) {
            if (vcmp(s1, s3) >= 0) top = &s1, mid = vcmp(s2, s3) >= 0 ? &s2 : &s3;
            else top = &s3, mid = &s1;
          } else if (vcmp(s2, s3) >= 0) {
            top = &s2, mid = vcmp(s1, s3) >= 0 ? &s1 : &s3;
          } else {
            top = &s3, mid = &s2;
          }
          V e = vsub(*top, *mid);
          int c = best.set ? vcmp(e, best.val) : 1;
          if (c > 0 || (c == 0 && std::array<std::size_t, 4>{i, j, k, l} < best.at)) {
            best.val = e;
            best.at = {i, j, k, l};
            best.set = true;
          }
        }
      }
    }
  });
  Cand<V> out;
  for (auto& c : local) out.merge(c);
  return out;
}

// Orders a sorted quadruple so the first pair carries the largest pair sum.
template <class V>
std::array<std::size_t, 4> orient_quadruple(const std::vector<V>& D, std::size_t n, std::array<std::size_t, 4> q) {
  auto [i, j, k, l] = q;
  V s1 = vadd(D[i * n + j], D[k * n + l]);
  V s2 = vadd(D[i * n + k], D[j * n + l]);
  V s3 = vadd(D[i * n + l], D[j * n + k]);
  if (vcmp(s1, s2) >= 0 && vcmp(s1, s3) >= 0) return {i, j, k, l};
  if (vcmp(s2, s1) > 0 && vcmp(s2, s3) >= 0) return {i, k, j, l};
  return {i, l, j, k};
}

// Triple defect on an n x n matrix A of doubled "products":
// max over (x,y,z) with all three entries present of min(A[x][z], A[z][y]) - A[x][y].
// present == nullptr means every entry is present.
template <class V>
Cand<V> scan_triple(const std::vector<V>& A, const std::vector<char>* present, std::size_t n, unsigned workers) {
  std::vector<Cand<V>> local(std::max(1u, workers));
  parallel_tasks(n, workers, [&](std::size_t x, unsigned w) {
    Cand<V>& best = local[w];
    const V* Ax = &A[x * n];
    const char* Px = present ? &(*present)[x * n] : nullptr;
    for (std::size_t z = 0; z < n; ++z) {
      if (Px && !Px[z]) continue;
      const V* Az = &A[z * n];
      const char* Pz = present ? &(*present)[z * n] : nullptr;
      const V& axz = Ax[z];
      for (std::size_t y = 0; y < n; ++y) {
        if (Px && (!Px[y] || !Pz[y])) continue;
        const V& m = vcmp(Az[y], axz) < 0 ? Az[y] : axz;
        if (best.set && vcmp(vsub(m, Ax[y]), best.val) < 0) continue;
        best.offer(vsub(m, Ax[y]), {x, y, z, 0});
      }
    }
  });
  Cand<V> out;
  for (auto& c : local) out.merge(c);
  return out;
}

}  // namespace lhyp::detail
