#pragma once
// int64 mirror of LexElem used by the hot scans. Values are scaled by the
// common denominator of the table; callers fall back to mpq when a table does
// not fit.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lhyp/ordgroup.hpp"

namespace lhyp::detail {

constexpr std::size_t kFastRank = 4;
constexpr std::int64_t kFastLimit = std::int64_t(1) << 58;

struct FastLex {
  std::array<std::int64_t, kFastRank> v{};
};

inline int fcmp(const FastLex& a, const FastLex& b) {
  for (std::size_t i = kFastRank; i-- > 0;) {
    if (a.v[i] != b.v[i]) return a.v[i] < b.v[i] ? -1 : 1;
  }
  return 0;
}
inline FastLex fadd(const FastLex& a, const FastLex& b) {
  FastLex r;
  for (std::size_t i = 0; i < kFastRank; ++i) r.v[i] = a.v[i] + b.v[i];
  return r;
}
inline FastLex fsub(const FastLex& a, const FastLex& b) {
  FastLex r;
  for (std::size_t i = 0; i < kFastRank; ++i) r.v[i] = a.v[i] - b.v[i];
  return r;
}
inline const FastLex& fmin(const FastLex& a, const FastLex& b) { return fcmp(b, a) < 0 ? b : a; }
inline const FastLex& fmax(const FastLex& a, const FastLex& b) { return fcmp(a, b) < 0 ? b : a; }

struct FastTable {
  std::vector<FastLex> values;  // aligned with the input; missing entries are zero
  mpz_class scale;              // fast value = scale * exact value
};

// nullptr entries are allowed (missing lookups).
std::optional<FastTable> to_fast(const std::vector<const LexElem*>& entries);

// scaled integer vector -> exact value / divisor
QLexElem from_fast(const FastLex& f, std::size_t rank, Domain domain, const mpz_class& divisor);

}  // namespace lhyp::detail
