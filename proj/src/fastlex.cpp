#include "fastlex.hpp"

#include <cstdlib>
#include <string>
#include <thread>

#include "lhyp/parallel.hpp"

namespace lhyp {

unsigned resolve_workers(unsigned requested) {
  unsigned w = requested;
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("LHYP_THREADS")) {
    char* end = nullptr;
    long c = std::strtol(cap, &end, 10);
    if (end != cap && c >= 1) w = std::min<unsigned>(w, static_cast<unsigned>(c));
  }
  return std::max(1u, w);
}

namespace detail {

std::optional<FastTable> to_fast(const std::vector<const LexElem*>& entries) {
  mpz_class scale = 1;
  std::size_t rank = 0;
  for (const LexElem* e : entries) {
    if (!e) continue;
    rank = e->rank();
    if (rank > kFastRank) return std::nullopt;
    for (const auto& c : e->coords()) scale = lcm(scale, c.get_den());
  }
  FastTable t;
  t.scale = scale;
  t.values.resize(entries.size());
  const mpz_class limit(static_cast<long>(kFastLimit));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const LexElem* e = entries[k];
    if (!e) continue;
    if (e->rank() != rank) return std::nullopt;
    for (std::size_t i = 0; i < rank; ++i) {
      mpz_class v = (*e)[i].get_num() * (scale / (*e)[i].get_den());
      if (abs(v) >= limit) return std::nullopt;
      t.values[k].v[i] = v.get_si();
    }
  }
  return t;
}

QLexElem from_fast(const FastLex& f, std::size_t rank, Domain domain, const mpz_class& divisor) {
  std::vector<mpq_class> c(rank);
  for (std::size_t i = 0; i < rank; ++i) c[i] = mpq_class(mpz_class(static_cast<long>(f.v[i])));
  return qdiv(LexElem(domain, std::move(c)), divisor);
}

}  // namespace detail
}  // namespace lhyp
