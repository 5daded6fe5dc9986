#include "lhyp/lenfun.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "fastlex.hpp"
#include "scan.hpp"

namespace lhyp {

namespace {

using detail::Cand;
using detail::FastLex;
using detail::vadd;
using detail::vcmp;
using detail::vsub;

// l(s_i) and l(s_i^-1 s_j) for the whole sample
struct Pairs {
  std::size_t n = 0;
  std::vector<LexElem> L;
  std::vector<LexElem> P;
  std::vector<char> has;
  std::size_t missing = 0;
  std::unordered_map<Word, std::size_t, WordHash> idx;
  std::size_t identity = SIZE_MAX;
};

Pairs build_pairs(const LengthTable& l, const Sample& s) {
  if (!l.group()) throw InputError("length table has no group attached");
  const Group& G = *l.group();
  Pairs p;
  p.n = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    p.idx.emplace(s[i], i);
    if (s[i].empty()) p.identity = i;
    p.L.push_back(l.at(s[i]));
  }
  const LexElem zero = LexElem::zero(l.domain(), l.rank());
  p.P.assign(p.n * p.n, zero);
  p.has.assign(p.n * p.n, 0);
  for (std::size_t i = 0; i < p.n; ++i) {
    Word inv = G.invert(s[i]);
    for (std::size_t j = 0; j < p.n; ++j) {
      if (const LexElem* v = l.find(G.multiply(inv, s[j]))) {
        p.P[i * p.n + j] = *v;
        p.has[i * p.n + j] = 1;
      } else {
        ++p.missing;
      }
    }
  }
  return p;
}

// Runs f(values, scale) on L ++ P ++ extras, every entry multiplied by
// `factor`, in the cheapest exact representation. Missing P entries are zero.
template <class F>
auto with_pairs(const Pairs& p, const mpz_class& factor, const std::vector<LexElem>& extras, F&& f) {
  std::vector<LexElem> scaled;
  const bool rescale = factor != 1;
  std::vector<const LexElem*> ptrs;
  ptrs.reserve(p.n + p.n * p.n + extras.size());
  if (rescale) {
    scaled.reserve(p.n + p.n * p.n);
    for (const auto& v : p.L) scaled.push_back(v * factor);
    for (const auto& v : p.P) scaled.push_back(v * factor);
    for (const auto& v : scaled) ptrs.push_back(&v);
  } else {
    for (const auto& v : p.L) ptrs.push_back(&v);
    for (const auto& v : p.P) ptrs.push_back(&v);
  }
  for (const auto& v : extras) ptrs.push_back(&v);
  std::size_t rank = p.L.empty() ? 1 : p.L[0].rank();
  if (auto fast = detail::to_fast(ptrs)) {
    if (rank == 1) {
      std::vector<std::int64_t> v(fast->values.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = fast->values[i].v[0];
      return f(v, fast->scale);
    }
    return f(fast->values, fast->scale);
  }
  std::vector<LexElem> exact;
  exact.reserve(ptrs.size());
  for (auto* e : ptrs) exact.push_back(*e);
  return f(exact, mpz_class(1));
}

QLexElem back(std::int64_t v, std::size_t, Domain d, const mpz_class& div) {
  FastLex f;
  f.v[0] = v;
  return detail::from_fast(f, 1, d, div);
}
QLexElem back(const FastLex& v, std::size_t rank, Domain d, const mpz_class& div) {
  return detail::from_fast(v, rank, d, div);
}
QLexElem back(const LexElem& v, std::size_t, Domain, const mpz_class& div) { return qdiv(v, div); }

template <class V>
bool le(const V& a, const V& b) {
  return vcmp(a, b) <= 0;
}

void require_delta(const LengthTable& l, const QLexElem& delta) {
  if (delta.num().rank() != l.rank() || delta.num().domain() != l.domain())
    throw InputError("δ " + delta.str() + " does not live in the value group of the table");
  if (delta.sign() < 0) throw InputError("δ must be non-negative");
}

}  // namespace

AxiomReport check_axioms(const LengthTable& l, const Sample& sample, const ScanOptions& opt) {
  const Group& G = *l.group();
  AxiomReport r;
  r.radius = l.radius();
  r.min_delta = QLexElem(LexElem::zero(l.domain(), l.rank()));
  if (sample.empty()) return r;
  Pairs p = build_pairs(l, sample);
  r.skipped = p.missing;

  if (const LexElem* e = l.find({}); !e || !e->is_zero()) {
    r.l1 = {false, {{}}, e ? "l(1) = " + render(*e) : "identity missing from the table"};
  }
  for (std::size_t i = 0; i < p.n && r.l1.holds; ++i)
    if (p.L[i].sign() < 0) r.l1 = {false, {sample[i]}, "negative length " + render(p.L[i])};

  for (std::size_t i = 0; i < p.n; ++i) {
    const LexElem* inv = l.find(G.invert(sample[i]));
    if (!inv) {
      ++r.skipped;
      continue;
    }
    if (!(*inv == p.L[i])) {
      r.l2 = {false, {sample[i]}, "l(g) = " + render(p.L[i]) + ", l(g^-1) = " + render(*inv)};
      break;
    }
  }
  for (std::size_t i = 0; i < p.n && r.l3.holds; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      const LexElem* gh = l.find(G.multiply(sample[i], sample[j]));
      if (!gh) {
        ++r.skipped;
        continue;
      }
      if (*gh > p.L[i] + p.L[j]) {
        r.l3 = {false, {sample[i], sample[j]}, "l(gh) = " + render(*gh) + " exceeds l(g) + l(h)"};
        break;
      }
    }

  with_pairs(p, 1, {}, [&](const auto& all, const mpz_class& scale) {
    using V = std::decay_t<decltype(all[0])>;
    const std::size_t n = p.n;
    std::vector<V> A(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A[i * n + j] = vsub(vadd(all[i], all[j]), all[n + i * n + j]);
    Cand<V> best = detail::scan_triple(A, &p.has, n, resolve_workers(opt.workers));
    if (!best.set) return 0;
    QLexElem d = back(best.val, l.rank(), l.domain(), scale * 2);
    if (d.sign() > 0) {
      r.min_delta = d;
      r.delta_at = {sample[best.at[0]], sample[best.at[1]], sample[best.at[2]]};
    }
    return 0;
  });
  return r;
}

Lambda4Count lambda4_violations(const LengthTable& l, const Sample& sample, const QLexElem& delta) {
  require_delta(l, delta);
  Pairs p = build_pairs(l, sample);
  Lambda4Count out;
  with_pairs(p, delta.den(), {delta.num() * 2}, [&](const auto& all, const mpz_class&) {
    using V = std::decay_t<decltype(all[0])>;
    const std::size_t n = p.n;
    const V twod = all[n + n * n];
    std::vector<V> A(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) A[i * n + j] = vsub(vadd(all[i], all[j]), all[n + i * n + j]);
    for (std::size_t f = 0; f < n; ++f)
      for (std::size_t g = 0; g < n; ++g) {
        if (!p.has[f * n + g]) continue;
        for (std::size_t h = 0; h < n; ++h) {
          if (!p.has[f * n + h] || !p.has[g * n + h]) continue;
          ++out.triples;
          const V& a = A[f * n + h];
          const V& b = A[g * n + h];
          V m = vsub(vcmp(a, b) < 0 ? a : b, twod);
          if (vcmp(A[f * n + g], m) < 0) {
            if (!out.violations) out.first = {sample[f], sample[g], sample[h]};
            ++out.violations;
          }
        }
      }
    return 0;
  });
  return out;
}

PointMap permutation_action(const Group& G, const std::vector<Word>& gens,
                            const std::vector<std::vector<std::size_t>>& perms, long radius) {
  if (gens.size() != perms.size()) throw InputError("one permutation per generator is required");
  const std::size_t m = perms.empty() ? 0 : perms[0].size();
  std::vector<std::pair<Word, std::vector<std::size_t>>> S;
  auto add = [&](const Word& w, const std::vector<std::size_t>& p) {
    for (auto& [x, q] : S)
      if (x == w) {
        if (q != p) throw InputError("generator " + G.format(w) + " given two different permutations");
        return;
      }
    S.push_back({w, p});
  };
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const auto& p = perms[k];
    if (p.size() != m) throw InputError("permutations have different sizes");
    std::vector<std::size_t> inv(m, SIZE_MAX);
    for (std::size_t x = 0; x < m; ++x) {
      if (p[x] >= m || inv[p[x]] != SIZE_MAX) throw InputError("generator " + G.format(gens[k]) + " is not a bijection");
      inv[p[x]] = x;
    }
    add(gens[k], p);
    add(G.invert(gens[k]), inv);
  }
  std::vector<std::size_t> id(m);
  std::iota(id.begin(), id.end(), 0);
  auto table = std::make_shared<std::unordered_map<Word, std::vector<std::size_t>, WordHash>>();
  (*table)[{}] = id;
  std::vector<Word> frontier{{}};
  for (long r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& g : frontier) {
      const auto pg = (*table)[g];
      for (const auto& [s, ps] : S) {
        Word gs = G.multiply(g, s);
        std::vector<std::size_t> q(m);
        for (std::size_t x = 0; x < m; ++x) q[x] = pg[ps[x]];
        auto it = table->find(gs);
        if (it == table->end()) {
          table->emplace(gs, std::move(q));
          next.push_back(gs);
        } else if (it->second != q) {
          throw InputError("permutations do not define an action (relation broken at " + G.format(gs) + ")");
        }
      }
    }
    frontier = std::move(next);
  }
  return [table](const Word& g, std::size_t x) -> std::optional<std::size_t> {
    auto it = table->find(g);
    if (it == table->end() || x >= it->second.size()) return std::nullopt;
    return it->second[x];
  };
}

LengthTable from_action(const FiniteLambdaSpace& X, const PointMap& act, std::size_t v, GroupHandle G,
                        const Sample& sample) {
  if (v >= X.size()) throw InputError("base point out of range");
  LengthTable t(G, X.domain(), X.rank(), 0);
  for (const auto& g : sample) {
    std::vector<std::optional<std::size_t>> img(X.size());
    for (std::size_t x = 0; x < X.size(); ++x) {
      img[x] = act(g, x);
      if (img[x] && *img[x] >= X.size()) throw InputError("action sends a point outside the space");
    }
    for (std::size_t x = 0; x < X.size(); ++x)
      for (std::size_t y = x + 1; y < X.size(); ++y)
        if (img[x] && img[y] && !(X.d(*img[x], *img[y]) == X.d(x, y)))
          throw InputError(G->format(g) + " is not an isometry (points " + X.label(x) + ", " + X.label(y) + ")");
    if (!img[v]) throw InputError(G->format(g) + " moves the base point outside the space");
    t.set(g, X.d(v, *img[v]));
  }
  return t;
}

KernelReport kernel(const LengthTable& l, const Sample& sample) {
  const Group& G = *l.group();
  KernelReport r;
  for (const auto& g : sample)
    if (l.at(g).is_zero()) r.elements.push_back(g);
  for (const auto& a : r.elements) {
    for (const auto& g : sample) {
      const LexElem& lg = l.at(g);
      const LexElem* ag = l.find(G.multiply(a, g));
      const LexElem* ga = l.find(G.multiply(g, a));
      if ((ag && !(*ag == lg)) || (ga && !(*ga == lg))) {
        r.coset_constant = false;
        r.witness = {a, g};
        return r;
      }
    }
  }
  return r;
}

Lambda0Report lambda0_kernel(const LengthTable& l, ConvexIndex i, const Sample& sample,
                             const std::optional<LexElem>& delta) {
  if (i.i > l.rank()) throw InputError("convex index above the rank");
  Lambda0Report r;
  for (const auto& g : sample)
    if (height(l.at(g)) <= i.i) r.elements.push_back(g);
  if (delta && delta->sign() > 0 && height(*delta) > i.i) {
    auto c = lambda4_violations(l, r.elements, QLexElem(*delta));
    r.restriction_hyperbolic = c.violations == 0;
    r.witness = c.first;
  }
  return r;
}

LengthSpace to_space(const LengthTable& l, const Sample& sample) {
  const Group& G = *l.group();
  Pairs p = build_pairs(l, sample);
  if (p.identity == SIZE_MAX) throw InputError("sample must contain the identity");
  LengthSpace S;
  std::vector<std::size_t> reps;
  S.point_of.assign(p.n, 0);
  for (std::size_t j = 0; j < p.n; ++j) {
    std::size_t found = SIZE_MAX;
    for (std::size_t k = 0; k < reps.size() && found == SIZE_MAX; ++k)
      if (p.has[reps[k] * p.n + j] && p.P[reps[k] * p.n + j].is_zero()) found = k;
    if (found == SIZE_MAX) {
      found = reps.size();
      reps.push_back(j);
    }
    S.point_of[j] = found;
  }
  const std::size_t m = reps.size();
  std::vector<LexElem> dist;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    labels.push_back(G.format(sample[reps[a]]));
    S.representatives.push_back(sample[reps[a]]);
    for (std::size_t b = 0; b < m; ++b) {
      if (!p.has[reps[a] * p.n + reps[b]])
        throw InputError("no length for " + G.format(G.multiply(G.invert(sample[reps[a]]), sample[reps[b]])));
      dist.push_back(p.P[reps[a] * p.n + reps[b]]);
    }
  }
  for (std::size_t i = 0; i < p.n && S.well_defined; ++i)
    for (std::size_t j = 0; j < p.n; ++j) {
      if (!p.has[i * p.n + j]) continue;
      if (!(p.P[i * p.n + j] == dist[S.point_of[i] * m + S.point_of[j]])) {
        S.well_defined = false;
        S.witness = {sample[i], sample[j]};
        break;
      }
    }
  S.space = FiniteLambdaSpace(l.domain(), l.rank(), std::move(labels), std::move(dist));
  S.base = S.point_of[p.identity];
  return S;
}

PointMap coset_action(const LengthTable& l, const Sample& sample, const LengthSpace& S) {
  auto G = l.group();
  auto idx = std::make_shared<std::unordered_map<Word, std::size_t, WordHash>>();
  for (std::size_t i = 0; i < sample.size(); ++i) idx->emplace(sample[i], S.point_of[i]);
  auto reps = std::make_shared<Sample>(S.representatives);
  return [G, idx, reps](const Word& g, std::size_t x) -> std::optional<std::size_t> {
    if (x >= reps->size()) return std::nullopt;
    auto it = idx->find(G->multiply(g, (*reps)[x]));
    if (it == idx->end()) return std::nullopt;
    return it->second;
  };
}

RegularReport check_regular(const LengthTable& l, const Sample& sample, long k, const QLexElem& delta) {
  require_delta(l, delta);
  if (k < 0) throw InputError("k must be a natural number");
  Pairs p = build_pairs(l, sample);
  RegularReport r;
  r.radius = l.radius();
  const LexElem kb = delta.num() * (2 * k);
  const LexElem kb1 = delta.num() * (2 * (k + 1));
  with_pairs(p, delta.den(), {kb, kb1}, [&](const auto& all, const mpz_class&) {
    using V = std::decay_t<decltype(all[0])>;
    const std::size_t n = p.n;
    const V K = all[n + n * n], K1 = all[n + n * n + 1];
    auto L = [&](std::size_t i) -> const V& { return all[i]; };
    auto P = [&](std::size_t i, std::size_t j) -> const V& { return all[n + i * n + j]; };
    auto H = [&](std::size_t i, std::size_t j) { return p.has[i * n + j] != 0; };
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = g; h < n; ++h) {
        if (!H(g, h) || !H(h, g)) {
          ++r.skipped;
          continue;
        }
        const V c2 = vsub(vadd(L(g), L(h)), P(g, h));           // 2c(g,h)
        const V cg = vsub(vadd(L(g), P(g, h)), L(h));           // 2c(g^-1, g^-1 h)
        const V ch = vsub(vadd(L(h), P(h, g)), L(g));           // 2c(h^-1, h^-1 g)
        bool any1 = false, any2 = false;
        for (std::size_t u = 0; u < n; ++u) {
          if (!H(u, g) || !H(u, h)) continue;
          const V a1 = vsub(vadd(L(u), P(u, g)), L(g));
          const V a2 = vsub(vadd(L(u), P(u, h)), L(h));
          const V a3 = vsub(vadd(P(u, g), P(u, h)), P(g, h));
          auto r1 = [&](const V& B) { return le(a1, B) && le(a2, B) && le(a3, B); };
          auto r2 = [&](const V& B) {
            return le(vadd(L(u), L(u)), vadd(c2, B)) && le(vadd(P(u, g), P(u, g)), vadd(cg, B)) &&
                   le(vadd(P(u, h), P(u, h)), vadd(ch, B));
          };
          const bool R1 = r1(K), R2 = r2(K), R2n = r2(K1);
          any1 = any1 || R1;
          any2 = any2 || R2;
          ++r.implication_checks;
          if (R1 && !R2n) ++r.r1_to_r2_violations;
          if (R2 && !R1) ++r.r2_to_r1_violations;
        }
        if (!any1 && r.r1.holds) r.r1 = {false, {sample[g], sample[h]}, "no u in the sample"};
        if (!any2 && r.r2.holds) r.r2 = {false, {sample[g], sample[h]}, "no u in the sample"};
      }
    return 0;
  });
  return r;
}

CompleteReport check_complete(const LengthTable& l, const Sample& sample, const QLexElem& delta) {
  CompleteReport r;
  r.radius = l.radius();
  if (l.domain() != Domain::Integer || l.rank() != 1) {
    r.supported = false;
    r.complete = {false, {}, "completeness is only decided for Z-valued lengths"};
    return r;
  }
  require_delta(l, delta);
  Pairs p = build_pairs(l, sample);
  const std::size_t n = p.n;
  auto L = [&](std::size_t i) { return p.L[i][0].get_num().get_si(); };
  auto P = [&](std::size_t i, std::size_t j) { return p.P[i * n + j][0].get_num().get_si(); };
  std::vector<std::vector<std::size_t>> prefixes(n);
  for (std::size_t g = 0; g < n; ++g) {
    std::vector<char> seen(static_cast<std::size_t>(L(g)) + 1, 0);
    for (std::size_t u = 0; u < n; ++u) {
      if (!p.has[u * n + g] || L(u) > L(g) || L(u) + P(u, g) != L(g)) continue;
      prefixes[g].push_back(u);
      seen[static_cast<std::size_t>(L(u))] = 1;
    }
    r.decompositions += prefixes[g].size();
    for (long a = 0; a <= L(g) && r.complete.holds; ++a)
      if (!seen[static_cast<std::size_t>(a)])
        r.complete = {false, {sample[g]}, "no prefix of length " + std::to_string(a)};
  }
  // l(u^-1 v) <= 4δ, compared as den * l <= 4 * num
  const mpz_class den = delta.den();
  const mpz_class num4 = delta.num()[0].get_num() * 4;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      if (!p.has[g * n + h]) continue;
      const long c2 = L(g) + L(h) - P(g, h);
      for (std::size_t u : prefixes[g])
        for (std::size_t v : prefixes[h]) {
          if (L(u) != L(v) || 2 * L(u) > c2 || !p.has[u * n + v]) continue;
          ++r.pairs_checked;
          r.worst = std::max(r.worst, P(u, v));
          if (den * P(u, v) > num4) {
            if (!r.bound_violations) r.bound_witness = {sample[g], sample[h], sample[u], sample[v]};
            ++r.bound_violations;
          }
        }
    }
  return r;
}

FreeReport check_free(const LengthTable& l, const Sample& sample, const QLexElem& delta) {
  require_delta(l, delta);
  const Group& G = *l.group();
  FreeReport r;
  for (const auto& g : sample) {
    if (g.empty()) continue;
    const LexElem& lg = l.at(g);
    if (lg.is_zero()) r.kernel_trivial = false;
    const LexElem* g2 = l.find(G.multiply(g, g));
    if (!g2) {
      ++r.skipped;
      continue;
    }
    // l(g^2) - l(g) > 3δ
    if (r.free.holds && !((*g2 - lg) * delta.den() > delta.num() * 3))
      r.free = {false, {g}, "l(g^2) = " + render(*g2) + ", l(g) = " + render(lg)};
  }
  return r;
}

QuasiGeodesicReport quasigeodesic_check(const FiniteLambdaSpace& X, long C) {
  QuasiGeodesicReport r;
  if (!X.z_valued()) {
    r.supported = false;
    r.holds = false;
    return r;
  }
  const std::size_t n = X.size();
  std::vector<long> d(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) d[x * n + y] = X.zd(x, y);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      ++r.pairs;
      const long D = d[x * n + y];
      std::vector<std::size_t> gamma(static_cast<std::size_t>(D) + 1, SIZE_MAX);
      for (std::size_t w = 0; w < n; ++w) {
        long a = d[x * n + w];
        if (a <= D && a + d[w * n + y] == D && gamma[static_cast<std::size_t>(a)] == SIZE_MAX)
          gamma[static_cast<std::size_t>(a)] = w;
      }
      for (long a = 0; a <= D; ++a) {
        std::size_t ga = gamma[static_cast<std::size_t>(a)];
        if (ga == SIZE_MAX) {
          ++r.missing;
          continue;
        }
        for (long b = a; b <= D; ++b) {
          std::size_t gb = gamma[static_cast<std::size_t>(b)];
          if (gb == SIZE_MAX) continue;
          long e = d[ga * n + gb] - (b - a);
          r.worst_excess = std::max(r.worst_excess, e);
          if ((e < 0 || e > C) && r.holds) {
            r.holds = false;
            r.witness = {x, y, static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
          }
        }
      }
    }
  return r;
}

BallDiagnostic finite_ball_check(const LengthTable& l, const Sample& sample) {
  if (l.domain() != Domain::Integer || l.rank() != 1) throw InputError("finite-ball diagnostic needs Z-valued lengths");
  const Group& G = *l.group();
  BallDiagnostic r;
  r.radius = l.radius();
  const std::size_t n = sample.size();
  std::unordered_map<Word, std::size_t, WordHash> idx;
  std::vector<long> L(n);
  for (std::size_t i = 0; i < n; ++i) {
    idx.emplace(sample[i], i);
    L[i] = l.at(sample[i])[0].get_num().get_si();
  }
  std::vector<std::size_t> S;
  for (std::size_t i = 0; i < n; ++i)
    if (L[i] <= 1) S.push_back(i);
  r.small = S.size();
  // g = u ∘ g1 with l(u) = 1, recursively, inside the sample
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return L[a] < L[b]; });
  std::vector<char> ok(n, 0);
  for (std::size_t i : order) {
    if (L[i] <= 1) {
      ok[i] = 1;
      continue;
    }
    for (std::size_t u : S) {
      if (L[u] != 1) continue;
      auto it = idx.find(G.multiply(G.invert(sample[u]), sample[i]));
      if (it != idx.end() && L[it->second] == L[i] - 1 && ok[it->second]) {
        ok[i] = 1;
        break;
      }
    }
    if (!ok[i]) r.undecomposed.push_back(sample[i]);
  }
  r.generates = r.undecomposed.empty();
  r.min_delta = check_axioms(l, sample).min_delta;
  return r;
}

}  // namespace lhyp
