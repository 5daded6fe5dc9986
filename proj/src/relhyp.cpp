#include "lhyp/relhyp.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>

namespace lhyp {

namespace {

mpq_class len(const LengthTable& l, const Word& g) {
  const LexElem* v = l.find(g);
  if (!v) throw InputError("length table has no entry for " + l.group()->format(g));
  if (v->rank() != 1) throw InputError("relative machinery needs rank-1 lengths");
  return (*v)[0];
}

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t v) {
    while (p[v] != v) v = p[v] = p[p[v]];
    return v;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::size_t> kernel_in_ball(const LengthTable& l, const Ball& b) {
  std::vector<std::size_t> k;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (len(l, b.elements[i]) == 0) k.push_back(i);
  return k;
}

std::optional<mpq_class> min_outside(const LengthTable& l, const Ball& b) {
  std::optional<mpq_class> m;
  for (const auto& g : b.elements) {
    mpq_class v = len(l, g);
    if (v != 0 && (!m || v < *m)) m = v;
  }
  return m;
}

// BFS on ball elements, edges g -> g s for s in `steps`
std::vector<long> bfs_ball(const Group& G, const Ball& b, const std::vector<Word>& steps, std::size_t from) {
  std::vector<long> d(b.size(), -1);
  std::queue<std::size_t> q;
  d[from] = 0;
  q.push(from);
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (const auto& s : steps) {
      auto it = b.index.find(G.multiply(b.elements[u], s));
      if (it == b.index.end() || d[it->second] >= 0) continue;
      d[it->second] = d[u] + 1;
      q.push(it->second);
    }
  }
  return d;
}

std::vector<Word> relative_steps(const Group& G, const std::vector<Word>& gens, const Ball& b,
                                 const std::vector<std::size_t>& kernel) {
  auto steps = symmetrize(G, gens);
  for (std::size_t k : kernel)
    if (!b.elements[k].empty() && std::find(steps.begin(), steps.end(), b.elements[k]) == steps.end())
      steps.push_back(b.elements[k]);
  return steps;
}

}  // namespace

std::optional<mpq_class> RelCayley::weight(std::size_t u, std::size_t v) const {
  for (const auto& [w, c] : adj.at(u))
    if (w == v) return c;
  return std::nullopt;
}

RelCayley rel_cayley(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& N, long radius) {
  RelCayley R;
  R.group = l.group();
  const Group& G = *R.group;
  R.gens = symmetrize(G, gens);
  R.N = N;
  for (const auto& s : R.gens)
    if (len(l, s) > N)
      throw InputError("generator " + G.format(s) + " has length " + len(l, s).get_str() + " > N");
  R.ball = cayley_ball(G, gens, radius);
  const Ball& b = R.ball;
  auto kernel = kernel_in_ball(l, b);
  R.kernel_size = kernel.size();

  UnionFind uf(b.size());
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t k : kernel) {
      auto it = b.index.find(G.multiply(b.elements[i], b.elements[k]));
      if (it != b.index.end()) uf.unite(i, it->second);
    }
  std::map<std::size_t, std::size_t> vertex_of_root;
  R.coset_of.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto [it, fresh] = vertex_of_root.try_emplace(uf.find(i), R.reps.size());
    if (fresh) R.reps.push_back(b.elements[i]);
    R.coset_of[i] = it->second;
  }
  R.base = R.coset_of[0];

  std::vector<std::pair<Word, mpq_class>> BN;
  for (const auto& [h, v] : l.entries()) {
    if (v.rank() != 1) throw InputError("relative machinery needs rank-1 lengths");
    if (v[0] <= N) BN.push_back({h, v[0]});
  }
  std::map<std::pair<std::size_t, std::size_t>, mpq_class> w;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (const auto& [h, lh] : BN) {
      auto it = b.index.find(G.multiply(b.elements[i], h));
      if (it == b.index.end()) continue;
      std::size_t u = R.coset_of[i], v = R.coset_of[it->second];
      if (u == v) continue;
      auto key = std::minmax(u, v);
      auto [e, fresh] = w.try_emplace(key, lh);
      if (!fresh && e->second != lh) ++R.weight_conflicts;
    }
  R.adj.resize(R.size());
  for (const auto& [k, c] : w) {
    R.edges.push_back({k.first, k.second, c});
    R.adj[k.first].push_back({k.second, c});
    R.adj[k.second].push_back({k.first, c});
  }

  // Dijkstra from every vertex
  R.dist.assign(R.size(), std::vector<std::optional<mpq_class>>(R.size()));
  for (std::size_t s = 0; s < R.size(); ++s) {
    auto& d = R.dist[s];
    using Item = std::pair<mpq_class, std::size_t>;
    auto cmp = [](const Item& a, const Item& c) { return a.first > c.first || (a.first == c.first && a.second > c.second); };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> pq(cmp);
    d[s] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != *d[u]) continue;
      for (const auto& [v, c] : R.adj[u]) {
        mpq_class nd = du + c;
        if (!d[v] || nd < *d[v]) {
          d[v] = nd;
          pq.push({nd, v});
        }
      }
    }
  }
  for (const auto& d : R.dist[R.base]) R.connected = R.connected && d.has_value();
  return R;
}

ProperReport check_proper(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& N, long radius) {
  ProperReport r;
  r.radius = radius;
  const Group& G = *l.group();
  Ball b = cayley_ball(G, gens, radius);
  auto kernel = kernel_in_ball(l, b);
  r.min_outside = min_outside(l, b);
  auto d = bfs_ball(G, b, relative_steps(G, gens, b, kernel), 0);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (len(l, b.elements[i]) > N) continue;
    if (d[i] < 0) {
      r.bounded = false;
      r.unreachable.push_back(b.elements[i]);
    } else {
      r.n_prime = std::max(r.n_prime, d[i]);
    }
  }
  return r;
}

std::vector<std::vector<long>> relative_word_metric(const RelCayley& R, const LengthTable& l) {
  const Group& G = *R.group;
  auto steps = relative_steps(G, R.gens, R.ball, kernel_in_ball(l, R.ball));
  std::vector<std::vector<long>> D;
  for (std::size_t i = 0; i < R.ball.size(); ++i) D.push_back(bfs_ball(G, R.ball, steps, i));
  return D;
}

QIBoundReport check_qi_bounds(const RelCayley& R, const LengthTable& l) {
  QIBoundReport r;
  auto m = min_outside(l, R.ball);
  if (!m) return r;  // one coset, nothing to compare
  r.alpha = *m;
  auto D = relative_word_metric(R, l);
  for (std::size_t i = 0; i < R.ball.size(); ++i)
    if (len(l, R.ball.elements[i]) <= R.N && D[0][i] >= 0) r.n_prime = std::max(r.n_prime, D[0][i]);
  for (std::size_t i = 0; i < R.ball.size(); ++i)
    for (std::size_t j = i + 1; j < R.ball.size(); ++j) {
      std::size_t u = R.coset_of[i], v = R.coset_of[j];
      if (u == v) continue;
      const auto& dg = R.dist[u][v];
      if (D[i][j] < 0 || !dg) {
        ++r.skipped;
        continue;
      }
      ++r.pairs;
      const mpq_class dp = D[i][j];
      bool up = *dg <= R.N * dp;
      bool low = dp * r.alpha <= 2 * r.n_prime * *dg;
      if (!up) ++r.upper_violations;
      if (!low) ++r.lower_violations;
      if ((!up || !low) && r.witness.empty()) r.witness = {R.ball.elements[i], R.ball.elements[j]};
    }
  return r;
}

GeodesicReport verify_relhyp_geodesics(const RelCayley& R, const LengthTable& l, long k, const mpq_class& delta) {
  GeodesicReport r;
  const mpq_class half = R.N / 2, kd = delta * k;
  const auto& d0 = R.dist[R.base];
  bool first_i = true, first_ii = true;
  for (const auto& [a, w1] : R.adj[R.base])
    for (const auto& [b, w2] : R.adj[a]) {
      if (b == R.base || !d0[b] || w1 + w2 != *d0[b]) continue;
      ++r.two_edge;
      if (w1 <= half && w2 <= half) {
        ++r.short_pairs;
        auto chord = R.weight(R.base, b);
        if (!chord || *chord != w1 + w2) ++r.short_pairs_without_chord;
      }
      mpq_class deficit = w1 + w2 - len(l, R.reps[b]);
      if (first_i || deficit > r.worst_slack_i) r.worst_slack_i = deficit, first_i = false;
      if (deficit > 2 * kd) {
        if (r.witness_i.empty()) r.witness_i = {R.reps[a], R.reps[b]};
        ++r.violations_i;
      }
      for (const auto& [c, w3] : R.adj[b]) {
        if (c == a || !d0[c] || w1 + w2 + w3 != *d0[c]) continue;
        ++r.three_edge;
        if (!(w2 < half)) continue;
        mpq_class def3 = w1 + w2 + w3 - len(l, R.reps[c]);
        if (first_ii || def3 > r.worst_slack_ii) r.worst_slack_ii = def3, first_ii = false;
        if (def3 > 5 * kd) {
          if (r.witness_ii.empty()) r.witness_ii = {R.reps[a], R.reps[b], R.reps[c]};
          ++r.violations_ii;
        }
      }
    }
  return r;
}

std::pair<mpq_class, mpq_class> log2_154_bracket(unsigned bits) {
  // 2^m <= 154^(2^bits) < 2^(m+1)
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 154, 1ul << bits);
  const long m = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) - 1;
  mpz_class den = mpz_class(1) << bits;
  return {mpq_class(m, den), mpq_class(m + 1, den)};
}

std::pair<mpq_class, mpq_class> LogAffine::bracket(unsigned bits) const {
  auto [lo, hi] = log2_154_bracket(bits);
  lo.canonicalize();
  hi.canonicalize();
  if (a >= 0) return {a * lo + b, a * hi + b};
  return {a * hi + b, a * lo + b};
}

LogAffine pn_threshold(const mpq_class& delta) { return {6144, 768 + 2288 * delta}; }
LogAffine pn_L(const mpq_class& delta) { return {1536, 192 + 572 * delta}; }

PnReport check_Pn(const LengthTable& l, const std::vector<Word>& gens, const mpq_class& n, long radius,
                  const mpq_class& delta) {
  PnReport r;
  r.radius = radius;
  const Group& G = *l.group();
  Ball b = cayley_ball(G, gens, radius);
  auto kernel = kernel_in_ball(l, b);
  // B_0 is G_x by definition of the kernel; any α below the least outside length works
  r.alpha = mpq_class(0);

  std::vector<Word> bn;
  std::vector<std::size_t> bn_idx;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (len(l, b.elements[i]) <= n) bn.push_back(b.elements[i]), bn_idx.push_back(i);
  r.bn_size = bn.size();
  auto reach = bfs_ball(G, b, symmetrize(G, bn), 0);
  r.generates = std::all_of(reach.begin(), reach.end(), [](long v) { return v >= 0; });

  std::map<std::size_t, std::size_t> pos;
  for (std::size_t t = 0; t < bn_idx.size(); ++t) pos[bn_idx[t]] = t;
  UnionFind uf(bn.size());
  for (std::size_t t = 0; t < bn.size(); ++t)
    for (std::size_t k : kernel)
      for (const Word& w : {G.multiply(b.elements[k], bn[t]), G.multiply(bn[t], b.elements[k])}) {
        auto it = b.index.find(w);
        if (it == b.index.end()) continue;
        auto p = pos.find(it->second);
        if (p != pos.end()) uf.unite(t, p->second);
      }
  for (std::size_t t = 0; t < bn.size(); ++t) r.double_cosets += uf.find(t) == t;

  r.threshold = pn_threshold(delta);
  auto [lo, hi] = r.threshold.bracket();
  if (n >= hi) r.above_threshold = true;
  else if (n <= lo) r.above_threshold = false;
  return r;
}

}  // namespace lhyp
