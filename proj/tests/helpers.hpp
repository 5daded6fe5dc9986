#pragma once
// Generators and brute-force oracles shared by the test binaries. Oracles
// here deliberately avoid the library's scan code.

#include <algorithm>
#include <set>
#include <climits>
#include <numeric>
#include <queue>
#include <random>
#include <vector>

#include "lhyp/lspace.hpp"

namespace testutil {

using Matrix = std::vector<std::vector<long>>;

inline Matrix graph_distances(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [u, v] : edges) adj[u].push_back(v), adj[v].push_back(u);
  Matrix d(n, std::vector<long>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    d[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      auto u = q.front();
      q.pop();
      for (auto w : adj[u])
        if (d[s][w] < 0) d[s][w] = d[s][u] + 1, q.push(w);
    }
  }
  return d;
}

inline Matrix cycle(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return graph_distances(n, e);
}

inline Matrix path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return graph_distances(n, e);
}

// weighted random tree on m nodes, then distances between `points` random nodes
inline Matrix random_tree_metric(std::mt19937_64& rng, std::size_t points, std::size_t nodes, long maxw) {
  std::vector<std::vector<std::pair<std::size_t, long>>> adj(nodes);
  std::uniform_int_distribution<long> W(1, maxw);
  for (std::size_t v = 1; v < nodes; ++v) {
    std::size_t p = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
    long w = W(rng);
    adj[v].push_back({p, w});
    adj[p].push_back({v, w});
  }
  std::vector<std::size_t> pick(nodes);
  std::iota(pick.begin(), pick.end(), 0);
  std::shuffle(pick.begin(), pick.end(), rng);
  pick.resize(std::min(points, nodes));
  Matrix d(pick.size(), std::vector<long>(pick.size()));
  for (std::size_t a = 0; a < pick.size(); ++a) {
    std::vector<long> dist(nodes, -1);
    std::vector<std::size_t> st{pick[a]};
    dist[pick[a]] = 0;
    while (!st.empty()) {
      auto u = st.back();
      st.pop_back();
      for (auto [w, len] : adj[u])
        if (dist[w] < 0) dist[w] = dist[u] + len, st.push_back(w);
    }
    for (std::size_t b = 0; b < pick.size(); ++b) d[a][b] = dist[pick[b]];
  }
  return d;
}

// random symmetric weights in [1, maxw] closed under shortest paths
inline Matrix random_metric(std::mt19937_64& rng, std::size_t n, long maxw) {
  std::uniform_int_distribution<long> W(1, maxw);
  Matrix d(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = W(rng);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// connected random graph: random spanning tree plus extra edges
inline std::vector<std::pair<std::size_t, std::size_t>> random_connected_graph(std::mt19937_64& rng, std::size_t n,
                                                                             double p) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  std::bernoulli_distribution B(p);
  for (std::size_t v = 1; v < n; ++v) e.push_back({std::uniform_int_distribution<std::size_t>(0, v - 1)(rng), v});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      bool present = std::any_of(e.begin(), e.end(), [&](auto pr) {
        return (pr.first == i && pr.second == j) || (pr.first == j && pr.second == i);
      });
      if (!present && B(rng)) e.push_back({i, j});
    }
  return e;
}

// 2 * four-point delta over all ordered quadruples
inline long oracle_4pt_doubled(const Matrix& d) {
  const std::size_t n = d.size();
  long best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t t = 0; t < n; ++t)
          best = std::max(best, d[x][y] + d[z][t] - std::max(d[x][z] + d[y][t], d[y][z] + d[x][t]));
  return best;
}

// 2 * triple delta at v over all ordered triples
inline long oracle_triple_doubled(const Matrix& d, std::size_t v) {
  const std::size_t n = d.size();
  auto gp2 = [&](std::size_t x, std::size_t y) { return d[x][v] + d[y][v] - d[x][y]; };
  long best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) best = std::max(best, std::min(gp2(x, z), gp2(z, y)) - gp2(x, y));
  return best;
}

inline lhyp::QLexElem half(long doubled) { return lhyp::qdiv(lhyp::LexElem::of_int(doubled), 2); }

}  // namespace testutil
