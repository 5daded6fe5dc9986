#include "lhyp/geodspace.hpp"

#include <functional>
#include <map>
#include <queue>
#include <unordered_set>

namespace lhyp {

GeodesicGraph::GeodesicGraph(std::size_t n, std::vector<std::string> labels) : adj_(n), labels_(std::move(labels)) {
  if (labels_.empty())
    for (std::size_t i = 0; i < n; ++i) labels_.push_back(std::to_string(i));
  if (labels_.size() != n) throw InputError("graph: label count mismatch");
}

void GeodesicGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= size() || v >= size()) throw InputError("graph: edge endpoint out of range");
  if (u == v) throw InputError("graph: loops are not allowed");
  if (has_edge(u, v)) return;
  adj_[u].push_back(v);
  adj_[v].push_back(u);
}

bool GeodesicGraph::has_edge(std::size_t u, std::size_t v) const {
  return std::find(adj_.at(u).begin(), adj_.at(u).end(), v) != adj_.at(u).end();
}

std::vector<std::pair<std::size_t, std::size_t>> GeodesicGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t u = 0; u < size(); ++u)
    for (std::size_t v : adj_[u])
      if (u < v) e.push_back({u, v});
  std::sort(e.begin(), e.end());
  return e;
}

std::vector<std::vector<long>> GeodesicGraph::distances() const {
  const std::size_t n = size();
  std::vector<std::vector<long>> d(n, std::vector<long>(n, -1));
  std::vector<std::size_t> q(n);
  for (std::size_t s = 0; s < n; ++s) {
    auto& ds = d[s];
    std::size_t head = 0, tail = 0;
    ds[s] = 0;
    q[tail++] = s;
    while (head < tail) {
      std::size_t u = q[head++];
      for (std::size_t w : adj_[u])
        if (ds[w] < 0) ds[w] = ds[u] + 1, q[tail++] = w;
    }
  }
  return d;
}

bool GeodesicGraph::connected() const {
  if (size() == 0) return true;
  auto d = distances();
  return std::all_of(d[0].begin(), d[0].end(), [](long v) { return v >= 0; });
}

FiniteLambdaSpace as_space(const GeodesicGraph& G) {
  auto d = G.distances();
  for (auto& row : d)
    for (long v : row)
      if (v < 0) throw InputError("graph is disconnected");
  return FiniteLambdaSpace::from_integers(d, G.labels());
}

namespace {

struct IntTable {
  std::size_t n;
  std::vector<long> d;
  long operator()(std::size_t a, std::size_t b) const { return d[a * n + b]; }
};

IntTable int_table(const FiniteLambdaSpace& X) {
  if (!X.z_valued()) throw InputError("a Z-valued space is required");
  IntTable t{X.size(), {}};
  t.d.reserve(X.size() * X.size());
  for (const auto& e : X.table()) {
    if (!e[0].get_num().fits_slong_p()) throw InputError("distance too large");
    t.d.push_back(e[0].get_num().get_si());
  }
  return t;
}

// levels[x*n+y][t] = points w with d(x,w)=t on a geodesic x..y
using Levels = std::vector<std::vector<std::vector<std::size_t>>>;

Levels interval_levels(const IntTable& D) {
  const std::size_t n = D.n;
  Levels L(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto& lv = L[x * n + y];
      long dxy = D(x, y);
      lv.resize(static_cast<std::size_t>(std::max(0L, dxy)) + 1);
      for (std::size_t w = 0; w < n; ++w)
        if (D(x, w) + D(w, y) == dxy) lv[static_cast<std::size_t>(D(x, w))].push_back(w);
    }
  return L;
}

void require_geodesic(const FiniteLambdaSpace& X) {
  auto g = is_geodesic(X);
  if (!g.geodesic)
    throw InputError("space is not geodesic: no point at parameter " + std::to_string(g.t) + " between " +
                     X.label(g.x) + " and " + X.label(g.y));
}

QLexElem qint(long v) { return QLexElem(LexElem::of_int(v)); }

}  // namespace

GeodesicCheck is_geodesic(const FiniteLambdaSpace& X) {
  auto D = int_table(X);
  const std::size_t n = D.n;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      long dxy = D(x, y);
      std::vector<char> seen(static_cast<std::size_t>(dxy) + 1, 0);
      for (std::size_t w = 0; w < n; ++w)
        if (D(x, w) + D(w, y) == dxy) seen[static_cast<std::size_t>(D(x, w))] = 1;
      for (long t = 0; t <= dxy; ++t)
        if (!seen[static_cast<std::size_t>(t)]) return {false, x, y, t};
    }
  return {};
}

Tripod tripod_insizes(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z) {
  return {gromov_product(X, y, z, x), gromov_product(X, x, z, y), gromov_product(X, x, y, z)};
}

std::vector<std::size_t> interval(const FiniteLambdaSpace& X, std::size_t x, std::size_t y) {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < X.size(); ++w)
    if (X.d(x, w) + X.d(w, y) == X.d(x, y)) out.push_back(w);
  return out;
}

bool is_discrete_geodesic(const FiniteLambdaSpace& X, const std::vector<std::size_t>& seq) {
  if (seq.empty()) return false;
  auto D = int_table(X);
  if (static_cast<long>(seq.size()) != D(seq.front(), seq.back()) + 1) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    if (D(seq[i], seq[i + 1]) != 1) return false;
  return true;
}

std::vector<std::vector<std::size_t>> all_geodesics(const FiniteLambdaSpace& X, std::size_t x, std::size_t y,
                                                    std::size_t limit) {
  auto D = int_table(X);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur{x};
  std::function<void(std::size_t)> rec = [&](std::size_t u) {
    if (out.size() >= limit) return;
    if (u == y) {
      out.push_back(cur);
      return;
    }
    for (std::size_t w = 0; w < D.n; ++w)
      if (D(u, w) == 1 && D(w, y) == D(u, y) - 1) {
        cur.push_back(w);
        rec(w);
        cur.pop_back();
      }
  };
  rec(x);
  return out;
}

ThinWitness min_thinness(const FiniteLambdaSpace& X) {
  require_geodesic(X);
  auto D = int_table(X);
  const std::size_t n = D.n;
  auto L = interval_levels(D);
  long best = 0;
  std::vector<std::size_t> at{0, 0, 0, 0, 0, 0};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        long twice = D(x, y) + D(x, z) - D(y, z);
        for (long t = 1; t <= twice / 2; ++t)
          for (std::size_t u : L[x * n + y][static_cast<std::size_t>(t)])
            for (std::size_t v : L[x * n + z][static_cast<std::size_t>(t)])
              if (D(u, v) > best) best = D(u, v), at = {x, y, z, static_cast<std::size_t>(t), u, v};
      }
  return {qint(best), at};
}

ThinWitness min_rips(const FiniteLambdaSpace& X) {
  require_geodesic(X);
  auto D = int_table(X);
  const std::size_t n = D.n;
  std::vector<std::vector<std::size_t>> I(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t w = 0; w < n; ++w)
        if (D(a, w) + D(w, b) == D(a, b)) I[a * n + b].push_back(w);
  auto dist_to = [&](std::size_t u, const std::vector<std::size_t>& S) {
    long m = -1;
    for (std::size_t w : S)
      if (m < 0 || D(u, w) < m) m = D(u, w);
    return m;
  };
  long best = 0;
  std::vector<std::size_t> at{0, 0, 0, 0};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t u : I[x * n + y]) {
          long m = std::min(dist_to(u, I[x * n + z]), dist_to(u, I[y * n + z]));
          if (m > best) best = m, at = {x, y, z, u};
        }
  return {qint(best), at};
}

InnerTriangle inner_triangle(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z,
                             const std::vector<std::size_t>& side_xy, const std::vector<std::size_t>& side_xz,
                             const std::vector<std::size_t>& side_yz) {
  auto check = [&](const std::vector<std::size_t>& s, std::size_t a, std::size_t b) {
    if (!is_discrete_geodesic(X, s) || s.front() != a || s.back() != b)
      throw InputError("inner_triangle: side is not a discrete geodesic between its corners");
  };
  check(side_xy, x, y), check(side_xz, x, z), check(side_yz, y, z);
  auto T = tripod_insizes(X, x, y, z);
  auto ax = static_cast<std::size_t>(T.at_x.floor_scalar().get_si());
  auto ay = static_cast<std::size_t>(T.at_y.floor_scalar().get_si());
  InnerTriangle r;
  r.p = side_xy[ax];
  r.q = side_xz[ax];
  r.r = side_yz[ay];
  auto D = int_table(X);
  r.d_pq = D(r.p, r.q), r.d_pr = D(r.p, r.r), r.d_qr = D(r.q, r.r);
  return r;
}

const std::array<const char*, 6>& Report129::names() {
  static const std::array<const char*, 6> n{"d2<=4d1", "d1<=2d2", "d3<=d2", "d2<=4d3", "d3<=4d1", "d1<=8d3"};
  return n;
}

Report129 check_129(const FiniteLambdaSpace& X) {
  require_geodesic(X);
  Report129 r;
  r.delta1 = hyperbolicity(X).delta_triple_all.value;
  r.delta2 = min_thinness(X).value;
  r.delta3 = min_rips(X).value;
  const auto &d1 = r.delta1, &d2 = r.delta2, &d3 = r.delta3;
  r.holds = {d2 <= d1 * 4, d1 <= d2 * 2, d3 <= d2, d2 <= d3 * 4, d3 <= d1 * 4, d1 <= d3 * 8};
  return r;
}

// ---- canonical forms and enumeration

namespace {

using Cells = std::vector<std::vector<std::size_t>>;

void refine(const std::vector<std::uint32_t>& adj, Cells& cells) {
  const std::size_t n = adj.size();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::size_t> cell_of(n);
    for (std::size_t c = 0; c < cells.size(); ++c)
      for (std::size_t v : cells[c]) cell_of[v] = c;
    Cells next;
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::map<std::vector<int>, std::vector<std::size_t>> split;
      for (std::size_t v : cell) {
        std::vector<int> sig(cells.size(), 0);
        for (std::size_t w = 0; w < n; ++w)
          if (adj[v] >> w & 1u) ++sig[cell_of[w]];
        split[sig].push_back(v);
      }
      if (split.size() > 1) changed = true;
      for (auto& [sig, vs] : split) next.push_back(vs);
    }
    cells = std::move(next);
  }
}

std::uint64_t code_of(const std::vector<std::uint32_t>& adj, const Cells& cells) {
  std::vector<std::size_t> order;
  for (const auto& c : cells) order.push_back(c[0]);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) code = code << 1 | (adj[order[i]] >> order[j] & 1u);
  return code;
}

void search(const std::vector<std::uint32_t>& adj, Cells cells, std::uint64_t& best, bool& have) {
  refine(adj, cells);
  auto it = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
  if (it == cells.end()) {
    std::uint64_t c = code_of(adj, cells);
    if (!have || c > best) best = c, have = true;
    return;
  }
  std::size_t pos = static_cast<std::size_t>(it - cells.begin());
  for (std::size_t v : cells[pos]) {
    Cells next(cells.begin(), cells.begin() + static_cast<long>(pos));
    next.push_back({v});
    std::vector<std::size_t> rest;
    for (std::size_t w : cells[pos])
      if (w != v) rest.push_back(w);
    next.push_back(rest);
    next.insert(next.end(), cells.begin() + static_cast<long>(pos) + 1, cells.end());
    search(adj, std::move(next), best, have);
  }
}

std::uint64_t canonical_bits(const std::vector<std::uint32_t>& adj) {
  Cells cells(1);
  for (std::size_t v = 0; v < adj.size(); ++v) cells[0].push_back(v);
  std::uint64_t best = 0;
  bool have = false;
  if (adj.empty()) return 0;
  search(adj, cells, best, have);
  return best;
}

}  // namespace

std::uint64_t canonical_code(const GeodesicGraph& G) {
  if (G.size() > 11) throw InputError("canonical_code supports at most 11 vertices");
  std::vector<std::uint32_t> adj(G.size(), 0);
  for (auto [u, v] : G.edges()) adj[u] |= 1u << v, adj[v] |= 1u << u;
  return canonical_bits(adj);
}

std::vector<GeodesicGraph> connected_graphs(std::size_t n) {
  if (n == 0) return {};
  if (n > 10) throw InputError("graph enumeration supports at most 10 vertices");
  std::vector<std::vector<std::uint32_t>> layer{{0u}};
  for (std::size_t k = 2; k <= n; ++k) {
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& g : layer)
      for (std::uint32_t s = 0; s < (1u << (k - 1)); ++s) {
        std::vector<std::uint32_t> h = g;
        h.push_back(s);
        for (std::size_t v = 0; v + 1 < k; ++v)
          if (s >> v & 1u) h[v] |= 1u << (k - 1);
        if (seen.insert(canonical_bits(h)).second) next.push_back(std::move(h));
      }
    layer = std::move(next);
  }
  std::vector<GeodesicGraph> out;
  for (const auto& g : layer) {
    GeodesicGraph G(n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (g[u] >> v & 1u) G.add_edge(u, v);
    if (G.connected()) out.push_back(std::move(G));
  }
  return out;
}

}  // namespace lhyp
