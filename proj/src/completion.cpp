#include "lhyp/completion.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <stdexcept>

namespace lhyp {

namespace {

// compares digit runs numerically so "a:0-1:10" sorts after "a:0-1:9"
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::isdigit(static_cast<unsigned char>(a[i])) && std::isdigit(static_cast<unsigned char>(b[j]))) {
      std::size_t i2 = i, j2 = j;
      while (i2 < a.size() && std::isdigit(static_cast<unsigned char>(a[i2]))) ++i2;
      while (j2 < b.size() && std::isdigit(static_cast<unsigned char>(b[j2]))) ++j2;
      std::string x = a.substr(i, i2 - i), y = b.substr(j, j2 - j);
      if (x.size() != y.size()) return x.size() < y.size();
      if (x != y) return x < y;
      i = i2, j = j2;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i, ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::string ekey(std::size_t i) { return "e:" + std::to_string(i); }
std::string akey(std::size_t i, std::size_t j, long t) {
  return "a:" + std::to_string(i) + "-" + std::to_string(j) + ":" + std::to_string(t);
}
// endpoint keys, ordered
std::string nkey(const std::string& u, const std::string& v, long s) {
  return "n:" + u + "|" + v + ":" + std::to_string(s);
}

mpq_class scalar(const QLexElem& d) {
  if (d.num().rank() != 1) throw InputError("δ must be a scalar for completions");
  if (d.sign() < 0) throw InputError("δ must be non-negative");
  return mpq_class(d.num()[0]) / mpq_class(d.den());
}

long floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}
long ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

class Builder {
 public:
  std::size_t add(VClass c, const std::string& key) {
    std::size_t id = cls_.size();
    cls_.push_back(c);
    keys_.push_back({key});
    adj_.emplace_back();
    parent_.push_back(id);
    key_to_[key] = id;
    return id;
  }
  std::size_t find(std::size_t v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  std::size_t at(const std::string& key) { return find(key_to_.at(key)); }
  bool has(const std::string& key) const { return key_to_.count(key) > 0; }
  void edge(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return;
    adj_[a].insert(b);
    adj_[b].insert(a);
  }
  void merge(std::size_t a, std::size_t b) {
    a = find(a), b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    for (std::size_t w : adj_[b]) {
      adj_[w].erase(b);
      if (w != a) adj_[w].insert(a), adj_[a].insert(w);
    }
    adj_[b].clear();
    adj_[a].erase(b);
    parent_[b] = a;
    cls_[a] = std::min(cls_[a], cls_[b]);
    keys_[a].insert(keys_[a].end(), keys_[b].begin(), keys_[b].end());
  }
  // graph distance if it is <= limit, else -1
  long dist_upto(std::size_t a, std::size_t b, long limit) {
    a = find(a), b = find(b);
    if (a == b) return 0;
    if (limit <= 0) return -1;
    std::unordered_map<std::size_t, long> seen{{a, 0}};
    std::queue<std::size_t> q;
    q.push(a);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      long du = seen[u];
      if (du == limit) continue;
      for (std::size_t w : adj_[u]) {
        if (seen.count(w)) continue;
        if (w == b) return du + 1;
        seen[w] = du + 1;
        q.push(w);
      }
    }
    return -1;
  }
  const std::string& key(std::size_t v) const { return keys_[v][0]; }

  CompletionGraph finish(std::size_t essentials) {
    std::vector<std::size_t> live;
    for (std::size_t v = 0; v < cls_.size(); ++v)
      if (find(v) == v) {
        std::sort(keys_[v].begin(), keys_[v].end(), natural_less);
        live.push_back(v);
      }
    std::stable_sort(live.begin(), live.end(), [&](std::size_t a, std::size_t b) {
      bool ea = a < essentials, eb = b < essentials;
      if (ea || eb) return ea && eb ? a < b : ea;
      if (cls_[a] != cls_[b]) return cls_[a] < cls_[b];
      return natural_less(keys_[a][0], keys_[b][0]);
    });
    std::vector<std::size_t> id(cls_.size(), SIZE_MAX);
    CompletionGraph g;
    for (std::size_t k = 0; k < live.size(); ++k) {
      id[live[k]] = k;
      g.vertices.push_back({cls_[live[k]], keys_[live[k]]});
      for (const auto& s : keys_[live[k]]) g.by_key[s] = k;
    }
    for (std::size_t v : live)
      for (std::size_t w : adj_[v])
        if (id[v] < id[w]) g.edges.push_back({id[v], id[w]});
    std::sort(g.edges.begin(), g.edges.end());
    return g;
  }

 private:
  std::vector<VClass> cls_;
  std::vector<std::vector<std::string>> keys_;
  std::vector<std::set<std::size_t>> adj_;
  std::vector<std::size_t> parent_;
  std::unordered_map<std::string, std::size_t> key_to_;
};

std::vector<std::vector<long>> bfs_all(const CompletionGraph& g) { return g.graph().distances(); }

void check_input(const FiniteLambdaSpace& X, const QLexElem& delta) {
  if (!X.z_valued()) throw InputError("completions need a Z-valued space");
  if (X.size() == 0) throw InputError("empty space");
  auto v = validate_metric(X);
  if (!v.empty()) throw InputError("input is not a metric (" + v[0].axiom + ")");
  scalar(delta);
  auto d = min_delta_4pt(X).value;
  if (QLexElem(delta.num(), delta.den()) < d)
    throw InputError("δ = " + render(delta) + " is below the hyperbolicity constant " + render(d));
}

DeltaCertificate certify(const CompletionGraph& g, std::size_t limit) {
  if (g.size() <= limit) return {min_delta_4pt(as_space(g.graph())).value, true};
  long diam = 0;
  for (const auto& row : bfs_all(g))
    for (long v : row) diam = std::max(diam, v);
  return {qdiv(LexElem::of_int(diam), 2), false};
}

void verify_restriction(const FiniteLambdaSpace& X, const std::vector<std::vector<long>>& D, const char* what) {
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y)
      if (D[x][y] != X.zd(x, y))
        throw ConstructionFailure(std::string(what) + ": distance between points " + X.label(x) + " and " +
                                  X.label(y) + " became " + std::to_string(D[x][y]) + ", input " +
                                  std::to_string(X.zd(x, y)));
}

template <class T>
void maybe_shuffle(std::vector<T>& v, const CompletionOptions& opt, unsigned long salt) {
  if (!opt.shuffle_seed) return;
  std::mt19937_64 rng(*opt.shuffle_seed * 1000003ul + salt);
  std::shuffle(v.begin(), v.end(), rng);
}

struct Pair {
  std::size_t i, j;
  long d;
};

std::vector<Pair> all_pairs(const FiniteLambdaSpace& X) {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < X.size(); ++i)
    for (std::size_t j = i + 1; j < X.size(); ++j) out.push_back({i, j, X.zd(i, j)});
  return out;
}

bool blocked(const FiniteLambdaSpace& X, std::size_t i, std::size_t j) {
  for (std::size_t z = 0; z < X.size(); ++z)
    if (z != i && z != j && X.zd(i, z) + X.zd(z, j) == X.zd(i, j)) return true;
  return false;
}

void add_basic_path(Builder& b, std::size_t i, std::size_t j, long d) {
  std::size_t prev = b.at(ekey(i));
  for (long t = 1; t < d; ++t) {
    std::size_t v = b.add(VClass::Auxiliary, akey(i, j, t));
    b.edge(prev, v);
    prev = v;
  }
  b.edge(prev, b.at(ekey(j)));
}

// bridge of the given length between two existing vertices
void add_bridge(Builder& b, std::size_t u, std::size_t v, long len) {
  if (len == 0) {
    b.merge(u, v);
    return;
  }
  std::string ku = b.key(u), kv = b.key(v);
  if (natural_less(kv, ku)) std::swap(ku, kv), std::swap(u, v);
  std::size_t prev = u;
  for (long s = 1; s < len; ++s) {
    std::size_t w = b.add(VClass::Negligible, nkey(ku, kv, s));
    b.edge(prev, w);
    prev = w;
  }
  b.edge(prev, v);
}

}  // namespace

std::string to_string(VClass c) {
  switch (c) {
    case VClass::Essential: return "essential";
    case VClass::Auxiliary: return "auxiliary";
    case VClass::Negligible: return "negligible";
  }
  return "?";
}

std::size_t CompletionGraph::find(const std::string& key) const {
  auto it = by_key.find(key);
  return it == by_key.end() ? SIZE_MAX : it->second;
}

GeodesicGraph CompletionGraph::graph() const {
  std::vector<std::string> labels;
  for (const auto& v : vertices) labels.push_back(v.keys[0]);
  GeodesicGraph g(vertices.size(), labels);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

std::vector<std::vector<long>> CompletionGraph::distances() const { return graph().distances(); }

std::string CompletionGraph::canonical() const {
  std::vector<std::string> vs, es;
  for (const auto& v : vertices) {
    std::string s = to_string(v.cls) + " ";
    for (const auto& k : v.keys) s += k + ",";
    vs.push_back(s);
  }
  for (auto [u, v] : edges) {
    std::string a = vertices[u].keys[0], b = vertices[v].keys[0];
    if (natural_less(b, a)) std::swap(a, b);
    es.push_back(a + " " + b);
  }
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  std::string out;
  for (const auto& s : vs) out += s + "\n";
  for (const auto& s : es) out += s + "\n";
  return out;
}

std::vector<std::size_t> midpoints(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z,
                                   const QLexElem& delta) {
  if (!X.z_valued()) throw InputError("mid-points need a Z-valued space");
  const mpq_class two_d = scalar(delta) * 2;
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < X.size(); ++v) {
    auto ok = [&](std::size_t a, std::size_t b) { return mpq_class(X.zd(a, v) + X.zd(v, b) - X.zd(a, b)) <= two_d; };
    if (ok(x, y) && ok(x, z) && ok(y, z)) out.push_back(v);
  }
  return out;
}

RSReport check_RS(const FiniteLambdaSpace& X, const QLexElem& delta) {
  RSReport r;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = x; y < X.size(); ++y)
      for (std::size_t z = y; z < X.size(); ++z) {
        auto m = midpoints(X, x, y, z, delta);
        if (m.empty() && r.holds) {
          r.holds = false;
          r.witness = {x, y, z};
        }
        r.table[{x, y, z}] = std::move(m);
      }
  return r;
}

Gamma1Result gamma1(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionOptions& opt) {
  check_input(X, delta);
  const mpq_class dq = scalar(delta);
  const long floor4 = floor_q(dq * 4), ceil4 = ceil_q(dq * 4);
  const std::size_t n = X.size();
  Builder b;
  for (std::size_t i = 0; i < n; ++i) b.add(VClass::Essential, ekey(i));

  // step 2
  auto pairs = all_pairs(X);
  maybe_shuffle(pairs, opt, 1);
  std::vector<Pair> basic;
  for (const auto& p : pairs)
    if (!blocked(X, p.i, p.j)) basic.push_back(p);
  std::sort(basic.begin(), basic.end(), [](auto& a, auto& c) { return std::tie(a.i, a.j) < std::tie(c.i, c.j); });
  maybe_shuffle(basic, opt, 2);
  for (const auto& p : basic) add_basic_path(b, p.i, p.j, p.d);

  // step 3 candidates, read off the step-2 graph
  CompletionGraph g2 = b.finish(n);
  auto D2 = bfs_all(g2);
  verify_restriction(X, D2, "gamma1 step 2");
  struct Task {
    std::string u, v;
  };
  std::vector<Task> tasks;
  std::set<std::pair<std::string, std::string>> seen_task;
  auto level = [&](std::size_t c, std::size_t a, long t) {
    std::vector<std::size_t> out;
    const long dca = X.zd(c, a);
    for (std::size_t w = 0; w < g2.size(); ++w)
      if (g2.vertices[w].cls == VClass::Auxiliary && D2[c][w] == t && D2[w][a] == dca - t) out.push_back(w);
    return out;
  };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = y + 1; z < n; ++z) {
        const std::array<std::array<std::size_t, 3>, 3> corners{{{x, y, z}, {y, x, z}, {z, x, y}}};
        for (const auto& [c, a, e] : corners) {
          const long ins2 = X.zd(c, a) + X.zd(c, e) - X.zd(a, e);
          for (long t = 1; 2 * t <= ins2; ++t) {
            auto U = level(c, a, t), V = level(c, e, t);
            for (std::size_t u : U)
              for (std::size_t v : V) {
                if (u == v) continue;
                std::string ku = g2.vertices[u].keys[0], kv = g2.vertices[v].keys[0];
                if (natural_less(kv, ku)) std::swap(ku, kv);
                if (seen_task.insert({ku, kv}).second) tasks.push_back({ku, kv});
              }
          }
        }
      }
  maybe_shuffle(tasks, opt, 3);
  Gamma1Result r;
  for (const auto& t : tasks) {
    std::size_t u = b.at(t.u), v = b.at(t.v);
    if (b.dist_upto(u, v, floor4) >= 0) continue;
    if (ceil4 == 0) ++r.merges;
    else ++r.bridges;
    add_bridge(b, u, v, ceil4);
  }

  r.graph = b.finish(n);
  auto D = bfs_all(r.graph);
  verify_restriction(X, D, "gamma1");
  r.geodesic = r.graph.graph().connected();
  r.delta_bound = delta * 29L;
  r.delta_out = certify(r.graph, opt.exact_delta_limit);
  return r;
}

namespace {

// pairs whose basic path survives step (2), with the reason for each removal
std::vector<Pair> survivors(const FiniteLambdaSpace& X, const mpq_class& dq, std::vector<Removal>* removed) {
  const mpq_class two_d = dq * 2;
  std::vector<Pair> out;
  auto pairs = all_pairs(X);
  std::stable_sort(pairs.begin(), pairs.end(), [](auto& a, auto& b) { return a.d > b.d; });
  for (const auto& p : pairs) {
    std::optional<Removal> why;
    for (std::size_t z = 0; z < X.size() && !why; ++z) {
      if (z == p.i || z == p.j) continue;
      if (X.zd(p.i, z) + X.zd(z, p.j) == p.d) {
        why = Removal{p.i, p.j, z, z, true};
        break;
      }
      for (std::size_t v = 0; v < X.size() && !why; ++v) {
        auto ok = [&](std::size_t a, std::size_t c) { return mpq_class(X.zd(a, v) + X.zd(v, c) - X.zd(a, c)) <= two_d; };
        if (!(ok(p.i, p.j) && ok(p.i, z) && ok(p.j, z))) continue;
        if (mpq_class(X.zd(p.i, v)) > two_d && mpq_class(X.zd(p.j, v)) > two_d) why = Removal{p.i, p.j, z, v, false};
      }
    }
    if (!why) {
      out.push_back(p);
      continue;
    }
    // the chosen mid-point is strictly closer than the pair distance
    if (X.zd(p.i, why->v) >= p.d || X.zd(p.j, why->v) >= p.d)
      throw std::logic_error("removal mid-point is not strictly inside the pair");
    if (removed) removed->push_back(*why);
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  return out;
}

std::vector<std::string> path_keys(const Pair& p) {
  std::vector<std::string> k{ekey(p.i)};
  for (long t = 1; t < p.d; ++t) k.push_back(akey(p.i, p.j, t));
  k.push_back(ekey(p.j));
  return k;
}

CompletionGraph build_level(const FiniteLambdaSpace& X, const std::vector<Pair>& surv, const CompletionGraph& g1,
                            const std::vector<std::vector<long>>& D1, long n, const std::optional<mpq_class>& B,
                            const CompletionOptions& opt, std::size_t* bridges) {
  Builder b;
  for (std::size_t i = 0; i < X.size(); ++i) b.add(VClass::Essential, ekey(i));
  std::vector<Pair> paths;
  for (const auto& p : surv)
    if (p.d <= n) paths.push_back(p);
  maybe_shuffle(paths, opt, 4);
  for (const auto& p : paths) add_basic_path(b, p.i, p.j, p.d);
  std::sort(paths.begin(), paths.end(), [](auto& a, auto& c) { return std::tie(a.i, a.j) < std::tie(c.i, c.j); });
  if (!B) return b.finish(X.size());

  auto phi = [&](const std::string& k) {
    std::size_t v = g1.find(k);
    if (v == SIZE_MAX) throw ConstructionFailure("no Γ1 vertex for " + k);
    return v;
  };
  struct Task {
    std::string x, y;
    long len;
  };
  std::vector<Task> tasks;
  std::set<std::pair<std::string, std::string>> done;
  for (std::size_t a = 0; a < paths.size(); ++a) {
    auto ka = path_keys(paths[a]);
    for (std::size_t s = 1; s + 1 < ka.size(); ++s) {
      const std::size_t fx = phi(ka[s]);
      for (std::size_t c = 0; c < paths.size(); ++c) {
        if (c == a) continue;
        auto kc = path_keys(paths[c]);
        long best = LONG_MAX;
        for (const auto& k : kc) best = std::min(best, D1[fx][phi(k)]);
        if (mpq_class(best) >= *B) continue;
        for (const auto& k : kc) {
          if (D1[fx][phi(k)] != best) continue;
          std::string u = ka[s], v = k;
          if (natural_less(v, u)) std::swap(u, v);
          if (done.insert({u, v}).second) tasks.push_back({u, v, best});
        }
      }
    }
  }
  maybe_shuffle(tasks, opt, 5);
  for (const auto& t : tasks) {
    add_bridge(b, b.at(t.x), b.at(t.y), t.len);
    if (bridges) ++*bridges;
  }
  return b.finish(X.size());
}

long hausdorff_from(const CompletionGraph& g1, const std::vector<std::vector<long>>& D1, const CompletionGraph& p2,
                    const std::vector<std::vector<long>>& D2, std::size_t n) {
  auto phi = [&](std::size_t w) {
    std::size_t v = g1.find(p2.vertices[w].keys[0]);
    if (v == SIZE_MAX) throw ConstructionFailure("no Γ1 vertex for " + p2.vertices[w].keys[0]);
    return v;
  };
  long H = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      std::vector<std::size_t> A, C;
      for (std::size_t w = 0; w < p2.size(); ++w)
        if (D2[x][w] >= 0 && D2[x][w] + D2[w][y] == D2[x][y]) A.push_back(phi(w));
      for (std::size_t w = 0; w < g1.size(); ++w)
        if (D1[x][w] + D1[w][y] == D1[x][y]) C.push_back(w);
      for (std::size_t a : A) {
        long m = LONG_MAX;
        for (std::size_t c : C) m = std::min(m, D1[a][c]);
        H = std::max(H, m);
      }
      for (std::size_t c : C) {
        long m = LONG_MAX;
        for (std::size_t a : A) m = std::min(m, D1[a][c]);
        H = std::max(H, m);
      }
    }
  return H;
}

std::set<std::string> vertex_keys(const CompletionGraph& g) {
  std::set<std::string> s;
  for (const auto& v : g.vertices) s.insert(v.keys.begin(), v.keys.end());
  return s;
}
std::set<std::pair<std::string, std::string>> edge_keys(const CompletionGraph& g) {
  std::set<std::pair<std::string, std::string>> s;
  for (auto [u, v] : g.edges)
    for (const auto& a : g.vertices[u].keys)
      for (const auto& c : g.vertices[v].keys) s.insert(natural_less(a, c) ? std::pair{a, c} : std::pair{c, a});
  return s;
}

}  // namespace

long hausdorff_const(const CompletionGraph& g1, const CompletionGraph& partial2) {
  std::size_t n = 0;
  while (n < g1.size() && g1.vertices[n].cls == VClass::Essential) ++n;
  auto D2 = bfs_all(partial2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (D2[x][y] < 0) throw ConstructionFailure("partial Γ2 is disconnected");
  return hausdorff_from(g1, bfs_all(g1), partial2, D2, n);
}

mpq_class delta_double_prime(const mpq_class& delta, long H) {
  mpq_class dp = delta * 29;
  return 240 * dp * dp * dp + 64 * dp * dp + 48 * delta * delta + 8 * H + 8 * dp + 2;
}

CompletionGraph gamma2_level(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionGraph& g1, long n,
                             const mpq_class& B, std::vector<Removal>* removed) {
  auto surv = survivors(X, scalar(delta), removed);
  return build_level(X, surv, g1, bfs_all(g1), n, B, {}, nullptr);
}

Gamma2Result gamma2(const FiniteLambdaSpace& X, const QLexElem& delta, const CompletionOptions& opt) {
  check_input(X, delta);
  auto rs = check_RS(X, delta);
  if (!rs.holds)
    throw InputError("(RS) fails: points " + X.label(rs.witness[0]) + ", " + X.label(rs.witness[1]) + ", " +
                     X.label(rs.witness[2]) + " have no mid-point");
  const mpq_class dq = scalar(delta);
  Gamma2Result r;
  r.gamma1 = gamma1(X, delta, opt);
  const auto D1 = bfs_all(r.gamma1.graph);
  auto surv = survivors(X, dq, &r.removed);
  long diam = 0;
  for (const auto& p : all_pairs(X)) diam = std::max(diam, p.d);

  r.partial = build_level(X, surv, r.gamma1.graph, D1, diam, std::nullopt, opt, nullptr);
  auto D2 = bfs_all(r.partial);
  if (!r.partial.graph().connected()) throw ConstructionFailure("partial Γ2 is disconnected");
  r.H = opt.hausdorff_override ? *opt.hausdorff_override : hausdorff_from(r.gamma1.graph, D1, r.partial, D2, X.size());
  r.B = mpq_class(2 * r.H) + dq * 58;
  r.delta_pp = delta_double_prime(dq, r.H);
  r.graph = build_level(X, surv, r.gamma1.graph, D1, diam, r.B, opt, &r.bridges);

  auto D = bfs_all(r.graph);
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < X.size(); ++y) {
      if (D[x][y] < X.zd(x, y))
        throw ConstructionFailure("gamma2: points " + X.label(x) + " and " + X.label(y) + " got closer (" +
                                  std::to_string(D[x][y]) + " < " + std::to_string(X.zd(x, y)) + ")");
      r.stretch = std::max(r.stretch, D[x][y] - X.zd(x, y));
    }
  r.geodesic = r.graph.graph().connected();
  r.delta_out = certify(r.graph, opt.exact_delta_limit);

  if (opt.check_monotone) {
    bool mono = true;
    std::set<std::string> pv;
    std::set<std::pair<std::string, std::string>> pe;
    for (long m = 1; m <= diam && mono; ++m) {
      auto g = build_level(X, surv, r.gamma1.graph, D1, m, r.B, {}, nullptr);
      auto v = vertex_keys(g);
      auto e = edge_keys(g);
      mono = std::includes(v.begin(), v.end(), pv.begin(), pv.end()) &&
             std::includes(e.begin(), e.end(), pe.begin(), pe.end());
      pv = std::move(v);
      pe = std::move(e);
    }
    r.monotone = mono;
  }
  return r;
}

long tau_max(long n, long delta) {
  if (n < 0 || delta < 0) throw InputError("tau_max needs natural arguments");
  if (delta == 0) return n;
  std::vector<long> tau(static_cast<std::size_t>(n) + 1, 0);
  for (long k = 0; k <= n; ++k) {
    if (k <= 2 * delta) {
      tau[static_cast<std::size_t>(k)] = k;
      continue;
    }
    long best = 0;
    for (long k1 = 1; k1 < k; ++k1)
      for (long k2 = std::max(1L, k - k1); k2 < k && k1 + k2 <= k + 2 * delta; ++k2)
        best = std::max(best, tau[static_cast<std::size_t>(k1)] + tau[static_cast<std::size_t>(k2)]);
    tau[static_cast<std::size_t>(k)] = best;
  }
  return tau[static_cast<std::size_t>(n)];
}

namespace {

struct KeyMapper {
  const FiniteLambdaSpace& X;
  const Perm& pi;

  std::optional<std::string> operator()(const std::string& k) const {
    if (k.size() < 3 || k[1] != ':') return std::nullopt;
    if (k[0] == 'e') return ekey(pi.at(std::stoul(k.substr(2))));
    if (k[0] == 'a') {
      auto dash = k.find('-'), colon = k.rfind(':');
      std::size_t i = std::stoul(k.substr(2, dash - 2)), j = std::stoul(k.substr(dash + 1, colon - dash - 1));
      long t = std::stol(k.substr(colon + 1));
      std::size_t a = pi.at(i), b = pi.at(j);
      if (a < b) return akey(a, b, t);
      return akey(b, a, X.zd(i, j) - t);
    }
    if (k[0] == 'n') {
      auto bar = k.find('|'), colon = k.rfind(':');
      std::string u = k.substr(2, bar - 2), v = k.substr(bar + 1, colon - bar - 1);
      long s = std::stol(k.substr(colon + 1));
      auto mu = (*this)(u), mv = (*this)(v);
      if (!mu || !mv) return std::nullopt;
      if (natural_less(*mu, *mv)) return nkey(*mu, *mv, s);
      return std::nullopt;  // orientation flip handled by the caller
    }
    return std::nullopt;
  }
};

}  // namespace

Extension extend_isometry(const FiniteLambdaSpace& X, const Perm& pi, const CompletionGraph& G, std::size_t search_limit) {
  if (!check_isometry(X, pi).isometry) throw InputError("the map is not an isometry of the input");
  Extension e;
  KeyMapper km{X, pi};
  const std::size_t V = G.size();
  e.map.assign(V, SIZE_MAX);
  // bridge lengths, to flip negligible parameters when endpoint order swaps
  std::unordered_map<std::string, long> bridge_len;
  for (const auto& v : G.vertices)
    for (const auto& k : v.keys)
      if (k[0] == 'n') {
        auto colon = k.rfind(':');
        std::string base = k.substr(0, colon);
        bridge_len[base] = std::max(bridge_len[base], std::stol(k.substr(colon + 1)) + 1);
      }
  auto image = [&](const std::string& k) -> std::optional<std::string> {
    if (k[0] != 'n') return km(k);
    auto bar = k.find('|'), colon = k.rfind(':');
    std::string u = k.substr(2, bar - 2), v = k.substr(bar + 1, colon - bar - 1);
    long s = std::stol(k.substr(colon + 1));
    auto mu = km(u), mv = km(v);
    if (!mu || !mv) return std::nullopt;
    if (natural_less(*mu, *mv)) return nkey(*mu, *mv, s);
    return nkey(*mv, *mu, bridge_len[k.substr(0, colon)] - s);
  };
  for (std::size_t w = 0; w < V && e.defined; ++w) {
    for (const auto& k : G.vertices[w].keys) {
      auto img = image(k);
      std::size_t t = img ? G.find(*img) : SIZE_MAX;
      if (t == SIZE_MAX || (e.map[w] != SIZE_MAX && e.map[w] != t)) {
        e.defined = false;
        e.detail = "no consistent image for " + k;
        break;
      }
      e.map[w] = t;
    }
  }
  if (!e.defined) return e;
  auto D = G.distances();
  std::vector<char> hit(V, 0);
  e.isometry = true;
  for (std::size_t w = 0; w < V; ++w) {
    if (hit[e.map[w]]) e.isometry = false;
    hit[e.map[w]] = 1;
    if (G.vertices[e.map[w]].cls != G.vertices[w].cls) e.isometry = false;
  }
  for (std::size_t u = 0; u < V && e.isometry; ++u)
    for (std::size_t v = u + 1; v < V; ++v)
      if (D[e.map[u]][e.map[v]] != D[u][v]) {
        e.isometry = false;
        e.detail = "distance between " + G.vertices[u].keys[0] + " and " + G.vertices[v].keys[0] + " not preserved";
        break;
      }
  e.restricts = true;
  for (std::size_t i = 0; i < X.size(); ++i) e.restricts = e.restricts && e.map[i] == pi[i];
  if (V > search_limit) return e;

  // every class-preserving isometry of G that agrees with pi on X
  const std::size_t n = X.size();
  Perm inv = perm_inverse(pi);
  std::map<std::vector<long>, std::vector<std::size_t>> by_sig;
  for (std::size_t c = 0; c < V; ++c) {
    std::vector<long> s{static_cast<long>(G.vertices[c].cls)};
    for (std::size_t x = 0; x < n; ++x) s.push_back(D[x][c]);
    by_sig[s].push_back(c);
  }
  std::vector<std::vector<std::size_t>> cand(V);
  for (std::size_t w = n; w < V; ++w) {
    std::vector<long> s{static_cast<long>(G.vertices[w].cls)};
    for (std::size_t x = 0; x < n; ++x) s.push_back(D[inv[x]][w]);
    auto it = by_sig.find(s);
    if (it != by_sig.end()) cand[w] = it->second;
  }
  std::vector<std::size_t> order;
  for (std::size_t w = n; w < V; ++w) order.push_back(w);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return cand[a].size() < cand[b].size(); });
  Perm img(V, SIZE_MAX);
  std::vector<char> used(V, 0);
  for (std::size_t x = 0; x < n; ++x) img[x] = pi[x], used[pi[x]] = 1;
  std::size_t found = 0, nodes = 0;
  const std::size_t node_cap = 2000000;
  bool capped = false;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (found >= 2 || capped) return;
    if (++nodes > node_cap) {
      capped = true;
      return;
    }
    if (k == order.size()) {
      ++found;
      return;
    }
    std::size_t w = order[k];
    for (std::size_t c : cand[w]) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j) ok = D[c][img[order[j]]] == D[w][order[j]];
      if (!ok) continue;
      img[w] = c;
      used[c] = 1;
      go(k + 1);
      used[c] = 0;
      img[w] = SIZE_MAX;
    }
  };
  go(0);
  e.alternatives = found;
  if (!capped) e.unique = found == 1 && e.isometry;
  return e;
}

}  // namespace lhyp
