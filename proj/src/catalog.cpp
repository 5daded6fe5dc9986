#include "lhyp/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <deque>

namespace lhyp {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// index of the ')' matching the '(' at `open`
std::size_t matching(std::string_view s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')' && --depth == 0) return i;
  }
  throw InputError("unbalanced parentheses in '" + std::string(s) + "'");
}

class FreeGroup final : public Group {
 public:
  explicit FreeGroup(std::size_t rank) : rank_(rank) {
    if (rank == 0 || rank > 26) throw InputError("free group rank must be in 1..26");
  }
  Word multiply(const Word& a, const Word& b) const override {
    Word r = a;
    for (int x : b) {
      if (!r.empty() && r.back() == -x) r.pop_back();
      else r.push_back(x);
    }
    return r;
  }
  Word invert(const Word& a) const override {
    Word r(a.rbegin(), a.rend());
    for (int& x : r) x = -x;
    return r;
  }
  std::string format(const Word& a) const override {
    if (a.empty()) return "1";
    std::string s;
    for (int x : a) s += x > 0 ? static_cast<char>('a' + x - 1) : static_cast<char>('A' - x - 1);
    return s;
  }
  Word parse(std::string_view s) const override {
    s = strip(s);
    if (s == "1") return {};
    Word w;
    for (char c : s) {
      int x;
      if (c >= 'a' && c < static_cast<char>('a' + rank_)) x = c - 'a' + 1;
      else if (c >= 'A' && c < static_cast<char>('A' + rank_)) x = -(c - 'A' + 1);
      else throw InputError("bad letter '" + std::string(1, c) + "' for a free group of rank " + std::to_string(rank_));
      w = multiply(w, {x});
    }
    return w;
  }
  std::vector<Word> generators() const override {
    std::vector<Word> g;
    for (std::size_t i = 1; i <= rank_; ++i) g.push_back({static_cast<int>(i)});
    return g;
  }
  std::string describe() const override { return "free " + std::to_string(rank_); }

 private:
  std::size_t rank_;
};

class FiniteGroup final : public Group {
 public:
  explicit FiniteGroup(std::vector<std::vector<int>> table) : t_(std::move(table)) {
    const std::size_t k = t_.size();
    if (k == 0) throw InputError("finite group needs at least one element");
    for (const auto& row : t_) {
      if (row.size() != k) throw InputError("multiplication table is not square");
      for (int v : row)
        if (v < 0 || static_cast<std::size_t>(v) >= k) throw InputError("multiplication table entry out of range");
    }
    e_ = -1;
    for (std::size_t i = 0; i < k && e_ < 0; ++i) {
      bool ok = true;
      for (std::size_t x = 0; x < k; ++x) ok = ok && t_[i][x] == static_cast<int>(x) && t_[x][i] == static_cast<int>(x);
      if (ok) e_ = static_cast<int>(i);
    }
    if (e_ < 0) throw InputError("multiplication table has no identity");
    inv_.assign(k, -1);
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        if (t_[x][y] == e_ && t_[y][x] == e_) inv_[x] = static_cast<int>(y);
    if (std::count(inv_.begin(), inv_.end(), -1)) throw InputError("multiplication table lacks inverses");
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c)
          if (t_[static_cast<std::size_t>(t_[a][b])][c] != t_[a][static_cast<std::size_t>(t_[b][c])])
            throw InputError("multiplication table is not associative");
  }
  int idx(const Word& a) const { return a.empty() ? e_ : a[0]; }
  Word enc(int i) const { return i == e_ ? Word{} : Word{i}; }
  Word multiply(const Word& a, const Word& b) const override {
    return enc(t_[static_cast<std::size_t>(idx(a))][static_cast<std::size_t>(idx(b))]);
  }
  Word invert(const Word& a) const override { return enc(inv_[static_cast<std::size_t>(idx(a))]); }
  std::string format(const Word& a) const override { return std::to_string(idx(a)); }
  Word parse(std::string_view s) const override {
    s = strip(s);
    int v = 0;
    if (s.empty()) throw InputError("empty finite group element");
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw InputError("bad finite group element '" + std::string(s) + "'");
      v = v * 10 + (c - '0');
      if (static_cast<std::size_t>(v) >= t_.size()) throw InputError("finite group element out of range");
    }
    return enc(v);
  }
  std::vector<Word> generators() const override {
    std::vector<Word> g;
    for (std::size_t i = 0; i < t_.size(); ++i)
      if (static_cast<int>(i) != e_) g.push_back({static_cast<int>(i)});
    return g;
  }
  std::string describe() const override { return "finite " + std::to_string(t_.size()); }

 private:
  std::vector<std::vector<int>> t_;
  std::vector<int> inv_;
  int e_ = 0;
};

class DirectProduct final : public Group {
 public:
  DirectProduct(GroupHandle g, GroupHandle h) : g_(std::move(g)), h_(std::move(h)) {}
  std::pair<Word, Word> split(const Word& w) const {
    if (w.empty()) return {};
    auto n = static_cast<std::size_t>(w[0]);
    return {Word(w.begin() + 1, w.begin() + 1 + static_cast<long>(n)), Word(w.begin() + 1 + static_cast<long>(n), w.end())};
  }
  Word join(const Word& a, const Word& b) const {
    if (a.empty() && b.empty()) return {};
    Word w{static_cast<int>(a.size())};
    w.insert(w.end(), a.begin(), a.end());
    w.insert(w.end(), b.begin(), b.end());
    return w;
  }
  Word multiply(const Word& x, const Word& y) const override {
    auto [a, b] = split(x);
    auto [c, d] = split(y);
    return join(g_->multiply(a, c), h_->multiply(b, d));
  }
  Word invert(const Word& x) const override {
    auto [a, b] = split(x);
    return join(g_->invert(a), h_->invert(b));
  }
  std::string format(const Word& x) const override {
    auto [a, b] = split(x);
    return "(" + g_->format(a) + "," + h_->format(b) + ")";
  }
  Word parse(std::string_view s) const override {
    s = strip(s);
    if (s.empty() || s.front() != '(' || matching(s, 0) != s.size() - 1)
      throw InputError("product element must look like (g,h): '" + std::string(s) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    int depth = 0;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(') ++depth;
      else if (body[i] == ')') --depth;
      else if (body[i] == ',' && depth == 0) return join(g_->parse(body.substr(0, i)), h_->parse(body.substr(i + 1)));
    }
    throw InputError("product element needs two components: '" + std::string(s) + "'");
  }
  std::vector<Word> generators() const override {
    std::vector<Word> out;
    for (const auto& a : g_->generators()) out.push_back(join(a, {}));
    for (const auto& b : h_->generators()) out.push_back(join({}, b));
    return out;
  }
  std::string describe() const override { return "product(" + g_->describe() + "," + h_->describe() + ")"; }

 private:
  GroupHandle g_, h_;
};

class FreeProduct final : public Group {
 public:
  FreeProduct(GroupHandle g, GroupHandle h) : f_{std::move(g), std::move(h)} {}
  Syllables split(const Word& w) const {
    Syllables s;
    std::size_t i = 0;
    while (i < w.size()) {
      int f = w[i];
      auto n = static_cast<std::size_t>(w[i + 1]);
      s.push_back({f, Word(w.begin() + static_cast<long>(i) + 2, w.begin() + static_cast<long>(i + 2 + n))});
      i += 2 + n;
    }
    return s;
  }
  Word join(const Syllables& s) const {
    Word w;
    for (const auto& [f, g] : s) {
      w.push_back(f);
      w.push_back(static_cast<int>(g.size()));
      w.insert(w.end(), g.begin(), g.end());
    }
    return w;
  }
  Word multiply(const Word& x, const Word& y) const override {
    Syllables a = split(x);
    for (auto& syl : split(y)) {
      if (!a.empty() && a.back().first == syl.first) {
        Word m = f_[static_cast<std::size_t>(syl.first)]->multiply(a.back().second, syl.second);
        a.pop_back();
        if (!m.empty()) a.push_back({syl.first, std::move(m)});
      } else {
        a.push_back(std::move(syl));
      }
    }
    return join(a);
  }
  Word invert(const Word& x) const override {
    Syllables a = split(x);
    std::reverse(a.begin(), a.end());
    for (auto& [f, g] : a) g = f_[static_cast<std::size_t>(f)]->invert(g);
    return join(a);
  }
  std::string format(const Word& x) const override {
    if (x.empty()) return "1";
    std::string s;
    for (const auto& [f, g] : split(x)) s += (f == 0 ? "L(" : "R(") + f_[static_cast<std::size_t>(f)]->format(g) + ")";
    return s;
  }
  Word parse(std::string_view s) const override {
    s = strip(s);
    if (s == "1") return {};
    Syllables out;
    std::size_t i = 0;
    while (i < s.size()) {
      if ((s[i] != 'L' && s[i] != 'R') || i + 1 >= s.size() || s[i + 1] != '(')
        throw InputError("free product element must be a sequence of L(..)/R(..): '" + std::string(s) + "'");
      int f = s[i] == 'L' ? 0 : 1;
      std::size_t close = matching(s, i + 1);
      Word g = f_[static_cast<std::size_t>(f)]->parse(s.substr(i + 2, close - i - 2));
      if (g.empty()) throw InputError("free product syllables must be nontrivial");
      if (!out.empty() && out.back().first == f) throw InputError("free product syllables must alternate");
      out.push_back({f, g});
      i = close + 1;
    }
    return join(out);
  }
  std::vector<Word> generators() const override {
    std::vector<Word> out;
    for (int f = 0; f < 2; ++f)
      for (const auto& g : f_[static_cast<std::size_t>(f)]->generators()) out.push_back(join({{f, g}}));
    return out;
  }
  std::string describe() const override { return "freeprod(" + f_[0]->describe() + "," + f_[1]->describe() + ")"; }

 private:
  std::array<GroupHandle, 2> f_;
};

}  // namespace

GroupHandle free_group(std::size_t rank) { return std::make_shared<FreeGroup>(rank); }
GroupHandle finite_group(const std::vector<std::vector<int>>& table) { return std::make_shared<FiniteGroup>(table); }
GroupHandle cyclic_group(std::size_t k) {
  std::vector<std::vector<int>> t(k, std::vector<int>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = static_cast<int>((i + j) % k);
  return finite_group(t);
}
GroupHandle direct_product(GroupHandle g, GroupHandle h) { return std::make_shared<DirectProduct>(std::move(g), std::move(h)); }
GroupHandle free_product(GroupHandle g, GroupHandle h) { return std::make_shared<FreeProduct>(std::move(g), std::move(h)); }

Syllables syllables(const Group& G, const Word& g) {
  auto* fp = dynamic_cast<const FreeProduct*>(&G);
  if (!fp) throw InputError("not a free product");
  return fp->split(g);
}

Word from_syllables(const Group& G, const Syllables& s) {
  auto* fp = dynamic_cast<const FreeProduct*>(&G);
  if (!fp) throw InputError("not a free product");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].first != 0 && s[i].first != 1) throw InputError("syllable factor must be 0 or 1");
    if (s[i].second.empty()) throw InputError("free product syllables must be nontrivial");
    if (i && s[i].first == s[i - 1].first) throw InputError("free product syllables must alternate");
  }
  return fp->join(s);
}

std::pair<Word, Word> components(const Group& G, const Word& g) {
  auto* dp = dynamic_cast<const DirectProduct*>(&G);
  if (!dp) throw InputError("not a direct product");
  return dp->split(g);
}

Word pair_element(const Group& G, const Word& a, const Word& b) {
  auto* dp = dynamic_cast<const DirectProduct*>(&G);
  if (!dp) throw InputError("not a direct product");
  return dp->join(a, b);
}

std::vector<Word> symmetrize(const Group& G, const std::vector<Word>& gens) {
  std::vector<Word> out;
  auto add = [&](const Word& w) {
    if (!w.empty() && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
  };
  for (const auto& g : gens) add(g), add(G.invert(g));
  return out;
}

Ball cayley_ball(const Group& G, const std::vector<Word>& gens, long radius) {
  if (radius < 0) throw InputError("radius must be non-negative");
  auto S = symmetrize(G, gens);
  Ball b;
  b.radius = radius;
  b.elements.push_back({});
  b.word_length.push_back(0);
  b.index[{}] = 0;
  for (std::size_t head = 0; head < b.elements.size(); ++head) {
    if (b.word_length[head] == radius) continue;
    for (const auto& s : S) {
      Word w = G.multiply(b.elements[head], s);
      if (b.index.count(w)) continue;
      b.index[w] = b.elements.size();
      b.elements.push_back(w);
      b.word_length.push_back(b.word_length[head] + 1);
    }
  }
  return b;
}

Ball free_ball(std::size_t rank, long radius) {
  auto F = free_group(rank);
  return cayley_ball(*F, F->generators(), radius);
}

GeodesicGraph cayley_graph(const Group& G, const std::vector<Word>& gens, long radius) {
  Ball b = cayley_ball(G, gens, radius);
  std::vector<std::string> labels;
  for (const auto& w : b.elements) labels.push_back(G.format(w));
  GeodesicGraph graph(b.size(), labels);
  auto S = symmetrize(G, gens);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (const auto& s : S) {
      auto it = b.index.find(G.multiply(b.elements[i], s));
      if (it != b.index.end() && it->second != i) graph.add_edge(i, it->second);
    }
  return graph;
}

// ---- length tables

LengthTable::LengthTable(GroupHandle g, Domain domain, std::size_t rank, long radius)
    : group_(std::move(g)), domain_(domain), rank_(rank), radius_(radius) {}

void LengthTable::set(const Word& g, LexElem value) {
  if (value.rank() != rank_ || value.domain() != domain_)
    throw InputError("length value " + value.str() + " has the wrong rank or domain");
  auto it = index_.find(g);
  if (it != index_.end()) {
    entries_[it->second].second = std::move(value);
    return;
  }
  index_[g] = entries_.size();
  entries_.push_back({g, std::move(value)});
}

const LexElem* LengthTable::find(const Word& g) const {
  auto it = index_.find(g);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

const LexElem& LengthTable::at(const Word& g) const {
  if (auto* v = find(g)) return *v;
  throw InputError("no length recorded for " + (group_ ? group_->format(g) : std::string("element")));
}

std::vector<Word> LengthTable::domain_elements() const {
  std::vector<Word> out;
  for (const auto& [w, v] : entries_) out.push_back(w);
  return out;
}

LengthTable word_length_table(GroupHandle G, const std::vector<Word>& gens, long radius) {
  Ball b = cayley_ball(*G, gens, radius);
  LengthTable t(G, Domain::Integer, 1, radius);
  for (std::size_t i = 0; i < b.size(); ++i) t.set(b.elements[i], LexElem::of_int(b.word_length[i]));
  return t;
}

LengthTable product_length(const LengthTable& lG, const LengthTable& lH) {
  if (lG.domain() != lH.domain()) throw InputError("product_length: domain mismatch");
  auto P = direct_product(lG.group(), lH.group());
  LengthTable t(P, lG.domain(), lG.rank() + lH.rank(), std::min(lG.radius(), lH.radius()));
  for (const auto& [g, a] : lG.entries())
    for (const auto& [h, b] : lH.entries()) t.set(pair_element(*P, g, h), concat(a, b));
  return t;
}

LexElem free_product_length(const Syllables& g, const LengthTable& l1, const LengthTable& l2) {
  if (l1.rank() != l2.rank() || l1.domain() != l2.domain()) throw InputError("free_product_length: factor tables differ in type");
  LexElem sum = LexElem::zero(l1.domain(), l1.rank());
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].first != 0 && g[i].first != 1) throw InputError("syllable factor must be 0 or 1");
    if (g[i].second.empty()) throw InputError("free product syllables must be nontrivial");
    if (i && g[i].first == g[i - 1].first) throw InputError("free product syllables must alternate");
    sum += (g[i].first == 0 ? l1 : l2).at(g[i].second);
  }
  LexElem tail(l1.domain(), {mpq_class(g.empty() ? 0 : 1)});
  return concat(sum, tail);
}

LengthTable free_product_table(GroupHandle fp, const LengthTable& l1, const LengthTable& l2, long radius) {
  Ball b = cayley_ball(*fp, fp->generators(), radius);
  LengthTable t(fp, l1.domain(), l1.rank() + 1, radius);
  for (const auto& w : b.elements) t.set(w, free_product_length(syllables(*fp, w), l1, l2));
  return t;
}

FiniteLambdaSpace product_space(const FiniteLambdaSpace& X, const FiniteLambdaSpace& T, const std::vector<std::size_t>& Y) {
  if (Y.empty()) throw InputError("product_space: Y must be nonempty");
  if (X.domain() != T.domain()) throw InputError("product_space: domain mismatch");
  for (std::size_t y : Y)
    if (y >= X.size()) throw InputError("product_space: Y point out of range");
  std::vector<LexElem> toY;
  for (std::size_t x = 0; x < X.size(); ++x) {
    LexElem m = X.d(x, Y[0]);
    for (std::size_t y : Y) m = min(m, X.d(x, y));
    toY.push_back(m);
  }
  std::vector<std::string> labels;
  for (std::size_t t = 0; t < T.size(); ++t)
    for (std::size_t x = 0; x < X.size(); ++x) labels.push_back(X.label(x) + "|" + T.label(t));
  const LexElem zeroT = LexElem::zero(T.domain(), T.rank());
  std::vector<LexElem> dist;
  for (std::size_t t1 = 0; t1 < T.size(); ++t1)
    for (std::size_t x1 = 0; x1 < X.size(); ++x1)
      for (std::size_t t2 = 0; t2 < T.size(); ++t2)
        for (std::size_t x2 = 0; x2 < X.size(); ++x2)
          dist.push_back(t1 == t2 ? concat(X.d(x1, x2), zeroT) : concat(toY[x1] + toY[x2], T.d(t1, t2)));
  return FiniteLambdaSpace(X.domain(), X.rank() + T.rank(), std::move(labels), std::move(dist));
}

}  // namespace lhyp
