#include "lhyp/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace lhyp {

namespace {

struct Line {
  std::size_t no;
  std::vector<std::string> tok;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> out;
  std::string s;
  std::size_t no = 0;
  while (std::getline(in, s)) {
    ++no;
    if (auto h = s.find('#'); h != std::string::npos) s.resize(h);
    std::istringstream ls(s);
    Line l{no, {}};
    for (std::string t; ls >> t;) l.tok.push_back(t);
    if (!l.tok.empty()) out.push_back(std::move(l));
  }
  return out;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ": " + what);
}

// flat token stream with line numbers
struct Tokens {
  std::vector<std::pair<std::size_t, std::string>> t;
  std::size_t pos = 0;
  explicit Tokens(const std::vector<Line>& lines) {
    for (const auto& l : lines)
      for (const auto& s : l.tok) t.push_back({l.no, s});
  }
  bool done() const { return pos >= t.size(); }
  std::size_t line() const { return done() ? (t.empty() ? 0 : t.back().first) : t[pos].first; }
  const std::string& next(const char* what) {
    if (done()) fail(line(), std::string("unexpected end of input, expected ") + what);
    return t[pos++].second;
  }
  long integer(const char* what) {
    std::size_t ln = line();
    const std::string& s = next(what);
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ln, std::string("expected ") + what + ", got '" + s + "'");
    }
  }
};

std::pair<Domain, std::size_t> parse_lambda(const std::string& s, std::size_t line) {
  if (s.size() < 3 || (s[0] != 'Z' && s[0] != 'Q') || s[1] != '^') fail(line, "expected Z^n or Q^n, got '" + s + "'");
  long n = 0;
  try {
    n = std::stol(s.substr(2));
  } catch (const std::exception&) {
    fail(line, "bad rank in '" + s + "'");
  }
  if (n < 1) fail(line, "rank must be positive");
  return {s[0] == 'Z' ? Domain::Integer : Domain::Rational, static_cast<std::size_t>(n)};
}

std::ifstream open(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  return f;
}

}  // namespace

std::string read_file(const std::string& path) {
  auto f = open(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string digest(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) h = (h ^ c) * 1099511628211ull;
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << h;
  return s.str();
}

FiniteLambdaSpace read_lms(std::istream& in) {
  Tokens t(tokenize(in));
  std::size_t ln = t.line();
  if (t.next("'lambda'") != "lambda") fail(ln, "file must start with 'lambda'");
  ln = t.line();
  auto [domain, rank] = parse_lambda(t.next("lambda type"), ln);
  ln = t.line();
  if (t.next("'points'") != "points") fail(ln, "expected 'points'");
  long k = t.integer("point count");
  if (k < 0) fail(ln, "negative point count");
  std::vector<std::string> labels;
  for (long i = 0; i < k; ++i) labels.push_back(t.next("label"));
  std::vector<LexElem> dist;
  for (long i = 0; i < k * k; ++i) {
    ln = t.line();
    LexElem e;
    try {
      e = parse_lex(t.next("distance entry"), domain);
    } catch (const InputError& err) {
      fail(ln, err.what());
    }
    if (e.rank() != rank) fail(ln, "entry has rank " + std::to_string(e.rank()) + ", expected " + std::to_string(rank));
    dist.push_back(std::move(e));
  }
  if (!t.done()) fail(t.line(), "trailing tokens after the distance matrix");
  return FiniteLambdaSpace(domain, rank, std::move(labels), std::move(dist));
}

FiniteLambdaSpace read_lms_file(const std::string& path) {
  auto f = open(path);
  return read_lms(f);
}

void write_lms(std::ostream& out, const FiniteLambdaSpace& X) {
  out << "lambda " << (X.domain() == Domain::Integer ? "Z^" : "Q^") << X.rank() << "\n";
  out << "points " << X.size();
  for (std::size_t i = 0; i < X.size(); ++i) out << " " << X.label(i);
  out << "\n";
  for (std::size_t i = 0; i < X.size(); ++i) {
    for (std::size_t j = 0; j < X.size(); ++j) out << (j ? " " : "") << render(X.d(i, j));
    out << "\n";
  }
}

GeodesicGraph read_gg(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "graph")
    fail(lines.empty() ? 0 : lines[0].no, "file must start with 'graph k'");
  Tokens head({lines[0]});
  head.next("graph");
  long k = head.integer("vertex count");
  if (k < 0) fail(lines[0].no, "negative vertex count");
  GeodesicGraph G(static_cast<std::size_t>(k));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].tok.size() != 2) fail(lines[i].no, "edge lines are 'u v'");
    Tokens e({lines[i]});
    long u = e.integer("vertex"), v = e.integer("vertex");
    if (u < 0 || v < 0 || u >= k || v >= k || u == v) fail(lines[i].no, "bad edge");
    G.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }
  return G;
}

GeodesicGraph read_gg_file(const std::string& path) {
  auto f = open(path);
  return read_gg(f);
}

void write_gg(std::ostream& out, const GeodesicGraph& G) {
  out << "graph " << G.size() << "\n";
  for (auto [u, v] : G.edges()) out << u << " " << v << "\n";
}

GroupSpec read_grp(std::istream& in, const std::string& base_dir) {
  auto lines = tokenize(in);
  if (lines.empty()) throw InputError("empty group file");
  const auto& h = lines[0];
  GroupSpec spec;
  std::size_t next = 1;
  auto sub = [&](const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return read_grp_file(p.string());
  };
  const std::string& kind = h.tok[0];
  if (kind == "free" || kind == "cyclic") {
    if (h.tok.size() != 2) fail(h.no, "expected '" + kind + " k'");
    Tokens t({h});
    t.next("kind");
    long k = t.integer("rank");
    if (k < 1) fail(h.no, "rank must be positive");
    spec.group = kind == "free" ? free_group(static_cast<std::size_t>(k)) : cyclic_group(static_cast<std::size_t>(k));
  } else if (kind == "finite") {
    if (h.tok.size() != 2) fail(h.no, "expected 'finite k'");
    Tokens t({h});
    t.next("kind");
    long k = t.integer("order");
    if (k < 1) fail(h.no, "order must be positive");
    std::vector<std::vector<int>> table;
    for (long r = 0; r < k; ++r, ++next) {
      if (next >= lines.size()) fail(h.no, "multiplication table is short");
      const auto& row = lines[next];
      if (row.tok.size() != static_cast<std::size_t>(k)) fail(row.no, "table rows need " + std::to_string(k) + " entries");
      Tokens rt({row});
      std::vector<int> v;
      for (long c = 0; c < k; ++c) v.push_back(static_cast<int>(rt.integer("table entry")));
      table.push_back(std::move(v));
    }
    try {
      spec.group = finite_group(table);
    } catch (const InputError& e) {
      fail(h.no, e.what());
    }
  } else if (kind == "product" || kind == "freeprod") {
    if (h.tok.size() != 3) fail(h.no, "expected '" + kind + " <file> <file>'");
    auto a = sub(h.tok[1]), b = sub(h.tok[2]);
    if (kind == "product") {
      spec.group = direct_product(a.group, b.group);
      for (const auto& g : a.gens) spec.gens.push_back(pair_element(*spec.group, g, {}));
      for (const auto& g : b.gens) spec.gens.push_back(pair_element(*spec.group, {}, g));
    } else {
      spec.group = free_product(a.group, b.group);
      for (const auto& g : a.gens) spec.gens.push_back(from_syllables(*spec.group, {{0, g}}));
      for (const auto& g : b.gens) spec.gens.push_back(from_syllables(*spec.group, {{1, g}}));
    }
  } else {
    fail(h.no, "unknown group kind '" + kind + "'");
  }
  bool explicit_gens = false;
  for (; next < lines.size(); ++next) {
    const auto& l = lines[next];
    if (l.tok[0] != "gens") fail(l.no, "unexpected '" + l.tok[0] + "'");
    explicit_gens = true;
    spec.gens.clear();
    for (std::size_t i = 1; i < l.tok.size(); ++i) {
      try {
        spec.gens.push_back(spec.group->parse(l.tok[i]));
      } catch (const InputError& e) {
        fail(l.no, e.what());
      }
    }
  }
  if (!explicit_gens && spec.gens.empty()) spec.gens = spec.group->generators();
  return spec;
}

GroupSpec read_grp_file(const std::string& path) {
  auto f = open(path);
  return read_grp(f, std::filesystem::path(path).parent_path().string());
}

LengthTable read_len_file(const std::string& path) {
  auto f = open(path);
  auto lines = tokenize(f);
  if (lines.empty() || lines[0].tok.size() != 2 || lines[0].tok[0] != "group")
    fail(lines.empty() ? 0 : lines[0].no, "file must start with 'group <file>'");
  std::filesystem::path gp(lines[0].tok[1]);
  if (gp.is_relative()) gp = std::filesystem::path(path).parent_path() / gp;
  auto spec = read_grp_file(gp.string());
  Domain domain = Domain::Integer;
  std::size_t rank = 0;
  long radius = 0;
  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tok[0] == "lambda" && l.tok.size() == 2) {
      std::tie(domain, rank) = parse_lambda(l.tok[1], l.no);
    } else if (l.tok[0] == "radius" && l.tok.size() == 2) {
      Tokens t({l});
      t.next("radius");
      radius = t.integer("radius");
    } else {
      break;
    }
  }
  std::vector<std::pair<Word, LexElem>> rows;
  for (; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tok.size() != 2) fail(l.no, "entries are 'element value'");
    try {
      Word w = spec.group->parse(l.tok[0]);
      LexElem v = parse_lex(l.tok[1], domain);
      if (rank == 0) rank = v.rank();
      if (v.rank() != rank) fail(l.no, "value rank differs from the table");
      rows.push_back({std::move(w), std::move(v)});
    } catch (const InputError& e) {
      if (std::string(e.what()).rfind("line ", 0) == 0) throw;
      fail(l.no, e.what());
    }
  }
  LengthTable t(spec.group, domain, rank == 0 ? 1 : rank, radius);
  for (auto& [w, v] : rows) {
    if (t.contains(w)) throw InputError("duplicate entry for " + spec.group->format(w));
    t.set(w, v);
  }
  return t;
}

void write_len(std::ostream& out, const LengthTable& l, const std::string& group_file) {
  out << "group " << group_file << "\n";
  out << "lambda " << (l.domain() == Domain::Integer ? "Z^" : "Q^") << l.rank() << "\n";
  out << "radius " << l.radius() << "\n";
  for (const auto& [g, v] : l.entries()) out << l.group()->format(g) << " " << render(v) << "\n";
}

Perm read_perm(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.size() != 1) fail(lines.size() > 1 ? lines[1].no : 0, "a permutation is a single line");
  Tokens t(lines);
  Perm p;
  while (!t.done()) {
    long v = t.integer("image index");
    if (v < 0) fail(lines[0].no, "negative index");
    p.push_back(static_cast<std::size_t>(v));
  }
  return p;
}

Perm read_perm_file(const std::string& path) {
  auto f = open(path);
  return read_perm(f);
}

void write_cg(std::ostream& out, const CompletionGraph& g, const CgCertificate& cert) {
  out << "vertices " << g.size() << "\n";
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << v << " " << to_string(g.vertices[v].cls) << " ";
    for (std::size_t k = 0; k < g.vertices[v].keys.size(); ++k) out << (k ? "," : "") << g.vertices[v].keys[k];
    out << "\n";
  }
  out << "edges " << g.edges.size() << "\n";
  for (auto [u, v] : g.edges) out << u << " " << v << " 1\n";
  out << "certificate\n";
  out << "geodesic " << (cert.geodesic ? "yes" : "no") << "\n";
  out << "delta " << cert.delta_out << "\n";
  out << "delta_bound " << cert.delta_bound << "\n";
  if (!cert.H.empty()) out << "H " << cert.H << "\n";
  if (!cert.B.empty()) out << "B " << cert.B << "\n";
}

}  // namespace lhyp
