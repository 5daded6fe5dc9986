#include "lhyp/ordgroup.hpp"

#include <algorithm>
#include <cctype>

namespace lhyp {

namespace {

void require_same(const LexElem& a, const LexElem& b) {
  if (a.rank() != b.rank() || a.domain() != b.domain())
    throw InputError("lex elements of different rank or domain: " + a.str() + " vs " + b.str());
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

LexElem::LexElem(Domain domain, std::vector<mpq_class> coords)
    : domain_(domain), coords_(std::move(coords)) {
  for (auto& c : coords_) {
    c.canonicalize();
    if (domain_ == Domain::Integer && c.get_den() != 1)
      throw InputError("non-integer coordinate " + rational_str(c) + " in a Z^n element");
  }
}

LexElem LexElem::zero(Domain domain, std::size_t rank) {
  return LexElem(domain, std::vector<mpq_class>(rank, mpq_class(0)));
}

LexElem LexElem::integers(std::initializer_list<long> coords) {
  std::vector<mpq_class> v;
  for (long c : coords) v.emplace_back(c);
  return LexElem(Domain::Integer, std::move(v));
}

bool LexElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const mpq_class& c) { return sgn(c) == 0; });
}

int LexElem::sign() const {
  for (std::size_t i = coords_.size(); i-- > 0;) {
    int s = sgn(coords_[i]);
    if (s != 0) return s;
  }
  return 0;
}

LexElem& LexElem::operator+=(const LexElem& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

LexElem& LexElem::operator-=(const LexElem& o) {
  require_same(*this, o);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

LexElem LexElem::operator-() const {
  LexElem r = *this;
  for (auto& c : r.coords_) c = -c;
  return r;
}

LexElem operator*(const LexElem& a, const mpz_class& k) {
  LexElem r = a;
  for (auto& c : r.coords_) c *= k;
  return r;
}

bool operator==(const LexElem& a, const LexElem& b) {
  return a.domain_ == b.domain_ && a.coords_ == b.coords_;
}

std::strong_ordering operator<=>(const LexElem& a, const LexElem& b) {
  require_same(a, b);
  for (std::size_t i = a.coords_.size(); i-- > 0;) {
    int c = cmp(a.coords_[i], b.coords_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LexElem::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ',';
    s += rational_str(coords_[i]);
  }
  return s + ")";
}

std::strong_ordering lex_cmp(const LexElem& a, const LexElem& b) { return a <=> b; }

LexElem abs(const LexElem& a) { return a.sign() < 0 ? -a : a; }
const LexElem& max(const LexElem& a, const LexElem& b) { return a < b ? b : a; }
const LexElem& min(const LexElem& a, const LexElem& b) { return b < a ? b : a; }

std::size_t height(const LexElem& a) {
  for (std::size_t i = a.rank(); i-- > 0;)
    if (sgn(a[i]) != 0) return i + 1;
  return 0;
}

LexElem project_quotient(const LexElem& a, ConvexIndex i) {
  if (i.i > a.rank()) throw InputError("convex index out of range");
  return LexElem(a.domain(), std::vector<mpq_class>(a.coords().begin() + static_cast<long>(i.i), a.coords().end()));
}

bool in_convex(const LexElem& a, ConvexIndex i) { return height(a) <= i.i; }

LexElem concat(const LexElem& a, const LexElem& b) {
  if (a.domain() != b.domain()) throw InputError("concat: domain mismatch");
  std::vector<mpq_class> v = a.coords();
  v.insert(v.end(), b.coords().begin(), b.coords().end());
  return LexElem(a.domain(), std::move(v));
}

// ---- QLexElem

QLexElem::QLexElem(const LexElem& a) : num_(a), den_(1) {}

QLexElem::QLexElem(LexElem num, mpz_class den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw InputError("division by zero");
  normalize();
}

void QLexElem::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_ == 1) return;
  if (num_.domain() == Domain::Rational) {
    std::vector<mpq_class> v = num_.coords();
    for (auto& c : v) c /= den_;
    num_ = LexElem(Domain::Rational, std::move(v));
    den_ = 1;
    return;
  }
  mpz_class g = den_;
  for (const auto& c : num_.coords()) g = gcd(g, c.get_num());
  if (g == 1) return;
  std::vector<mpq_class> v = num_.coords();
  for (auto& c : v) c /= g;
  num_ = LexElem(Domain::Integer, std::move(v));
  den_ /= g;
}

mpq_class QLexElem::scalar() const {
  if (rank() != 1) throw InputError("scalar() needs rank 1, got " + str());
  mpq_class r = num_[0] / mpq_class(den_);
  r.canonicalize();
  return r;
}

mpz_class QLexElem::floor_scalar() const {
  mpq_class q = scalar();
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

mpz_class QLexElem::ceil_scalar() const {
  mpq_class q = scalar();
  mpz_class f;
  mpz_cdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

QLexElem& QLexElem::operator+=(const QLexElem& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

QLexElem& QLexElem::operator-=(const QLexElem& o) { return *this += -o; }

QLexElem QLexElem::operator-() const {
  QLexElem r = *this;
  r.num_ = -r.num_;
  return r;
}

QLexElem operator*(const QLexElem& a, const mpz_class& k) { return QLexElem(a.num_ * k, a.den_); }

bool operator==(const QLexElem& a, const QLexElem& b) {
  if (a.num_.rank() != b.num_.rank() || a.domain() != b.domain()) return false;
  return a.num_ * b.den_ == b.num_ * a.den_;
}

std::strong_ordering operator<=>(const QLexElem& a, const QLexElem& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

std::string QLexElem::str() const {
  std::string s = num_.str();
  if (den_ != 1) s += "/" + den_.get_str();
  return s;
}

QLexElem qdiv(const LexElem& a, const mpz_class& m) {
  if (m == 0) throw InputError("qdiv by zero");
  return QLexElem(a, m);
}

QLexElem qdiv(const QLexElem& a, const mpz_class& m) {
  if (m == 0) throw InputError("qdiv by zero");
  return QLexElem(a.num(), a.den() * m);
}

const QLexElem& max(const QLexElem& a, const QLexElem& b) { return a < b ? b : a; }

std::string render(const LexElem& a) {
  if (a.rank() == 1) return rational_str(a[0]);
  return a.str();
}

std::string render(const QLexElem& a) {
  if (a.rank() == 1) return rational_str(a.scalar());
  return a.str();
}

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class parse_rational(std::string_view s) {
  s = trim(s);
  auto bad = [&] { return InputError("malformed rational '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  auto slash = s.find('/');
  std::string_view n = s.substr(0, slash);
  std::string_view d = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!valid_int(n) || !valid_int(d) || d[0] == '-' || d[0] == '+') throw bad();
  std::string ns(n);
  if (ns[0] == '+') ns.erase(0, 1);
  mpz_class num(ns), den{std::string(d)};
  if (den == 0) throw bad();
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

LexElem parse_lex(std::string_view s, Domain domain) {
  s = trim(s);
  if (s.empty()) throw InputError("empty lex element");
  std::vector<mpq_class> coords;
  if (s.front() != '(') {
    coords.push_back(parse_rational(s));
  } else {
    if (s.back() != ')') throw InputError("malformed lex element '" + std::string(s) + "'");
    std::string_view body = s.substr(1, s.size() - 2);
    if (trim(body).empty()) return LexElem(domain, {});
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      coords.push_back(parse_rational(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return LexElem(domain, std::move(coords));
}

QLexElem parse_qlex(std::string_view s, Domain domain) {
  s = trim(s);
  if (!s.empty() && s.front() == '(') {
    auto close = s.rfind(')');
    if (close == std::string_view::npos) throw InputError("malformed lex element '" + std::string(s) + "'");
    LexElem num = parse_lex(s.substr(0, close + 1), domain);
    std::string_view rest = trim(s.substr(close + 1));
    if (rest.empty()) return QLexElem(num);
    if (rest.front() != '/') throw InputError("malformed lex fraction '" + std::string(s) + "'");
    mpq_class m = parse_rational(rest.substr(1));
    if (m.get_den() != 1 || m <= 0) throw InputError("denominator must be a positive integer");
    return qdiv(num, m.get_num());
  }
  mpq_class q = parse_rational(s);
  return QLexElem(LexElem(domain, {mpq_class(q.get_num())}), q.get_den());
}

}  // namespace lhyp
