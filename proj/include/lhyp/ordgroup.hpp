#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lhyp {

// Bad input (parse errors, shape mismatches, unmet preconditions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Domain { Integer, Rational };

// Λ_i = elements supported on the first i coordinates.
struct ConvexIndex {
  std::size_t i = 0;
};

// Element of Z^n or Q^n. Coordinate 0 is the least significant one:
// comparison starts from the right end.
class LexElem {
 public:
  LexElem() = default;
  LexElem(Domain domain, std::vector<mpq_class> coords);

  static LexElem zero(Domain domain, std::size_t rank);
  static LexElem integers(std::initializer_list<long> coords);
  static LexElem of_int(long v) { return integers({v}); }

  Domain domain() const noexcept { return domain_; }
  std::size_t rank() const noexcept { return coords_.size(); }
  const mpq_class& operator[](std::size_t i) const { return coords_.at(i); }
  const std::vector<mpq_class>& coords() const noexcept { return coords_; }

  bool is_zero() const;
  int sign() const;

  LexElem& operator+=(const LexElem& o);
  LexElem& operator-=(const LexElem& o);
  LexElem operator-() const;
  friend LexElem operator+(LexElem a, const LexElem& b) { return a += b; }
  friend LexElem operator-(LexElem a, const LexElem& b) { return a -= b; }
  friend LexElem operator*(const LexElem& a, const mpz_class& k);
  friend LexElem operator*(const LexElem& a, long k) { return a * mpz_class(k); }

  // structural equality; never throws
  friend bool operator==(const LexElem& a, const LexElem& b);
  // throws InputError on rank/domain mismatch
  friend std::strong_ordering operator<=>(const LexElem& a, const LexElem& b);

  std::string str() const;

 private:
  Domain domain_ = Domain::Integer;
  std::vector<mpq_class> coords_;
};

std::strong_ordering lex_cmp(const LexElem& a, const LexElem& b);
LexElem abs(const LexElem& a);
const LexElem& max(const LexElem& a, const LexElem& b);
const LexElem& min(const LexElem& a, const LexElem& b);

std::size_t height(const LexElem& a);
LexElem project_quotient(const LexElem& a, ConvexIndex i);
bool in_convex(const LexElem& a, ConvexIndex i);
// concatenation: a in the low coordinates, b in the high ones
LexElem concat(const LexElem& a, const LexElem& b);

// num/den with den > 0, kept in lowest terms. Over Q^n the denominator is
// folded into the coordinates so den == 1.
class QLexElem {
 public:
  QLexElem() = default;
  QLexElem(const LexElem& a);  // a/1
  QLexElem(LexElem num, mpz_class den);

  const LexElem& num() const noexcept { return num_; }
  const mpz_class& den() const noexcept { return den_; }
  Domain domain() const noexcept { return num_.domain(); }
  std::size_t rank() const noexcept { return num_.rank(); }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  // exact value as a single rational (rank 1 only)
  mpq_class scalar() const;
  // true iff the value lies in Λ (denominator 1)
  bool integral() const { return den_ == 1; }
  // largest element of Λ that is <= this (coordinatewise floor is wrong for
  // lex order in general, so rank 1 only)
  mpz_class floor_scalar() const;
  mpz_class ceil_scalar() const;

  QLexElem& operator+=(const QLexElem& o);
  QLexElem& operator-=(const QLexElem& o);
  QLexElem operator-() const;
  friend QLexElem operator+(QLexElem a, const QLexElem& b) { return a += b; }
  friend QLexElem operator-(QLexElem a, const QLexElem& b) { return a -= b; }
  friend QLexElem operator*(const QLexElem& a, const mpz_class& k);
  friend QLexElem operator*(const QLexElem& a, long k) { return a * mpz_class(k); }

  friend bool operator==(const QLexElem& a, const QLexElem& b);
  friend std::strong_ordering operator<=>(const QLexElem& a, const QLexElem& b);

  std::string str() const;

 private:
  void normalize();
  LexElem num_;
  mpz_class den_ = 1;
};

QLexElem qdiv(const LexElem& a, const mpz_class& m);
inline QLexElem qdiv(const LexElem& a, long m) { return qdiv(a, mpz_class(m)); }
QLexElem qdiv(const QLexElem& a, const mpz_class& m);
const QLexElem& max(const QLexElem& a, const QLexElem& b);

// Rank-1 values print as plain rationals ("0", "1/2"); others as tuples.
std::string render(const LexElem& a);
std::string render(const QLexElem& a);

std::string rational_str(const mpq_class& q);
mpq_class parse_rational(std::string_view s);

// "(a,b,...)" or a bare scalar for rank 1
LexElem parse_lex(std::string_view s, Domain domain);
// "(a,b,...)/m", "(a,b,...)", "p/q" or "p"
QLexElem parse_qlex(std::string_view s, Domain domain);

}  // namespace lhyp
