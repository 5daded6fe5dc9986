#include "lhyp/isometry.hpp"

#include <numeric>
#include <stdexcept>

namespace lhyp {

namespace {

void require_perm(const FiniteLambdaSpace& X, const Perm& pi) {
  if (pi.size() != X.size()) throw InputError("permutation has " + std::to_string(pi.size()) + " entries, space has " +
                                              std::to_string(X.size()) + " points");
  std::vector<char> hit(pi.size(), 0);
  for (std::size_t v : pi) {
    if (v >= pi.size() || hit[v]) throw InputError("map is not a permutation of the points");
    hit[v] = 1;
  }
}

// class index -> image class, checked well-defined
std::vector<std::size_t> class_map(const Quotient& Q, const Perm& pi) {
  std::vector<std::size_t> m(Q.classes.size());
  for (std::size_t c = 0; c < Q.classes.size(); ++c) {
    m[c] = Q.class_of[pi[Q.classes[c][0]]];
    for (std::size_t x : Q.classes[c])
      if (Q.class_of[pi[x]] != m[c])
        throw std::logic_error("isometry does not respect the convex classes (point " + std::to_string(x) + ")");
  }
  return m;
}

}  // namespace

IsometryCheck check_isometry(const FiniteLambdaSpace& X, const Perm& pi) {
  require_perm(X, pi);
  IsometryCheck r;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = x + 1; y < X.size(); ++y)
      if (!(X.d(pi[x], pi[y]) == X.d(x, y))) {
        r.isometry = false;
        r.witness = {x, y};
        return r;
      }
  return r;
}

IsoPerm make_isoperm(const FiniteLambdaSpace& X, const Perm& pi) {
  auto c = check_isometry(X, pi);
  if (!c.isometry)
    throw InputError("not an isometry: d(" + X.label(c.witness->first) + "," + X.label(c.witness->second) +
                     ") is not preserved");
  return IsoPerm{pi, perm_order(pi)};
}

std::size_t perm_order(const Perm& pi) {
  std::size_t ord = 1;
  std::vector<char> seen(pi.size(), 0);
  for (std::size_t s = 0; s < pi.size(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = pi[x]) seen[x] = 1, ++len;
    ord = std::lcm(ord, len);
  }
  return ord;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t x = 0; x < b.size(); ++x) r[x] = a[b[x]];
  return r;
}

Perm perm_inverse(const Perm& a) {
  Perm r(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) r[a[x]] = x;
  return r;
}

Perm perm_power(const Perm& a, long k) {
  Perm base = k < 0 ? perm_inverse(a) : a;
  Perm r(a.size());
  std::iota(r.begin(), r.end(), 0);
  for (long i = 0; i < std::labs(k); ++i) r = perm_compose(base, r);
  return r;
}

LexElem orbit_diameter(const FiniteLambdaSpace& X, const Perm& pi, std::size_t x) {
  if (x >= X.size()) throw InputError("point out of range");
  std::vector<std::size_t> orbit{x};
  for (std::size_t y = pi[x]; y != x; y = pi[y]) orbit.push_back(y);
  LexElem best = LexElem::zero(X.domain(), X.rank());
  for (std::size_t a : orbit)
    for (std::size_t b : orbit) best = max(best, X.d(a, b));
  return best;
}

std::string to_string(CertTag t) {
  switch (t) {
    case CertTag::Elliptic: return "Elliptic";
    case CertTag::HyperbolicOrInversion: return "HyperbolicOrInversion";
    case CertTag::Inversion: return "Inversion";
    case CertTag::Undetermined: return "Undetermined";
  }
  return "?";
}

ClassCert classify_certificate(const FiniteLambdaSpace& X, const Perm& pi, const QLexElem& delta, long K) {
  require_perm(X, pi);
  if (K < 0) throw InputError("K must be a natural number");
  if (delta.num().rank() != X.rank()) throw InputError("δ has the wrong rank");
  ClassCert c;
  c.K = K;
  c.horizon = perm_order(pi);
  const std::size_t n = X.size();

  for (std::size_t i = 1; i < X.rank(); ++i) {
    Quotient Q = quotient_by_convex(X, ConvexIndex{i});
    auto m = class_map(Q, pi);
    std::vector<std::size_t> fixed;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] == k && Q.classes.size() > 1) fixed.push_back(k);
    c.invariant_subspaces.push_back({i, fixed});
  }

  const QLexElem three = delta * mpz_class(3);
  for (std::size_t x = 0; x < n; ++x) {
    QLexElem rhs = QLexElem(X.d(x, pi[x])) + three;
    if (QLexElem(X.d(x, pi[pi[x]])) > rhs) {
      c.tag = CertTag::HyperbolicOrInversion;
      c.witness = x;
      c.detail = "d(x,π²x) = " + render(X.d(x, pi[pi[x]])) + " > d(x,πx) + 3δ = " + render(rhs);
      return c;
    }
  }
  const QLexElem bound = delta * mpz_class(K);
  for (std::size_t x = 0; x < n; ++x) {
    LexElem diam = orbit_diameter(X, pi, x);
    if (QLexElem(diam) <= bound) {
      c.tag = CertTag::Elliptic;
      c.witness = x;
      c.detail = "orbit diameter " + render(diam) + " <= Kδ = " + render(bound);
      return c;
    }
  }
  // Λ_δ is the smallest convex subgroup containing δ
  const std::size_t i = height(delta.num());
  Quotient Q = quotient_by_convex(X, ConvexIndex{i});
  auto m = class_map(Q, pi);
  bool fixes = false;
  std::optional<std::size_t> fixed2;
  for (std::size_t k = 0; k < m.size(); ++k) {
    fixes = fixes || m[k] == k;
    if (!fixed2 && m[m[k]] == k) fixed2 = k;
  }
  if (!fixes && fixed2) {
    c.tag = CertTag::Inversion;
    c.witness = Q.classes[*fixed2][0];
    c.detail = "π fixes no Λ_δ-class, π² fixes the class of " + X.label(c.witness);
    return c;
  }
  c.detail = "no certificate within the orbit horizon";
  return c;
}

TranslationLength translation_length_tree(const FiniteLambdaSpace& X0, const Perm& pi, std::size_t y) {
  require_perm(X0, pi);
  if (y >= X0.size()) throw InputError("point out of range");
  if (min_delta_4pt(X0).value.sign() != 0) throw InputError("translation length needs a 0-hyperbolic space");
  auto at = [&](std::size_t p) {
    LexElem v = X0.d(p, pi[pi[p]]) - X0.d(p, pi[p]);
    return v.sign() < 0 ? LexElem::zero(X0.domain(), X0.rank()) : v;
  };
  TranslationLength t{at(y), true};
  for (std::size_t p = 0; p < X0.size(); ++p)
    if (!(at(p) == t.value)) t.basepoint_independent = false;
  return t;
}

InducedIsometry induce_on_quotient(const FiniteLambdaSpace& X, const Perm& pi, ConvexIndex i) {
  require_perm(X, pi);
  InducedIsometry r{quotient_by_convex(X, i), {}};
  Perm m = class_map(r.quotient, pi);
  auto chk = check_isometry(r.quotient.space, m);
  if (!chk.isometry) throw std::logic_error("induced class map is not an isometry of the quotient");
  r.perm = IsoPerm{m, perm_order(m)};
  return r;
}

}  // namespace lhyp
