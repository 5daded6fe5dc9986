#include "lhyp/lspace.hpp"

#include <algorithm>

#include "scan.hpp"

namespace lhyp {

FiniteLambdaSpace::FiniteLambdaSpace(Domain domain, std::size_t rank, std::vector<std::string> labels,
                                     std::vector<LexElem> dist)
    : domain_(domain), rank_(rank), labels_(std::move(labels)), dist_(std::move(dist)) {
  if (dist_.size() != labels_.size() * labels_.size())
    throw InputError("distance table has " + std::to_string(dist_.size()) + " entries for " +
                     std::to_string(labels_.size()) + " points");
  for (const auto& e : dist_)
    if (e.rank() != rank_ || e.domain() != domain_) throw InputError("distance entry " + e.str() + " has the wrong rank or domain");
}

FiniteLambdaSpace FiniteLambdaSpace::from_integers(const std::vector<std::vector<long>>& d,
                                                   std::vector<std::string> labels) {
  const std::size_t n = d.size();
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<LexElem> dist;
  dist.reserve(n * n);
  for (const auto& row : d) {
    if (row.size() != n) throw InputError("distance matrix is not square");
    for (long v : row) dist.push_back(LexElem::of_int(v));
  }
  return FiniteLambdaSpace(Domain::Integer, 1, std::move(labels), std::move(dist));
}

std::size_t FiniteLambdaSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  throw InputError("unknown point '" + std::string(label) + "'");
}

long FiniteLambdaSpace::zd(std::size_t x, std::size_t y) const {
  if (!z_valued()) throw InputError("space is not Z-valued");
  return d(x, y)[0].get_num().get_si();
}

std::vector<MetricViolation> validate_metric(const FiniteLambdaSpace& X) {
  std::vector<MetricViolation> out;
  const std::size_t n = X.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (X.d(x, y).sign() < 0) out.push_back({"LM1", {x, y}});
      if ((x == y) != X.d(x, y).is_zero()) out.push_back({"LM2", {x, y}});
      if (x < y && X.d(x, y) != X.d(y, x)) out.push_back({"LM3", {x, y}});
    }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (X.d(x, y) > X.d(x, z) + X.d(z, y)) out.push_back({"LM4", {x, y, z}});
  return out;
}

static void check_point(const FiniteLambdaSpace& X, std::size_t p) {
  if (p >= X.size()) throw InputError("point index " + std::to_string(p) + " out of range");
}

QLexElem gromov_product(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t v) {
  check_point(X, x), check_point(X, y), check_point(X, v);
  return qdiv(X.d(x, v) + X.d(y, v) - X.d(x, y), 2);
}

QLexElem triple_term(const FiniteLambdaSpace& X, std::size_t v, std::size_t x, std::size_t y, std::size_t z) {
  QLexElem xz = gromov_product(X, x, z, v), zy = gromov_product(X, z, y, v);
  return (xz < zy ? xz : zy) - gromov_product(X, x, y, v);
}

QLexElem four_point_term(const FiniteLambdaSpace& X, std::size_t x, std::size_t y, std::size_t z, std::size_t t) {
  LexElem a = X.d(x, z) + X.d(y, t), b = X.d(y, z) + X.d(x, t);
  return qdiv(X.d(x, y) + X.d(z, t) - max(a, b), 2);
}

namespace {

using detail::Cand;
using detail::FastLex;

// Picks the cheapest exact representation of the table and runs f on it.
// f receives (values, divisor) where divisor maps scan values back to Λ_Q.
template <class F>
auto with_table(const FiniteLambdaSpace& X, bool force_exact, F&& f) {
  if (!force_exact) {
    std::vector<const LexElem*> ptrs;
    ptrs.reserve(X.table().size());
    for (const auto& e : X.table()) ptrs.push_back(&e);
    if (auto fast = detail::to_fast(ptrs)) {
      if (X.rank() == 1) {
        std::vector<std::int64_t> v(fast->values.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = fast->values[i].v[0];
        return f(v, fast->scale);
      }
      return f(fast->values, fast->scale);
    }
  }
  return f(X.table(), mpz_class(1));
}

QLexElem to_q(std::int64_t v, const FiniteLambdaSpace& X, const mpz_class& div) {
  FastLex f;
  f.v[0] = v;
  return detail::from_fast(f, 1, X.domain(), div);
}
QLexElem to_q(const FastLex& v, const FiniteLambdaSpace& X, const mpz_class& div) {
  return detail::from_fast(v, X.rank(), X.domain(), div);
}
QLexElem to_q(const LexElem& v, const FiniteLambdaSpace&, const mpz_class& div) { return qdiv(v, div); }

}  // namespace

DeltaWitness min_delta_at(const FiniteLambdaSpace& X, std::size_t v, const ScanOptions& opt) {
  check_point(X, v);
  const std::size_t n = X.size();
  return with_table(X, opt.force_exact, [&](const auto& D, const mpz_class& scale) {
    using V = std::decay_t<decltype(D[0])>;
    std::vector<V> A(n * n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        A[x * n + y] = detail::vsub(detail::vadd(D[x * n + v], D[y * n + v]), D[x * n + y]);
    Cand<V> best = detail::scan_triple(A, nullptr, n, resolve_workers(opt.workers));
    QLexElem val = to_q(best.val, X, scale * 2);
    if (val.sign() < 0) val = QLexElem(LexElem::zero(X.domain(), X.rank()));
    return DeltaWitness{val, {best.at[0], best.at[1], best.at[2]}};
  });
}

DeltaWitness min_delta_4pt(const FiniteLambdaSpace& X, const ScanOptions& opt) {
  const std::size_t n = X.size();
  QLexElem zero(LexElem::zero(X.domain(), X.rank()));
  if (n < 4) return DeltaWitness{zero, n ? std::vector<std::size_t>{0, 0, 0, 0} : std::vector<std::size_t>{}};
  return with_table(X, opt.force_exact, [&](const auto& D, const mpz_class& scale) {
    auto best = detail::scan_four_point(D, n, resolve_workers(opt.workers));
    auto q = detail::orient_quadruple(D, n, best.at);
    return DeltaWitness{to_q(best.val, X, scale * 2), {q[0], q[1], q[2], q[3]}};
  });
}

HyperbolicityReport hyperbolicity(const FiniteLambdaSpace& X, const ScanOptions& opt) {
  HyperbolicityReport r;
  r.delta_triple_all.value = QLexElem(LexElem::zero(X.domain(), X.rank()));
  for (std::size_t v = 0; v < X.size(); ++v) {
    r.delta_triple_at.push_back(min_delta_at(X, v, opt));
    const auto& w = r.delta_triple_at.back();
    if (v == 0 || w.value > r.delta_triple_all.value) {
      r.delta_triple_all.value = w.value;
      r.delta_triple_all.at = {v, w.at[0], w.at[1], w.at[2]};
    }
  }
  r.delta_4pt = min_delta_4pt(X, opt);
  return r;
}

FiniteLambdaSpace induced(const FiniteLambdaSpace& X, const std::vector<std::size_t>& pts) {
  std::vector<std::string> labels;
  std::vector<LexElem> dist;
  for (std::size_t a : pts) {
    check_point(X, a);
    labels.push_back(X.label(a));
    for (std::size_t b : pts) dist.push_back(X.d(a, b));
  }
  return FiniteLambdaSpace(X.domain(), X.rank(), std::move(labels), std::move(dist));
}

Subspace subspace_at(const FiniteLambdaSpace& X, std::size_t x, ConvexIndex i) {
  check_point(X, x);
  if (i.i > X.rank()) throw InputError("convex index out of range");
  Subspace s;
  for (std::size_t y = 0; y < X.size(); ++y)
    if (in_convex(X.d(x, y), i)) s.members.push_back(y);
  s.space = induced(X, s.members);
  return s;
}

Quotient quotient_by_convex(const FiniteLambdaSpace& X, ConvexIndex i) {
  if (i.i > X.rank()) throw InputError("convex index out of range");
  Quotient q;
  const std::size_t n = X.size();
  q.class_of.assign(n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    bool placed = false;
    for (std::size_t c = 0; c < q.classes.size() && !placed; ++c) {
      if (in_convex(X.d(q.classes[c][0], y), i)) {
        for (std::size_t m : q.classes[c])
          if (!in_convex(X.d(m, y), i))
            throw InputError("quotient: relation is not transitive at " + X.label(m) + "," + X.label(y));
        q.classes[c].push_back(y);
        q.class_of[y] = c;
        placed = true;
      }
    }
    if (!placed) {
      q.class_of[y] = q.classes.size();
      q.classes.push_back({y});
    }
  }
  const std::size_t k = q.classes.size();
  std::vector<std::string> labels;
  std::vector<LexElem> dist;
  for (std::size_t a = 0; a < k; ++a) {
    labels.push_back(X.label(q.classes[a][0]));
    for (std::size_t b = 0; b < k; ++b) {
      LexElem v = project_quotient(X.d(q.classes[a][0], q.classes[b][0]), i);
      for (std::size_t p : q.classes[a])
        for (std::size_t r : q.classes[b])
          if (project_quotient(X.d(p, r), i) != v)
            throw InputError("quotient: class distance depends on representatives");
      dist.push_back(std::move(v));
    }
  }
  q.space = FiniteLambdaSpace(X.domain(), X.rank() - i.i, std::move(labels), std::move(dist));
  return q;
}

FiniteLambdaSpace scale(const FiniteLambdaSpace& X, long k) {
  if (k < 1) throw InputError("scale factor must be positive");
  std::vector<LexElem> dist;
  for (const auto& e : X.table()) dist.push_back(e * k);
  return FiniteLambdaSpace(X.domain(), X.rank(), X.labels(), std::move(dist));
}

std::size_t convex_support(const FiniteLambdaSpace& X) {
  std::size_t h = 0;
  for (const auto& e : X.table()) h = std::max(h, height(e));
  return h;
}

}  // namespace lhyp
