#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lhyp/lspace.hpp"

namespace lhyp {

using Perm = std::vector<std::size_t>;

// permutation of point indices, checked to be an isometry at construction
struct IsoPerm {
  Perm map;
  std::size_t order = 1;
};

struct IsometryCheck {
  bool isometry = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // first pair not preserved
};

// throws InputError if pi is not a bijection of X
IsometryCheck check_isometry(const FiniteLambdaSpace& X, const Perm& pi);
IsoPerm make_isoperm(const FiniteLambdaSpace& X, const Perm& pi);

std::size_t perm_order(const Perm& pi);
Perm perm_compose(const Perm& a, const Perm& b);  // a after b
Perm perm_inverse(const Perm& a);
Perm perm_power(const Perm& a, long k);

LexElem orbit_diameter(const FiniteLambdaSpace& X, const Perm& pi, std::size_t x);

enum class CertTag { Elliptic, HyperbolicOrInversion, Inversion, Undetermined };
std::string to_string(CertTag t);

struct ClassCert {
  CertTag tag = CertTag::Undetermined;
  std::size_t witness = 0;
  long K = 0;
  std::size_t horizon = 0;  // orbit length examined (order of π)
  std::string detail;
  // per proper convex index i: classes of the quotient by Λ_i that π maps to themselves
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> invariant_subspaces;
  bool minimal() const {
    for (const auto& [i, c] : invariant_subspaces)
      if (!c.empty()) return false;
    return true;
  }
};

ClassCert classify_certificate(const FiniteLambdaSpace& X, const Perm& pi, const QLexElem& delta, long K);

struct TranslationLength {
  LexElem value;
  bool basepoint_independent = true;
};
// throws InputError unless X0 is 0-hyperbolic
TranslationLength translation_length_tree(const FiniteLambdaSpace& X0, const Perm& pi, std::size_t y);

struct InducedIsometry {
  Quotient quotient;
  IsoPerm perm;
};
InducedIsometry induce_on_quotient(const FiniteLambdaSpace& X, const Perm& pi, ConvexIndex i);

}  // namespace lhyp
