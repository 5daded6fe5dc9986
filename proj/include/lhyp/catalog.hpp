#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lhyp/geodspace.hpp"
#include "lhyp/lspace.hpp"

namespace lhyp {

// Canonical encoding of a group element; the identity is always empty.
using Word = std::vector<int>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : w) h = (h ^ static_cast<std::size_t>(static_cast<unsigned>(x))) * 1099511628211ull;
    return h;
  }
};

class Group {
 public:
  virtual ~Group() = default;
  Word identity() const { return {}; }
  virtual Word multiply(const Word& a, const Word& b) const = 0;
  virtual Word invert(const Word& a) const = 0;
  virtual std::string format(const Word& a) const = 0;
  virtual Word parse(std::string_view s) const = 0;
  // default generating set (not necessarily symmetric)
  virtual std::vector<Word> generators() const = 0;
  virtual std::string describe() const = 0;
};
using GroupHandle = std::shared_ptr<const Group>;

GroupHandle free_group(std::size_t rank);
// table[i][j] = i*j on indices 0..k-1
GroupHandle finite_group(const std::vector<std::vector<int>>& table);
GroupHandle cyclic_group(std::size_t k);
GroupHandle direct_product(GroupHandle g, GroupHandle h);
GroupHandle free_product(GroupHandle g, GroupHandle h);

// free product syllables: (factor 0|1, nontrivial element of that factor)
using Syllables = std::vector<std::pair<int, Word>>;
Syllables syllables(const Group& free_prod, const Word& g);
Word from_syllables(const Group& free_prod, const Syllables& s);
// direct product components
std::pair<Word, Word> components(const Group& direct_prod, const Word& g);
Word pair_element(const Group& direct_prod, const Word& a, const Word& b);

std::vector<Word> symmetrize(const Group& G, const std::vector<Word>& gens);

struct Ball {
  std::vector<Word> elements;  // BFS order from the identity
  std::vector<long> word_length;
  long radius = 0;
  std::unordered_map<Word, std::size_t, WordHash> index;

  std::size_t size() const noexcept { return elements.size(); }
  bool contains(const Word& w) const { return index.count(w) > 0; }
};

Ball cayley_ball(const Group& G, const std::vector<Word>& gens, long radius);
Ball free_ball(std::size_t rank, long radius);
GeodesicGraph cayley_graph(const Group& G, const std::vector<Word>& gens, long radius);

// Exact lengths for the enumerated part of a group.
class LengthTable {
 public:
  LengthTable() = default;
  LengthTable(GroupHandle g, Domain domain, std::size_t rank, long radius);

  void set(const Word& g, LexElem value);
  const LexElem* find(const Word& g) const;
  const LexElem& at(const Word& g) const;
  bool contains(const Word& g) const { return index_.count(g) > 0; }

  const GroupHandle& group() const noexcept { return group_; }
  Domain domain() const noexcept { return domain_; }
  std::size_t rank() const noexcept { return rank_; }
  long radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<std::pair<Word, LexElem>>& entries() const noexcept { return entries_; }
  std::vector<Word> domain_elements() const;

 private:
  GroupHandle group_;
  Domain domain_ = Domain::Integer;
  std::size_t rank_ = 1;
  long radius_ = 0;
  std::unordered_map<Word, std::size_t, WordHash> index_;
  std::vector<std::pair<Word, LexElem>> entries_;
};

LengthTable word_length_table(GroupHandle G, const std::vector<Word>& gens, long radius);

// (l(g), l(h)) on the product of the two table domains
LengthTable product_length(const LengthTable& lG, const LengthTable& lH);
// (sum of syllable lengths, 1); identity -> 0
LexElem free_product_length(const Syllables& g, const LengthTable& l1, const LengthTable& l2);
LengthTable free_product_table(GroupHandle fp, const LengthTable& l1, const LengthTable& l2, long radius);

// points (x,t) labelled "x|t"
FiniteLambdaSpace product_space(const FiniteLambdaSpace& X, const FiniteLambdaSpace& T,
                                const std::vector<std::size_t>& Y);

}  // namespace lhyp
