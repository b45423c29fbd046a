#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rsol/formula.hpp"

namespace rsol {

using Element = std::uint32_t;
using Tuple = std::vector<Element>;

// B ⊆ A^k as a bitset over the lexicographic enumeration of A^k.
class Relation {
 public:
  Relation() = default;
  // Throws FeasibilityError when domain^arity exceeds 2^24 tuples.
  Relation(std::uint32_t arity, std::uint32_t domain);

  static Relation full(std::uint32_t arity, std::uint32_t domain);
  static Relation from_tuples(std::uint32_t arity, std::uint32_t domain, const std::vector<Tuple>& tuples);

  std::uint32_t arity() const { return arity_; }
  std::uint32_t domain() const { return domain_; }
  std::size_t tuple_count() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  std::size_t encode(const Tuple& t) const;
  std::size_t encode(const Element* t) const;
  Tuple decode(std::size_t index) const;

  bool contains(const Tuple& t) const { return bits_.test(encode(t)); }
  bool contains_index(std::size_t i) const { return bits_.test(i); }
  void insert(const Tuple& t) { bits_.set(encode(t)); }
  void set_index(std::size_t i, bool value = true) { bits_.set(i, value); }

  std::vector<Tuple> tuples() const;

  const boost::dynamic_bitset<>& bits() const { return bits_; }
  boost::dynamic_bitset<>& bits() { return bits_; }

  Relation complement() const;
  Relation operator&(const Relation& o) const;
  Relation operator|(const Relation& o) const;
  bool subset_of(const Relation& o) const { return bits_.is_subset_of(o.bits_); }

  // Image under a permutation of the domain.
  Relation permuted(const std::vector<Element>& perm) const;

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.arity_ == b.arity_ && a.domain_ == b.domain_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }
  // Canonical order: arity, then cardinality, then tuple bits.
  friend bool operator<(const Relation& a, const Relation& b);

 private:
  std::uint32_t arity_ = 0;
  std::uint32_t domain_ = 0;
  boost::dynamic_bitset<> bits_;
};

std::string to_string(const Relation& r);

// Elements 0..domain_size-1, interpretations indexed like the signature.
struct FiniteStructure {
  Signature sig;
  std::uint32_t domain_size = 0;
  std::vector<Relation> predicates;
  // Function i: table over the lexicographic enumeration of A^{arity}.
  std::vector<std::vector<Element>> functions;
  std::vector<Element> constants;

  // Empty interpretations for every symbol of `sig` (functions map to 0).
  static FiniteStructure blank(const Signature& sig, std::uint32_t domain_size);

  // Throws PreconditionError on any inconsistency with the signature.
  void validate() const;

  Element apply(std::uint32_t function, const std::vector<Element>& args) const;
};

// Structure files:
//   { "domain_size": 3,
//     "signature": "P0/1 P1/2 f0/1 c1",          (optional)
//     "identity": true,                            (optional)
//     "predicates": { "P0": [[0],[2]], "P1": {"arity": 2, "tuples": []} },
//     "functions": { "f0": [1, 2, 0] },
//     "constants": { "c0": 1 } }
// Without "signature" the vocabulary is inferred from the symbol names and
// data; empty predicates then need the object form with an explicit arity.
FiniteStructure parse_structure_json(const std::string& text);
FiniteStructure load_structure(const std::string& path);
std::string structure_to_json(const FiniteStructure& s);

// Structures over a finite vocabulary up to a domain bound, for catalogs.
std::vector<FiniteStructure> all_structures(const Signature& sig, std::uint32_t domain_size);

}  // namespace rsol
