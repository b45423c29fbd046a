#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rsol/error.hpp"

namespace rsol {

// A decidable Boolean algebra presentation. `element(i)` enumerates the
// carrier (finite algebras report their size through `size()`).
template <typename A>
concept BooleanAlgebra = requires(const A& alg, const typename A::Element& x, std::uint64_t i) {
  typename A::Element;
  { alg.zero() } -> std::convertible_to<typename A::Element>;
  { alg.one() } -> std::convertible_to<typename A::Element>;
  { alg.meet(x, x) } -> std::convertible_to<typename A::Element>;
  { alg.join(x, x) } -> std::convertible_to<typename A::Element>;
  { alg.complement(x) } -> std::convertible_to<typename A::Element>;
  { alg.equal(x, x) } -> std::convertible_to<bool>;
  { alg.format(x) } -> std::convertible_to<std::string>;
  { alg.parse(std::string{}) } -> std::convertible_to<typename A::Element>;
  { alg.size() } -> std::convertible_to<std::optional<std::uint64_t>>;
  { alg.element(i) } -> std::convertible_to<typename A::Element>;
};

template <BooleanAlgebra A>
bool leq(const A& alg, const typename A::Element& x, const typename A::Element& y) {
  return alg.equal(alg.meet(x, y), x);
}

template <BooleanAlgebra A>
bool is_zero(const A& alg, const typename A::Element& x) {
  return alg.equal(x, alg.zero());
}

// Subsets of {0..m-1}.
class PowersetAlgebra {
 public:
  using Element = boost::dynamic_bitset<>;

  explicit PowersetAlgebra(std::uint32_t atoms);

  std::uint32_t atoms() const { return atoms_; }
  Element zero() const { return Element(atoms_); }
  Element one() const { return ~Element(atoms_); }
  Element meet(const Element& x, const Element& y) const { return x & y; }
  Element join(const Element& x, const Element& y) const { return x | y; }
  Element complement(const Element& x) const { return ~x; }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  Element atom(std::uint32_t i) const;

  // `{0,2}`, `~{1}`, `0`, `1`, and `&`, `|` combinations.
  Element parse(const std::string& text) const;
  std::string format(const Element& x) const;

  // 2^m for m < 64.
  std::optional<std::uint64_t> size() const;
  Element element(std::uint64_t i) const;

 private:
  std::uint32_t atoms_;
};

// Free Boolean algebra on g ≤ 16 generators p0..p_{g-1}, i.e. propositional
// formulas modulo equivalence. Elements are kept as their value on every
// valuation of the generators.
class FreeAlgebra {
 public:
  using Element = boost::dynamic_bitset<>;

  explicit FreeAlgebra(std::uint32_t generators);

  std::uint32_t generators() const { return generators_; }
  Element zero() const { return Element(rows_); }
  Element one() const { return ~Element(rows_); }
  Element meet(const Element& x, const Element& y) const { return x & y; }
  Element join(const Element& x, const Element& y) const { return x | y; }
  Element complement(const Element& x) const { return ~x; }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  Element generator(std::uint32_t i) const;

  // Propositional syntax over p0.., with ~ & | -> and constants 0, 1.
  Element parse(const std::string& text) const;
  // Disjunctive normal form over the generators.
  std::string format(const Element& x) const;

  std::optional<std::uint64_t> size() const;
  Element element(std::uint64_t i) const;

 private:
  std::uint32_t generators_;
  std::size_t rows_;
};

// Finite and cofinite subsets of ω.
struct FinCofElement {
  bool cofinite = false;
  std::vector<std::uint64_t> set;  // sorted; the complement when cofinite

  bool operator==(const FinCofElement&) const = default;
};

class FiniteCofiniteAlgebra {
 public:
  using Element = FinCofElement;

  Element zero() const { return {false, {}}; }
  Element one() const { return {true, {}}; }
  Element meet(const Element& x, const Element& y) const;
  Element join(const Element& x, const Element& y) const;
  Element complement(const Element& x) const { return {!x.cofinite, x.set}; }
  bool equal(const Element& x, const Element& y) const { return x == y; }
  Element atom(std::uint64_t n) const { return {false, {n}}; }

  // `{1,2}`, `~{1,2}`, `0`, `1`.
  Element parse(const std::string& text) const;
  std::string format(const Element& x) const;

  std::optional<std::uint64_t> size() const { return std::nullopt; }
  // Index 2m is the finite set with bitmask m, 2m+1 its complement.
  Element element(std::uint64_t i) const;
};

static_assert(BooleanAlgebra<PowersetAlgebra>);
static_assert(BooleanAlgebra<FreeAlgebra>);
static_assert(BooleanAlgebra<FiniteCofiniteAlgebra>);

enum class EntryKind : std::uint8_t { join, meet };

// One member S of a regular family, with its designated ⋁S or ⋀S.
template <typename E>
struct RegularEntry {
  EntryKind kind = EntryKind::join;
  // Member i, or nullopt past the end of a finite entry.
  std::function<std::optional<E>(std::uint64_t)> member;
  std::optional<std::uint64_t> count;  // set for finite entries
  E bound;
  // Infinite entries whose bound was only checked on a prefix.
  bool trusted = false;
  // Every member is a finite set (finite-cofinite shape metadata).
  bool all_members_finite = false;
  std::string label;

  bool finite() const { return count.has_value(); }
};

template <typename E>
RegularEntry<E> finite_entry(EntryKind kind, std::vector<E> members, E bound, std::string label = {}) {
  RegularEntry<E> e;
  e.kind = kind;
  auto shared = std::make_shared<std::vector<E>>(std::move(members));
  e.count = shared->size();
  e.member = [shared](std::uint64_t i) -> std::optional<E> {
    if (i >= shared->size()) return std::nullopt;
    return (*shared)[i];
  };
  e.bound = std::move(bound);
  e.label = std::move(label);
  return e;
}

// Ultrafilter membership, with an optional entry-level decision: for a join
// entry, whether S meets U; for a meet entry, whether S ⊆ U. Used when a
// search within budget cannot settle the question.
template <typename E>
struct Membership {
  std::function<bool(const E&)> contains;
  std::function<std::optional<bool>(const RegularEntry<E>&)> decide_entry;
};

enum class Verdict : std::uint8_t { yes, no, inconclusive };

std::string to_string(Verdict v);

struct CompatibilityReport {
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t inspected = 0;
  std::optional<std::uint64_t> witness;
  std::string reason;
};

struct EntryVerification {
  bool ok = true;
  bool exact = false;             // finite entry, bound verified as the join/meet
  std::uint64_t prefix = 0;       // members inspected
  std::optional<std::uint64_t> violation;  // first index breaking the bound
  std::string message;
};

struct EntryStep {
  std::string label;
  // True when the bound-side branch was taken (c* joined the chain for a join
  // entry, c for a meet entry); otherwise `witness` names the member used.
  bool bound_branch = false;
  std::optional<std::uint64_t> witness;
  std::uint64_t inspected = 0;
};

template <typename E>
struct UltrafilterApprox {
  std::vector<E> chain;  // b_0 ≥ b_1 ≥ … ≥ b_T, all nonzero
  std::vector<EntryStep> entries;
  std::vector<std::pair<E, bool>> decisions;
  E avoided;

  const E& last() const { return chain.back(); }
};

struct RsOptions {
  std::uint64_t steps = 1000;            // element decisions
  std::uint64_t witness_budget = 10000;  // inspections per entry
};

// --- algorithms -----------------------------------------------------------

// Clauses (i)-(iv) checked over the whole carrier.
template <BooleanAlgebra A>
bool is_ultrafilter(const A& alg, const std::function<bool(const typename A::Element&)>& u) {
  auto n = alg.size();
  if (!n) throw PreconditionError("exhaustive ultrafilter check needs a finite algebra");
  if (*n > (std::uint64_t{1} << 12)) throw FeasibilityError("algebra too large for an exhaustive check");
  if (!u(alg.one()) || u(alg.zero())) return false;
  std::vector<typename A::Element> members;
  for (std::uint64_t i = 0; i < *n; ++i) {
    auto x = alg.element(i);
    bool in = u(x);
    if (in == u(alg.complement(x))) return false;  // exactly one of x, x*
    if (in) members.push_back(x);
  }
  for (const auto& x : members) {
    for (const auto& y : members) {
      if (!u(alg.meet(x, y))) return false;
    }
    for (std::uint64_t i = 0; i < *n; ++i) {
      auto y = alg.element(i);
      if (leq(alg, x, y) && !u(y)) return false;
    }
  }
  return true;
}

// Clauses checked on elements 0..samples-1 of the enumeration.
template <BooleanAlgebra A>
bool is_ultrafilter_sampled(const A& alg, const std::function<bool(const typename A::Element&)>& u,
                            std::uint64_t samples) {
  if (!u(alg.one()) || u(alg.zero())) return false;
  std::vector<typename A::Element> xs;
  for (std::uint64_t i = 0; i < samples; ++i) xs.push_back(alg.element(i));
  for (const auto& x : xs) {
    if (u(x) == u(alg.complement(x))) return false;
    for (const auto& y : xs) {
      if (u(x) && u(y) && !u(alg.meet(x, y))) return false;
      if (u(x) && leq(alg, x, y) && !u(y)) return false;
    }
  }
  return true;
}

template <BooleanAlgebra A>
EntryVerification verify_entry(const A& alg, const RegularEntry<typename A::Element>& e, std::uint64_t prefix) {
  EntryVerification out;
  auto fold = e.kind == EntryKind::join ? alg.zero() : alg.one();
  std::uint64_t limit = e.finite() ? *e.count : prefix + 1;
  for (std::uint64_t i = 0; i < limit; ++i) {
    auto s = e.member(i);
    if (!s) break;
    ++out.prefix;
    bool bounded = e.kind == EntryKind::join ? leq(alg, *s, e.bound) : leq(alg, e.bound, *s);
    if (!bounded) {
      out.ok = false;
      out.violation = i;
      out.message = "member " + std::to_string(i) + " = " + alg.format(*s) + " is not " +
                    (e.kind == EntryKind::join ? "below" : "above") + " the claimed bound " + alg.format(e.bound);
      return out;
    }
    fold = e.kind == EntryKind::join ? alg.join(fold, *s) : alg.meet(fold, *s);
  }
  if (e.finite()) {
    if (!alg.equal(fold, e.bound)) {
      out.ok = false;
      out.message = "claimed bound " + alg.format(e.bound) + " is not the " +
                    (e.kind == EntryKind::join ? "join " : "meet ") + alg.format(fold);
      return out;
    }
    out.exact = true;
    out.message = "exact";
  } else {
    out.message = "prefix-verified(" + std::to_string(out.prefix) + ")";
  }
  return out;
}

template <BooleanAlgebra A>
CompatibilityReport check_f_compatible(const A& /*alg*/, const Membership<typename A::Element>& u,
                                       const RegularEntry<typename A::Element>& e, std::uint64_t budget) {
  CompatibilityReport r;
  bool bound_in = u.contains(e.bound);
  bool join = e.kind == EntryKind::join;
  // Meet with ⋀S ∈ U: every member lies above it, hence in U.
  if (!join && bound_in) {
    r.verdict = Verdict::yes;
    r.reason = "bound in U; members above it are in U";
    return r;
  }
  // Join: look for a member in U. Meet (bound outside U): look for a member
  // outside U. Finding one settles the entry.
  auto wanted = [&](const typename A::Element& s) { return join ? u.contains(s) : !u.contains(s); };
  std::uint64_t limit = e.finite() ? *e.count : budget;
  for (std::uint64_t i = 0; i < limit; ++i) {
    auto s = e.member(i);
    if (!s) break;
    ++r.inspected;
    if (wanted(*s)) {
      r.witness = i;
      if (join) {
        r.verdict = bound_in ? Verdict::yes : Verdict::no;
        r.reason = bound_in ? "member " + std::to_string(i) + " in U"
                            : "member " + std::to_string(i) + " in U but the join is not";
      } else {
        r.verdict = Verdict::yes;
        r.reason = "member " + std::to_string(i) + " outside U, as is the meet";
      }
      return r;
    }
  }
  if (e.finite()) {
    // No member found: join needs ⋁S ∉ U, meet has S ⊆ U but ⋀S ∉ U.
    r.verdict = join ? (bound_in ? Verdict::no : Verdict::yes) : Verdict::no;
    r.reason = join ? (bound_in ? "join in U but no member is" : "no member in U, nor the join")
                    : "all members in U but the meet is not";
    return r;
  }
  if (u.decide_entry) {
    if (auto d = u.decide_entry(e)) {
      // d: join -> S meets U; meet -> S ⊆ U.
      if (join) {
        r.verdict = (*d == bound_in) ? Verdict::yes : Verdict::no;
      } else {
        r.verdict = *d ? Verdict::no : Verdict::yes;
      }
      r.reason = std::string("decided from the entry shape: ") +
                 (join ? (*d ? "S meets U" : "S misses U") : (*d ? "S inside U" : "S leaves U"));
      return r;
    }
  }
  r.verdict = Verdict::inconclusive;
  r.reason = "inconclusive(" + std::to_string(budget) + ")";
  return r;
}

template <BooleanAlgebra A>
UltrafilterApprox<typename A::Element> rs_construct(const A& alg,
                                                    const std::vector<RegularEntry<typename A::Element>>& entries,
                                                    const typename A::Element& avoid, const RsOptions& opt) {
  using E = typename A::Element;
  if (alg.equal(avoid, alg.one())) throw PreconditionError("the avoided element must not be 1");
  UltrafilterApprox<E> out;
  out.avoided = avoid;
  E b = alg.complement(avoid);
  out.chain.push_back(b);

  auto push = [&](E next) {
    b = std::move(next);
    out.chain.push_back(b);
  };

  std::uint64_t next_element = 0;
  auto total = alg.size();
  auto decide_next = [&]() {
    if (next_element >= opt.steps || (total && next_element >= *total)) return false;
    E e = alg.element(next_element++);
    E with = alg.meet(b, e);
    bool in = !is_zero(alg, with);
    push(in ? with : alg.meet(b, alg.complement(e)));
    out.decisions.emplace_back(std::move(e), in);
    return true;
  };

  for (const auto& entry : entries) {
    EntryStep step;
    step.label = entry.label;
    bool join = entry.kind == EntryKind::join;
    E side = join ? alg.meet(b, alg.complement(entry.bound)) : alg.meet(b, entry.bound);
    if (!is_zero(alg, side)) {
      step.bound_branch = true;
      push(side);
    } else {
      // b lies under ⋁S (or under (⋀S)* = ⋁ s*), so some member meets it.
      std::uint64_t limit = entry.finite() ? *entry.count : opt.witness_budget;
      bool found = false;
      for (std::uint64_t i = 0; i < limit && i < opt.witness_budget; ++i) {
        auto s = entry.member(i);
        if (!s) break;
        ++step.inspected;
        if (entry.trusted) {
          bool bounded = join ? leq(alg, *s, entry.bound) : leq(alg, entry.bound, *s);
          if (!bounded) {
            throw PreconditionError("claimed bound refuted: member " + std::to_string(i) + " of entry '" +
                                    entry.label + "' violates it");
          }
        }
        E candidate = join ? alg.meet(b, *s) : alg.meet(b, alg.complement(*s));
        if (!is_zero(alg, candidate)) {
          step.witness = i;
          push(candidate);
          found = true;
          break;
        }
      }
      if (!found) {
        if (entry.finite() && step.inspected == *entry.count) {
          throw PreconditionError("claimed bound refuted: no member of entry '" + entry.label +
                                  "' meets the chain although the bound requires one");
        }
        throw FeasibilityError("enumeration budget exhausted while searching a witness for entry '" + entry.label +
                               "'");
      }
    }
    out.entries.push_back(std::move(step));
    decide_next();
  }
  while (decide_next()) {
  }
  return out;
}

// e ∈ U iff b_T ≤ e.
template <BooleanAlgebra A>
Membership<typename A::Element> membership_of(const A& alg, const UltrafilterApprox<typename A::Element>& u) {
  auto last = u.last();
  Membership<typename A::Element> m;
  m.contains = [alg, last](const typename A::Element& e) { return leq(alg, last, e); };
  return m;
}

// --- built-in carriers and entry generators ------------------------------

// "powerset:n" (n ≤ 5), "free:g" (g ≤ 16), "fincof".
enum class AlgebraKind : std::uint8_t { powerset, free, fincof };
struct AlgebraSpec {
  AlgebraKind kind = AlgebraKind::powerset;
  std::uint32_t size = 0;
};
AlgebraSpec parse_algebra_spec(const std::string& spec);

// Entries {atom n} with join 1 in the finite-cofinite algebra.
RegularEntry<FinCofElement> fincof_atoms_entry();
// U = cofinite sets; decides join entries made of finite sets.
Membership<FinCofElement> cofinite_ultrafilter();
// U = sets containing n.
Membership<FinCofElement> principal_fincof(std::uint64_t n);

// All subsets of a finite algebra's carrier, each as a join and a meet entry
// with the true bound (2 * 2^|B| entries).
template <BooleanAlgebra A>
std::vector<RegularEntry<typename A::Element>> complete_regular_family(const A& alg) {
  using E = typename A::Element;
  auto n = alg.size();
  if (!n || *n > 16) throw FeasibilityError("complete regular family needs a carrier of at most 16 elements");
  std::vector<E> carrier;
  for (std::uint64_t i = 0; i < *n; ++i) carrier.push_back(alg.element(i));
  std::vector<RegularEntry<E>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << *n); ++mask) {
    std::vector<E> members;
    E j = alg.zero();
    E m = alg.one();
    for (std::uint64_t i = 0; i < *n; ++i) {
      if ((mask >> i) & 1) {
        members.push_back(carrier[i]);
        j = alg.join(j, carrier[i]);
        m = alg.meet(m, carrier[i]);
      }
    }
    out.push_back(finite_entry(EntryKind::join, members, j, "join#" + std::to_string(mask)));
    out.push_back(finite_entry(EntryKind::meet, members, m, "meet#" + std::to_string(mask)));
  }
  return out;
}

// Family file: one entry per line, `join|meet : <bound> : <members>` where
// members are `[e1, e2, ...]` or a generator: `atoms` (every atom / singleton
// {n}) or `all` (the whole carrier of a finite algebra). A line holding only
// `complete` adds the complete regular family. `#` starts a comment.
template <BooleanAlgebra A>
std::vector<RegularEntry<typename A::Element>> parse_family(const A& alg, const std::string& text);

}  // namespace rsol

#include "rsol/detail/boolean_family.hpp"
