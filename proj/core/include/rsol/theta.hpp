#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rsol/formula.hpp"
#include "rsol/substitution.hpp"

namespace rsol {

// θ^{k}_n(x̄, ȳ): a first-order formula with designated slot variables x̄
// (the arity) and parameter variables ȳ. Free variables are exactly x̄ ∪ ȳ.
struct ThetaMember {
  std::uint64_t index = 0;
  Formula formula;
  std::vector<Variable> slots;
  std::vector<Variable> params;

  std::uint32_t arity() const { return static_cast<std::uint32_t>(slots.size()); }
};

// Throws PreconditionError when the free-variable invariant fails.
void validate_member(const ThetaMember& m);

enum class ThetaKind : std::uint8_t { weak_so, dsl, all_fo, exists_n, forall_n, custom };

// A countable family enumerated separately for every supported arity.
// Enumeration is deterministic and total; results are cached internally, so
// a family may be shared between threads.
class ThetaFamily {
 public:
  virtual ~ThetaFamily() = default;

  virtual ThetaKind kind() const = 0;
  // Canonical spec string, e.g. "weak-so:1" or "exists-n:2".
  virtual std::string name() const = 0;
  virtual bool supports_arity(std::uint32_t arity) const = 0;
  // Throws PreconditionError for unsupported arities.
  virtual ThetaMember at(std::uint32_t arity, std::uint64_t n) const = 0;
  // Membership test for a candidate member; nullopt when undecided.
  virtual std::optional<bool> admits(const ThetaMember& candidate) const;
  // True when no member of any arity has parameters.
  virtual bool parameter_free() const { return false; }
  // Arity used when a caller does not name one: the least supported arity.
  virtual std::uint32_t default_arity() const { return 1; }

  const Signature& signature() const { return sig_; }

  std::vector<ThetaMember> enumerate_up_to(std::uint32_t arity, std::uint64_t n) const;

 protected:
  explicit ThetaFamily(Signature sig) : sig_(std::move(sig)) {}
  Signature sig_;
};

using ThetaFamilyPtr = std::shared_ptr<const ThetaFamily>;

// ⋁_{i≤n} (x_1 = y_{i,1} ∧ … ∧ x_k = y_{i,k}). With `arity` = 0 every arity
// is supported; otherwise only the given one.
ThetaFamilyPtr make_weak_so(const Signature& sig, std::uint32_t arity = 1);
// Parameter-free formulas in exactly one free variable (arity 1 only).
ThetaFamilyPtr make_dsl(const Signature& sig);
// Every first-order formula; slot and parameter split by variable order.
ThetaFamilyPtr make_all_fo(const Signature& sig);
// The members of all_fo in ∃_n (∀_n) after prenexing.
ThetaFamilyPtr make_exists_n(const Signature& sig, std::uint32_t level);
ThetaFamilyPtr make_forall_n(const Signature& sig, std::uint32_t level);
// Explicit finite list, repeated cyclically: member n of arity k is
// members_k[n mod |members_k|].
ThetaFamilyPtr make_custom(const Signature& sig, std::string name, std::vector<ThetaMember> members);

// Custom family text: one member per line, `<slots> ; <params> ; <formula>`,
// e.g. `x0 ; x1 ; P0(x0) & x0 = x1`. Blank lines and `#` comments skipped.
ThetaFamilyPtr parse_custom_family(const std::string& text, const Signature& sig, std::string name = "custom");

// "weak-so", "weak-so:k", "weak-so:*", "dsl", "all-fo", "exists-n:<n>",
// "forall-n:<n>", "custom:<path>".
ThetaFamilyPtr parse_theta_spec(const std::string& spec, const Signature& sig);

}  // namespace rsol
