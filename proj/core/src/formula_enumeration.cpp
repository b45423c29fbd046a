#include "rsol/formula_enumeration.hpp"

#include <algorithm>

#include "rsol/substitution.hpp"

namespace rsol {

FormulaEnumerator::FormulaEnumerator(Signature sig) : sig_(std::move(sig)) { sig_.validate(); }

namespace {

// All ways to split `total` into `parts` positive summands.
void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& cur,
                  std::vector<std::vector<std::size_t>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  if (total < parts) return;
  for (std::size_t first = 1; first + (parts - 1) <= total; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  compositions(total, parts, cur, out);
  return out;
}

template <typename Emit>
void for_each_tuple(const std::vector<const std::vector<Term>*>& pools, Emit emit) {
  for (auto* p : pools) {
    if (p->empty()) return;
  }
  std::vector<std::size_t> idx(pools.size(), 0);
  while (true) {
    std::vector<Term> args;
    args.reserve(pools.size());
    for (std::size_t a = 0; a < pools.size(); ++a) args.push_back((*pools[a])[idx[a]]);
    emit(std::move(args));
    std::size_t a = pools.size();
    while (true) {
      if (a == 0) return;
      --a;
      if (++idx[a] < pools[a]->size()) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

const std::vector<Term>& FormulaEnumerator::terms(std::size_t size, std::uint32_t scope) {
  auto key = std::make_pair(size, scope);
  if (auto it = terms_.find(key); it != terms_.end()) return it->second;
  std::vector<Term> out;
  if (size == 1) {
    for (std::uint32_t i = 0; i < scope; ++i) out.push_back(Term::variable(i));
    for (std::uint32_t c = 0; c < sig_.constant_count; ++c) out.push_back(Term::constant(c));
  } else if (size > 1) {
    for (std::uint32_t fn = 0; fn < sig_.function_arities.size(); ++fn) {
      std::uint32_t arity = sig_.function_arities[fn];
      for (const auto& split : compositions(size - 1, arity)) {
        std::vector<const std::vector<Term>*> pools;
        for (std::size_t s : split) pools.push_back(&terms(s, scope));
        for_each_tuple(pools, [&](std::vector<Term> args) { out.push_back(Term::apply(fn, std::move(args))); });
      }
    }
  }
  return terms_.emplace(key, std::move(out)).first->second;
}

const std::vector<Formula>& FormulaEnumerator::formulas(std::size_t size, std::uint32_t scope) {
  auto key = std::make_pair(size, scope);
  if (auto it = formulas_.find(key); it != formulas_.end()) return it->second;
  std::vector<Formula> out;
  if (size >= 2) {
    for (std::uint32_t p = 0; p < sig_.predicate_arities.size(); ++p) {
      for (const auto& split : compositions(size - 1, sig_.predicate_arities[p])) {
        std::vector<const std::vector<Term>*> pools;
        for (std::size_t s : split) pools.push_back(&terms(s, scope));
        for_each_tuple(pools, [&](std::vector<Term> args) { out.push_back(Formula::predicate(p, std::move(args))); });
      }
    }
    if (sig_.identity) {
      for (const auto& split : compositions(size - 1, 2)) {
        std::vector<const std::vector<Term>*> pools{&terms(split[0], scope), &terms(split[1], scope)};
        for_each_tuple(pools, [&](std::vector<Term> args) { out.push_back(Formula::equal(args[0], args[1])); });
      }
    }
    for (const auto& f : formulas(size - 1, scope)) out.push_back(Formula::negation(f));
    for (std::size_t ls = 1; ls + 2 <= size; ++ls) {
      const auto& lhs = formulas(ls, scope);
      const auto& rhs = formulas(size - 1 - ls, scope);
      for (const auto& a : lhs) {
        for (const auto& b : rhs) out.push_back(Formula::conjunction(a, b));
      }
    }
    for (const auto& body : formulas(size - 1, scope + 1)) {
      out.push_back(Formula::forall(Variable::individual(scope), body));
    }
  }
  return formulas_.emplace(key, std::move(out)).first->second;
}

std::vector<Formula> FormulaEnumerator::with_free_prefix(std::size_t size, std::uint32_t free) {
  std::vector<Formula> out;
  for (const auto& f : formulas(size, free)) {
    if (free_variables(f).individuals.size() == free) out.push_back(f);
  }
  return out;
}

namespace {

struct Levels {
  std::uint32_t s = 0;
  std::uint32_t p = 0;
};

Levels levels(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::negation: {
      Levels l = levels(f.left());
      return {l.p, l.s};
    }
    case K::conjunction: {
      Levels a = levels(f.left());
      Levels b = levels(f.right());
      return {std::max(a.s, b.s), std::max(a.p, b.p)};
    }
    case K::forall: {
      Levels l = levels(f.left());
      std::uint32_t p = std::min(std::max<std::uint32_t>(1, l.p), l.s + 1);
      return {p + 1, p};
    }
    default:
      return {};
  }
}

struct Prefixed {
  std::vector<std::pair<bool, Variable>> prefix;  // true = universal
  Formula matrix;
};

Prefixed pull(const Formula& f) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::negation: {
      Prefixed inner = pull(f.left());
      for (auto& q : inner.prefix) q.first = !q.first;
      inner.matrix = Formula::negation(inner.matrix);
      return inner;
    }
    case K::conjunction: {
      Prefixed a = pull(f.left());
      Prefixed b = pull(f.right());
      a.prefix.insert(a.prefix.end(), b.prefix.begin(), b.prefix.end());
      a.matrix = Formula::conjunction(a.matrix, b.matrix);
      return a;
    }
    case K::forall: {
      Prefixed inner = pull(f.left());
      inner.prefix.insert(inner.prefix.begin(), {true, f.var()});
      return inner;
    }
    default:
      return {{}, f};
  }
}

// Renames every binder to a distinct fresh variable.
Formula rename_apart(const Formula& f, FreshSupply& supply) {
  using K = FormulaKind;
  switch (f.kind()) {
    case K::negation: return Formula::negation(rename_apart(f.left(), supply));
    case K::conjunction: return Formula::conjunction(rename_apart(f.left(), supply), rename_apart(f.right(), supply));
    case K::forall: {
      Variable fresh = supply.fresh_like(f.var());
      Substitution s;
      if (f.var().is_individual()) {
        s.individuals.emplace(f.var(), Term::variable(fresh));
      } else if (f.var().is_relation()) {
        s.relations.emplace(f.var(), fresh);
      } else {
        s.blocks.emplace(f.var(), fresh);
      }
      Formula body = apply_substitution(f.left(), s).formula;
      return Formula::forall(fresh, rename_apart(body, supply));
    }
    default:
      return f;
  }
}

}  // namespace

PrefixClass classify_prefix(const Formula& f) {
  Levels l = levels(normalize(f));
  return {l.s, l.p};
}

std::string to_string(const PrefixClass& c) {
  if (c.exists_level == c.forall_level) {
    return "\xE2\x88\x83" + std::to_string(c.exists_level) + " \xE2\x88\x80" + std::to_string(c.forall_level);
  }
  if (c.exists_level < c.forall_level) return "\xE2\x88\x83" + std::to_string(c.exists_level);
  return "\xE2\x88\x80" + std::to_string(c.forall_level);
}

Formula prenex(const Formula& f) {
  Formula n = normalize(f);
  FreshSupply supply;
  supply.observe(n);
  Prefixed p = pull(rename_apart(n, supply));
  Formula out = p.matrix;
  for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it) {
    out = it->first ? Formula::forall(it->second, out) : Formula::exists(it->second, out);
  }
  return out;
}

}  // namespace rsol
