#include "rsol/leibniz.hpp"

#include <map>

#include "rsol/error.hpp"

namespace rsol {

namespace {

// Renumbers class labels by least member.
std::vector<Element> canonical_labels(const std::vector<std::vector<std::uint32_t>>& keys) {
  std::map<std::vector<std::uint32_t>, Element> ids;
  std::vector<Element> out(keys.size());
  for (std::size_t a = 0; a < keys.size(); ++a) {
    auto [it, fresh] = ids.emplace(keys[a], static_cast<Element>(ids.size()));
    out[a] = it->second;
  }
  return out;
}

// Enumerates every tuple of length `len` over the domain.
template <typename F>
void for_each_tuple(std::uint32_t domain, std::uint32_t len, F f) {
  Tuple t(len, 0);
  while (true) {
    f(t);
    std::uint32_t i = len;
    while (i > 0) {
      --i;
      if (++t[i] < domain) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (len == 0) return;
  }
}

}  // namespace

std::vector<Element> leibniz_partition(const FiniteStructure& s, std::uint32_t depth, std::uint32_t* rounds,
                                       bool* stabilized) {
  const std::uint32_t n = s.domain_size;
  // Atomic contexts: P(c̄[i := a]) for every predicate, position and c̄.
  std::vector<std::vector<std::uint32_t>> keys(n);
  for (std::size_t p = 0; p < s.predicates.size(); ++p) {
    const Relation& r = s.predicates[p];
    for (std::uint32_t pos = 0; pos < r.arity(); ++pos) {
      for_each_tuple(n, r.arity(), [&](Tuple c) {
        if (c[pos] != 0) return;
        for (Element a = 0; a < n; ++a) {
          c[pos] = a;
          keys[a].push_back(r.contains(c) ? 1u : 0u);
        }
      });
    }
  }
  // Constants are named, so without identity they still cannot be told
  // apart from look-alikes; they add no separation by themselves.
  std::vector<Element> labels = canonical_labels(keys);

  std::uint32_t done = 0;
  bool stable = s.functions.empty();
  while (!stable && done < depth) {
    std::vector<std::vector<std::uint32_t>> next(n);
    for (Element a = 0; a < n; ++a) next[a].push_back(labels[a]);
    for (std::size_t f = 0; f < s.functions.size(); ++f) {
      std::uint32_t arity = s.sig.function_arities[f];
      for (std::uint32_t pos = 0; pos < arity; ++pos) {
        for_each_tuple(n, arity, [&](Tuple c) {
          if (c[pos] != 0) return;
          for (Element a = 0; a < n; ++a) {
            c[pos] = a;
            next[a].push_back(labels[s.apply(static_cast<std::uint32_t>(f), c)]);
          }
        });
      }
    }
    std::vector<Element> refined = canonical_labels(next);
    ++done;
    if (refined == labels) stable = true;
    labels = std::move(refined);
  }
  if (rounds) *rounds = done;
  if (stabilized) *stabilized = stable;
  return labels;
}

LeibnizResult leibniz_reduce(const FiniteStructure& s, std::uint32_t depth) {
  LeibnizResult out;
  out.block_of = leibniz_partition(s, depth, &out.rounds, &out.stabilized);
  Element blocks = 0;
  for (Element b : out.block_of) blocks = std::max(blocks, b + 1);

  // Representative of each block: its least member (labels are assigned in
  // order of least member, so block ids already follow that numbering).
  std::vector<Element> rep(blocks, 0);
  std::vector<bool> seen(blocks, false);
  for (Element a = 0; a < s.domain_size; ++a) {
    if (!seen[out.block_of[a]]) {
      seen[out.block_of[a]] = true;
      rep[out.block_of[a]] = a;
    }
  }

  FiniteStructure q = FiniteStructure::blank(s.sig, blocks);
  for (std::size_t p = 0; p < s.predicates.size(); ++p) {
    for (const auto& t : s.predicates[p].tuples()) {
      Tuple img(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) img[i] = out.block_of[t[i]];
      q.predicates[p].insert(img);
    }
  }
  for (std::size_t f = 0; f < s.functions.size(); ++f) {
    std::uint32_t arity = s.sig.function_arities[f];
    for_each_tuple(blocks, arity, [&](const Tuple& bt) {
      Tuple args(arity);
      for (std::uint32_t i = 0; i < arity; ++i) args[i] = rep[bt[i]];
      std::size_t idx = 0;
      for (Element b : bt) idx = idx * blocks + b;
      q.functions[f][idx] = out.block_of[s.apply(static_cast<std::uint32_t>(f), args)];
    });
  }
  for (std::size_t c = 0; c < s.constants.size(); ++c) q.constants[c] = out.block_of[s.constants[c]];
  out.quotient = std::move(q);
  return out;
}

}  // namespace rsol
