#include "rsol/definability.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "rsol/error.hpp"
#include "rsol/leibniz.hpp"

namespace rsol {

std::string to_string(const Provenance& p) {
  switch (p.source) {
    case Provenance::Source::orbit_oracle: return "orbit-oracle";
    case Provenance::Source::closed_form: return "closed-form";
    case Provenance::Source::rank_types: return "rank-types";
    case Provenance::Source::theta: break;
  }
  std::ostringstream out;
  out << "theta[" << p.theta_index << "](";
  for (std::size_t i = 0; i < p.params.size(); ++i) out << (i ? "," : "") << p.params[i];
  out << ')';
  return out.str();
}

namespace {

bool relation_less(const DefinedRelation& a, const DefinedRelation& b) { return a.relation < b.relation; }

}  // namespace

const DefinedRelation* DefinableFamily::find(const Relation& r) const {
  auto it = by_arity.find(r.arity());
  if (it == by_arity.end()) return nullptr;
  DefinedRelation probe{r, {}};
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), probe, relation_less);
  if (pos == it->second.end() || pos->relation != r) return nullptr;
  return &*pos;
}

bool DefinableFamily::contains(const Relation& r) const { return find(r) != nullptr; }

std::size_t DefinableFamily::size(std::uint32_t arity) const {
  auto it = by_arity.find(arity);
  return it == by_arity.end() ? 0 : it->second.size();
}

std::vector<Relation> DefinableFamily::relations(std::uint32_t arity) const {
  std::vector<Relation> out;
  if (auto it = by_arity.find(arity); it != by_arity.end()) {
    for (const auto& d : it->second) out.push_back(d.relation);
  }
  return out;
}

bool DefinableFamily::includes(const DefinableFamily& other) const {
  for (const auto& [k, rs] : other.by_arity) {
    for (const auto& d : rs) {
      if (!contains(d.relation)) return false;
    }
  }
  return true;
}

namespace {

constexpr double kMaxParamTuples = 1e7;

// Inserts while keeping the first witness; sorts at the end.
class FamilyBuilder {
 public:
  void add(const Relation& r, const Provenance& p) {
    if (seen_.emplace(r.bits(), true).second) items_.push_back({r, p});
  }

  void finish(DefinableFamily& fam, std::uint32_t arity) {
    std::sort(items_.begin(), items_.end(), relation_less);
    fam.by_arity[arity] = std::move(items_);
  }

 private:
  std::map<boost::dynamic_bitset<>, bool> seen_;
  std::vector<DefinedRelation> items_;
};

template <typename F>
void for_each_tuple(std::uint32_t domain, std::uint32_t len, F f) {
  Tuple t(len, 0);
  while (true) {
    f(t);
    std::uint32_t i = len;
    while (true) {
      if (i == 0) return;
      --i;
      if (++t[i] < domain) break;
      t[i] = 0;
    }
  }
}

void require_family_size(std::size_t blocks) {
  if (blocks > 20) {
    throw FeasibilityError("definable family would have 2^" + std::to_string(blocks) + " relations (limit 2^20)");
  }
}

}  // namespace

DefinableFamily materialize_k(const FiniteStructure& s, const ThetaFamily& fam, std::uint64_t bound,
                              std::uint32_t arity) {
  DefinableFamily out;
  FamilyBuilder builder;
  if (fam.supports_arity(arity)) {
    for (std::uint64_t n = 0; n <= bound; ++n) {
      ThetaMember m = fam.at(arity, n);
      double tuples = std::pow(static_cast<double>(s.domain_size), static_cast<double>(m.params.size()));
      if (tuples > kMaxParamTuples) {
        throw FeasibilityError("theta member " + std::to_string(n) + " has " + std::to_string(m.params.size()) +
                               " parameters: more than 10^7 parameter tuples");
      }
      auto p = static_cast<std::uint32_t>(m.params.size());
      for_each_tuple(s.domain_size, p, [&](const Tuple& e) {
        builder.add(define_relation(s, m, e), {Provenance::Source::theta, n, e});
      });
    }
  }
  builder.finish(out, arity);
  return out;
}

std::vector<std::vector<Element>> automorphisms(const FiniteStructure& s) {
  if (s.domain_size > 8) throw FeasibilityError("automorphism search limited to |A| <= 8");
  std::vector<Element> perm(s.domain_size);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Element>> out;
  do {
    bool ok = true;
    for (Element c : s.constants) ok = ok && perm[c] == c;
    for (std::size_t p = 0; ok && p < s.predicates.size(); ++p) ok = s.predicates[p].permuted(perm) == s.predicates[p];
    for (std::size_t f = 0; ok && f < s.functions.size(); ++f) {
      std::uint32_t arity = s.sig.function_arities[f];
      Relation shape(arity, s.domain_size);
      for (std::size_t idx = 0; ok && idx < shape.tuple_count(); ++idx) {
        Tuple args = shape.decode(idx);
        Tuple image(arity);
        for (std::uint32_t i = 0; i < arity; ++i) image[i] = perm[args[i]];
        ok = s.apply(static_cast<std::uint32_t>(f), image) == perm[s.functions[f][idx]];
      }
    }
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Relation> orbits(const FiniteStructure& s, std::uint32_t arity) {
  auto group = automorphisms(s);
  Relation shape(arity, s.domain_size);
  std::vector<std::int64_t> orbit_of(shape.tuple_count(), -1);
  std::vector<Relation> out;
  for (std::size_t idx = 0; idx < shape.tuple_count(); ++idx) {
    if (orbit_of[idx] >= 0) continue;
    Relation orbit(arity, s.domain_size);
    Tuple t = shape.decode(idx);
    Tuple image(arity);
    for (const auto& g : group) {
      for (std::uint32_t i = 0; i < arity; ++i) image[i] = g[t[i]];
      std::size_t j = shape.encode(image);
      orbit.set_index(j);
      orbit_of[j] = static_cast<std::int64_t>(out.size());
    }
    out.push_back(std::move(orbit));
  }
  return out;
}

std::vector<Relation> unions_of(const std::vector<Relation>& blocks) {
  require_family_size(blocks.size());
  if (blocks.empty()) return {};
  std::vector<Relation> out;
  out.reserve(std::size_t{1} << blocks.size());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << blocks.size()); ++mask) {
    Relation r(blocks[0].arity(), blocks[0].domain());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if ((mask >> b) & 1) r.bits() |= blocks[b].bits();
    }
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

DefinableFamily family_of(std::vector<Relation> rels, std::uint32_t arity, Provenance::Source source) {
  DefinableFamily out;
  std::sort(rels.begin(), rels.end());
  auto& list = out.by_arity[arity];
  list.reserve(rels.size());
  for (auto& r : rels) list.push_back({std::move(r), {source, 0, {}}});
  return out;
}

// Blocks of A^k induced by an element partition: products of element classes.
std::vector<Relation> product_blocks(const std::vector<Element>& block_of, std::uint32_t arity,
                                     std::uint32_t domain) {
  Relation shape(arity, domain);
  std::map<Tuple, std::size_t> index;
  std::vector<Relation> out;
  for (std::size_t idx = 0; idx < shape.tuple_count(); ++idx) {
    Tuple t = shape.decode(idx);
    for (auto& e : t) e = block_of[e];
    auto [it, fresh] = index.emplace(t, out.size());
    if (fresh) out.emplace_back(arity, domain);
    out[it->second].set_index(idx);
  }
  return out;
}

}  // namespace

DefinableFamily k_exact_orbits(const FiniteStructure& s, bool with_parameters, std::uint32_t arity) {
  if (arity == 0) throw PreconditionError("relations have arity at least 1");
  if (!with_parameters) {
    if (!s.sig.identity) {
      throw PreconditionError("the parameter-free orbit oracle is exact only for signatures with identity");
    }
    auto blocks = orbits(s, arity);
    return family_of(unions_of(blocks), arity, Provenance::Source::orbit_oracle);
  }
  std::vector<Relation> blocks;
  if (s.sig.identity) {
    Relation shape(arity, s.domain_size);
    for (std::size_t idx = 0; idx < shape.tuple_count(); ++idx) {
      Relation single(arity, s.domain_size);
      single.set_index(idx);
      blocks.push_back(std::move(single));
    }
  } else {
    bool stable = false;
    auto classes = leibniz_partition(s, s.domain_size + 1, nullptr, &stable);
    blocks = product_blocks(classes, arity, s.domain_size);
  }
  return family_of(unions_of(blocks), arity, Provenance::Source::orbit_oracle);
}

namespace {

// Atomic type of a tuple: the isomorphism type of the substructure it
// generates together with the constants, with the tuple positions marked.
std::vector<std::uint32_t> atomic_type(const FiniteStructure& s, const Tuple& t) {
  std::vector<std::uint32_t> sig;
  if (!s.sig.identity) {
    if (!s.functions.empty()) {
      throw PreconditionError("rank types without identity are supported for relational signatures only");
    }
    // Only predicate facts over the named terms (positions and constants).
    Tuple named = t;
    named.insert(named.end(), s.constants.begin(), s.constants.end());
    for (const auto& p : s.predicates) {
      for_each_tuple(static_cast<std::uint32_t>(named.size()), p.arity(), [&](const Tuple& pos) {
        Tuple args(pos.size());
        for (std::size_t i = 0; i < pos.size(); ++i) args[i] = named[pos[i]];
        sig.push_back(p.contains(args));
      });
    }
    return sig;
  }
  std::vector<Element> gen;
  std::vector<std::int32_t> id(s.domain_size, -1);
  auto add = [&](Element e) {
    if (id[e] < 0) {
      id[e] = static_cast<std::int32_t>(gen.size());
      gen.push_back(e);
    }
    return static_cast<std::uint32_t>(id[e]);
  };
  for (Element e : t) sig.push_back(add(e));
  for (Element c : s.constants) sig.push_back(add(c));
  // Close under the functions; argument tuples are visited in a fixed order
  // over canonical ids, so the numbering is canonical.
  std::size_t closed = 0;
  while (closed < gen.size()) {
    std::size_t limit = gen.size();
    for (std::size_t f = 0; f < s.functions.size(); ++f) {
      std::uint32_t arity = s.sig.function_arities[f];
      for_each_tuple(static_cast<std::uint32_t>(limit), arity, [&](const Tuple& pos) {
        bool uses_new = std::any_of(pos.begin(), pos.end(), [&](Element p) { return p >= closed; });
        if (!uses_new) return;
        Tuple args(arity);
        for (std::uint32_t i = 0; i < arity; ++i) args[i] = gen[pos[i]];
        add(s.apply(static_cast<std::uint32_t>(f), args));
      });
    }
    closed = limit;
  }
  auto m = static_cast<std::uint32_t>(gen.size());
  sig.push_back(m);
  for (std::size_t f = 0; f < s.functions.size(); ++f) {
    for_each_tuple(m, s.sig.function_arities[f], [&](const Tuple& pos) {
      Tuple args(pos.size());
      for (std::size_t i = 0; i < pos.size(); ++i) args[i] = gen[pos[i]];
      sig.push_back(static_cast<std::uint32_t>(id[s.apply(static_cast<std::uint32_t>(f), args)]));
    });
  }
  for (const auto& p : s.predicates) {
    for_each_tuple(m, p.arity(), [&](const Tuple& pos) {
      Tuple args(pos.size());
      for (std::size_t i = 0; i < pos.size(); ++i) args[i] = gen[pos[i]];
      sig.push_back(p.contains(args));
    });
  }
  return sig;
}

std::vector<std::uint32_t> intern(std::vector<std::vector<std::uint32_t>>& keys) {
  std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
  std::vector<std::uint32_t> out(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    auto [it, fresh] = ids.emplace(std::move(keys[i]), static_cast<std::uint32_t>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> rank_types(const FiniteStructure& s, std::uint32_t rank, std::uint32_t arity) {
  const std::uint32_t n = s.domain_size;
  std::uint32_t top = arity + rank;
  double space = std::pow(static_cast<double>(n), static_cast<double>(top));
  if (space > 1e7) throw FeasibilityError("rank-type refinement over A^" + std::to_string(top) + " is too large");

  Relation shape(top, n);
  std::vector<std::vector<std::uint32_t>> keys(shape.tuple_count());
  for (std::size_t idx = 0; idx < keys.size(); ++idx) keys[idx] = atomic_type(s, shape.decode(idx));
  std::vector<std::uint32_t> types = intern(keys);

  for (std::uint32_t len = top; len > arity; --len) {
    // Tuples of length len-1 index the prefixes; extension by b appends b.
    std::size_t count = types.size() / n;
    Relation prefix_shape(len - 1, n);
    std::vector<std::vector<std::uint32_t>> next(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::vector<std::uint32_t> ext;
      ext.reserve(n);
      for (Element b = 0; b < n; ++b) ext.push_back(types[idx * n + b]);
      std::sort(ext.begin(), ext.end());
      ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
      std::vector<std::uint32_t> key = atomic_type(s, prefix_shape.decode(idx));
      key.push_back(~0u);
      key.insert(key.end(), ext.begin(), ext.end());
      next[idx] = std::move(key);
    }
    types = intern(next);
  }
  return types;
}

DefinableFamily rank_definable(const FiniteStructure& s, std::uint32_t rank, std::uint32_t arity) {
  auto types = rank_types(s, rank, arity);
  std::uint32_t classes = 0;
  for (auto t : types) classes = std::max(classes, t + 1);
  std::vector<Relation> blocks(classes, Relation(arity, s.domain_size));
  for (std::size_t idx = 0; idx < types.size(); ++idx) blocks[types[idx]].set_index(idx);
  return family_of(unions_of(blocks), arity, Provenance::Source::rank_types);
}

namespace {

class LazyProvider final : public KProvider {
 public:
  using Compute = std::function<std::vector<Relation>(std::uint32_t)>;
  LazyProvider(Compute compute, std::string description)
      : compute_(std::move(compute)), description_(std::move(description)) {}

  const std::vector<Relation>& relations(std::uint32_t arity) const override {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(arity);
    if (it == cache_.end()) it = cache_.emplace(arity, compute_(arity)).first;
    return it->second;
  }

  std::string describe() const override { return description_; }

 private:
  Compute compute_;
  std::string description_;
  mutable std::mutex mutex_;
  mutable std::map<std::uint32_t, std::vector<Relation>> cache_;
};

}  // namespace

KProviderPtr bounded_provider(const FiniteStructure& s, ThetaFamilyPtr fam, std::uint64_t bound) {
  std::string desc = fam->name() + " bound " + std::to_string(bound);
  return std::make_shared<LazyProvider>(
      [s, fam, bound](std::uint32_t k) { return materialize_k(s, *fam, bound, k).relations(k); }, desc);
}

KProviderPtr orbit_provider(const FiniteStructure& s, bool with_parameters) {
  return std::make_shared<LazyProvider>(
      [s, with_parameters](std::uint32_t k) { return k_exact_orbits(s, with_parameters, k).relations(k); },
      with_parameters ? "orbit oracle with parameters" : "orbit oracle");
}

KProviderPtr rank_provider(const FiniteStructure& s, std::uint32_t rank) {
  return std::make_shared<LazyProvider>(
      [s, rank](std::uint32_t k) { return rank_definable(s, rank, k).relations(k); },
      "rank-" + std::to_string(rank) + " types");
}

KProviderPtr explicit_provider(DefinableFamily fam, std::string description) {
  auto shared = std::make_shared<DefinableFamily>(std::move(fam));
  return std::make_shared<LazyProvider>([shared](std::uint32_t k) { return shared->relations(k); },
                                        std::move(description));
}

KProviderPtr exact_provider(const FiniteStructure& s, const ThetaFamily& fam) {
  switch (fam.kind()) {
    case ThetaKind::weak_so: {
      auto supports = [&fam](std::uint32_t k) { return fam.supports_arity(k); };
      std::vector<bool> ok(33);
      for (std::uint32_t k = 1; k < ok.size(); ++k) ok[k] = supports(k);
      std::uint32_t n = s.domain_size;
      return std::make_shared<LazyProvider>(
          [ok, n](std::uint32_t k) {
            std::vector<Relation> out;
            if (k >= ok.size() || !ok[k]) return out;
            Relation shape(k, n);
            std::vector<Relation> singles;
            for (std::size_t i = 0; i < shape.tuple_count(); ++i) {
              Relation r(k, n);
              r.set_index(i);
              singles.push_back(std::move(r));
            }
            out = unions_of(singles);
            out.erase(std::remove_if(out.begin(), out.end(), [](const Relation& r) { return r.empty(); }), out.end());
            return out;
          },
          fam.name() + " closed form (nonempty relations)");
    }
    case ThetaKind::dsl: {
      auto inner = orbit_provider(s, false);
      return std::make_shared<LazyProvider>(
          [inner](std::uint32_t k) { return k == 1 ? inner->relations(1) : std::vector<Relation>{}; },
          "dsl orbit oracle");
    }
    case ThetaKind::all_fo:
    case ThetaKind::exists_n:
    case ThetaKind::forall_n:
      return orbit_provider(s, true);
    case ThetaKind::custom:
      break;
  }
  throw PreconditionError("no exact oracle for theta family " + fam.name());
}

StandardModel make_model(const FiniteStructure& s, KProviderPtr k) { return StandardModel{s, std::move(k)}; }

}  // namespace rsol
