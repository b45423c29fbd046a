#include "rsol/theta.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "rsol/error.hpp"
#include "rsol/formula_enumeration.hpp"
#include "rsol/parser.hpp"

namespace rsol {

void validate_member(const ThetaMember& m) {
  if (m.slots.empty()) throw PreconditionError("theta member needs at least one slot variable");
  if (!is_first_order(m.formula)) throw PreconditionError("theta member must be first-order");
  std::set<Variable> declared;
  for (const auto& v : m.slots) {
    if (!v.is_individual() || !declared.insert(v).second) {
      throw PreconditionError("slot variables must be distinct first-order variables");
    }
  }
  for (const auto& v : m.params) {
    if (!v.is_individual() || !declared.insert(v).second) {
      throw PreconditionError("parameter variables must be distinct and disjoint from the slots");
    }
  }
  FreeVariables fv = free_variables(m.formula);
  if (fv.individuals != declared) {
    throw PreconditionError("free variables of theta member " + std::to_string(m.index) +
                            " differ from its declared slots and parameters");
  }
}

std::optional<bool> ThetaFamily::admits(const ThetaMember&) const { return std::nullopt; }

std::vector<ThetaMember> ThetaFamily::enumerate_up_to(std::uint32_t arity, std::uint64_t n) const {
  std::vector<ThetaMember> out;
  out.reserve(n + 1);
  for (std::uint64_t i = 0; i <= n; ++i) out.push_back(at(arity, i));
  return out;
}

namespace {

std::vector<Variable> individuals(std::uint32_t first, std::uint32_t count) {
  std::vector<Variable> out;
  out.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) out.push_back(Variable::individual(first + i));
  return out;
}

void require_arity(const ThetaFamily& fam, std::uint32_t arity) {
  if (!fam.supports_arity(arity)) {
    throw PreconditionError("theta family " + fam.name() + " has no members of arity " + std::to_string(arity));
  }
}

bool same_shape(const ThetaMember& a, const ThetaMember& b) {
  return a.slots == b.slots && a.params == b.params && alpha_equal(a.formula, b.formula);
}

class WeakSO final : public ThetaFamily {
 public:
  WeakSO(Signature sig, std::uint32_t arity) : ThetaFamily(std::move(sig)), arity_(arity) {
    if (!sig_.identity) throw PreconditionError("weak second-order family needs identity");
  }

  ThetaKind kind() const override { return ThetaKind::weak_so; }
  std::string name() const override { return arity_ == 0 ? "weak-so:*" : "weak-so:" + std::to_string(arity_); }
  bool supports_arity(std::uint32_t k) const override { return k >= 1 && (arity_ == 0 || k == arity_); }
  std::uint32_t default_arity() const override { return arity_ == 0 ? 1 : arity_; }

  ThetaMember at(std::uint32_t k, std::uint64_t n) const override {
    require_arity(*this, k);
    ThetaMember m;
    m.index = n;
    m.slots = individuals(0, k);
    m.params = individuals(k, static_cast<std::uint32_t>((n + 1) * k));
    std::vector<Formula> disjuncts;
    for (std::uint64_t i = 0; i <= n; ++i) {
      std::vector<Formula> eqs;
      for (std::uint32_t j = 0; j < k; ++j) {
        eqs.push_back(Formula::equal(Term::variable(m.slots[j]), Term::variable(m.params[i * k + j])));
      }
      disjuncts.push_back(Formula::conjunction(eqs));
    }
    m.formula = Formula::disjunction(disjuncts);
    return m;
  }

  std::optional<bool> admits(const ThetaMember& c) const override {
    if (!supports_arity(c.arity())) return false;
    return same_shape(c, at(c.arity(), c.index));
  }

 private:
  std::uint32_t arity_;
};

// Members are drawn from the exhaustive enumerator in size order; `accept`
// filters candidates. Results are cached per arity.
class EnumeratedFamily : public ThetaFamily {
 public:
  explicit EnumeratedFamily(Signature sig) : ThetaFamily(sig), enumerator_(sig) {
    has_atoms_ = !sig_.predicate_arities.empty() || sig_.identity;
  }

  ThetaMember at(std::uint32_t k, std::uint64_t n) const override {
    require_arity(*this, k);
    if (!has_atoms_) throw PreconditionError("signature has no atomic formulas; " + name() + " is empty");
    std::lock_guard<std::mutex> lock(mutex_);
    Cache& cache = caches_[k];
    while (cache.members.size() <= n) {
      grow(k, cache);
      if (cache.size > kMaxSize) {
        throw FeasibilityError("theta family " + name() + ": member " + std::to_string(n) +
                               " lies beyond formula size " + std::to_string(kMaxSize));
      }
    }
    ThetaMember m = cache.members[n];
    m.index = n;
    return m;
  }

 protected:
  static constexpr std::size_t kMaxSize = 24;

  virtual std::uint32_t max_free(std::uint32_t arity, std::size_t size) const = 0;
  virtual bool accept(const Formula& f) const = 0;

 private:
  struct Cache {
    std::size_t size = 1;
    std::vector<ThetaMember> members;
  };

  void grow(std::uint32_t k, Cache& cache) const {
    std::size_t size = ++cache.size;
    for (std::uint32_t m = k; m <= max_free(k, size); ++m) {
      for (const auto& f : enumerator_.with_free_prefix(size, m)) {
        if (!accept(f)) continue;
        cache.members.push_back({0, f, individuals(0, k), individuals(k, m - k)});
      }
    }
  }

  mutable std::mutex mutex_;
  mutable FormulaEnumerator enumerator_;
  mutable std::map<std::uint32_t, Cache> caches_;
  bool has_atoms_ = true;
};

class Dsl final : public EnumeratedFamily {
 public:
  explicit Dsl(Signature sig) : EnumeratedFamily(std::move(sig)) {}

  ThetaKind kind() const override { return ThetaKind::dsl; }
  std::string name() const override { return "dsl"; }
  bool supports_arity(std::uint32_t k) const override { return k == 1; }
  bool parameter_free() const override { return true; }

  std::optional<bool> admits(const ThetaMember& c) const override {
    if (c.arity() != 1 || !c.params.empty() || !is_first_order(c.formula)) return false;
    FreeVariables fv = free_variables(c.formula);
    return fv.individuals.size() == 1 && *fv.individuals.begin() == c.slots[0];
  }

 protected:
  std::uint32_t max_free(std::uint32_t, std::size_t) const override { return 1; }
  bool accept(const Formula&) const override { return true; }
};

class AllFO : public EnumeratedFamily {
 public:
  explicit AllFO(Signature sig) : EnumeratedFamily(std::move(sig)) {}

  ThetaKind kind() const override { return ThetaKind::all_fo; }
  std::string name() const override { return "all-fo"; }
  bool supports_arity(std::uint32_t k) const override { return k >= 1; }

  std::optional<bool> admits(const ThetaMember& c) const override {
    if (c.slots.empty() || !is_first_order(c.formula)) return false;
    try {
      validate_member(c);
    } catch (const PreconditionError&) {
      return false;
    }
    return accept(c.formula);
  }

 protected:
  // Every variable occurrence costs one unit and an atom at least one more.
  std::uint32_t max_free(std::uint32_t, std::size_t size) const override {
    return static_cast<std::uint32_t>(size);
  }
  bool accept(const Formula&) const override { return true; }
};

class PrefixFamily final : public AllFO {
 public:
  PrefixFamily(Signature sig, bool existential, std::uint32_t level)
      : AllFO(std::move(sig)), existential_(existential), level_(level) {}

  ThetaKind kind() const override { return existential_ ? ThetaKind::exists_n : ThetaKind::forall_n; }
  std::string name() const override {
    return (existential_ ? "exists-n:" : "forall-n:") + std::to_string(level_);
  }

 protected:
  bool accept(const Formula& f) const override {
    PrefixClass c = classify_prefix(f);
    return (existential_ ? c.exists_level : c.forall_level) <= level_;
  }

 private:
  bool existential_;
  std::uint32_t level_;
};

class Custom final : public ThetaFamily {
 public:
  Custom(Signature sig, std::string name, std::vector<ThetaMember> members)
      : ThetaFamily(std::move(sig)), name_(std::move(name)) {
    for (auto& m : members) {
      validate_member(m);
      check_against(m.formula, sig_);
      by_arity_[m.arity()].push_back(std::move(m));
    }
    if (by_arity_.empty()) throw PreconditionError("custom theta family " + name_ + " has no members");
    params_ = false;
    for (const auto& [k, ms] : by_arity_) {
      for (const auto& m : ms) params_ = params_ || !m.params.empty();
    }
  }

  ThetaKind kind() const override { return ThetaKind::custom; }
  std::string name() const override { return name_; }
  bool supports_arity(std::uint32_t k) const override { return by_arity_.count(k) > 0; }
  bool parameter_free() const override { return !params_; }
  std::uint32_t default_arity() const override { return by_arity_.begin()->first; }

  ThetaMember at(std::uint32_t k, std::uint64_t n) const override {
    require_arity(*this, k);
    const auto& ms = by_arity_.at(k);
    ThetaMember m = ms[n % ms.size()];
    m.index = n;
    return m;
  }

  std::optional<bool> admits(const ThetaMember& c) const override {
    auto it = by_arity_.find(c.arity());
    if (it == by_arity_.end()) return false;
    for (const auto& m : it->second) {
      if (same_shape(m, c)) return true;
    }
    return false;
  }

 private:
  std::string name_;
  std::map<std::uint32_t, std::vector<ThetaMember>> by_arity_;
  bool params_ = false;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<Variable> parse_variable_list(const std::string& text, NameTable& names) {
  std::vector<Variable> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string w;
    while (words >> w) out.push_back(parse_variable(w, &names));
  }
  return out;
}

std::uint32_t parse_level(const std::string& spec, const std::string& text) {
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw PreconditionError("malformed theta spec '" + spec + "'");
  }
}

}  // namespace

ThetaFamilyPtr make_weak_so(const Signature& sig, std::uint32_t arity) { return std::make_shared<WeakSO>(sig, arity); }
ThetaFamilyPtr make_dsl(const Signature& sig) { return std::make_shared<Dsl>(sig); }
ThetaFamilyPtr make_all_fo(const Signature& sig) { return std::make_shared<AllFO>(sig); }
ThetaFamilyPtr make_exists_n(const Signature& sig, std::uint32_t level) {
  return std::make_shared<PrefixFamily>(sig, true, level);
}
ThetaFamilyPtr make_forall_n(const Signature& sig, std::uint32_t level) {
  return std::make_shared<PrefixFamily>(sig, false, level);
}
ThetaFamilyPtr make_custom(const Signature& sig, std::string name, std::vector<ThetaMember> members) {
  return std::make_shared<Custom>(sig, std::move(name), std::move(members));
}

ThetaFamilyPtr parse_custom_family(const std::string& text, const Signature& sig, std::string name) {
  NameTable names;
  names.reserve(text);
  std::vector<ThetaMember> members;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto first = line.find(';');
    auto second = first == std::string::npos ? first : line.find(';', first + 1);
    if (second == std::string::npos) {
      throw ParseError(ParseErrorKind::syntax, 0, "expected `<slots> ; <params> ; <formula>`", line_no);
    }
    ThetaMember m;
    m.index = members.size();
    try {
      m.slots = parse_variable_list(line.substr(0, first), names);
      m.params = parse_variable_list(line.substr(first + 1, second - first - 1), names);
      ParseOptions opts;
      opts.names = &names;
      m.formula = parse_formula(line.substr(second + 1), sig, opts);
    } catch (const ParseError& e) {
      throw ParseError(e.kind(), e.position(), e.what(), line_no);
    }
    members.push_back(std::move(m));
  }
  return make_custom(sig, std::move(name), std::move(members));
}

ThetaFamilyPtr parse_theta_spec(const std::string& spec, const Signature& sig) {
  auto colon = spec.find(':');
  std::string head = spec.substr(0, colon);
  std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "weak-so" || head == "weak_so") {
    if (arg.empty()) return make_weak_so(sig, 1);
    if (arg == "*") return make_weak_so(sig, 0);
    std::uint32_t k = parse_level(spec, arg);
    if (k == 0) throw PreconditionError("weak-so arity must be at least 1");
    return make_weak_so(sig, k);
  }
  if (head == "dsl" && arg.empty()) return make_dsl(sig);
  if ((head == "all-fo" || head == "all_fo") && arg.empty()) return make_all_fo(sig);
  if (head == "exists-n" || head == "forall-n") {
    if (arg.empty()) throw PreconditionError("theta spec '" + spec + "' needs a level, e.g. " + head + ":1");
    std::uint32_t level = parse_level(spec, arg);
    return head == "exists-n" ? make_exists_n(sig, level) : make_forall_n(sig, level);
  }
  if (head == "custom") {
    std::ifstream in(arg);
    if (!in) throw PreconditionError("cannot read theta family file '" + arg + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_custom_family(buf.str(), sig, spec);
  }
  throw PreconditionError("unknown theta family '" + spec + "'");
}

}  // namespace rsol
