#include "rsol/structure.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsol/error.hpp"

namespace rsol {

namespace {

constexpr std::size_t kMaxTuples = std::size_t{1} << 24;

std::size_t power(std::uint32_t base, std::uint32_t exp) {
  std::size_t out = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    out *= base;
    if (out > kMaxTuples) {
      throw FeasibilityError("relation space " + std::to_string(base) + "^" + std::to_string(exp) + " too large");
    }
  }
  return out;
}

}  // namespace

Relation::Relation(std::uint32_t arity, std::uint32_t domain)
    : arity_(arity), domain_(domain), bits_(power(domain, arity)) {}

Relation Relation::full(std::uint32_t arity, std::uint32_t domain) {
  Relation r(arity, domain);
  r.bits_.set();
  return r;
}

Relation Relation::from_tuples(std::uint32_t arity, std::uint32_t domain, const std::vector<Tuple>& tuples) {
  Relation r(arity, domain);
  for (const auto& t : tuples) {
    if (t.size() != arity) throw ArityError("tuple of length " + std::to_string(t.size()) + " in arity-" +
                                            std::to_string(arity) + " relation");
    for (Element e : t) {
      if (e >= domain) throw PreconditionError("element " + std::to_string(e) + " outside the domain");
    }
    r.insert(t);
  }
  return r;
}

std::size_t Relation::encode(const Tuple& t) const { return encode(t.data()); }

std::size_t Relation::encode(const Element* t) const {
  std::size_t idx = 0;
  for (std::uint32_t i = 0; i < arity_; ++i) idx = idx * domain_ + t[i];
  return idx;
}

Tuple Relation::decode(std::size_t index) const {
  Tuple t(arity_);
  for (std::uint32_t i = arity_; i > 0; --i) {
    t[i - 1] = static_cast<Element>(index % domain_);
    index /= domain_;
  }
  return t;
}

std::vector<Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    out.push_back(decode(i));
  }
  return out;
}

Relation Relation::complement() const {
  Relation r = *this;
  r.bits_.flip();
  return r;
}

Relation Relation::operator&(const Relation& o) const {
  Relation r = *this;
  r.bits_ &= o.bits_;
  return r;
}

Relation Relation::operator|(const Relation& o) const {
  Relation r = *this;
  r.bits_ |= o.bits_;
  return r;
}

Relation Relation::permuted(const std::vector<Element>& perm) const {
  Relation r(arity_, domain_);
  Tuple image(arity_);
  for (auto i = bits_.find_first(); i != boost::dynamic_bitset<>::npos; i = bits_.find_next(i)) {
    Tuple t = decode(i);
    for (std::uint32_t j = 0; j < arity_; ++j) image[j] = perm[t[j]];
    r.insert(image);
  }
  return r;
}

bool operator<(const Relation& a, const Relation& b) {
  if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
  if (a.domain_ != b.domain_) return a.domain_ < b.domain_;
  auto ca = a.bits_.count();
  auto cb = b.bits_.count();
  if (ca != cb) return ca < cb;
  // Lexicographic on tuple indices: the relation whose first differing
  // tuple is present comes first.
  for (std::size_t i = 0; i < a.bits_.size(); ++i) {
    if (a.bits_.test(i) != b.bits_.test(i)) return a.bits_.test(i);
  }
  return false;
}

std::string to_string(const Relation& r) {
  std::ostringstream out;
  out << '{';
  const char* sep = "";
  for (const auto& t : r.tuples()) {
    out << sep;
    if (r.arity() == 1) {
      out << t[0];
    } else {
      out << '(';
      for (std::size_t i = 0; i < t.size(); ++i) out << (i ? "," : "") << t[i];
      out << ')';
    }
    sep = ", ";
  }
  out << '}';
  return out.str();
}

FiniteStructure FiniteStructure::blank(const Signature& sig, std::uint32_t domain_size) {
  sig.validate();
  if (domain_size == 0) throw PreconditionError("structures need a nonempty domain");
  FiniteStructure s;
  s.sig = sig;
  s.domain_size = domain_size;
  for (auto ar : sig.predicate_arities) s.predicates.emplace_back(ar, domain_size);
  for (auto ar : sig.function_arities) s.functions.emplace_back(power(domain_size, ar), 0);
  s.constants.assign(sig.constant_count, 0);
  return s;
}

void FiniteStructure::validate() const {
  sig.validate();
  if (domain_size == 0) throw PreconditionError("structures need a nonempty domain");
  if (predicates.size() != sig.predicate_arities.size()) {
    throw PreconditionError("structure interprets " + std::to_string(predicates.size()) + " predicates, signature has " +
                            std::to_string(sig.predicate_arities.size()));
  }
  for (std::size_t i = 0; i < predicates.size(); ++i) {
    if (predicates[i].arity() != sig.predicate_arities[i] || predicates[i].domain() != domain_size) {
      throw PreconditionError("predicate P" + std::to_string(i) + " does not match its declared arity");
    }
  }
  if (functions.size() != sig.function_arities.size()) {
    throw PreconditionError("structure interprets the wrong number of functions");
  }
  for (std::size_t i = 0; i < functions.size(); ++i) {
    if (functions[i].size() != power(domain_size, sig.function_arities[i])) {
      throw PreconditionError("function table f" + std::to_string(i) + " is not total");
    }
    for (Element e : functions[i]) {
      if (e >= domain_size) throw PreconditionError("function f" + std::to_string(i) + " leaves the domain");
    }
  }
  if (constants.size() != sig.constant_count) throw PreconditionError("structure interprets the wrong number of constants");
  for (Element e : constants) {
    if (e >= domain_size) throw PreconditionError("constant outside the domain");
  }
}

Element FiniteStructure::apply(std::uint32_t function, const std::vector<Element>& args) const {
  std::size_t idx = 0;
  for (Element a : args) idx = idx * domain_size + a;
  return functions[function][idx];
}

namespace {

using nlohmann::json;

std::uint32_t symbol_index(const std::string& name, char prefix) {
  if (name.size() < 2 || name[0] != prefix ||
      !std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError(ParseErrorKind::unknown_symbol, 0,
                     "structure symbol '" + name + "' must be " + std::string(1, prefix) + "<index>");
  }
  return static_cast<std::uint32_t>(std::stoul(name.substr(1)));
}

struct PredicateData {
  std::optional<std::uint32_t> arity;
  std::vector<Tuple> tuples;
};

PredicateData predicate_data(const json& j) {
  PredicateData d;
  const json* list = &j;
  if (j.is_object()) {
    if (j.contains("arity")) d.arity = j.at("arity").get<std::uint32_t>();
    list = &j.at("tuples");
  }
  for (const auto& t : *list) {
    Tuple tuple = t.is_array() ? t.get<Tuple>() : Tuple{t.get<Element>()};
    if (!d.arity) d.arity = static_cast<std::uint32_t>(tuple.size());
    d.tuples.push_back(std::move(tuple));
  }
  return d;
}

std::uint32_t infer_arity(std::size_t table_size, std::uint32_t domain) {
  std::size_t n = 1;
  for (std::uint32_t k = 0; k <= 24; ++k) {
    if (n == table_size && k > 0) return k;
    if (n > table_size) break;
    n *= domain;
    if (domain == 1 && k > 0) break;
  }
  throw PreconditionError("function table of length " + std::to_string(table_size) +
                          " is not domain_size^arity; declare the signature explicitly");
}

}  // namespace

FiniteStructure parse_structure_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(ParseErrorKind::lexical, e.byte, std::string("structure JSON: ") + e.what());
  }
  try {
    auto domain = j.at("domain_size").get<std::uint32_t>();
    std::map<std::uint32_t, PredicateData> preds;
    std::map<std::uint32_t, std::vector<Element>> funcs;
    std::map<std::uint32_t, Element> consts;
    if (j.contains("predicates")) {
      for (const auto& [name, val] : j.at("predicates").items()) preds[symbol_index(name, 'P')] = predicate_data(val);
    }
    if (j.contains("functions")) {
      for (const auto& [name, val] : j.at("functions").items()) {
        funcs[symbol_index(name, 'f')] = val.get<std::vector<Element>>();
      }
    }
    if (j.contains("constants")) {
      for (const auto& [name, val] : j.at("constants").items()) consts[symbol_index(name, 'c')] = val.get<Element>();
    }

    Signature sig;
    if (j.contains("signature")) {
      sig = parse_signature(j.at("signature").get<std::string>());
    } else {
      auto contiguous = [](const auto& m, const char* what) {
        std::uint32_t expect = 0;
        for (const auto& kv : m) {
          if (kv.first != expect++) {
            throw PreconditionError(std::string(what) + " indices must be contiguous from 0");
          }
        }
      };
      contiguous(preds, "predicate");
      contiguous(funcs, "function");
      contiguous(consts, "constant");
      for (const auto& [i, d] : preds) {
        if (!d.arity) {
          throw PreconditionError("empty predicate P" + std::to_string(i) +
                                  " needs {\"arity\": k, \"tuples\": []}");
        }
        sig.predicate_arities.push_back(*d.arity);
      }
      for (const auto& [i, table] : funcs) sig.function_arities.push_back(infer_arity(table.size(), domain));
      sig.constant_count = static_cast<std::uint32_t>(consts.size());
    }
    if (j.contains("identity")) sig.identity = j.at("identity").get<bool>();

    FiniteStructure s = FiniteStructure::blank(sig, domain);
    for (const auto& [i, d] : preds) {
      if (i >= sig.predicate_arities.size()) throw PreconditionError("P" + std::to_string(i) + " not in signature");
      s.predicates[i] = Relation::from_tuples(sig.predicate_arities[i], domain, d.tuples);
    }
    for (auto& [i, table] : funcs) {
      if (i >= sig.function_arities.size()) throw PreconditionError("f" + std::to_string(i) + " not in signature");
      s.functions[i] = std::move(table);
    }
    for (const auto& [i, e] : consts) {
      if (i >= sig.constant_count) throw PreconditionError("c" + std::to_string(i) + " not in signature");
      s.constants[i] = e;
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    throw ParseError(ParseErrorKind::syntax, 0, std::string("structure JSON: ") + e.what());
  }
}

FiniteStructure load_structure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read structure file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_structure_json(buf.str());
}

std::string structure_to_json(const FiniteStructure& s) {
  json j;
  j["domain_size"] = s.domain_size;
  j["signature"] = to_string(s.sig);
  if (!s.sig.identity) j["identity"] = false;
  json preds = json::object();
  for (std::size_t i = 0; i < s.predicates.size(); ++i) {
    preds["P" + std::to_string(i)] = {{"arity", s.predicates[i].arity()}, {"tuples", s.predicates[i].tuples()}};
  }
  j["predicates"] = preds;
  json funcs = json::object();
  for (std::size_t i = 0; i < s.functions.size(); ++i) funcs["f" + std::to_string(i)] = s.functions[i];
  j["functions"] = funcs;
  json consts = json::object();
  for (std::size_t i = 0; i < s.constants.size(); ++i) consts["c" + std::to_string(i)] = s.constants[i];
  j["constants"] = consts;
  return j.dump();
}

std::vector<FiniteStructure> all_structures(const Signature& sig, std::uint32_t domain_size) {
  FiniteStructure base = FiniteStructure::blank(sig, domain_size);
  // Mixed-radix counter over every predicate bit, function entry and constant.
  std::vector<std::size_t> radix;
  for (const auto& p : base.predicates) radix.insert(radix.end(), p.tuple_count(), 2);
  for (const auto& f : base.functions) radix.insert(radix.end(), f.size(), domain_size);
  radix.insert(radix.end(), base.constants.size(), domain_size);
  double total = 1;
  for (auto r : radix) total *= static_cast<double>(r);
  if (total > 1e6) throw FeasibilityError("more than 10^6 structures of size " + std::to_string(domain_size));

  std::vector<FiniteStructure> out;
  std::vector<std::size_t> digit(radix.size(), 0);
  while (true) {
    FiniteStructure s = base;
    std::size_t pos = 0;
    for (auto& p : s.predicates) {
      for (std::size_t i = 0; i < p.tuple_count(); ++i) p.set_index(i, digit[pos++] != 0);
    }
    for (auto& f : s.functions) {
      for (auto& e : f) e = static_cast<Element>(digit[pos++]);
    }
    for (auto& c : s.constants) c = static_cast<Element>(digit[pos++]);
    out.push_back(std::move(s));
    std::size_t i = 0;
    while (i < digit.size() && ++digit[i] == radix[i]) digit[i++] = 0;
    if (i == digit.size()) break;
  }
  return out;
}

}  // namespace rsol
