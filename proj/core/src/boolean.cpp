#include "rsol/boolean.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

namespace rsol {

namespace detail {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '{' || c == '(' || c == '[') ++depth;
    if (c == '}' || c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

namespace {

// Shared expression syntax: `|`, `&`, `->`, `~`, parentheses; atoms are
// delegated to the algebra.
template <typename A>
class ElementParser {
 public:
  using E = typename A::Element;
  using AtomFn = std::function<E(const std::string&, std::size_t&)>;

  ElementParser(const A& alg, const std::string& text, AtomFn atom) : alg_(alg), text_(text), atom_(std::move(atom)) {}

  E run() {
    E e = implication();
    skip();
    if (pos_ != text_.size()) fail("unexpected input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(ParseErrorKind::syntax, pos_, what + " in element '" + text_ + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip();
    if (text_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  E implication() {
    E lhs = disjunction();
    if (eat("->")) return alg_.join(alg_.complement(lhs), implication());
    return lhs;
  }
  E disjunction() {
    E e = conjunction();
    while (eat("|")) e = alg_.join(e, conjunction());
    return e;
  }
  E conjunction() {
    E e = unary();
    while (eat("&")) e = alg_.meet(e, unary());
    return e;
  }
  E unary() {
    if (eat("~") || eat("¬")) return alg_.complement(unary());
    if (eat("(")) {
      E e = implication();
      if (!eat(")")) fail("expected ')'");
      return e;
    }
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    if (text_[pos_] == '0' && !next_is_digit()) {
      ++pos_;
      return alg_.zero();
    }
    if (text_[pos_] == '1' && !next_is_digit()) {
      ++pos_;
      return alg_.one();
    }
    return atom_(text_, pos_);
  }
  bool next_is_digit() const {
    return pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]));
  }

  const A& alg_;
  const std::string& text_;
  AtomFn atom_;
  std::size_t pos_ = 0;
};

// `{a, b, ...}` starting at pos.
std::vector<std::uint64_t> parse_braced(const std::string& text, std::size_t& pos) {
  if (pos >= text.size() || text[pos] != '{') {
    throw ParseError(ParseErrorKind::syntax, pos, "expected '{' in element '" + text + "'");
  }
  auto close = text.find('}', pos);
  if (close == std::string::npos) throw ParseError(ParseErrorKind::syntax, pos, "unterminated set in '" + text + "'");
  std::vector<std::uint64_t> out;
  std::string body = detail::trim(text.substr(pos + 1, close - pos - 1));
  if (!body.empty()) {
    for (const auto& item : detail::split_top_level(body, ',')) {
      std::string t = detail::trim(item);
      if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
        throw ParseError(ParseErrorKind::lexical, pos, "bad set member '" + t + "'");
      }
      out.push_back(std::stoull(t));
    }
  }
  pos = close + 1;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_set(const std::vector<std::uint64_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(xs[i]);
  }
  return s + "}";
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::yes:
      return "true";
    case Verdict::no:
      return "false";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

// --- powerset -------------------------------------------------------------

PowersetAlgebra::PowersetAlgebra(std::uint32_t atoms) : atoms_(atoms) {
  if (atoms > (1u << 20)) throw FeasibilityError("powerset algebra over more than 2^20 atoms");
}

PowersetAlgebra::Element PowersetAlgebra::atom(std::uint32_t i) const {
  if (i >= atoms_) throw PreconditionError("atom " + std::to_string(i) + " out of range");
  Element e(atoms_);
  e.set(i);
  return e;
}

PowersetAlgebra::Element PowersetAlgebra::parse(const std::string& text) const {
  ElementParser<PowersetAlgebra> p(*this, text, [this](const std::string& t, std::size_t& pos) {
    Element e(atoms_);
    for (auto a : parse_braced(t, pos)) {
      if (a >= atoms_) throw ParseError(ParseErrorKind::unknown_symbol, pos, "atom " + std::to_string(a) + " out of range");
      e.set(a);
    }
    return e;
  });
  return p.run();
}

std::string PowersetAlgebra::format(const Element& x) const {
  std::vector<std::uint64_t> xs;
  for (auto i = x.find_first(); i != Element::npos; i = x.find_next(i)) xs.push_back(i);
  return format_set(xs);
}

std::optional<std::uint64_t> PowersetAlgebra::size() const {
  if (atoms_ >= 64) return std::nullopt;
  return std::uint64_t{1} << atoms_;
}

PowersetAlgebra::Element PowersetAlgebra::element(std::uint64_t i) const {
  Element e(atoms_);
  for (std::uint32_t b = 0; b < atoms_ && b < 64; ++b) {
    if ((i >> b) & 1) e.set(b);
  }
  return e;
}

// --- free algebra ---------------------------------------------------------

FreeAlgebra::FreeAlgebra(std::uint32_t generators) : generators_(generators) {
  if (generators > 16) throw FeasibilityError("free algebra limited to 16 generators");
  rows_ = std::size_t{1} << generators;
}

FreeAlgebra::Element FreeAlgebra::generator(std::uint32_t i) const {
  if (i >= generators_) throw PreconditionError("generator p" + std::to_string(i) + " out of range");
  Element e(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if ((r >> i) & 1) e.set(r);
  }
  return e;
}

FreeAlgebra::Element FreeAlgebra::parse(const std::string& text) const {
  ElementParser<FreeAlgebra> p(*this, text, [this](const std::string& t, std::size_t& pos) {
    if (t[pos] != 'p') throw ParseError(ParseErrorKind::lexical, pos, "expected a generator p<i> in '" + t + "'");
    std::size_t start = ++pos;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
    if (start == pos) throw ParseError(ParseErrorKind::lexical, pos, "generator index missing in '" + t + "'");
    auto i = std::stoul(t.substr(start, pos - start));
    if (i >= generators_) {
      throw ParseError(ParseErrorKind::unknown_symbol, start, "generator p" + std::to_string(i) + " out of range");
    }
    return generator(static_cast<std::uint32_t>(i));
  });
  return p.run();
}

std::string FreeAlgebra::format(const Element& x) const {
  if (x.none()) return "0";
  if (x.all()) return "1";
  std::string out;
  for (auto r = x.find_first(); r != Element::npos; r = x.find_next(r)) {
    if (!out.empty()) out += " | ";
    std::string term;
    for (std::uint32_t i = 0; i < generators_; ++i) {
      if (!term.empty()) term += " & ";
      term += ((r >> i) & 1) ? "p" : "~p";
      term += std::to_string(i);
    }
    out += generators_ == 0 ? "1" : term;
  }
  return out;
}

std::optional<std::uint64_t> FreeAlgebra::size() const {
  if (rows_ >= 64) return std::nullopt;
  return std::uint64_t{1} << rows_;
}

FreeAlgebra::Element FreeAlgebra::element(std::uint64_t i) const {
  Element e(rows_);
  for (std::size_t r = 0; r < rows_ && r < 64; ++r) {
    if ((i >> r) & 1) e.set(r);
  }
  return e;
}

// --- finite-cofinite ------------------------------------------------------

FinCofElement FiniteCofiniteAlgebra::meet(const Element& x, const Element& y) const {
  Element out;
  if (!x.cofinite && !y.cofinite) {
    std::set_intersection(x.set.begin(), x.set.end(), y.set.begin(), y.set.end(), std::back_inserter(out.set));
  } else if (!x.cofinite || !y.cofinite) {
    const Element& fin = x.cofinite ? y : x;
    const Element& cof = x.cofinite ? x : y;
    std::set_difference(fin.set.begin(), fin.set.end(), cof.set.begin(), cof.set.end(), std::back_inserter(out.set));
  } else {
    out.cofinite = true;
    std::set_union(x.set.begin(), x.set.end(), y.set.begin(), y.set.end(), std::back_inserter(out.set));
  }
  return out;
}

FinCofElement FiniteCofiniteAlgebra::join(const Element& x, const Element& y) const {
  return complement(meet(complement(x), complement(y)));
}

FinCofElement FiniteCofiniteAlgebra::parse(const std::string& text) const {
  ElementParser<FiniteCofiniteAlgebra> p(*this, text, [](const std::string& t, std::size_t& pos) {
    return Element{false, parse_braced(t, pos)};
  });
  return p.run();
}

std::string FiniteCofiniteAlgebra::format(const Element& x) const {
  if (x.set.empty()) return x.cofinite ? "1" : "0";
  return (x.cofinite ? "~" : "") + format_set(x.set);
}

FinCofElement FiniteCofiniteAlgebra::element(std::uint64_t i) const {
  Element e;
  e.cofinite = (i & 1) != 0;
  std::uint64_t mask = i >> 1;
  for (std::uint64_t b = 0; mask; ++b, mask >>= 1) {
    if (mask & 1) e.set.push_back(b);
  }
  return e;
}

RegularEntry<FinCofElement> fincof_atoms_entry() {
  RegularEntry<FinCofElement> e;
  e.kind = EntryKind::join;
  e.member = [](std::uint64_t i) -> std::optional<FinCofElement> { return FinCofElement{false, {i}}; };
  e.bound = FinCofElement{true, {}};
  e.trusted = true;
  e.all_members_finite = true;
  e.label = "atoms";
  return e;
}

Membership<FinCofElement> cofinite_ultrafilter() {
  Membership<FinCofElement> m;
  m.contains = [](const FinCofElement& x) { return x.cofinite; };
  // No finite set is cofinite: a join entry of finite sets misses U, and a
  // nonempty meet entry of finite sets is not inside U.
  m.decide_entry = [](const RegularEntry<FinCofElement>& e) -> std::optional<bool> {
    if (!e.all_members_finite) return std::nullopt;
    return false;
  };
  return m;
}

Membership<FinCofElement> principal_fincof(std::uint64_t n) {
  Membership<FinCofElement> m;
  m.contains = [n](const FinCofElement& x) {
    bool listed = std::binary_search(x.set.begin(), x.set.end(), n);
    return x.cofinite ? !listed : listed;
  };
  return m;
}

AlgebraSpec parse_algebra_spec(const std::string& spec) {
  auto bad = [&](const std::string& why) {
    return ParseError(ParseErrorKind::syntax, 0, "algebra '" + spec + "': " + why);
  };
  if (spec == "fincof") return {AlgebraKind::fincof, 0};
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw bad("expected powerset:n, free:g or fincof");
  std::string head = spec.substr(0, colon);
  std::string num = spec.substr(colon + 1);
  if (num.empty() || !std::all_of(num.begin(), num.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw bad("size must be a number");
  }
  auto n = static_cast<std::uint32_t>(std::stoul(num));
  if (head == "powerset") {
    if (n > 5) throw FeasibilityError("powerset algebras are limited to 5 atoms");
    return {AlgebraKind::powerset, n};
  }
  if (head == "free") {
    if (n > 16) throw FeasibilityError("free algebras are limited to 16 generators");
    return {AlgebraKind::free, n};
  }
  throw bad("unknown algebra");
}

}  // namespace rsol
