#include <algorithm>
#include <cctype>
#include <optional>
#include <vector>

#include "rsol/error.hpp"
#include "rsol/parser.hpp"

namespace rsol {

namespace {

enum class Tok {
  end,
  lparen,
  rparen,
  lbracket,
  rbracket,
  comma,
  semicolon,
  dot,
  caret,
  equals,
  neg,
  conj,
  disj,
  implies,
  iff,
  forall,
  exists,
  theta,
  number,
  ident,
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t pos = 0;
};

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (i_ >= src_.size()) {
        out.push_back({Tok::end, "", i_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
  }

  bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  // Subscript digits ₀..₉ are E2 82 80..89.
  std::optional<char> subscript_digit() const {
    if (i_ + 2 < src_.size() + 0 && i_ + 3 <= src_.size() && static_cast<unsigned char>(src_[i_]) == 0xE2 &&
        static_cast<unsigned char>(src_[i_ + 1]) == 0x82) {
      unsigned char c = static_cast<unsigned char>(src_[i_ + 2]);
      if (c >= 0x80 && c <= 0x89) return static_cast<char>('0' + (c - 0x80));
    }
    return std::nullopt;
  }

  Token next() {
    std::size_t start = i_;
    struct Sym {
      std::string_view text;
      Tok kind;
    };
    static constexpr Sym symbols[] = {
        {"<->", Tok::iff},  {"->", Tok::implies}, {"\xE2\x86\x94", Tok::iff},
        {"\xE2\x86\x92", Tok::implies},           {"\xE2\x88\x80", Tok::forall},
        {"\xE2\x88\x83", Tok::exists},            {"\xC2\xAC", Tok::neg},
        {"\xE2\x88\xA7", Tok::conj},              {"\xE2\x88\xA8", Tok::disj},
        {"\xCE\xB8", Tok::theta},                 {"(", Tok::lparen},
        {")", Tok::rparen},                       {"[", Tok::lbracket},
        {"]", Tok::rbracket},                     {",", Tok::comma},
        {";", Tok::semicolon},                    {".", Tok::dot},
        {"^", Tok::caret},                        {"=", Tok::equals},
        {"~", Tok::neg},                          {"!", Tok::neg},
        {"&", Tok::conj},                         {"|", Tok::disj},
    };
    for (const auto& s : symbols) {
      if (starts(s.text)) {
        i_ += s.text.size();
        return {s.kind, std::string(s.text), start};
      }
    }
    if (is_digit(src_[i_])) {
      std::string num;
      while (i_ < src_.size() && is_digit(src_[i_])) num += src_[i_++];
      return {Tok::number, num, start};
    }
    if (is_alpha(src_[i_]) || src_[i_] == '_') {
      std::string word;
      while (i_ < src_.size()) {
        if (is_alpha(src_[i_]) || is_digit(src_[i_]) || src_[i_] == '_' || src_[i_] == '\'') {
          word += src_[i_++];
        } else if (auto d = subscript_digit()) {
          word += *d;
          i_ += 3;
        } else {
          break;
        }
      }
      if (word == "forall") return {Tok::forall, word, start};
      if (word == "exists") return {Tok::exists, word, start};
      if (word == "theta") return {Tok::theta, word, start};
      return {Tok::ident, word, start};
    }
    throw ParseError(ParseErrorKind::lexical, start,
                     "unexpected character '" + std::string(1, src_[i_]) + "'");
  }

  std::string_view src_;
  std::size_t i_ = 0;
};

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return is_digit(c); });
}

// `prefix` followed by digits only.
std::optional<std::uint32_t> indexed(std::string_view word, std::string_view prefix) {
  if (word.size() <= prefix.size() || word.substr(0, prefix.size()) != prefix) return std::nullopt;
  auto rest = word.substr(prefix.size());
  if (!all_digits(rest)) return std::nullopt;
  return static_cast<std::uint32_t>(std::stoul(std::string(rest)));
}

enum class WordClass { predicate, function, constant, block, individual, relation };

WordClass classify(const std::string& w) {
  if (indexed(w, "P")) return WordClass::predicate;
  if (indexed(w, "f")) return WordClass::function;
  if (indexed(w, "c")) return WordClass::constant;
  if (indexed(w, "ys")) return WordClass::block;
  if (std::isupper(static_cast<unsigned char>(w[0]))) return WordClass::relation;
  return WordClass::individual;
}

}  // namespace

// ---------------------------------------------------------------------------
// NameTable

void NameTable::reserve(std::string_view text) {
  std::vector<Token> toks;
  try {
    toks = Lexer(text).run();
  } catch (const ParseError&) {
    return;  // reported properly by the real parse
  }
  for (const auto& t : toks) {
    if (t.kind != Tok::ident) continue;
    if (auto n = indexed(t.text, "x")) next_individual_ = std::max(next_individual_, *n + 1);
    if (auto n = indexed(t.text, "X")) next_relation_ = std::max(next_relation_, *n + 1);
  }
}

Variable NameTable::individual(const std::string& name) {
  if (auto n = indexed(name, "x")) return Variable::individual(*n);
  auto it = individuals_.find(name);
  if (it == individuals_.end()) it = individuals_.emplace(name, next_individual_++).first;
  return Variable::individual(it->second);
}

std::uint32_t NameTable::relation_index(const std::string& name) {
  if (auto n = indexed(name, "X")) return *n;
  auto it = relations_.find(name);
  if (it == relations_.end()) it = relations_.emplace(name, next_relation_++).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig, const ParseOptions& opts, NameTable& names)
      : toks_(std::move(toks)), sig_(sig), opts_(opts), names_(names) {}

  Formula parse_all() {
    Formula f = parse_iff();
    if (peek().kind != Tok::end) fail(ParseErrorKind::syntax, "unexpected '" + peek().text + "'");
    return f;
  }

  Variable parse_single_variable() {
    Variable v = binder_variable();
    if (peek().kind != Tok::end) fail(ParseErrorKind::syntax, "trailing input after variable");
    return v;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& take() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(ParseErrorKind kind, const std::string& msg) const {
    throw ParseError(kind, peek().pos, msg);
  }
  [[noreturn]] void fail_at(ParseErrorKind kind, std::size_t at, const std::string& msg) const {
    throw ParseError(kind, at, msg);
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      fail(ParseErrorKind::syntax,
           std::string("expected ") + what + (peek().kind == Tok::end ? " at end of input" : ", got '" + peek().text + "'"));
    }
  }

  Formula parse_iff() {
    Formula f = parse_imp();
    while (accept(Tok::iff)) f = Formula::biconditional(f, parse_imp());
    return f;
  }

  Formula parse_imp() {
    Formula f = parse_or();
    if (accept(Tok::implies)) return Formula::implication(f, parse_imp());
    return f;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Tok::disj)) f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Tok::conj)) f = Formula::conjunction(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    if (accept(Tok::neg)) return Formula::negation(parse_unary());
    if (peek().kind == Tok::forall || peek().kind == Tok::exists) return parse_quantifier();
    if (accept(Tok::lparen)) {
      Formula f = parse_iff();
      expect(Tok::rparen, "')'");
      return f;
    }
    return parse_atom();
  }

  Variable binder_variable() {
    const Token& t = peek();
    if (t.kind != Tok::ident) fail(ParseErrorKind::syntax, "expected a variable");
    ++pos_;
    switch (classify(t.text)) {
      case WordClass::individual: return names_.individual(t.text);
      case WordClass::block:
        if (!opts_.allow_theta) {
          fail_at(ParseErrorKind::unknown_symbol, t.pos, "parameter blocks are only allowed in templates");
        }
        return Variable::block(*indexed(t.text, "ys"));
      case WordClass::relation: {
        std::uint32_t idx = names_.relation_index(t.text);
        std::uint32_t arity = 1;
        if (accept(Tok::caret)) {
          const Token& n = take();
          if (n.kind != Tok::number || std::stoul(n.text) == 0) {
            fail_at(ParseErrorKind::syntax, n.pos, "expected a positive arity after '^'");
          }
          arity = static_cast<std::uint32_t>(std::stoul(n.text));
        }
        return Variable::relation(idx, arity);
      }
      default:
        fail_at(ParseErrorKind::syntax, t.pos, "'" + t.text + "' cannot be bound");
    }
  }

  Formula parse_quantifier() {
    bool universal = take().kind == Tok::forall;
    std::vector<Variable> vars{binder_variable()};
    while (accept(Tok::comma)) vars.push_back(binder_variable());
    for (const auto& v : vars) scope_.push_back(v);
    Formula body = accept(Tok::dot) ? parse_iff() : parse_unary();
    scope_.resize(scope_.size() - vars.size());
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = universal ? Formula::forall(*it, body) : Formula::exists(*it, body);
    }
    return body;
  }

  // A bare relation name without caret refers to the innermost binder of
  // that index; otherwise it is unary.
  Variable relation_reference(const Token& t) {
    std::uint32_t idx = names_.relation_index(t.text);
    if (accept(Tok::caret)) {
      const Token& n = take();
      if (n.kind != Tok::number || std::stoul(n.text) == 0) {
        fail_at(ParseErrorKind::syntax, n.pos, "expected a positive arity after '^'");
      }
      return Variable::relation(idx, static_cast<std::uint32_t>(std::stoul(n.text)));
    }
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->is_relation() && it->index == idx) return *it;
    }
    return Variable::relation(idx, 1);
  }

  std::vector<Term> term_list() {
    std::vector<Term> out;
    expect(Tok::lparen, "'('");
    if (peek().kind == Tok::rparen) fail(ParseErrorKind::syntax, "empty argument list");
    out.push_back(parse_term());
    while (accept(Tok::comma)) out.push_back(parse_term());
    expect(Tok::rparen, "')'");
    return out;
  }

  Term parse_term() {
    const Token& t = peek();
    if (t.kind != Tok::ident) fail(ParseErrorKind::syntax, "expected a term");
    ++pos_;
    switch (classify(t.text)) {
      case WordClass::individual: return Term::variable(names_.individual(t.text));
      case WordClass::constant: {
        auto idx = *indexed(t.text, "c");
        if (idx >= sig_.constant_count) fail_at(ParseErrorKind::unknown_symbol, t.pos, "unknown constant " + t.text);
        return Term::constant(idx);
      }
      case WordClass::function: {
        auto idx = *indexed(t.text, "f");
        if (idx >= sig_.function_arities.size()) {
          fail_at(ParseErrorKind::unknown_symbol, t.pos, "unknown function " + t.text);
        }
        auto args = term_list();
        if (args.size() != sig_.function_arities[idx]) {
          fail_at(ParseErrorKind::arity_mismatch, t.pos,
                  t.text + " expects " + std::to_string(sig_.function_arities[idx]) + " argument(s), got " +
                      std::to_string(args.size()));
        }
        return Term::apply(idx, std::move(args));
      }
      default:
        fail_at(ParseErrorKind::syntax, t.pos, "'" + t.text + "' is not a term");
    }
  }

  Formula parse_theta(std::size_t at) {
    if (!opts_.allow_theta) fail_at(ParseErrorKind::unknown_symbol, at, "theta atoms are only allowed in templates");
    expect(Tok::lbracket, "'['");
    const Token& meta = take();
    if (meta.kind != Tok::ident || meta.text != "n") fail_at(ParseErrorKind::syntax, meta.pos, "expected meta-index 'n'");
    expect(Tok::rbracket, "']'");
    expect(Tok::lparen, "'('");
    std::vector<Term> slots{parse_term()};
    while (accept(Tok::comma)) slots.push_back(parse_term());
    expect(Tok::semicolon, "';' before the parameter block");
    const Token& b = take();
    auto block = b.kind == Tok::ident ? indexed(b.text, "ys") : std::nullopt;
    if (!block) fail_at(ParseErrorKind::syntax, b.pos, "expected a parameter block ysN");
    expect(Tok::rparen, "')'");
    if (opts_.theta_arity && slots.size() != opts_.theta_arity) {
      fail_at(ParseErrorKind::arity_mismatch, at,
              "theta[n] has arity " + std::to_string(opts_.theta_arity) + " but is applied to " +
                  std::to_string(slots.size()) + " slot(s)");
    }
    return Formula::theta_apply(std::move(slots), Variable::block(*block));
  }

  Formula term_equation(std::size_t at) {
    Term lhs = parse_term();
    if (peek().kind != Tok::equals) fail(ParseErrorKind::syntax, "expected '=' after term");
    std::size_t eq_pos = peek().pos;
    ++pos_;
    Term rhs = parse_term();
    if (!sig_.identity) fail_at(ParseErrorKind::identity_disabled, eq_pos, "identity is disabled in this signature");
    (void)at;
    return Formula::equal(std::move(lhs), std::move(rhs));
  }

  Formula parse_atom() {
    const Token& t = peek();
    if (t.kind == Tok::theta) {
      ++pos_;
      return parse_theta(t.pos);
    }
    if (t.kind != Tok::ident) {
      fail(ParseErrorKind::syntax,
           t.kind == Tok::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
    switch (classify(t.text)) {
      case WordClass::predicate: {
        ++pos_;
        auto idx = *indexed(t.text, "P");
        if (idx >= sig_.predicate_arities.size()) {
          fail_at(ParseErrorKind::unknown_symbol, t.pos, "unknown predicate " + t.text);
        }
        auto args = term_list();
        if (args.size() != sig_.predicate_arities[idx]) {
          fail_at(ParseErrorKind::arity_mismatch, t.pos,
                  t.text + " expects " + std::to_string(sig_.predicate_arities[idx]) + " argument(s), got " +
                      std::to_string(args.size()));
        }
        return Formula::predicate(idx, std::move(args));
      }
      case WordClass::relation: {
        ++pos_;
        Variable rel = relation_reference(t);
        if (peek().kind == Tok::equals) {
          std::size_t eq_pos = peek().pos;
          ++pos_;
          const Token& r = peek();
          if (r.kind != Tok::ident || classify(r.text) != WordClass::relation) {
            fail(ParseErrorKind::syntax, "expected a second-order variable after '='");
          }
          ++pos_;
          Variable rhs = relation_reference(r);
          if (!sig_.identity) fail_at(ParseErrorKind::identity_disabled, eq_pos, "identity is disabled in this signature");
          if (rhs.arity != rel.arity) {
            fail_at(ParseErrorKind::arity_mismatch, eq_pos,
                    to_string(rel) + " and " + to_string(rhs) + " have different arities");
          }
          return Formula::relation_equal(rel, rhs);
        }
        auto args = term_list();
        if (args.size() != rel.arity) {
          fail_at(ParseErrorKind::arity_mismatch, t.pos,
                  to_string(rel) + " has arity " + std::to_string(rel.arity) + " but is applied to " +
                      std::to_string(args.size()) + " argument(s)");
        }
        return Formula::relation_apply(rel, std::move(args));
      }
      case WordClass::block:
        fail_at(ParseErrorKind::syntax, t.pos, "parameter block used outside a theta atom");
      default:
        return term_equation(t.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  const ParseOptions& opts_;
  NameTable& names_;
  std::vector<Variable> scope_;
};

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig, const ParseOptions& options) {
  NameTable local;
  NameTable* names = options.names;
  if (!names) {
    local.reserve(text);
    names = &local;
  }
  Parser p(Lexer(text).run(), sig, options, *names);
  return p.parse_all();
}

Variable parse_variable(std::string_view text, NameTable* names) {
  NameTable local;
  if (!names) names = &local;
  ParseOptions opts;
  opts.allow_theta = true;
  Signature none;
  Parser p(Lexer(text).run(), none, opts, *names);
  return p.parse_single_variable();
}

}  // namespace rsol
