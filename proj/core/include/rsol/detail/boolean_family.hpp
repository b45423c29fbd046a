#pragma once

// Family-file parsing for the Boolean algebra module. Included from
// rsol/boolean.hpp only.

#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace rsol {

namespace detail {

std::string trim(const std::string& s);
// Splits on commas that are not nested in braces or parentheses.
std::vector<std::string> split_top_level(const std::string& s, char sep);

template <typename A>
RegularEntry<typename A::Element> generated_entry(const A& alg, EntryKind kind, typename A::Element bound,
                                                  const std::string& gen, std::size_t line) {
  using E = typename A::Element;
  RegularEntry<E> e;
  e.kind = kind;
  e.bound = std::move(bound);
  e.label = gen + "@" + std::to_string(line);
  if (gen == "atoms") {
    if constexpr (std::is_same_v<A, FiniteCofiniteAlgebra>) {
      e.member = [alg](std::uint64_t i) -> std::optional<E> { return alg.atom(i); };
      e.trusted = true;
      e.all_members_finite = true;
      return e;
    } else if constexpr (std::is_same_v<A, PowersetAlgebra>) {
      std::vector<E> members;
      for (std::uint32_t i = 0; i < alg.atoms(); ++i) members.push_back(alg.atom(i));
      auto out = finite_entry(kind, std::move(members), e.bound, e.label);
      return out;
    } else {
      // Atoms of the free algebra are the minterms.
      std::vector<E> members;
      std::size_t rows = std::size_t{1} << alg.generators();
      for (std::size_t r = 0; r < rows; ++r) {
        E m = alg.zero();
        m.set(r);
        members.push_back(std::move(m));
      }
      return finite_entry(kind, std::move(members), e.bound, e.label);
    }
  }
  if (gen == "all") {
    auto n = alg.size();
    if (!n || *n > (std::uint64_t{1} << 16)) {
      throw PreconditionError("line " + std::to_string(line) + ": generator 'all' needs a small finite algebra");
    }
    std::vector<E> members;
    for (std::uint64_t i = 0; i < *n; ++i) members.push_back(alg.element(i));
    return finite_entry(kind, std::move(members), e.bound, e.label);
  }
  throw ParseError(ParseErrorKind::syntax, 0, "unknown generator '" + gen + "'", line);
}

}  // namespace detail

template <BooleanAlgebra A>
std::vector<RegularEntry<typename A::Element>> parse_family(const A& alg, const std::string& text) {
  using E = typename A::Element;
  std::vector<RegularEntry<E>> out;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = detail::trim(raw);
    if (line.empty()) continue;
    if (line == "complete") {
      auto all = complete_regular_family(alg);
      out.insert(out.end(), std::make_move_iterator(all.begin()), std::make_move_iterator(all.end()));
      continue;
    }
    auto parts = detail::split_top_level(line, ':');
    if (parts.size() != 3) {
      throw ParseError(ParseErrorKind::syntax, 0, "expected 'join|meet : bound : members'", line_no);
    }
    std::string kind_text = detail::trim(parts[0]);
    EntryKind kind;
    if (kind_text == "join") {
      kind = EntryKind::join;
    } else if (kind_text == "meet") {
      kind = EntryKind::meet;
    } else {
      throw ParseError(ParseErrorKind::syntax, 0, "unknown entry kind '" + kind_text + "'", line_no);
    }
    E bound = alg.parse(detail::trim(parts[1]));
    std::string members = detail::trim(parts[2]);
    if (!members.empty() && members.front() == '[') {
      if (members.back() != ']') {
        throw ParseError(ParseErrorKind::syntax, 0, "unterminated list", line_no);
      }
      std::vector<E> elems;
      std::string body = detail::trim(members.substr(1, members.size() - 2));
      if (!body.empty()) {
        for (const auto& item : detail::split_top_level(body, ',')) elems.push_back(alg.parse(detail::trim(item)));
      }
      out.push_back(finite_entry(kind, std::move(elems), std::move(bound), "line " + std::to_string(line_no)));
    } else {
      out.push_back(detail::generated_entry(alg, kind, std::move(bound), members, line_no));
    }
    // Finite entries state their bound; a wrong one is a data error.
    if (out.back().finite()) {
      EntryVerification v = verify_entry(alg, out.back(), 0);
      if (!v.ok) throw PreconditionError("line " + std::to_string(line_no) + ": " + v.message);
    }
  }
  return out;
}

}  // namespace rsol
