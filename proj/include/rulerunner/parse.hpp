#pragma once

#include "rulerunner/error.hpp"
#include "rulerunner/formula.hpp"

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

namespace rulerunner {

namespace detail {

// Recursive descent over
//   or    := and ('|' and)*
//   and   := until ('&' until)*
//   until := unary ('U' until)?
//   unary := ('!' | 'X' | 'W' | 'F' | 'G' | '<>' | '[]') unary | primary
//   primary := 'true' | atom | '(' or ')'
class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse() {
    skip_space();
    if (pos_ == text_.size())
      throw parse_error("empty formula", pos_);
    Formula f = parse_or();
    skip_space();
    if (pos_ != text_.size())
      throw parse_error("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

private:
  Formula parse_or() {
    Formula f = parse_and();
    while (accept("|"))
      f = Formula::disjunction(f, parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_until();
    while (accept("&"))
      f = Formula::conjunction(f, parse_until());
    return f;
  }

  Formula parse_until() {
    Formula f = parse_unary();
    if (accept("U"))
      return Formula::until(f, parse_until());
    return f;
  }

  Formula parse_unary() {
    skip_space();
    if (accept("!")) {
      Formula s = parse_unary();
      return s.op() == Op::Atom ? Formula::neg_atom(s.name()) : Formula::negation(s);
    }
    if (accept("X"))
      return Formula::next(parse_unary());
    if (accept("W"))
      return Formula::weak_next(parse_unary());
    if (accept("F") || accept("<>"))
      return Formula::eventually(parse_unary());
    if (accept("G") || accept("[]"))
      return Formula::always(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    skip_space();
    if (pos_ == text_.size())
      throw parse_error("unexpected end of formula", pos_);
    if (accept("(")) {
      Formula f = parse_or();
      if (!accept(")"))
        throw parse_error("expected ')'", pos_);
      return f;
    }
    const std::size_t start = pos_;
    if (text_[pos_] >= 'a' && text_[pos_] <= 'z') {
      while (pos_ < text_.size() &&
             (std::islower(static_cast<unsigned char>(text_[pos_])) ||
              std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string word(text_.substr(start, pos_ - start));
      return word == "true" ? Formula::truth() : Formula::atom(word);
    }
    throw parse_error("expected a formula, found '" + std::string(1, text_[pos_]) + "'", pos_);
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token)
      return false;
    pos_ += token.size();
    return true;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the ASCII syntax. `!` is accepted on any subformula; call to_nnf()
/// before compiling.
inline Formula parse_formula(std::string_view text) { return detail::FormulaParser(text).parse(); }

/// parse_formula() followed by to_nnf().
inline Formula parse_nnf(std::string_view text) { return to_nnf(parse_formula(text)); }

} // namespace rulerunner
