#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plinth/poly.hpp"

namespace plinth {

// Parse tree for polynomial expressions over integers and identifiers.
struct ExprAst {
  enum class Kind { number, ident, neg, add, sub, mul, pow };

  Kind kind = Kind::number;
  std::string text;  // digits for numbers, the name for identifiers
  u64 exponent = 0;  // for pow
  std::vector<std::shared_ptr<const ExprAst>> kids;
  std::size_t pos = 0;  // byte offset in the source text
};

using AstPtr = std::shared_ptr<const ExprAst>;

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : std::invalid_argument("at column " + std::to_string(pos + 1) + ": " + msg), pos_(pos) {}
  std::size_t pos() const { return pos_; }

 private:
  std::size_t pos_;
};

// Precedence: ^ binds tightest, then unary minus, then *, then binary + and -.
// All binary operators are left associative. An empty `allowed` set accepts
// any identifier.
AstPtr parse_expr(const std::string& text, const std::set<std::string>& allowed = {});

// Minimal-parenthesis rendering; parse(print(a)) prints identically.
std::string print_expr(const AstPtr& ast);

std::set<std::string> identifiers(const AstPtr& ast);

// Integer literal reduced mod p.
u32 literal_mod(const std::string& digits, u32 p);

// Folds the tree into any type with +, -, *, unary - and pow(V, u64).
template <class V, class NumFn, class IdFn>
V lower(const AstPtr& ast, const NumFn& num, const IdFn& id) {
  switch (ast->kind) {
    case ExprAst::Kind::number:
      return num(ast->text);
    case ExprAst::Kind::ident:
      return id(ast->text);
    case ExprAst::Kind::neg:
      return -lower<V>(ast->kids[0], num, id);
    case ExprAst::Kind::add:
      return lower<V>(ast->kids[0], num, id) + lower<V>(ast->kids[1], num, id);
    case ExprAst::Kind::sub:
      return lower<V>(ast->kids[0], num, id) - lower<V>(ast->kids[1], num, id);
    case ExprAst::Kind::mul:
      return lower<V>(ast->kids[0], num, id) * lower<V>(ast->kids[1], num, id);
    case ExprAst::Kind::pow:
      return pow(lower<V>(ast->kids[0], num, id), ast->exponent);
  }
  throw std::logic_error("unreachable");
}

// Expands an expression whose identifiers are variables of `ring` or keys of `env`.
Poly to_poly(const AstPtr& ast, const RingPtr& ring, const std::map<std::string, Poly>& env = {});

// parse_expr + to_poly with the ring's variable names allowed.
Poly parse_poly(const std::string& text, const RingPtr& ring);

}  // namespace plinth
