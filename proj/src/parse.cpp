#include "plinth/parse.hpp"

#include <cctype>

namespace plinth {

namespace {

class Parser {
 public:
  Parser(const std::string& s, const std::set<std::string>& allowed) : s_(s), allowed_(allowed) {}

  AstPtr parse() {
    skip();
    if (i_ == s_.size()) throw ParseError("empty expression", i_);
    AstPtr e = sum();
    skip();
    if (i_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    return e;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  static AstPtr node(ExprAst::Kind k, std::size_t pos, std::vector<AstPtr> kids) {
    auto n = std::make_shared<ExprAst>();
    n->kind = k;
    n->pos = pos;
    n->kids = std::move(kids);
    return n;
  }

  AstPtr sum() {
    AstPtr lhs = product();
    for (;;) {
      skip();
      std::size_t at = i_;
      if (eat('+'))
        lhs = node(ExprAst::Kind::add, at, {lhs, product()});
      else if (eat('-'))
        lhs = node(ExprAst::Kind::sub, at, {lhs, product()});
      else
        return lhs;
    }
  }

  AstPtr product() {
    AstPtr lhs = unary();
    for (;;) {
      skip();
      std::size_t at = i_;
      if (!eat('*')) return lhs;
      lhs = node(ExprAst::Kind::mul, at, {lhs, unary()});
    }
  }

  AstPtr unary() {
    skip();
    std::size_t at = i_;
    if (eat('-')) return node(ExprAst::Kind::neg, at, {unary()});
    return power();
  }

  AstPtr power() {
    AstPtr base = atom();
    for (;;) {
      skip();
      std::size_t at = i_;
      if (!eat('^')) return base;
      skip();
      if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
        throw ParseError("exponent must be a non-negative integer literal", i_);
      u64 e = 0;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        e = e * 10 + static_cast<u64>(s_[i_] - '0');
        if (e > 1000000) throw ParseError("exponent too large", at);
        ++i_;
      }
      auto n = std::make_shared<ExprAst>();
      n->kind = ExprAst::Kind::pow;
      n->pos = at;
      n->exponent = e;
      n->kids = {base};
      base = n;
    }
  }

  AstPtr atom() {
    skip();
    std::size_t at = i_;
    if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      AstPtr e = sum();
      if (!eat(')')) throw ParseError("expected ')'", i_);
      return e;
    }
    auto n = std::make_shared<ExprAst>();
    n->pos = at;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      n->kind = ExprAst::Kind::number;
      std::size_t b = s_.find_first_not_of('0', at);
      n->text = (b == std::string::npos || b >= i_) ? "0" : s_.substr(b, i_ - b);
      return n;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      n->kind = ExprAst::Kind::ident;
      n->text = s_.substr(at, i_ - at);
      if (!allowed_.empty() && !allowed_.count(n->text))
        throw ParseError("unknown identifier '" + n->text + "'", at);
      return n;
    }
    throw ParseError(std::string("unexpected '") + c + "'", at);
  }

  const std::string& s_;
  const std::set<std::string>& allowed_;
  std::size_t i_ = 0;
};

int prec(const ExprAst& a) {
  switch (a.kind) {
    case ExprAst::Kind::add:
    case ExprAst::Kind::sub:
      return 1;
    case ExprAst::Kind::mul:
      return 2;
    case ExprAst::Kind::neg:
      return 3;
    case ExprAst::Kind::pow:
      return 4;
    default:
      return 5;
  }
}

void print_rec(const ExprAst& a, std::string& out) {
  auto wrap = [&out](const ExprAst& k, bool paren) {
    if (paren) out += "(";
    print_rec(k, out);
    if (paren) out += ")";
  };
  switch (a.kind) {
    case ExprAst::Kind::number:
    case ExprAst::Kind::ident:
      out += a.text;
      return;
    case ExprAst::Kind::neg:
      out += "-";
      wrap(*a.kids[0], prec(*a.kids[0]) < 3);
      return;
    case ExprAst::Kind::add:
    case ExprAst::Kind::sub:
      wrap(*a.kids[0], prec(*a.kids[0]) < 1);
      out += a.kind == ExprAst::Kind::add ? " + " : " - ";
      wrap(*a.kids[1], prec(*a.kids[1]) <= 1);
      return;
    case ExprAst::Kind::mul:
      wrap(*a.kids[0], prec(*a.kids[0]) < 2);
      out += "*";
      wrap(*a.kids[1], prec(*a.kids[1]) <= 2);
      return;
    case ExprAst::Kind::pow:
      wrap(*a.kids[0], prec(*a.kids[0]) < 4);
      out += "^" + std::to_string(a.exponent);
      return;
  }
}

void collect(const ExprAst& a, std::set<std::string>& out) {
  if (a.kind == ExprAst::Kind::ident) out.insert(a.text);
  for (const auto& k : a.kids) collect(*k, out);
}

}  // namespace

AstPtr parse_expr(const std::string& text, const std::set<std::string>& allowed) {
  return Parser(text, allowed).parse();
}

std::string print_expr(const AstPtr& ast) {
  std::string out;
  print_rec(*ast, out);
  return out;
}

std::set<std::string> identifiers(const AstPtr& ast) {
  std::set<std::string> out;
  collect(*ast, out);
  return out;
}

u32 literal_mod(const std::string& digits, u32 p) {
  u64 r = 0;
  for (char c : digits) r = (r * 10 + static_cast<u64>(c - '0')) % p;
  return static_cast<u32>(r);
}

Poly to_poly(const AstPtr& ast, const RingPtr& ring, const std::map<std::string, Poly>& env) {
  auto num = [&ring](const std::string& d) { return Poly::constant(ring, literal_mod(d, ring->p())); };
  auto id = [&ring, &env](const std::string& name) {
    auto it = env.find(name);
    if (it != env.end()) return it->second;
    if (ring->vars().find(name) == ring->nvars()) throw std::invalid_argument("unknown identifier '" + name + "'");
    return Poly::var(ring, name);
  };
  return lower<Poly>(ast, num, id);
}

Poly parse_poly(const std::string& text, const RingPtr& ring) {
  const auto& names = ring->vars().names();
  std::set<std::string> allowed(names.begin(), names.end());
  if (allowed.empty()) allowed.insert("");
  return to_poly(parse_expr(text, allowed), ring);
}

}  // namespace plinth
