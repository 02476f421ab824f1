#include "plinth/expr.hpp"

namespace plinth {

namespace {

Expr::NodePtr make(Expr::Op op, Poly value, std::vector<Expr::NodePtr> kids = {}) {
  auto n = std::make_shared<Expr::Node>(std::move(value));
  n->op = op;
  n->kids = std::move(kids);
  return n;
}

void check_ring(const Expr& a, const Expr& b, const char* op) { require_same_ring(a.value(), b.value(), op); }

}  // namespace

Expr Expr::var(const RingPtr& ring, std::size_t index) {
  auto n = std::make_shared<Node>(Poly::var(ring, index));
  n->op = Op::var;
  n->index = index;
  return Expr(n);
}

Expr Expr::var(const RingPtr& ring, std::string_view name) { return var(ring, ring->vars().index(name)); }

Expr Expr::constant(const RingPtr& ring, long long c) {
  auto n = std::make_shared<Node>(Poly::constant(ring, c));
  n->op = Op::scalar;
  n->scalar = n->value.constant_term();
  return Expr(n);
}

Expr Expr::of(const Poly& f) {
  const RingPtr& R = f.ring();
  Expr acc = constant(R, 0);
  std::vector<Expr> vars;
  for (std::size_t v = 0; v < R->nvars(); ++v) vars.push_back(var(R, v));
  bool first = true;
  for (const Term& t : f.terms()) {
    Expr term = constant(R, t.c);
    bool bare = t.c == 1;
    for (std::size_t v = 0; v < R->nvars(); ++v) {
      if (!t.m.e[v]) continue;
      Expr factor = t.m.e[v] == 1 ? vars[v] : pow(vars[v], t.m.e[v]);
      term = bare ? factor : term * factor;
      bare = false;
    }
    acc = first ? term : acc + term;
    first = false;
  }
  return acc;
}

Expr operator+(const Expr& a, const Expr& b) {
  check_ring(a, b, "expr add");
  return Expr(make(Expr::Op::add, a.value() + b.value(), {a.node_, b.node_}));
}

Expr operator-(const Expr& a, const Expr& b) {
  check_ring(a, b, "expr sub");
  return Expr(make(Expr::Op::sub, a.value() - b.value(), {a.node_, b.node_}));
}

Expr operator*(const Expr& a, const Expr& b) {
  check_ring(a, b, "expr mul");
  return Expr(make(Expr::Op::mul, a.value() * b.value(), {a.node_, b.node_}));
}

Expr Expr::operator-() const { return Expr(make(Op::neg, -value(), {node_})); }

Expr pow(const Expr& a, u64 e) {
  if (e == 1) return a;
  auto n = std::make_shared<Expr::Node>(pow(a.value(), e));
  n->op = Expr::Op::pow;
  n->exponent = e;
  n->kids = {a.node_};
  return Expr(n);
}

Expr exact_div(const Expr& a, const Expr& b) {
  check_ring(a, b, "expr exact_div");
  return Expr(make(Expr::Op::div, exact_div(a.value(), b.value()), {a.node_, b.node_}));
}

Expr Expr::compose(std::span<const Expr> images) const {
  if (images.size() != ring()->nvars()) throw std::invalid_argument("compose: need one image per variable");
  std::unordered_map<const Node*, Expr> memo;
  auto rec = [&](auto&& self, const NodePtr& n) -> Expr {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    Expr r = images[0];
    switch (n->op) {
      case Op::var:
        r = images[n->index];
        break;
      case Op::scalar:
        r = constant(images[0].ring(), n->scalar);
        break;
      case Op::add:
        r = self(self, n->kids[0]) + self(self, n->kids[1]);
        break;
      case Op::sub:
        r = self(self, n->kids[0]) - self(self, n->kids[1]);
        break;
      case Op::neg:
        r = -self(self, n->kids[0]);
        break;
      case Op::mul:
        r = self(self, n->kids[0]) * self(self, n->kids[1]);
        break;
      case Op::pow:
        r = pow(self(self, n->kids[0]), n->exponent);
        break;
      case Op::div:
        r = exact_div(self(self, n->kids[0]), self(self, n->kids[1]));
        break;
    }
    memo.emplace(n.get(), r);
    return r;
  };
  if (images.empty()) return *this;
  return rec(rec, node_);
}

ExprEvaluator::ExprEvaluator(RingPtr target, std::vector<Poly> images) : target_(std::move(target)) {
  for (Poly& img : images) {
    if (!same_ring(img.ring(), target_)) throw AmbientMismatch("evaluator: image outside target ring");
    images_.emplace_back(std::move(img));
  }
}

ExprEvaluator::ExprEvaluator(RingPtr target, std::size_t nvars, std::function<Poly(std::size_t)> leaf)
    : target_(std::move(target)), images_(nvars), leaf_(std::move(leaf)) {}

void ExprEvaluator::seed(const Expr& e, Poly image) {
  if (!same_ring(image.ring(), target_)) throw AmbientMismatch("evaluator: seed outside target ring");
  keep_.push_back(e.node());
  memo_.insert_or_assign(e.node().get(), std::move(image));
}

const Poly& ExprEvaluator::leaf(std::size_t i) {
  if (!images_.at(i)) {
    Poly img = leaf_(i);
    if (!same_ring(img.ring(), target_)) throw AmbientMismatch("evaluator: image outside target ring");
    images_[i] = std::move(img);
  }
  return *images_[i];
}

Poly ExprEvaluator::operator()(const Expr& e) {
  if (e.ring()->nvars() != images_.size()) throw std::invalid_argument("evaluator: need one image per variable");
  return eval(e.node());
}

const Poly& ExprEvaluator::eval(const Expr::NodePtr& n) {
  auto it = memo_.find(n.get());
  if (it != memo_.end()) return it->second;
  Poly r(target_);
  switch (n->op) {
    case Expr::Op::var:
      r = leaf(n->index);
      break;
    case Expr::Op::scalar:
      r = Poly::constant(target_, n->scalar);
      break;
    case Expr::Op::add:
      r = eval(n->kids[0]) + eval(n->kids[1]);
      break;
    case Expr::Op::sub:
      r = eval(n->kids[0]) - eval(n->kids[1]);
      break;
    case Expr::Op::neg:
      r = -eval(n->kids[0]);
      break;
    case Expr::Op::mul:
      r = eval(n->kids[0]) * eval(n->kids[1]);
      break;
    case Expr::Op::pow:
      r = pow(eval(n->kids[0]), n->exponent);
      break;
    case Expr::Op::div: {
      Poly den = eval(n->kids[1]);
      // A homomorphism commutes with exact division whenever the image of the
      // divisor is nonzero (the target is a domain).
      if (den.is_zero()) {
        std::vector<Poly> all;
        for (std::size_t i = 0; i < images_.size(); ++i) all.push_back(leaf(i));
        r = substitute(n->value, target_, all);
      } else
        r = exact_div(eval(n->kids[0]), den);
      break;
    }
  }
  keep_.push_back(n);
  return memo_.emplace(n.get(), std::move(r)).first->second;
}

}  // namespace plinth
