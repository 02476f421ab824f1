#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "plinth/poly.hpp"

namespace plinth {

// A polynomial together with a recipe (a DAG over the ring's variables using
// +, -, *, powers and exact division) that produces it. Applying a ring
// homomorphism to an Expr evaluates the recipe at the images of the variables,
// which keeps intermediate sizes close to those of the final result.
class Expr {
 public:
  enum class Op { var, scalar, add, sub, neg, mul, pow, div };

  struct Node {
    Op op = Op::scalar;
    std::size_t index = 0;  // variable index for var
    u32 scalar = 0;
    u64 exponent = 0;
    std::vector<std::shared_ptr<const Node>> kids;
    Poly value;  // the node's polynomial in the source ring

    explicit Node(Poly v) : value(std::move(v)) {}
  };
  using NodePtr = std::shared_ptr<const Node>;

  static Expr var(const RingPtr& ring, std::size_t index);
  static Expr var(const RingPtr& ring, std::string_view name);
  static Expr constant(const RingPtr& ring, long long c);
  // Builds a recipe for an already expanded polynomial (a sum of terms).
  static Expr of(const Poly& f);

  const Poly& value() const { return node_->value; }
  const RingPtr& ring() const { return node_->value.ring(); }
  const NodePtr& node() const { return node_; }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  Expr operator-() const;
  friend Expr pow(const Expr& a, u64 e);
  // Exact quotient; throws NotDivisible when b does not divide a.
  friend Expr exact_div(const Expr& a, const Expr& b);

  // Rebuilds the recipe with each variable replaced by a recipe from `images`.
  Expr compose(std::span<const Expr> images) const;

 private:
  explicit Expr(NodePtr n) : node_(std::move(n)) {}
  NodePtr node_;
};

// Evaluates recipes under the homomorphism x_i -> images[i] (all in `target`).
// Memoized across calls on the same evaluator.
class ExprEvaluator {
 public:
  ExprEvaluator(RingPtr target, std::vector<Poly> images);
  // Variable images are requested from `leaf` only when a recipe reaches them.
  ExprEvaluator(RingPtr target, std::size_t nvars, std::function<Poly(std::size_t)> leaf);

  // Fixes the image of a node; evaluation stops there. The caller vouches for
  // `image` being the true image of e.
  void seed(const Expr& e, Poly image);

  Poly operator()(const Expr& e);
  const RingPtr& target() const { return target_; }

 private:
  const Poly& eval(const Expr::NodePtr& n);
  const Poly& leaf(std::size_t i);

  RingPtr target_;
  std::vector<std::optional<Poly>> images_;
  std::function<Poly(std::size_t)> leaf_;
  std::unordered_map<const Expr::Node*, Poly> memo_;
  std::vector<Expr::NodePtr> keep_;
};

}  // namespace plinth
