#include "plinth/morphism.hpp"

#include <algorithm>
#include <unordered_map>

#include "plinth/groebner.hpp"
#include "plinth/linalg.hpp"

namespace plinth {

RingMorphism::RingMorphism(RingPtr ring, std::vector<Poly> images)
    : ring_(std::move(ring)), images_(std::move(images)) {
  if (images_.size() != ring_->nvars()) throw std::invalid_argument("morphism: need one image per variable");
  for (const Poly& p : images_)
    if (!same_ring(p.ring(), ring_)) throw AmbientMismatch("morphism: image outside ring");
}

RingMorphism::RingMorphism(std::vector<Expr> recipes) : recipes_(std::move(recipes)) {
  if (recipes_.empty()) throw std::invalid_argument("morphism: no recipes");
  ring_ = recipes_[0].ring();
  if (recipes_.size() != ring_->nvars()) throw std::invalid_argument("morphism: need one recipe per variable");
  for (const Expr& e : recipes_) {
    if (!same_ring(e.ring(), ring_)) throw AmbientMismatch("morphism: recipe outside ring");
    images_.push_back(e.value());
  }
}

RingMorphism RingMorphism::identity(const RingPtr& ring) {
  std::vector<Expr> r;
  for (std::size_t v = 0; v < ring->nvars(); ++v) r.push_back(Expr::var(ring, v));
  if (r.empty()) return RingMorphism(ring, {});
  return RingMorphism(std::move(r));
}

Poly RingMorphism::apply(const Poly& f) const {
  if (!same_ring(f.ring(), ring_)) throw AmbientMismatch("apply: polynomial outside ring");
  return substitute(f, ring_, images_);
}

Poly RingMorphism::apply(const Expr& e) const {
  if (!same_ring(e.ring(), ring_)) throw AmbientMismatch("apply: recipe outside ring");
  ExprEvaluator ev(ring_, images_);
  return ev(e);
}

std::vector<Poly> RingMorphism::apply(const std::vector<Expr>& es) const {
  ExprEvaluator ev(ring_, images_);
  std::vector<Poly> out;
  for (const Expr& e : es) {
    if (!same_ring(e.ring(), ring_)) throw AmbientMismatch("apply: recipe outside ring");
    out.push_back(ev(e));
  }
  return out;
}

RingMorphism compose(const RingMorphism& m1, const RingMorphism& m2) {
  if (!same_ring(m1.ring(), m2.ring())) throw AmbientMismatch("compose: morphisms on different rings");
  std::vector<Poly> imgs;
  if (m2.has_recipes()) {
    imgs = m1.apply(m2.recipes());
  } else {
    for (const Poly& p : m2.images()) imgs.push_back(m1.apply(p));
  }
  return RingMorphism(m1.ring(), std::move(imgs));
}

RingMorphism power(const RingMorphism& m, u64 e) {
  RingMorphism acc = RingMorphism::identity(m.ring());
  if (e == 0) return acc;
  acc = RingMorphism(m.ring(), m.images());
  for (u64 k = 1; k < e; ++k) acc = compose(acc, m);
  return acc;
}

bool equal(const RingMorphism& a, const RingMorphism& b) {
  return same_ring(a.ring(), b.ring()) && a.images() == b.images();
}

Coaction::Coaction(RingPtr base, std::vector<Expr> recipes) : base_(std::move(base)), recipes_(std::move(recipes)) {
  if (recipes_.size() != base_->nvars()) throw std::invalid_argument("coaction: need one recipe per variable");
  ring_t_ = recipes_[0].ring();
  if (ring_t_->nvars() != base_->nvars() + 1) throw std::invalid_argument("coaction: recipes must live in B[T]");
  for (std::size_t v = 0; v < base_->nvars(); ++v)
    if (ring_t_->vars().name(v) != base_->vars().name(v))
      throw std::invalid_argument("coaction: B[T] must extend B's variable table");
  for (const Expr& e : recipes_)
    if (!same_ring(e.ring(), ring_t_)) throw AmbientMismatch("coaction: recipes in different rings");
}

Poly Coaction::apply(const Poly& f) const {
  std::vector<Poly> imgs;
  for (const Expr& e : recipes_) imgs.push_back(e.value());
  return substitute(f, ring_t_, imgs);
}

Poly Coaction::apply(const Expr& e) const {
  std::vector<Poly> imgs;
  for (const Expr& r : recipes_) imgs.push_back(r.value());
  ExprEvaluator ev(ring_t_, std::move(imgs));
  return ev(e);
}

bool Coaction::fixes(const Expr& e) const { return apply(e) == e.value().in_ring(ring_t_); }

AxiomReport check_coaction(const Coaction& c, bool check_a2) {
  AxiomReport rep;
  const RingPtr& BT = c.ring_t();
  std::size_t n = c.base()->nvars();
  std::vector<Poly> at_zero;
  for (std::size_t v = 0; v < n; ++v) at_zero.push_back(Poly::var(BT, v));
  at_zero.push_back(Poly(BT));
  for (std::size_t i = 0; i < n; ++i) {
    Poly z = substitute(c.image(i), BT, at_zero);
    if (z != Poly::var(BT, i)) {
      rep.a1 = false;
      rep.failures.push_back("(A1) fails for " + c.base()->vars().name(i));
    }
  }
  if (!check_a2) return rep;
  rep.a2_checked = true;
  std::string u = fresh_name(BT->vars(), "U");
  RingPtr BTU = BT->extended({u});
  Poly T = Poly::var(BTU, n), U = Poly::var(BTU, n + 1);
  // Left side: the recipe of eps(x_i) with x_j -> eps(x_j) and T -> U.
  std::vector<Poly> left_images;
  for (std::size_t j = 0; j < n; ++j) left_images.push_back(c.image(j).in_ring(BTU));
  left_images.push_back(U);
  ExprEvaluator left(BTU, left_images);
  // Right side: eps(x_i) with T -> T + U.
  std::vector<Poly> right_images;
  for (std::size_t j = 0; j < n; ++j) right_images.push_back(Poly::var(BTU, j));
  right_images.push_back(T + U);
  for (std::size_t i = 0; i < n; ++i) {
    Poly lhs = left(c.recipes()[i]);
    Poly rhs = substitute(c.image(i), BTU, right_images);
    if (lhs != rhs) {
      rep.a2 = false;
      rep.failures.push_back("(A2) fails for " + c.base()->vars().name(i));
    }
  }
  return rep;
}

RingMorphism specialize(const Coaction& c, const Expr& h) {
  if (!same_ring(h.ring(), c.base())) throw AmbientMismatch("specialize: h outside the base ring");
  if (!c.fixes(h)) throw NotInvariant("specialize: h is not an invariant of the coaction");
  std::vector<Expr> leaves;
  for (std::size_t v = 0; v < c.base()->nvars(); ++v) leaves.push_back(Expr::var(c.base(), v));
  leaves.push_back(h);
  std::vector<Expr> recipes;
  for (const Expr& e : c.recipes()) recipes.push_back(e.compose(leaves));
  return RingMorphism(std::move(recipes));
}

Expr schreier_element(const RingMorphism& m, const Expr& c, const Expr& a, const Expr& b) {
  Expr ab = a * b;
  if (ab.value().is_zero()) throw std::domain_error("schreier_element: a*b must be nonzero");
  if (!m.fixes(a) || !m.fixes(b)) throw std::domain_error("schreier_element: a and b must be invariant");
  if (m.apply(c) != c.value() + ab.value()) throw std::domain_error("schreier_element: m(c) != c + ab");
  u32 p = c.ring()->p();
  Expr q = pow(c, p) - pow(ab, p - 1) * c;
  if (!m.fixes(q)) throw std::logic_error("schreier_element: q is not invariant");
  return q;
}

bool plinth_witness(const RingMorphism& m, const PlinthWitness& w) {
  std::vector<Poly> img = m.apply(std::vector<Expr>{w.s, w.u});
  return img[0] - w.s.value() == w.u.value() && img[1] == w.u.value();
}

std::vector<Monomial> monomials_up_to(const Ring& ring, u32 D) {
  std::size_t n = ring.nvars();
  std::vector<Monomial> out;
  std::vector<Monomial> layer{Monomial{}};
  out.push_back(Monomial{});
  for (u32 d = 1; d <= D; ++d) {
    std::vector<Monomial> next;
    for (const Monomial& m : layer) {
      // Extend only at or after the last used variable to avoid duplicates.
      std::size_t last = 0;
      for (std::size_t v = 0; v < n; ++v)
        if (m.e[v]) last = v;
      for (std::size_t v = last; v < n; ++v) {
        Monomial x = m;
        ++x.e[v];
        ++x.deg;
        next.push_back(x);
      }
    }
    std::sort(next.begin(), next.end(), [&ring](const Monomial& a, const Monomial& b) { return ring.compare(a, b) > 0; });
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<Poly> fixed_space(const RingMorphism& m, u32 D, std::size_t max_monomials) {
  const RingPtr& R = m.ring();
  std::size_t n = R->nvars();
  std::vector<Monomial> monos = monomials_up_to(*R, D);
  if (monos.size() > max_monomials)
    throw BudgetExceeded("fixed_space: " + std::to_string(monos.size()) + " monomials exceed the budget");
  std::unordered_map<Monomial, Poly, MonomialHash> img(monos.size() * 2, MonomialHash{n});
  img.emplace(Monomial{}, Poly::constant(R, 1));
  PolyEchelon E(R);
  for (std::size_t k = 0; k < monos.size(); ++k) {
    const Monomial& mono = monos[k];
    if (mono.deg > 0) {
      std::size_t v = 0;
      while (!mono.e[v]) ++v;
      Monomial rest = mono;
      --rest.e[v];
      --rest.deg;
      img.emplace(mono, img.at(rest) * m.image(v));
    }
    E.add(img.at(mono) - Poly::monomial(R, mono), k);
  }
  std::vector<Poly> out;
  for (const Combination& rel : E.relations()) {
    std::vector<Term> terms;
    for (const auto& [k, c] : rel) terms.push_back(Term{monos[k], c});
    Poly f = Poly::from_terms(R, std::move(terms)).monic();
    if (m.apply(f) != f) throw std::logic_error("fixed_space: kernel element is not fixed");
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace plinth
