#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plinth/expr.hpp"
#include "plinth/poly.hpp"

namespace plinth {

// Endomorphism of F_p[x] given by the images of the variables. When recipes
// are present they are used to apply the morphism to other recipes and to
// compose, instead of substituting expanded images.
class RingMorphism {
 public:
  RingMorphism(RingPtr ring, std::vector<Poly> images);
  explicit RingMorphism(std::vector<Expr> recipes);

  static RingMorphism identity(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(std::size_t i) const { return images_.at(i); }
  bool has_recipes() const { return !recipes_.empty(); }
  const std::vector<Expr>& recipes() const { return recipes_; }

  Poly apply(const Poly& f) const;
  Poly apply(const Expr& e) const;
  std::vector<Poly> apply(const std::vector<Expr>& es) const;
  Poly delta(const Poly& f) const { return apply(f) - f; }
  Poly delta(const Expr& e) const { return apply(e) - e.value(); }
  bool fixes(const Expr& e) const { return apply(e) == e.value(); }

 private:
  RingPtr ring_;
  std::vector<Poly> images_;
  std::vector<Expr> recipes_;
};

// compose(m1, m2) applies m2 first: x -> m1(m2(x)).
RingMorphism compose(const RingMorphism& m1, const RingMorphism& m2);
RingMorphism power(const RingMorphism& m, u64 e);
bool equal(const RingMorphism& a, const RingMorphism& b);

class NotInvariant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A coaction eps: B -> B[T] on B = F_p[x_1..x_n], given by recipes for
// eps(x_i) over B[T] (T is the last variable of ring_t()).
class Coaction {
 public:
  Coaction(RingPtr base, std::vector<Expr> recipes);

  const RingPtr& base() const { return base_; }
  const RingPtr& ring_t() const { return ring_t_; }
  std::size_t t_index() const { return base_->nvars(); }
  const std::vector<Expr>& recipes() const { return recipes_; }
  const Poly& image(std::size_t i) const { return recipes_.at(i).value(); }

  // eps(f) in B[T] for a polynomial or a recipe over B.
  Poly apply(const Poly& f) const;
  Poly apply(const Expr& e) const;
  bool fixes(const Expr& e) const;

 private:
  RingPtr base_;
  RingPtr ring_t_;
  std::vector<Expr> recipes_;
};

struct AxiomReport {
  bool a1 = true;
  bool a2 = true;
  bool a2_checked = false;
  std::vector<std::string> failures;
  bool ok() const { return a1 && a2; }
};

// (A1): eps(x)|_{T=0} = x. (A2): sum_i eps(a_i) U^i = sum_i a_i (T+U)^i where
// eps(x) = sum_i a_i T^i.
AxiomReport check_coaction(const Coaction& c, bool check_a2 = true);

// eps_h: x -> eps(x)|_{T=h} for an invariant h. Throws NotInvariant otherwise.
RingMorphism specialize(const Coaction& c, const Expr& h);

// q = c^p - (ab)^(p-1) c, after checking m(c) = c + ab and that a, b are
// fixed; the result is verified to be fixed. Throws std::domain_error on a
// violated precondition.
Expr schreier_element(const RingMorphism& m, const Expr& c, const Expr& a, const Expr& b);

struct PlinthWitness {
  Expr s;  // preimage
  Expr u;  // claimed element of the plinth ideal
};

// delta(s) == u and m(u) == u.
bool plinth_witness(const RingMorphism& m, const PlinthWitness& w);

// Basis of {f : deg f <= D, m(f) = f}. Each element is m(f) = f verified and
// the list is linearly independent (each one has a distinct new monomial).
std::vector<Poly> fixed_space(const RingMorphism& m, u32 D, std::size_t max_monomials = 200000);

// Monomials of total degree <= D, by degree and then descending ring order.
std::vector<Monomial> monomials_up_to(const Ring& ring, u32 D);

}  // namespace plinth
