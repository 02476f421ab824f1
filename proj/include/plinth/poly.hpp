#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plinth/ring.hpp"

namespace plinth {

struct Term {
  Monomial m;
  u32 c = 0;
};

// Sparse polynomial over F_p. Terms are nonzero and sorted strictly
// descending under the ring's monomial order, so equality is term-wise.
class Poly {
 public:
  explicit Poly(RingPtr ring);

  static Poly constant(RingPtr ring, long long c);
  static Poly var(RingPtr ring, std::size_t index);
  static Poly var(RingPtr ring, std::string_view name);
  static Poly monomial(RingPtr ring, const Monomial& m, u32 c = 1);
  // Sorts, merges duplicate monomials and drops zero coefficients.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].m.deg == 0 && terms_[0].c == 1; }
  u32 constant_term() const;
  const Term& lead() const;

  u32 total_degree() const;
  u32 degree_in(std::size_t v) const;
  // True when no term involves a variable v with !allowed[v].
  bool only_uses(const std::vector<bool>& allowed) const;
  bool uses(std::size_t v) const { return degree_in(v) > 0; }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);

  Poly scaled(u32 c) const;
  Poly times_term(const Monomial& m, u32 c) const;
  Poly monic() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Canonical text, e.g. "x1*x3 + 4*x2^5".
  std::string str() const;

  // Re-expresses the polynomial over `target`, matching variables by name.
  Poly in_ring(const RingPtr& target) const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;

  friend Poly operator+(const Poly&, const Poly&);
  friend Poly operator-(const Poly&, const Poly&);
  friend Poly operator*(const Poly&, const Poly&);
  friend class PolyBuilder;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);

void require_same_ring(const Poly& a, const Poly& b, const char* op);

Poly pow(const Poly& f, u64 e);
// f^(p^k), computed termwise.
Poly frobenius(const Poly& f, unsigned k = 1);

Poly diff(const Poly& f, std::size_t v);
Poly diff(const Poly& f, std::string_view v);

// (P_0, P_1, ...) with P(v + u) = sum_i P_i(v) u^i.
std::vector<Poly> taylor_coeffs(const Poly& P, std::size_t v);

// (c_0, c_1, ...) free of v with P = sum_i c_i v^i.
std::vector<Poly> coefficients(const Poly& P, std::size_t v);

// Image of f under the homomorphism sending variable i of f's ring to images[i]
// (all images live in `target`).
Poly substitute(const Poly& f, const RingPtr& target, std::span<const Poly> images);
// Same-ring substitution; variables missing from `assignment` map to themselves.
Poly substitute(const Poly& f, const std::map<std::string, Poly>& assignment);

class NotDivisible : public std::domain_error {
 public:
  NotDivisible(std::string what, Poly remainder)
      : std::domain_error(std::move(what)), remainder_(std::move(remainder)) {}
  const Poly& remainder() const { return remainder_; }

 private:
  Poly remainder_;
};

struct Division {
  std::vector<Poly> quotients;  // one per divisor (empty when not requested)
  Poly remainder;
};

// Full multivariate division of f by the divisors under the ring order. A
// term is reduced by the first divisor whose leading monomial divides it.
Division divide(const Poly& f, std::span<const Poly> divisors, bool want_quotients = true);

// q with q*d == f; throws NotDivisible carrying the remainder otherwise.
Poly exact_div(const Poly& f, const Poly& d);
bool divides(const Poly& d, const Poly& f);

FieldElem evaluate(const Poly& f, std::span<const u32> point);
FieldElem evaluate(const Poly& f, const std::map<std::string, u32>& point);

}  // namespace plinth
