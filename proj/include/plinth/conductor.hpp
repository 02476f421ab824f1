#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plinth/groebner.hpp"
#include "plinth/poly.hpp"
#include "plinth/report.hpp"

namespace plinth::conductor {

// The ideal (Y0 - y^p, Y1 - f) in S[y, Y0, Y1], where S is generated by the
// other variables of f's ring. The Groebner basis eliminates y.
class RelationIdeal {
 public:
  RelationIdeal(const Poly& f, std::string_view y, const Budget& budget = {});

  const Poly& f() const { return f_; }
  std::size_t y() const { return y_; }
  // Y0, Y1 followed by the variables of S.
  const RingPtr& tag_ring() const { return tags_; }
  const GroebnerBasis& basis() const { return *gb_; }

  // lambda with lambda(y^p, f) == target, as the y-free normal form.
  std::optional<Poly> express(const Poly& target) const;
  // Throws NotMember carrying the normal form when it involves y.
  Poly require(const Poly& target) const;
  Poly expand(const Poly& lambda) const;
  // Normal form of a tag polynomial modulo the relations among y^p and f.
  Poly reduce(const Poly& lambda) const;

 private:
  Poly f_;
  std::size_t y_;
  RingPtr work_;
  RingPtr tags_;
  std::optional<GroebnerBasis> gb_;
  std::vector<bool> y_free_;
};

struct Representation {
  Poly lambda;  // over tag_ring(): Y0 stands for y^p, Y1 for f
  Poly target;  // (f')^p y^l
  u32 l = 0;
};

// lambda(y^p, f) == (f')^p y^l; the identity is re-verified by substitution.
Representation represent(const Poly& f, std::string_view y, u32 l, const Budget& budget = {});
Representation represent(const RelationIdeal& rel, u32 l);

// (g')^p y^l = sum_i f[i] g^i with g = y^d + xi_1 y + ... + xi_(d-1) y^(d-1)
// over S = F_p[xi_1..xi_(d-1)] and every f[i] in S[y^p].
struct Decomposition {
  u32 d = 0, p = 0, l = 0;
  RingPtr ring;  // xi1 .. xi(d-1), y
  Poly g, target;
  std::vector<Poly> f;
  std::vector<u32> xi_degree;
  bool identity = false;  // the sum reproduces the target, f[i] in S[y^p]
  bool bounds = false;    // xi-degree of f[i] is at most p - i
  bool unique = false;    // independent ansatz; a reversed solve agrees
};

// Throws std::invalid_argument when p divides d, std::logic_error when the
// linear system has no solution.
Decomposition generic_decomposition(u32 d, u32 p, u32 l);

// sum_i f[i](Y0) Y1^i over the tag ring of a RelationIdeal for dec.g, with
// y^p written as Y0.
Poly as_tags(const Decomposition& dec, const RingPtr& tags);

struct SuiteOptions {
  u32 p = 3;
  u32 d = 2;
  u32 l = 0;
  std::vector<std::string> checks;
  Budget budget;
};

std::vector<CheckRecord> run_suite(const SuiteOptions& opt);

}  // namespace plinth::conductor
