#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plinth/poly.hpp"

namespace plinth {

// Limits for a Groebner computation. Zero means unlimited.
struct Budget {
  u32 max_degree = 400;
  u64 max_pairs = 2000000;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GbStats {
  u64 pairs_processed = 0;
  u64 pairs_skipped = 0;
  u64 zero_reductions = 0;
  u32 max_degree = 0;
};

// Reduced Groebner basis under the order of its ring: monic, inter-reduced,
// sorted ascending by leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Poly> gens, GbStats stats,
                std::vector<std::vector<Poly>> cofactors = {});

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  const GbStats& stats() const { return stats_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_one(); }
  bool tracks_cofactors() const { return !cof_.empty(); }
  // cofactors()[k][i]: coefficient of input i in gens()[k].
  const std::vector<std::vector<Poly>>& cofactors() const { return cof_; }

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }

 private:
  RingPtr ring_;
  std::vector<Poly> gens_;
  GbStats stats_;
  std::vector<std::vector<Poly>> cof_;
};

// Buchberger with the Gebauer-Moeller criteria. Pairs are processed by
// (degree of lcm, i, j). Inputs must share one ring; zero inputs are ignored.
GroebnerBasis groebner(const std::vector<Poly>& gens, const Budget& budget = {}, bool track_cofactors = false);

Poly normal_form(const Poly& f, const GroebnerBasis& gb);

bool in_ideal(const Poly& f, const std::vector<Poly>& gens, const Budget& budget = {});

// Cofactors c with sum c[i]*gens[i] == f, re-verified by direct arithmetic.
std::optional<std::vector<Poly>> ideal_certificate(const Poly& f, const std::vector<Poly>& gens,
                                                   const Budget& budget = {});

// Rabinowitsch: f is in the radical iff 1 is in (gens, 1 - w*f) for a fresh w.
bool in_radical(const Poly& f, const std::vector<Poly>& gens, const Budget& budget = {});

// Generators of the ideal intersected with the subring omitting `vars`.
std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<std::string>& vars,
                            const Budget& budget = {});

class NotMember : public std::domain_error {
 public:
  NotMember(std::string what, Poly remainder)
      : std::domain_error(std::move(what)), remainder_(std::move(remainder)) {}
  const Poly& remainder() const { return remainder_; }

 private:
  Poly remainder_;
};

// A known member of the subalgebra with its representation over the
// coefficient variables and tags (matched by name).
struct SubalgebraHint {
  Poly element;
  Poly rep;
};

// Membership in the subalgebra C[g_1..g_s], where C is the polynomial ring in
// the `coefficient_vars` of the ambient ring (empty: C = F_p). Built once,
// then queried repeatedly. Hints join the generators under internal tags and
// are rewritten through their representations, so they never change the
// answer; a good hint can shrink the Groebner basis computation a lot.
class SubalgebraReducer {
 public:
  SubalgebraReducer(const std::vector<Poly>& gens, const std::vector<std::string>& tag_names,
                    const std::vector<std::string>& coefficient_vars = {}, const Budget& budget = {},
                    const std::vector<SubalgebraHint>& hints = {});

  // Ring of representations: coefficient variables followed by the tags.
  const RingPtr& rep_ring() const { return rep_ring_; }
  const GroebnerBasis& basis() const { return *gb_; }

  // Representation P with P(g_1..g_s) == f, verified by substitution.
  // Throws NotMember carrying the normal form.
  Poly reduce(const Poly& f) const;
  std::optional<Poly> try_reduce(const Poly& f) const;
  // Expands a representation back into the ambient ring.
  Poly expand(const Poly& rep) const;

 private:
  RingPtr ambient_;
  RingPtr work_;
  RingPtr rep_ring_;
  RingPtr inner_rep_ring_;  // rep_ring_ plus the hint tags
  std::vector<Poly> hint_reps_;
  std::vector<Poly> gens_;
  std::vector<bool> rep_vars_;  // over work_
  std::optional<GroebnerBasis> gb_;

  Poly representation(const Poly& nf) const;
};

Poly subalgebra_reduce(const Poly& f, const std::vector<Poly>& gens, const std::vector<std::string>& tag_names,
                       const std::vector<std::string>& coefficient_vars = {}, const Budget& budget = {});

// Monic gcd through the lcm generating (f) intersected with (g).
Poly gcd_pair(const Poly& f, const Poly& g, const Budget& budget = {});

}  // namespace plinth
