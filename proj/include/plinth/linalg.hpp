#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "plinth/poly.hpp"

namespace plinth {

// Sparse combination sum c_k * v_k keyed by the label k of each vector.
using Combination = std::map<std::size_t, u32>;

// Row echelon form over F_p of polynomials viewed as coefficient vectors
// (one coordinate per monomial). Pivots are leading monomials.
class PolyEchelon {
 public:
  explicit PolyEchelon(RingPtr ring) : ring_(std::move(ring)) {}

  // Inserts v with label `label`. Returns false when v depends on earlier
  // vectors; the dependency is appended to relations().
  bool add(const Poly& v, std::size_t label);

  // Coefficients expressing `target` in the span, if it lies there.
  std::optional<Combination> solve(const Poly& target) const;

  std::size_t rank() const { return rows_.size(); }
  // Each relation r satisfies sum r[k] * v_k == 0 and is nonzero.
  const std::vector<Combination>& relations() const { return relations_; }

 private:
  struct Row {
    Poly v;
    Combination comb;
  };

  void reduce(Poly& v, Combination& comb) const;

  RingPtr ring_;
  std::vector<Row> rows_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivot_;
  std::vector<Combination> relations_;
};

}  // namespace plinth
