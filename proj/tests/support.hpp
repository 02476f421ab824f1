#pragma once

#include <random>

#include "plinth/poly.hpp"

namespace plinth::testing {

inline Poly random_poly(const RingPtr& R, std::mt19937_64& rng, std::size_t max_terms, u32 max_deg) {
  std::uniform_int_distribution<std::size_t> nt(0, max_terms);
  std::uniform_int_distribution<u32> deg(0, max_deg);
  std::uniform_int_distribution<u32> coef(1, R->p() - 1);
  std::uniform_int_distribution<std::size_t> var(0, R->nvars() - 1);
  std::vector<Term> terms;
  std::size_t n = nt(rng);
  for (std::size_t k = 0; k < n; ++k) {
    Monomial m;
    u32 d = deg(rng);
    for (u32 s = 0; s < d; ++s) ++m.e[var(rng)];
    m.deg = d;
    terms.push_back(Term{m, coef(rng)});
  }
  return Poly::from_terms(R, std::move(terms));
}

inline Poly random_nonzero(const RingPtr& R, std::mt19937_64& rng, std::size_t max_terms, u32 max_deg) {
  for (;;) {
    Poly f = random_poly(R, rng, max_terms, max_deg);
    if (!f.is_zero()) return f;
  }
}

}  // namespace plinth::testing
