#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plinth/conductor.hpp"
#include "plinth/groebner.hpp"
#include "plinth/morphism.hpp"
#include "plinth/report.hpp"

namespace plinth::nagata {

struct Input {
  u32 p = 2;
  std::vector<std::string> zvars{"z"};
  std::string a = "z";
  std::string theta = "y^2";
  std::string F = "f";
};

// z1 .. zn.
std::vector<std::string> default_zvars(std::size_t n);

// phi(x) = x + (theta(y) - theta(y + aF))/a, phi(y) = y + aF over
// R = F_p[z..], with f = ax + theta(y) and F in R[f].
struct Family {
  Input input;
  u32 p = 2;
  RingPtr B;   // x, y, z..
  RingPtr R;   // z..
  RingPtr Ry;  // y, z..
  RingPtr Rf;  // f, z..
  Poly a, theta;  // in B
  Poly F_rep;     // in Rf
  Poly f, F;
  // d = gcd(a, theta'), monic; b = a/d.
  Poly d, b;
  // theta = sum s[i] y^i; t[i] = s[i]/d when p does not divide i, else 0.
  std::vector<Poly> s, t;
  Poly rho, theta_star;  // in B
  RingMorphism phi;
  std::string order_route;  // how power(phi, p) == id was established

  bool b_unit() const { return b.is_constant(); }
};

using FamilyPtr = std::shared_ptr<const Family>;

// Throws std::invalid_argument on bad input and std::logic_error when an
// identity of the construction fails.
FamilyPtr build(const Input& in, const Budget& budget = {});

struct Invariants {
  Poly q, q1;
  bool q_fixed = false, q1_fixed = false;
  // q1 - bx - rho is divisible by d^(p-2) (bF)^(p-1) y.
  bool containment = false;
};

Invariants invariants(const Family& fam);

struct SecondInvariants {
  conductor::Representation lambda;  // rho'(y)^p y = lambda(y^p, rho)
  Poly lambda_at;                    // lambda(q, q1)
  Poly qt1, q2;
  bool qt1_fixed = false, q2_fixed = false;
};

SecondInvariants lambda_and_q2(const Family& fam, const Invariants& inv, const Budget& budget = {});

struct Relation {
  RingPtr Y;  // y0, y1, y2, z..
  Poly nu;    // (dF)^(p-1) = nu(q, q1)
  Poly Lambda;
  Poly sigma_Lambda;
  bool nu_ok = false;
  bool qt1_identity = false;  // qt1 == b q2 + lambda(q, q1) nu(q, q1)

  bool ok() const { return nu_ok && qt1_identity && sigma_Lambda.is_zero(); }
};

Relation relation(const Family& fam, const Invariants& inv, const SecondInvariants& sec);

// h(y0, y1, y2) -> h(q, q1, q2).
Poly sigma(const Family& fam, const Invariants& inv, const SecondInvariants& sec, const Poly& h);

struct Verdict {
  bool holds = false;
  std::string certificate;
};

// 1 in (t_1, b) and t_i in sqrt(b) for every i >= 2 prime to p.
Verdict principality_test(const Family& fam, const Budget& budget = {});

// Lambda = b^p y2 + sum_i u_i y0^i: 1 in (u_1, b^p) and u_i in sqrt(b) for i >= 2.
Verdict coordinate_test(const Family& fam, const Relation& rel, const Budget& budget = {});

struct Singularity {
  bool singular = false;  // the ideal of Lambda and its partials is proper
  std::size_t basis_size = 0;
  // An F_p-rational common zero (y0, y1, y2, z..), when one of the form
  // (alpha^p, rho(alpha, gamma), 0, gamma) exists.
  std::optional<std::vector<u32>> point;
};

Singularity nonsmooth_test(const Family& fam, const Relation& rel, const Budget& budget = {});

struct NamedWitness {
  std::string name;
  PlinthWitness w;
  bool valid = false;
};

// For fixed g, h and c in R with c | yg - h: (s, u) = ((yg - h)/c, aFg/c).
// Returns nullopt when a hypothesis fails.
std::optional<PlinthWitness> divided_witness(const Family& fam, const Poly& g, const Poly& h, const Poly& c);

// nu_hat(Y) over R with y - nu_hat(rho(y)) in bR[y], or nullopt.
std::optional<Poly> nu_hat(const Family& fam, const Budget& budget = {});

struct SearchResult {
  std::optional<NamedWitness> found;
  u32 searched_degree = 0;
};

// y m(y^p, rho) in (R/b)[y^p, rho] for a monomial m of degree <= max_degree;
// the first hit gives the witness with g = m(q, q1).
SearchResult nonprincipal_search(const Family& fam, const Invariants& inv, u32 max_degree,
                                 const Budget& budget = {});

struct SuiteOptions {
  Input input;
  std::vector<std::string> checks;
  Budget budget;
  u32 fixed_space_degree = 0;
  u32 search_degree = 4;
};

std::vector<CheckRecord> run_suite(const SuiteOptions& opt);

}  // namespace plinth::nagata
