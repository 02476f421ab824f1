#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <tuple>

#include "plinth/conductor.hpp"
#include "plinth/parse.hpp"
#include "support.hpp"

using namespace plinth;
using namespace plinth::conductor;

namespace {

// Random element of F_p[z1, z2][y] with y-degree at most 6.
Poly random_in_y(const RingPtr& R, std::mt19937_64& rng) {
  auto Z = Ring::make(R->p(), {"z1", "z2"});
  std::uniform_int_distribution<u32> top(1, 6);
  u32 d = top(rng);
  Poly f(R), y = Poly::var(R, "y");
  for (u32 k = 0; k <= d; ++k) {
    if (rng() % 2) continue;
    f += testing::random_poly(Z, rng, 2, 2).in_ring(R) * pow(y, k);
  }
  return f;
}

}  // namespace

TEST_CASE("represent: hand examples") {
  auto R3 = Ring::make(3, {"y"});
  Representation r = represent(parse_poly("y^2", R3), "y", 1);
  CHECK(r.target == parse_poly("2*y^4", R3));
  CHECK(r.lambda.str() == "2*Y1^2");

  auto R2 = Ring::make(2, {"y", "z"});
  Representation s = represent(parse_poly("y^3 + z*y", R2), "y", 0);
  CHECK(s.target == parse_poly("y^4 + z^2", R2));
  CHECK(s.lambda == parse_poly("Y0^2 + z^2", s.lambda.ring()));

  // f' = 0 gives lambda = 0 for every l.
  for (u32 l : {0u, 1u, 2u}) CHECK(represent(parse_poly("y^3 + z", Ring::make(3, {"y", "z"})), "y", l).lambda.is_zero());
}

TEST_CASE("represent: randomized identity") {
  std::mt19937_64 rng(2024);
  for (u32 p : {2u, 3u, 5u}) {
    auto R = Ring::make(p, {"y", "z1", "z2"});
    for (int k = 0; k < 6; ++k) {
      Poly f = random_in_y(R, rng);
      RelationIdeal rel(f, "y");
      for (u32 l : {0u, 1u, 2u}) {
        CAPTURE(f.str());
        CAPTURE(l);
        Representation r = represent(rel, l);
        CHECK(rel.expand(r.lambda) == r.target);
      }
      // Linearity in the target, modulo the relations.
      Poly fp = pow(diff(f, 0), p);
      Poly y = Poly::var(R, 0);
      Poly sum = represent(rel, 1).lambda + represent(rel, 2).lambda;
      CHECK(rel.reduce(rel.require(fp * (y + y * y)) - sum).is_zero());
    }
  }
}

TEST_CASE("non-members are reported") {
  auto R = Ring::make(3, {"y"});
  RelationIdeal rel(parse_poly("y^2", R), "y");
  CHECK_FALSE(rel.express(parse_poly("y", R)).has_value());
  CHECK_THROWS_AS(rel.require(parse_poly("y", R)), NotMember);
  CHECK(rel.express(parse_poly("y^5", R)).has_value());
}

TEST_CASE("generic decomposition") {
  Decomposition D = generic_decomposition(2, 3, 0);
  CHECK(D.identity);
  CHECK(D.bounds);
  CHECK(D.unique);
  // (g')^3 = 2y^3 + xi1^3 with g = y^2 + xi1 y.
  CHECK(D.f[0] == parse_poly("xi1^3 + 2*y^3", D.ring));
  CHECK(D.f[1].is_zero());
  CHECK(D.f[2].is_zero());
  CHECK(D.xi_degree == std::vector<u32>{3, 0, 0});

  for (auto [d, p, l] : {std::tuple{3u, 2u, 1u}, {4u, 3u, 2u}, {3u, 5u, 0u}, {1u, 3u, 4u}, {5u, 2u, 3u}}) {
    CAPTURE(d);
    CAPTURE(p);
    CAPTURE(l);
    Decomposition E = generic_decomposition(d, p, l);
    CHECK(E.identity);
    CHECK(E.bounds);
    CHECK(E.unique);
  }
  CHECK_THROWS_AS(generic_decomposition(3, 3, 0), std::invalid_argument);
}

TEST_CASE("decomposition commutes with specialization") {
  Decomposition D = generic_decomposition(3, 2, 1);
  const RingPtr& S = D.ring;
  auto Ry = Ring::make(2, {"y"});
  for (u32 a = 0; a < 2; ++a)
    for (u32 b = 0; b < 2; ++b) {
      std::vector<Poly> at{Poly::constant(Ry, a), Poly::constant(Ry, b), Poly::var(Ry, 0)};
      Poly g = substitute(D.g, Ry, at);
      RelationIdeal rel(g, "y");
      Poly lambda = represent(rel, 1).lambda;
      // sum_i f_i(c)(Y0) Y1^i, with y^2 written as Y0.
      const RingPtr& T = rel.tag_ring();
      std::vector<Poly> img{Poly::constant(T, a), Poly::constant(T, b), Poly::var(T, 0)};
      Poly other(T);
      for (std::size_t i = 0; i < D.f.size(); ++i) {
        Poly fi(S);
        for (const Term& t : D.f[i].terms()) {
          Monomial m = t.m;
          m.e[2] /= 2;
          m.deg = m.e[0] + m.e[1] + m.e[2];
          fi += Poly::monomial(S, m, t.c);
        }
        other += substitute(fi, T, img) * pow(Poly::var(T, 1), i);
      }
      CHECK(rel.reduce(lambda - other).is_zero());
    }
}

TEST_CASE("suite") {
  for (auto [p, d, l] : {std::tuple{3u, 2u, 0u}, std::tuple{2u, 3u, 1u}, std::tuple{5u, 3u, 2u}}) {
    SuiteOptions opt;
    opt.p = p;
    opt.d = d;
    opt.l = l;
    auto recs = run_suite(opt);
    CHECK(recs.size() == 4);
    for (const CheckRecord& r : recs) {
      CAPTURE(r.check_id);
      CAPTURE(r.details);
      CHECK(r.status == Status::pass);
    }
  }
}
