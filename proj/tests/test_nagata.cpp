#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plinth/nagata.hpp"
#include "plinth/parse.hpp"

using namespace plinth;
using namespace plinth::nagata;

namespace {

Input nagata_data(u32 p) {
  Input in;
  in.p = p;
  return in;
}

Poly in_b(const Family& F, const std::string& text) { return to_poly(parse_expr(text), F.B, {{"f", F.f}}); }

}  // namespace

TEST_CASE("input validation") {
  Input in = nagata_data(2);
  in.a = "0";
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  in = nagata_data(2);
  in.theta = "y^2 + 1";
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  in = nagata_data(2);
  in.theta = "x*y";
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  in = nagata_data(2);
  in.F = "y";
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  in = nagata_data(4);
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  in = nagata_data(2);
  in.zvars = {"y0"};
  CHECK_THROWS_AS(build(in), std::invalid_argument);
  CHECK(default_zvars(2) == std::vector<std::string>{"z1", "z2"});
}

TEST_CASE("Nagata's automorphism") {
  for (u32 p : {2u, 3u, 5u}) {
    CAPTURE(p);
    auto F = build(nagata_data(p));
    CHECK(F->phi.image(0) == in_b(*F, "x - 2*y*f - z*f^2"));
    CHECK(F->phi.image(1) == in_b(*F, "y + z*f"));
    CHECK(F->order_route == (p <= 3 ? "direct composition" : "coaction axioms and invariance of F"));
  }
}

TEST_CASE("p = 2 data") {
  auto F = build(nagata_data(2));
  CHECK(F->d == in_b(*F, "z"));
  CHECK(F->b.is_one());
  CHECK(F->theta_star == in_b(*F, "y"));
  CHECK(F->rho.is_zero());
  Invariants I = invariants(*F);
  CHECK(I.q == in_b(*F, "y^2 + z*f*y"));
  CHECK(I.q1 == in_b(*F, "x + f*y"));
  CHECK(I.q_fixed);
  CHECK(I.q1_fixed);
  CHECK(I.containment);
  SecondInvariants S = lambda_and_q2(*F, I);
  CHECK(S.lambda.lambda.is_zero());
  CHECK(S.qt1 == pow(I.q1, 2));
  CHECK(S.q2 == pow(I.q1, 2));
  Relation L = relation(*F, I, S);
  CHECK(L.ok());
  CHECK(L.Lambda == parse_poly("y2 - y1^2", L.Y));
  CHECK(principality_test(*F).holds);
  CHECK(coordinate_test(*F, L).holds);
  Singularity sg = nonsmooth_test(*F, L);
  CHECK_FALSE(sg.singular);
  CHECK(sg.basis_size == 1);
}

TEST_CASE("p = 3 data") {
  auto F = build(nagata_data(3));
  CHECK(F->d.is_one());
  CHECK(F->b == in_b(*F, "z"));
  CHECK(F->rho == in_b(*F, "y^2"));
  CHECK(F->theta_star.is_zero());
  Invariants I = invariants(*F);
  CHECK(I.q1 == F->f);
  SecondInvariants S = lambda_and_q2(*F, I);
  CHECK(S.lambda.lambda == parse_poly("2*Y1^2", S.lambda.lambda.ring()));
  CHECK(S.qt1_fixed);
  CHECK(S.q2_fixed);
  Relation L = relation(*F, I, S);
  CHECK(L.ok());
  CHECK(L.Lambda == parse_poly("z^3*y2 + y0^2 - y1^3 + 2*z^2*y1^4", L.Y));
  Verdict pr = principality_test(*F);
  CHECK_FALSE(pr.holds);
  CHECK(pr.certificate == "1 is not in (t_1, b) = (0, z)");
  CHECK_FALSE(coordinate_test(*F, L).holds);
  Singularity sg = nonsmooth_test(*F, L);
  CHECK(sg.singular);
  REQUIRE(sg.point.has_value());
  CHECK(*sg.point == std::vector<u32>{0, 0, 0, 0});

  auto w = divided_witness(*F, Poly::constant(F->B, 1), Poly(F->B), Poly::constant(F->B, 1));
  REQUIRE(w.has_value());
  CHECK(w->s.value() == in_b(*F, "y"));
  CHECK(w->u.value() == in_b(*F, "z*f"));
  CHECK(plinth_witness(F->phi, *w));

  // y q = y^4 = rho^2 modulo z, so q f = z^(-1) a F q is a plinth element.
  SearchResult r = nonprincipal_search(*F, I, 3);
  REQUIRE(r.found.has_value());
  CHECK(r.found->valid);
  CHECK(r.found->w.u.value() == I.q * F->f);
}

TEST_CASE("divided witness hypotheses") {
  auto F = build(nagata_data(3));
  Poly one = Poly::constant(F->B, 1);
  Poly y = in_b(*F, "y");
  // h must be fixed, c must lie in R and divide y g - h.
  CHECK_FALSE(divided_witness(*F, one, y, one).has_value());
  CHECK_FALSE(divided_witness(*F, one, Poly(F->B), y).has_value());
  CHECK_FALSE(divided_witness(*F, one, F->f, in_b(*F, "z")).has_value());
}

TEST_CASE("a principal case with d = 1") {
  Input in = nagata_data(3);
  in.theta = "y + z*y^2";
  auto F = build(in);
  CHECK(F->d.is_one());
  CHECK(F->t[1].is_one());
  CHECK(F->t[2] == in_b(*F, "z"));
  Verdict pr = principality_test(*F);
  CHECK(pr.holds);
  auto nh = nu_hat(*F);
  REQUIRE(nh.has_value());
  CHECK(nh->str() == "Y");
  Invariants I = invariants(*F);
  auto w = divided_witness(*F, Poly::constant(F->B, 1), I.q1, F->b);
  REQUIRE(w.has_value());
  CHECK(w->u.value() == F->F);
  CHECK(plinth_witness(F->phi, *w));
  Relation L = relation(*F, I, lambda_and_q2(*F, I));
  CHECK(L.ok());
  CHECK(coordinate_test(*F, L).holds);
  CHECK_FALSE(nonsmooth_test(*F, L).singular);
}

TEST_CASE("suites agree with the equivalences on the example grid") {
  struct Point {
    u32 p;
    std::vector<std::string> z;
    const char* a;
    const char* theta;
    const char* F;
    bool principal;
  };
  std::vector<Point> grid{
      {2, {"z"}, "z", "y^2", "f", true},
      {3, {"z"}, "z", "y^2", "f", false},
      {5, {"z"}, "z", "y^2", "f", false},
      {3, {"z"}, "z", "y + z*y^2", "f", true},
      {2, {"z"}, "z", "y^3", "f", false},
      {3, {"z"}, "z^2", "z*y + y^2", "f", false},
      {3, {"z1", "z2"}, "z1*z2", "z1*y + y^3", "f", true},
      {2, {"z1", "z2"}, "z1*z2", "z1*y^2 + z2*y^3", "f^2 + z1", false},
      {2, {"z"}, "z^2", "y + z*y^3", "z*f", true},
  };
  for (const Point& pt : grid) {
    SuiteOptions opt;
    opt.input = Input{pt.p, pt.z, pt.a, pt.theta, pt.F};
    opt.fixed_space_degree = 6;
    CAPTURE(pt.theta);
    CAPTURE(pt.p);
    bool saw_principal = false;
    for (const CheckRecord& r : run_suite(opt)) {
      CAPTURE(r.check_id);
      CAPTURE(r.details);
      if (r.check_id == "nagata.plinth.search")
        CHECK(r.status != Status::fail);
      else
        CHECK(r.status == Status::pass);
      if (r.check_id == "nagata.principality") saw_principal = r.details.rfind("principal:", 0) == 0;
    }
    CHECK(saw_principal == pt.principal);
  }
}

TEST_CASE("check selection") {
  SuiteOptions opt;
  opt.input = nagata_data(3);
  opt.checks = {"nagata.plinth"};
  std::vector<std::string> ids;
  for (const auto& r : run_suite(opt)) ids.push_back(r.check_id);
  CHECK(ids == std::vector<std::string>{"nagata.family.construction", "nagata.plinth.delta_y", "nagata.plinth.search"});
}
