#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plinth/parse.hpp"
#include "plinth/rank3.hpp"

using namespace plinth;
using namespace plinth::rank3;

namespace {

Poly in_b(const Family& F, const std::string& text) {
  return to_poly(parse_expr(text), F.B, {{"f", F.f.value()}, {"g", F.g.value()}, {"r", F.r.value()}});
}

}  // namespace

TEST_CASE("parameters") {
  CHECK_THROWS_AS(validate({4, 1, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 0, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate({2, 1, 1, 2}), std::invalid_argument);
  CHECK_NOTHROW(validate({2, 1, 2, 2}));
  CHECK(multiplicative_order(2, 3) == 2);
  CHECK(multiplicative_order(2, 7) == 3);
  CHECK(multiplicative_order(3, 4) == 2);
  CHECK(is_power_of(9, 3));
  CHECK_FALSE(is_power_of(6, 2));
}

TEST_CASE("family construction") {
  auto F = build({2, 1, 2, 2});
  CHECK(F->f.value() == parse_poly("x1*x3 + x2^2", F->B));
  CHECK(F->g.value() == in_b(*F, "f^2*x3 + x1^3"));
  CHECK(F->gstar.value().is_zero());

  // x1 g = f^4 + (f x2 + x1)^3 = f^3 x1 x3 + x1^3 in characteristic 3.
  auto G = build({3, 1, 1, 3});
  CHECK(G->g.value() == in_b(*G, "f^3*x3 + x1^2"));
  CHECK(G->gstar.value().is_zero());

  // (f x2 + x1^2)^3 - f^3 x2^3 - x1^6 = x1 * (u^2 x1 + u x1^3) with u = f x2.
  auto H = build({2, 1, 2, 3});
  CHECK(H->gstar_rep == parse_poly("v^3 + u*v", H->gstar_rep.ring()));
  CHECK(H->gstar.value() == in_b(*H, "(f*x2)^2*x1 + f*x2*x1^3"));
  for (const auto& fam : {F, G, H}) {
    CHECK(fam->fixes_f());
    CHECK(fam->fixes_g());
    CHECK(fam->shifts_r());
    CHECK(check_coaction(fam->eps).ok());
  }
}

TEST_CASE("closed forms of delta") {
  auto F = build({2, 1, 2, 2});
  DeltaCheck dc = closed_form_delta(*F);
  Poly T = Poly::var(F->BT, 3);
  Poly f = F->f.value().in_ring(F->BT), g = F->g.value().in_ring(F->BT);
  CHECK(dc.closed[0] == f * f * g * T * T);
  CHECK(dc.match == std::vector<bool>{true, true, true});
  CHECK(closed_form_delta(*build({3, 1, 1, 3})).match == std::vector<bool>{true, true, true});
  CHECK_THROWS_AS(closed_form_delta(*build({2, 1, 1, 3})), std::domain_error);
}

TEST_CASE("instances") {
  auto F = build({2, 1, 2, 2});
  Instance in(F, "f");
  CHECK(in.q().value() == in_b(*F, "r^2 + f^2*g*r"));
  CHECK(in.apply(F->r) == in_b(*F, "r + f^2*g"));
  CHECK(in.fixes(F->f));
  CHECK(in.fixes(F->g));
  CHECK(in.fixes(*in.q1()));
  CHECK(equal(power(in.morphism(), 2), RingMorphism::identity(F->B)));
  CHECK_THROWS_AS(Instance(F, "f - f"), std::invalid_argument);
  CHECK_THROWS(Instance(F, "x1"));
}

TEST_CASE("certified route agrees with the direct route") {
  auto F = build({2, 1, 1, 3});
  Instance direct(F, "f*g", Route::direct);
  Instance cert(F, "f*g", Route::certified);
  for (std::size_t i = 0; i < 3; ++i) CHECK(direct.image(i) == cert.image(i));
  CHECK(direct.apply(direct.q()) == cert.apply(cert.q()));
}

TEST_CASE("invariant generators, both branches") {
  auto F = build({2, 1, 2, 2});
  for (const char* h : {"f", "f*g", "g", "g^2 + f"}) {
    CAPTURE(h);
    Instance in(F, h);
    PtInvariants pt = in.invariants_pt();
    const Poly& f = F->f.value();
    CHECK(in.q1()->value() * pt.q3.value() - pt.q2.value() == f);
    CHECK(F->g.value() == pow(f, 2) * pt.q3.value() + pt.lambda.value());
    CHECK(in.q().value() == pow(f, 2) * pt.q2.value() + pt.xi.value());
    CHECK(in.fixes(pt.q2));
    CHECK(in.fixes(pt.q3));
    bool first = std::string(h) == "f" || std::string(h) == "f*g";
    CHECK(pt.first_branch == first);
    CHECK(pt.psi_x2p.has_value() == first);
    if (first) CHECK(*pt.psi_x2p == pt.q2.value());
  }
}

TEST_CASE("t = p closed forms of the generators") {
  // q2 = q1 q3 - f and q3 = f^(-lt)(g - xi/q1) when t = p.
  auto F = build({3, 1, 1, 3});
  Instance in(F, "f*g");
  PtInvariants pt = in.invariants_pt();
  const Poly& q1 = in.q1()->value();
  CHECK(pt.q2.value() == q1 * pt.q3.value() - F->f.value());
  CHECK(pt.q3.value() == exact_div(F->g.value() - exact_div(pt.xi.value(), q1), pow(F->f.value(), 3)));
}

TEST_CASE("explicit order-p automorphisms") {
  for (u32 p : {2u, 3u}) {
    CAPTURE(p);
    ClosedFormInstance ci = closed_form_instance(p);
    CHECK(ci.match == std::vector<bool>{true, true, true});
    CHECK(equal(power(ci.inst->morphism(), p), RingMorphism::identity(ci.inst->family().B)));
  }
  ClosedFormInstance two = closed_form_instance(2);
  const Family& F = two.inst->family();
  CHECK(two.inst->image(0) == in_b(F, "x1 + f^4*g"));
  CHECK(two.inst->image(1) == in_b(F, "x2 + f*g + f^7*g^2"));
  ClosedFormInstance three = closed_form_instance(3);
  const Family& G = three.inst->family();
  Poly lhs = (parse_poly("x3", G.B) - three.inst->image(2)) * pow(G.f.value(), 3);
  CHECK(lhs == in_b(G, "(x1 + f^6*g^2)^2 - x1^2"));
  // Invariants: xi = q1^(s+1) and q3 = f^(-p)(g - q1^s).
  PtInvariants pt = three.inst->invariants_pt();
  const Poly& q1 = three.inst->q1()->value();
  CHECK(pt.xi.value() == pow(q1, 3));
  CHECK(pt.q3.value() == exact_div(G.g.value() - pow(q1, 2), pow(G.f.value(), 3)));
}

TEST_CASE("Frobenius images when p does not divide t") {
  auto F = build({2, 1, 2, 3});
  Instance plain(F, "f");
  CHECK_FALSE(plain.pnt_hypotheses());
  CHECK_THROWS_AS(plain.frobenius_images_pnt(), std::domain_error);
  Instance in(F, "f^2*g^2");
  REQUIRE(in.pnt_hypotheses());
  PntImages P = in.frobenius_images_pnt();
  Poly fg = F->f.value() * F->g.value();
  const Expr* ps[3] = {&P.p1, &P.p2, &P.p3};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(divides(fg, ps[i]->value() - pow(Poly::var(F->B, i), 2)));
    CHECK(in.fixes(*ps[i]));
  }
}

TEST_CASE("Jacobian derivations") {
  auto F = build({2, 1, 2, 3});
  JacobianChecks jc = derivation_checks(*F);
  CHECK(jc.g_not_in_f);
  CHECK(jc.g_expected);
  CHECK(jc.f_not_in_g);
  CHECK(jc.d_x2_f_f.is_zero());
  CHECK_THROWS_AS(derivation_checks(*build({2, 1, 2, 2})), std::domain_error);
  Poly x = parse_poly("x1", F->B), y = parse_poly("x2", F->B), z = parse_poly("x3", F->B);
  CHECK(jacobian_det(x, y, z).is_one());
}

TEST_CASE("suites pass at the grid points") {
  struct Point {
    Params prm;
    const char* h;
    u32 D;
  };
  for (const Point& pt : {Point{{2, 1, 2, 2}, "f", 6}, Point{{3, 1, 1, 3}, "f*g", 0}, Point{{2, 1, 1, 3}, "f", 0}}) {
    SuiteOptions opt;
    opt.prm = pt.prm;
    opt.h = pt.h;
    opt.check_a2 = true;
    opt.fixed_space_degree = pt.D;
    for (const CheckRecord& r : run_suite(opt)) {
      CAPTURE(r.check_id);
      CAPTURE(r.details);
      CHECK(r.status == Status::pass);
    }
  }
}

TEST_CASE("check selection") {
  SuiteOptions opt;
  opt.checks = {"rank3.plinth"};
  auto recs = run_suite(opt);
  std::vector<std::string> ids;
  for (const auto& r : recs) ids.push_back(r.check_id);
  // Construction and instance records are always present.
  CHECK(ids == std::vector<std::string>{"rank3.family.construction", "rank3.instance.fixed", "rank3.plinth.r",
                                        "rank3.plinth.gh", "rank3.plinth.nonprincipal", "rank3.plinth.containments"});
}
