// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "plinth/conductor.hpp"
#include "plinth/groebner.hpp"
#include "plinth/nagata.hpp"
#include "plinth/parse.hpp"
#include "plinth/rank3.hpp"
#include "support.hpp"

using namespace plinth;

namespace {

struct Result {
  bool ok = true;
  std::vector<std::string> notes;
  std::vector<std::string> info;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
};

std::vector<CheckRecord> rank3_records(const rank3::Params& prm, const std::string& h,
                                       std::vector<std::string> checks, bool a2 = false, u32 D = 0) {
  rank3::SuiteOptions opt;
  opt.prm = prm;
  opt.h = h;
  opt.checks = std::move(checks);
  opt.check_a2 = a2;
  opt.fixed_space_degree = D;
  return rank3::run_suite(opt);
}

// Every listed check is present and passes.
void expect_passed(Result& res, const std::vector<CheckRecord>& recs, const std::vector<std::string>& ids,
                   const std::string& where) {
  for (const std::string& id : ids) {
    auto it = std::find_if(recs.begin(), recs.end(), [&](const CheckRecord& r) { return r.check_id == id; });
    if (it == recs.end())
      res.require(false, where + ": " + id + " missing");
    else
      res.require(it->status == Status::pass, where + ": " + id + " " + to_string(it->status) + " " + it->details);
  }
}

std::string point(const rank3::Params& prm, const std::string& h) { return prm.str() + " h=" + h; }

Result closed_forms() {
  Result res;
  for (u32 p : {2u, 3u}) {
    rank3::ClosedFormInstance ci = rank3::closed_form_instance(p);
    for (std::size_t i = 0; i < 3; ++i)
      res.require(ci.match[i], "p=" + std::to_string(p) + ": phi(x" + std::to_string(i + 1) + ") differs");
    const rank3::Instance& in = *ci.inst;
    res.require(in.route() == rank3::Route::direct, "p=" + std::to_string(p) + ": not the direct route");
    RingMorphism phi = in.morphism();
    RingMorphism phi_p = power(phi, p);
    for (std::size_t i = 0; i < 3; ++i)
      res.require(phi_p.image(i) == Poly::var(phi.ring(), i), "p=" + std::to_string(p) + ": phi^p != id");
  }
  return res;
}

Result coaction_axioms() {
  Result res;
  for (rank3::Params prm : {rank3::Params{2, 1, 2, 2}, rank3::Params{2, 1, 2, 3}, rank3::Params{3, 1, 1, 3}}) {
    auto fam = rank3::build(prm);
    AxiomReport rep = check_coaction(fam->eps, true);
    res.require(rep.a1, prm.str() + ": (A1) fails");
    res.require(rep.a2_checked && rep.a2, prm.str() + ": (A2) fails");
  }
  return res;
}

Result generators() {
  Result res;
  for (rank3::Params prm : {rank3::Params{2, 1, 2, 2}, rank3::Params{3, 1, 1, 3}})
    for (std::string h : {"f", "f*g"}) {
      auto recs = rank3_records(prm, h, {"rank3.invariants.generators"});
      expect_passed(res, recs, {"rank3.instance.fixed", "rank3.invariants.generators"}, point(prm, h));
      rank3::Instance in(rank3::build(prm), h);
      res.require(in.fixes(in.q()), point(prm, h) + ": q not fixed");
      res.require(in.q1() && in.fixes(*in.q1()), point(prm, h) + ": q1 not fixed");
    }
  return res;
}

Result fixed_space_oracle() {
  Result res;
  rank3::Params prm{2, 1, 2, 2};
  auto recs = rank3_records(prm, "f", {"rank3.invariants.fixed_space"}, false, 8);
  expect_passed(res, recs, {"rank3.invariants.fixed_space"}, point(prm, "f"));
  return res;
}

Result plinth_suite() {
  Result res;
  for (rank3::Params prm : {rank3::Params{2, 1, 2, 2}, rank3::Params{3, 1, 1, 3}})
    for (std::string h : {"f", "f*g"}) {
      auto recs = rank3_records(prm, h, {"rank3.plinth"});
      expect_passed(res, recs, {"rank3.plinth.r", "rank3.plinth.gh", "rank3.plinth.nonprincipal", "rank3.plinth.containments"},
                    point(prm, h));
    }
  for (auto [prm, h] : {std::pair{rank3::Params{2, 1, 1, 3}, "f"}, std::pair{rank3::Params{2, 1, 2, 3}, "f^2*g^2"}}) {
    auto recs = rank3_records(prm, h, {"rank3.plinth"});
    std::vector<std::string> ids{"rank3.plinth.nonprincipal"};
    if (prm.l == 1 && prm.m == 1) ids.push_back("rank3.plinth.order_witness");
    expect_passed(res, recs, ids, point(prm, h));
  }
  return res;
}

Result frobenius_presentation() {
  Result res;
  rank3::Params prm{2, 1, 2, 3};
  auto recs = rank3_records(prm, "f^2*g^2", {"rank3.frobenius"});
  expect_passed(res, recs, {"rank3.frobenius.images", "rank3.frobenius.kernel", "rank3.frobenius.singular"},
                point(prm, "f^2*g^2"));
  return res;
}

Result nagata_p2() {
  Result res;
  auto F = nagata::build(nagata::Input{});
  auto in_b = [&](const char* t) { return to_poly(parse_expr(t), F->B, {{"f", F->f}}); };
  nagata::Invariants I = nagata::invariants(*F);
  res.require(I.q == in_b("y^2 + z*f*y"), "q = " + I.q.str());
  res.require(I.q1 == in_b("x + f*y"), "q1 = " + I.q1.str());
  res.require(I.q_fixed && I.q1_fixed, "q or q1 not fixed");
  nagata::SecondInvariants S = nagata::lambda_and_q2(*F, I);
  res.require(S.q2 == pow(I.q1, 2), "q2 != q1^2");
  res.require(S.q2_fixed, "q2 not fixed");
  nagata::Relation L = nagata::relation(*F, I, S);
  res.require(L.ok() && L.sigma_Lambda.is_zero(), "sigma(Lambda) != 0");
  res.require(nagata::principality_test(*F).holds, "principality_test = false");
  res.require(nagata::coordinate_test(*F, L).holds, "coordinate_test = false");
  res.require(!nagata::nonsmooth_test(*F, L).singular, "nonsmooth_test = true");
  nagata::SuiteOptions opt;
  opt.fixed_space_degree = 6;
  auto recs = nagata::run_suite(opt);
  expect_passed(res, recs, {"nagata.invariants.fixed_space"}, "p=2");
  return res;
}

Result nagata_p3() {
  Result res;
  nagata::Input in;
  in.p = 3;
  auto F = nagata::build(in);
  nagata::Invariants I = nagata::invariants(*F);
  nagata::SecondInvariants S = nagata::lambda_and_q2(*F, I);
  nagata::Relation L = nagata::relation(*F, I, S);
  res.require(L.ok(), "sigma(Lambda) != 0");
  res.require(L.Lambda == parse_poly("z^3*y2 + y0^2 - y1^3 + 2*z^2*y1^4", L.Y), "Lambda = " + L.Lambda.str());
  nagata::Verdict pr = nagata::principality_test(*F);
  res.require(!pr.holds, "principality_test = true");
  res.require(pr.certificate == "1 is not in (t_1, b) = (0, z)", "certificate: " + pr.certificate);
  res.require(!nagata::coordinate_test(*F, L).holds, "coordinate_test = true");
  res.require(nagata::nonsmooth_test(*F, L).singular, "nonsmooth_test = false");
  Poly y = Poly::var(F->B, "y");
  PlinthWitness w{Expr::of(y), Expr::of(Poly::var(F->B, "z") * F->f)};
  res.require(plinth_witness(F->phi, w), "witness (y, zf) rejected");
  return res;
}

// Random element of F_p[z1, z2][y] with y-degree at most 6.
Poly random_in_y(const RingPtr& R, std::mt19937_64& rng) {
  auto Z = Ring::make(R->p(), {"z1", "z2"});
  std::uniform_int_distribution<u32> top(1, 6);
  u32 d = top(rng);
  Poly f(R), y = Poly::var(R, "y");
  for (u32 k = 0; k <= d; ++k)
    if (rng() % 3) f += testing::random_poly(Z, rng, 2, 2).in_ring(R) * pow(y, k);
  return f;
}

Result conductor_checks() {
  Result res;
  std::mt19937_64 rng(6);
  const u32 primes[] = {2, 3, 5};
  for (int k = 0; k < 50; ++k) {
    u32 p = primes[k % 3];
    u32 l = u32(k / 3) % 3;
    auto R = Ring::make(p, {"y", "z1", "z2"});
    Poly f = random_in_y(R, rng);
    conductor::Representation r = conductor::represent(f, "y", l);
    std::vector<Poly> images{pow(Poly::var(R, 0), p), f, Poly::var(R, 1), Poly::var(R, 2)};
    Poly back = substitute(r.lambda, R, images);
    Poly target = pow(diff(f, 0), p) * pow(Poly::var(R, 0), l);
    res.require(back == target && r.target == target, "case " + std::to_string(k) + ": f = " + f.str());
  }
  conductor::Decomposition dec = conductor::generic_decomposition(2, 3, 0);
  res.require(dec.identity, "(2,3,0): identity fails");
  res.require(dec.bounds, "(2,3,0): xi-degree bounds fail");
  return res;
}

Result engine_properties() {
  Result res;
  std::mt19937_64 rng(1000);
  const u32 primes[] = {2, 3, 5, 7};
  int bad_ring = 0, bad_frob = 0, bad_div = 0, bad_nf = 0, bad_sub = 0, reduced = 0, nontrivial = 0;
  for (int k = 0; k < 1000; ++k) {
    u32 p = primes[k % 4];
    auto R = Ring::make(p, {"a", "b", "c"});
    Poly f = testing::random_poly(R, rng, 5, 4), g = testing::random_poly(R, rng, 5, 4),
         h = testing::random_poly(R, rng, 5, 4);
    Poly zero(R), one = Poly::constant(R, 1);
    bool ring = (f * g) * h == f * (g * h) && f * g == g * f && f * (g + h) == f * g + f * h &&
                (f + g) + h == f + (g + h) && f + zero == f && f * one == f && f - f == zero &&
                f + Poly::constant(R, p - 1) * f == zero;
    if (!ring) ++bad_ring;
    if (pow(f + g, p) != pow(f, p) + pow(g, p) || frobenius(f) != pow(f, p) || !diff(pow(f, p), 0).is_zero())
      ++bad_frob;
    Poly d = testing::random_nonzero(R, rng, 4, 3);
    if (exact_div(f * d, d) != f || !divides(d, f * d)) ++bad_div;
  }
  for (int k = 0; k < 50; ++k) {
    u32 p = primes[k % 4];
    auto R = Ring::make(p, {"a", "b", "c"});
    GroebnerBasis gb = groebner({testing::random_nonzero(R, rng, 3, 3), testing::random_nonzero(R, rng, 3, 3)});
    for (int j = 0; j < 20; ++j) {
      Poly f = testing::random_poly(R, rng, 6, 5);
      Poly nf = gb.normal_form(f);
      if (gb.normal_form(nf) != nf || !gb.contains(f - nf)) ++bad_nf;
      if (nf != f) ++reduced;
    }
  }
  for (int k = 0; k < 50; ++k) {
    u32 p = primes[k % 4];
    auto R = Ring::make(p, {"a", "b", "c"});
    std::vector<Poly> gens{testing::random_nonzero(R, rng, 3, 2), testing::random_nonzero(R, rng, 3, 2)};
    SubalgebraReducer red(gens, {"G1", "G2"});
    auto T = Ring::make(p, {"G1", "G2"});
    for (int j = 0; j < 20; ++j) {
      Poly P = testing::random_poly(T, rng, 4, 3);
      Poly target = substitute(P, R, std::span<const Poly>(gens));
      if (target.total_degree() > 0) ++nontrivial;
      auto rep = red.try_reduce(target);
      if (!rep || red.expand(*rep) != target) ++bad_sub;
    }
  }
  res.info.push_back(std::to_string(reduced) + "/1000 normal forms differ from the input, " +
                     std::to_string(nontrivial) + "/1000 subalgebra targets are non-constant");
  res.require(!bad_ring, std::to_string(bad_ring) + " ring axiom failures");
  res.require(!bad_frob, std::to_string(bad_frob) + " Frobenius failures");
  res.require(!bad_div, std::to_string(bad_div) + " exact_div failures");
  res.require(!bad_nf, std::to_string(bad_nf) + " normal form failures");
  res.require(!bad_sub, std::to_string(bad_sub) + " subalgebra_reduce failures");
  return res;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Result()> body;
  };
  std::vector<Criterion> all{
      {"closed-form instances, p = 2, 3", closed_forms},
      {"coaction axioms (A1), (A2)", coaction_axioms},
      {"invariant ring generators, p | t", generators},
      {"fixed-space oracle, D = 8", fixed_space_oracle},
      {"plinth suite", plinth_suite},
      {"presentation for p not dividing t", frobenius_presentation},
      {"Nagata family, p = 2", nagata_p2},
      {"Nagata family, p = 3", nagata_p3},
      {"conductor representation and decomposition", conductor_checks},
      {"engine properties, 1000 cases", engine_properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Result res;
    try {
      res = all[i].body();
    } catch (const std::exception& e) {
      res.require(false, std::string("exception: ") + e.what());
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (res.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << all[i].name << "  (" << ms << " ms)\n";
    for (const auto& n : res.info) std::cout << "      " << n << "\n";
    for (const auto& n : res.notes) std::cout << "      " << n << "\n";
    if (!res.ok) ++failed;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
