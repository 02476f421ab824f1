#include <sstream>

#include "plinth/linalg.hpp"
#include "plinth/nagata.hpp"

namespace plinth::nagata {

namespace {

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

std::string text(const Poly& f) { return f.is_zero() ? "0" : artifact(f); }

Outcome witness_outcome(const Family& fam, const PlinthWitness& w, const std::string& what) {
  Poly ds = fam.phi.delta(w.s.value());
  bool delta_ok = ds == w.u.value();
  bool fixed_ok = fam.phi.apply(w.u.value()) == w.u.value();
  Outcome o = Outcome::expect(delta_ok && fixed_ok, what);
  if (!delta_ok) o.details += "; delta(s) - u = " + artifact(ds - w.u.value());
  if (!fixed_ok) o.details += "; u is not fixed";
  o.telemetry["s"] = size_of(w.s.value());
  o.telemetry["u"] = size_of(w.u.value());
  return o;
}

}  // namespace

std::vector<CheckRecord> run_suite(const SuiteOptions& opt) {
  const Input& in = opt.input;
  CheckRunner run({{"p", std::to_string(in.p)},
                   {"zvars", join(in.zvars, ",")},
                   {"a", in.a},
                   {"theta", in.theta},
                   {"F", in.F}});
  run.select(opt.checks);

  FamilyPtr fam;
  const CheckRecord& built = run.run_always("nagata.family.construction", "family construction", [&] {
    fam = build(in, opt.budget);
    const Family& F = *fam;
    Outcome o = Outcome::pass("d = " + text(F.d) + ", b = " + text(F.b) + ", rho = " + text(F.rho) +
                              ", theta* = " + text(F.theta_star));
    o.telemetry = {{"f", size_of(F.f)}, {"F", size_of(F.F)}};
    return o;
  });
  if (!fam || built.status != Status::pass) return run.take();
  const Family& F = *fam;

  run.run("nagata.family.order", "automorphism of order p", [&] {
    Outcome o = Outcome::pass("power(phi, p) = id by " + F.order_route + "; phi(x) = " + text(F.phi.image(0)) +
                              ", phi(y) = " + text(F.phi.image(1)));
    o.telemetry = {{"phi(x)", size_of(F.phi.image(0))}, {"phi(y)", size_of(F.phi.image(1))}};
    return o;
  });

  std::optional<Invariants> inv;
  std::optional<SecondInvariants> sec;
  std::optional<Relation> rel;
  auto first = [&]() -> const Invariants& {
    if (!inv) inv = invariants(F);
    return *inv;
  };
  auto second = [&]() -> const SecondInvariants& {
    if (!sec) sec = lambda_and_q2(F, first(), opt.budget);
    return *sec;
  };
  auto rel_of = [&]() -> const Relation& {
    if (!rel) rel = relation(F, first(), second());
    return *rel;
  };

  run.run("nagata.invariants.q", "invariants q and q1", [&] {
    const Invariants& I = first();
    std::vector<std::string> bad;
    if (!I.q_fixed) bad.push_back("q is not fixed");
    if (!I.q1_fixed) bad.push_back("q1 is not fixed");
    if (!I.containment) bad.push_back("q1 - bx - rho is not divisible by d^(p-2) (bF)^(p-1) y");
    Outcome o = Outcome::expect(bad.empty(), "q = " + text(I.q) + ", q1 = " + text(I.q1));
    for (const auto& b : bad) o.details += "; " + b;
    o.telemetry = {{"q", size_of(I.q)}, {"q1", size_of(I.q1)}};
    return o;
  });

  run.run("nagata.invariants.q2", "invariants qt1 and q2", [&] {
    const SecondInvariants& S = second();
    std::vector<std::string> bad;
    if (!S.qt1_fixed) bad.push_back("qt1 is not fixed");
    if (!S.q2_fixed) bad.push_back("q2 is not fixed");
    Outcome o = Outcome::expect(bad.empty(), "lambda = " + text(S.lambda.lambda) + ", q2 = " + text(S.q2));
    for (const auto& b : bad) o.details += "; " + b;
    o.telemetry = {{"qt1", size_of(S.qt1)}, {"q2", size_of(S.q2)}};
    return o;
  });

  run.run("nagata.relation", "relation Lambda of the invariant ring", [&] {
    const Relation& L = rel_of();
    std::vector<std::string> bad;
    if (!L.nu_ok) bad.push_back("nu(q, q1) != (dF)^(p-1)");
    if (!L.qt1_identity) bad.push_back("qt1 != b q2 + lambda(q, q1) nu(q, q1)");
    if (!L.sigma_Lambda.is_zero()) bad.push_back("sigma(Lambda) = " + artifact(L.sigma_Lambda));
    Outcome o = Outcome::expect(bad.empty(), "Lambda = " + text(L.Lambda));
    for (const auto& b : bad) o.details += "; " + b;
    o.telemetry = {{"Lambda", size_of(L.Lambda)}, {"nu", size_of(L.nu)}};
    return o;
  });

  if (opt.fixed_space_degree > 0)
    run.run("nagata.invariants.fixed_space", "fixed space equals R[q, q1, q2]", [&] {
      u32 D = opt.fixed_space_degree;
      std::vector<Poly> basis = fixed_space(F.phi, D);
      std::vector<Poly> gens{first().q, first().q1, second().q2};
      SubalgebraReducer red(gens, {"Q0", "Q1", "Q2"}, in.zvars, opt.budget);
      std::size_t missing = 0;
      std::string first_missing;
      for (const Poly& b : basis)
        if (!red.try_reduce(b)) {
          if (!missing) first_missing = artifact(b);
          ++missing;
        }
      PolyEchelon E(F.B);
      for (std::size_t k = 0; k < basis.size(); ++k) E.add(basis[k], k);
      // Products z^e q^i q1^j q2^k of degree at most D.
      std::vector<Poly> products{Poly::constant(F.B, 1)};
      std::vector<Poly> all = gens;
      for (const auto& z : in.zvars) all.push_back(Poly::var(F.B, z));
      for (const Poly& gk : all) {
        std::vector<Poly> next;
        for (const Poly& pr : products)
          for (Poly cur = pr; cur.total_degree() <= D; cur = cur * gk) next.push_back(cur);
        products = std::move(next);
      }
      std::size_t outside = 0;
      for (const Poly& pr : products)
        if (!E.solve(pr)) ++outside;
      std::ostringstream os;
      os << "D=" << D << ", " << basis.size() << " basis elements, " << products.size() << " products";
      if (missing) os << "; " << missing << " basis elements outside R[q,q1,q2], first " << first_missing;
      if (outside) os << "; " << outside << " products outside the span";
      return Outcome::expect(!missing && !outside, os.str());
    });

  std::optional<Verdict> principal, coordinate;
  std::optional<Singularity> sing;
  run.run("nagata.principality", "principality of I = (a, theta')", [&] {
    principal = principality_test(F, opt.budget);
    return Outcome::pass(std::string(principal->holds ? "principal: " : "not principal: ") + principal->certificate);
  });
  run.run("nagata.coordinate", "Lambda is a coordinate over R[y1]", [&] {
    coordinate = coordinate_test(F, rel_of(), opt.budget);
    return Outcome::pass(std::string(coordinate->holds ? "coordinate: " : "not certified: ") +
                         coordinate->certificate);
  });
  run.run("nagata.nonsmooth", "singular point of Lambda = 0", [&] {
    sing = nonsmooth_test(F, rel_of(), opt.budget);
    std::string d = sing->singular ? "Lambda and its partials have a common zero" : "the partials generate (1)";
    if (sing->point) {
      std::vector<std::string> c;
      for (u32 v : *sing->point) c.push_back(std::to_string(v));
      d += "; rational zero (" + join(c, ", ") + ")";
    }
    return Outcome::pass(d);
  });
  if (principal && coordinate && sing)
    run.run("nagata.equivalence", "principal iff coordinate iff smooth", [&] {
      bool ok = principal->holds == coordinate->holds && sing->singular == !principal->holds;
      std::ostringstream os;
      os << "principal " << principal->holds << ", coordinate " << coordinate->holds << ", singular "
         << sing->singular;
      return Outcome::expect(ok, os.str());
    });

  run.run("nagata.plinth.delta_y", "aF belongs to the plinth ideal", [&] {
    auto w = divided_witness(F, Poly::constant(F.B, 1), Poly(F.B), Poly::constant(F.B, 1));
    if (!w) return Outcome::fail("the witness (y, aF) was rejected");
    return witness_outcome(F, *w, "witness (y, aF)");
  });

  if (run.selected("nagata.plinth.principal") || run.selected("nagata.plinth.search")) {
    if (!principal) principal = principality_test(F, opt.budget);
    if (principal->holds)
      run.run("nagata.plinth.principal", "dF generates the plinth ideal", [&] {
        auto nh = nu_hat(F, opt.budget);
        if (!nh) return Outcome::fail("no nu_hat with y = nu_hat(rho(y)) modulo b although I is principal");
        const Invariants& I = first();
        std::vector<Poly> img{I.q1};
        for (const auto& z : in.zvars) img.push_back(Poly::var(F.B, z));
        Poly h = substitute(*nh, F.B, img);
        auto w = divided_witness(F, Poly::constant(F.B, 1), h, F.b);
        if (!w) return Outcome::fail("y - nu_hat(q1) is not divisible by b");
        Poly dF = F.d * F.F;
        Outcome o = witness_outcome(F, *w, "nu_hat = " + text(*nh) + ", witness (s, dF)");
        if (w->u.value() != dF) o = Outcome::fail("the witness is not dF: " + artifact(w->u.value()));
        if (!divides(dF, F.a * F.F)) o = Outcome::fail("dF does not divide aF");
        return o;
      });
    else
      run.run("nagata.plinth.search", "plinth elements beyond aF", [&] {
        SearchResult r = nonprincipal_search(F, first(), opt.search_degree, opt.budget);
        if (!r.found)
          return Outcome{Status::inconclusive,
                         "no witness with g a monomial in q, q1 of degree <= " + std::to_string(r.searched_degree), {}};
        return witness_outcome(F, r.found->w, r.found->name + ", u = " + text(r.found->w.u.value()));
      });
  }
  return run.take();
}

}  // namespace plinth::nagata
