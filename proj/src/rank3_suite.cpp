#include <sstream>

#include "plinth/linalg.hpp"
#include "plinth/rank3.hpp"

namespace plinth::rank3 {

namespace {

// Every term of f is divisible by one of the monomials.
bool in_monomial_ideal(const Poly& f, const std::vector<Monomial>& gens) {
  std::size_t n = f.ring()->nvars();
  for (const Term& t : f.terms()) {
    bool hit = false;
    for (const Monomial& g : gens) hit = hit || mono_divides(g, t.m, n);
    if (!hit) return false;
  }
  return true;
}

Monomial mono(std::initializer_list<std::uint16_t> e) {
  Monomial m;
  std::size_t i = 0;
  for (auto v : e) {
    m.e[i++] = v;
    m.deg += v;
  }
  return m;
}

// (x1, x2^(lt+1), x2^(lt) x3)
std::vector<Monomial> ideal_I(const Params& prm) {
  auto lt = static_cast<std::uint16_t>(prm.l * prm.t);
  return {mono({1, 0, 0}), mono({0, std::uint16_t(lt + 1), 0}), mono({0, lt, 1})};
}

std::string names3(const std::vector<bool>& ok, const char* stem) {
  std::string s;
  for (std::size_t i = 0; i < ok.size(); ++i)
    if (!ok[i]) s += std::string(s.empty() ? "" : ", ") + stem + std::to_string(i + 1);
  return s;
}

struct Witness {
  bool delta_ok;
  bool fixed_ok;
  Poly diff;
};

Witness check_witness(const Instance& in, const Expr& s, const Expr& u) {
  Poly ds = in.apply(s) - s.value();
  Poly du = in.apply(u);
  return {ds == u.value(), du == u.value(), ds - u.value()};
}

Outcome witness_outcome(const Instance& in, const Expr& s, const Expr& u, const std::string& what) {
  Witness w = check_witness(in, s, u);
  Outcome o = Outcome::expect(w.delta_ok && w.fixed_ok, what);
  if (!w.delta_ok) o.details += "; delta(s) - u = " + artifact(w.diff);
  if (!w.fixed_ok) o.details += "; u is not fixed";
  o.telemetry["s"] = size_of(s.value());
  o.telemetry["u"] = size_of(u.value());
  return o;
}

}  // namespace

std::vector<CheckRecord> run_suite(const SuiteOptions& opt) {
  const Params& prm = opt.prm;
  CheckRunner run({{"p", std::to_string(prm.p)},
                   {"l", std::to_string(prm.l)},
                   {"m", std::to_string(prm.m)},
                   {"t", std::to_string(prm.t)},
                   {"h", opt.h}});
  run.select(opt.checks);

  FamilyPtr fam;
  const CheckRecord& built = run.run_always("rank3.family.construction", "family construction", [&] {
    fam = build(prm, opt.budget);
    const Family& F = *fam;
    const Poly& f = F.f.value();
    const Poly& x1 = F.x1.value();
    u64 lt = u64(prm.l) * prm.t;
    std::vector<std::string> bad;
    if (x1 * F.g.value() != pow(f, lt + 1) + pow(F.r.value(), prm.t)) bad.push_back("x1 g != f^(lt+1) + r^t");
    if (F.g.value() != pow(f, lt) * F.x3.value() + F.gstar.value() + pow(x1, u64(prm.m) * prm.t - 1))
      bad.push_back("g != f^(lt) x3 + g* + x1^(mt-1)");
    Poly u = pow(f, prm.l) * F.x2.value();
    Poly back = u * substitute(F.gstar_rep, F.B, std::vector<Poly>{u, x1});
    if (back != F.gstar.value()) bad.push_back("g* representation does not expand back");
    if (is_power_of(prm.t, prm.p) && !F.gstar.value().is_zero()) bad.push_back("g* != 0 although t is a power of p");
    Outcome o = Outcome::expect(bad.empty(), bad.empty() ? "g* = (f^l x2) * (" + F.gstar_rep.str() + ")" : "");
    for (const auto& b : bad) o.details += (o.details.empty() ? "" : "; ") + b;
    o.telemetry = {{"f", size_of(f)}, {"r", size_of(F.r.value())}, {"g", size_of(F.g.value())},
                   {"gstar", size_of(F.gstar.value())}};
    return o;
  });
  if (!fam || built.status != Status::pass) return run.take();
  const Family& F = *fam;

  run.run("rank3.coaction.identities", "coaction fixes f and g, shifts r", [&] {
    std::vector<std::string> bad;
    if (!F.fixes_f()) bad.push_back("eps(f) != f");
    if (!F.fixes_g()) bad.push_back("eps(g) != g");
    if (!F.shifts_r()) bad.push_back("eps(r) != r + f^l g T");
    Outcome o = Outcome::expect(bad.empty(), "all three divisions exact");
    for (const auto& b : bad) o.details += "; " + b;
    for (std::size_t i = 0; i < 3; ++i) o.telemetry["eps(x" + std::to_string(i + 1) + ")"] = size_of(F.eps.image(i));
    return o;
  });

  run.run("rank3.coaction.axioms", "coaction axioms", [&] {
    AxiomReport rep = check_coaction(F.eps, opt.check_a2);
    Outcome o = Outcome::expect(rep.ok(), rep.a2_checked ? "(A1) and (A2) checked" : "(A1) checked; (A2) not requested");
    for (const auto& s : rep.failures) o.details += "; " + s;
    return o;
  });

  run.run("rank3.coaction.delta_ideal", "coaction image containments", [&] {
    const RingPtr& BT = F.BT;
    auto lt = static_cast<std::uint16_t>(prm.l * prm.t);
    // T * (x1, x2^(lt) x2, x2^(lt) x3)
    std::vector<Monomial> TJ = {mono({1, 0, 0, 1}), mono({0, std::uint16_t(lt + 1), 0, 1}), mono({0, lt, 1, 1})};
    Poly gT = F.g.value().in_ring(BT) * Poly::var(BT, 3);
    std::vector<bool> in_tj, in_gt;
    for (std::size_t i = 0; i < 3; ++i) {
      Poly d = F.eps.image(i) - Poly::var(BT, i);
      in_tj.push_back(in_monomial_ideal(d, TJ));
      if (prm.p_divides_t()) in_gt.push_back(divides(gT, d));
    }
    std::string miss = names3(in_tj, "delta(x");
    std::string miss_g = names3(in_gt, "delta(x");
    bool ok = miss.empty() && miss_g.empty();
    std::string d = prm.p_divides_t() ? "delta(x_i) in T*J and in g*T*k[x][T]" : "delta(x_i) in T*J";
    if (!miss.empty()) d += "; outside T*J: " + miss;
    if (!miss_g.empty()) d += "; outside gT: " + miss_g;
    return Outcome::expect(ok, d);
  });

  if (is_power_of(prm.m, prm.p) && is_power_of(prm.t, prm.p))
    run.run("rank3.coaction.closed_form", "closed forms of delta", [&] {
      DeltaCheck dc = closed_form_delta(F);
      std::vector<bool> ok = dc.match;
      std::string miss = names3(ok, "x");
      Outcome o = Outcome::expect(miss.empty(), miss.empty() ? "closed forms match" : "mismatch at " + miss);
      for (std::size_t i = 0; i < 3; ++i) o.telemetry["delta(x" + std::to_string(i + 1) + ")"] = size_of(dc.closed[i]);
      return o;
    });

  std::unique_ptr<Instance> inst;
  const CheckRecord& made = run.run_always("rank3.instance.fixed", "exponential automorphism invariants", [&] {
    inst = std::make_unique<Instance>(fam, opt.h, opt.route, opt.budget);
    const Instance& in = *inst;
    std::vector<std::pair<std::string, const Expr*>> want = {{"f", &F.f}, {"g", &F.g}, {"h", &in.h()}, {"q", &in.q()}};
    if (in.q1()) want.emplace_back("q1", &*in.q1());
    std::vector<std::string> bad;
    for (auto& [name, e] : want)
      if (!in.fixes(*e)) bad.push_back(name);
    Poly shift = F.r.value() + pow(F.f.value(), prm.l) * F.g.value() * in.h().value();
    if (in.apply(F.r) != shift) bad.push_back("phi(r) != r + f^l g h");
    Outcome o = Outcome::expect(bad.empty(), "route " + to_string(in.route()));
    for (const auto& b : bad) o.details += "; not fixed: " + b;
    for (std::size_t i = 0; i < 3; ++i) o.telemetry["phi(x" + std::to_string(i + 1) + ")"] = size_of(in.image(i));
    o.telemetry["q"] = size_of(in.q().value());
    if (in.q1()) o.telemetry["q1"] = size_of(in.q1()->value());
    return o;
  });
  if (!inst || made.status != Status::pass) return run.take();
  const Instance& in = *inst;

  run.run("rank3.instance.order", "order p", [&] {
    if (in.route() == Route::direct) {
      RingMorphism id = RingMorphism::identity(F.B);
      bool ok = equal(power(in.morphism(), prm.p), id);
      return Outcome::expect(ok, "phi^p = id by direct composition");
    }
    if (opt.check_a2) {
      AxiomReport rep = check_coaction(F.eps, true);
      return Outcome::expect(rep.ok(), "phi^p = id from (A1), (A2) and p*h = 0");
    }
    return Outcome{Status::inconclusive, "certified route without (A2): order not established", {}};
  });

  std::optional<PtInvariants> pt;
  if (prm.p_divides_t()) {
    run.run("rank3.invariants.generators", "invariant ring generators", [&] {
      pt = in.invariants_pt(opt.budget);
      const Expr& q1 = *in.q1();
      const Poly& f = F.f.value();
      std::vector<std::string> bad;
      if (q1.value() * pt->q3.value() - pow(pt->q2.value(), prm.t / prm.p) != f) bad.push_back("q1 q3 - q2^(t/p) != f");
      if (F.g.value() != pow(f, u64(prm.l) * prm.t) * pt->q3.value() + pt->lambda.value())
        bad.push_back("g != f^(lt) q3 + lambda");
      if (in.q().value() != pow(f, u64(prm.l) * prm.p) * pt->q2.value() + pt->xi.value())
        bad.push_back("q != f^(lp) q2 + xi");
      if (!in.fixes(pt->q2)) bad.push_back("q2 not fixed");
      if (!in.fixes(pt->q3)) bad.push_back("q3 not fixed");
      Outcome o = Outcome::expect(bad.empty(), (pt->first_branch ? "first branch: " : "second branch: ") +
                                                   pt->branch_details);
      for (const auto& b : bad) o.details += "; " + b;
      o.telemetry = {{"q1", size_of(q1.value())}, {"q2", size_of(pt->q2.value())}, {"q3", size_of(pt->q3.value())},
                     {"xi", size_of(pt->xi.value())}, {"lambda", size_of(pt->lambda.value())}};
      return o;
    });

    run.run("rank3.invariants.psi", "Frobenius image of x2^p", [&] {
      if (!pt) pt = in.invariants_pt(opt.budget);
      bool exact = pt->psi_x2p.has_value();
      if (pt->first_branch) {
        bool ok = exact && *pt->psi_x2p == pt->q2.value();
        return Outcome::expect(ok, ok ? "psi(x2^p) = q2" : "psi(x2^p) differs from q2 in the first branch");
      }
      return Outcome::expect(!exact, exact ? "psi(x2^p) is a polynomial in the second branch"
                                            : "psi(x2^p) is not a polynomial, as expected");
    });

    if (opt.fixed_space_degree > 0)
      run.run("rank3.invariants.fixed_space", "fixed space equals generated subalgebra", [&] {
        if (!pt) pt = in.invariants_pt(opt.budget);
        u32 D = opt.fixed_space_degree;
        RingMorphism phi(F.B, {in.image(0), in.image(1), in.image(2)});
        std::vector<Poly> basis = fixed_space(phi, D);
        std::vector<Poly> gens = {in.q1()->value(), pt->q2.value(), pt->q3.value()};
        // f = q1 q3 - q2^(t/p) is handed over as a hint.
        RingPtr QR = Ring::make(prm.p, {"Q1", "Q2", "Q3"});
        Poly f_rep = Poly::var(QR, 0) * Poly::var(QR, 2) - pow(Poly::var(QR, 1), prm.t / prm.p);
        SubalgebraReducer red(gens, {"Q1", "Q2", "Q3"}, {}, opt.budget, {SubalgebraHint{F.f.value(), f_rep}});
        std::size_t missing = 0;
        std::string first;
        for (const Poly& b : basis)
          if (!red.try_reduce(b)) {
            if (!missing) first = artifact(b);
            ++missing;
          }
        PolyEchelon E(F.B);
        for (std::size_t k = 0; k < basis.size(); ++k) E.add(basis[k], k);
        // Products q1^a q2^b q3^c of degree at most D.
        std::vector<Poly> products{Poly::constant(F.B, 1)};
        for (const Poly& gk : gens) {
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
        if (missing) os << "; " << missing << " basis elements outside k[q1,q2,q3], first " << first;
        if (outside) os << "; " << outside << " products outside the span";
        return Outcome::expect(!missing && !outside, os.str());
      });
  }

  std::string why;
  if (in.pnt_hypotheses(&why)) {
    std::optional<PntImages> pn;
    auto images = [&]() -> const PntImages& {
      if (!pn) pn = in.frobenius_images_pnt();
      return *pn;
    };
    run.run("rank3.frobenius.images", "Frobenius images", [&] {
      const PntImages& P = images();
      Poly fg = F.f.value() * F.g.value();
      const Expr* ps[3] = {&P.p1, &P.p2, &P.p3};
      std::vector<std::string> bad;
      Outcome o;
      for (std::size_t i = 0; i < 3; ++i) {
        std::string name = "p" + std::to_string(i + 1);
        Poly d = ps[i]->value() - pow(Poly::var(F.B, i), prm.p);
        if (!in_ideal(d, {fg}, opt.budget)) bad.push_back(name + " - x" + std::to_string(i + 1) + "^p not in (fg)");
        if (!in.fixes(*ps[i])) bad.push_back(name + " not fixed");
        o.telemetry[name] = size_of(ps[i]->value());
      }
      o.status = bad.empty() ? Status::pass : Status::fail;
      o.details = "p_i in x_i^p + fg k[x], fixed";
      for (const auto& b : bad) o.details += "; " + b;
      return o;
    });

    run.run("rank3.frobenius.kernel", "five-variable presentation relations", [&] {
      const PntImages& P = images();
      ExprEvaluator sigma(F.B, {P.p1.value(), P.p2.value(), P.p3.value()});
      Poly fp = pow(F.f.value(), prm.p), gp = pow(F.g.value(), prm.p);
      Poly rf = fp - sigma(F.f), rg = gp - sigma(F.g);
      Outcome o = Outcome::expect(rf.is_zero() && rg.is_zero(), "sigma(y^p - f) and sigma(z^p - g)");
      if (!rf.is_zero()) o.details += "; sigma(y^p - f) = " + artifact(rf);
      if (!rg.is_zero()) o.details += "; sigma(z^p - g) = " + artifact(rg);
      return o;
    });

    run.run("rank3.frobenius.singular", "singular point at the origin", [&] {
      RingPtr R5 = Ring::make(prm.p, {"x1", "x2", "x3", "y", "z"});
      Poly y = Poly::var(R5, 3), z = Poly::var(R5, 4);
      std::vector<Poly> rel = {pow(y, prm.p) - F.f.value().in_ring(R5), pow(z, prm.p) - F.g.value().in_ring(R5)};
      std::vector<u32> origin(5, 0);
      std::vector<std::string> bad;
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t v = 0; v < 5; ++v)
          if (evaluate(diff(rel[k], v), origin).value != 0)
            bad.push_back(std::string(k ? "z^p - g" : "y^p - f") + " d/d" + R5->vars().name(v));
      Outcome o = Outcome::expect(bad.empty(), "all first partials vanish at 0");
      for (const auto& b : bad) o.details += "; nonzero: " + b;
      return o;
    });
  }

  run.run("rank3.plinth.r", "plinth witness for r", [&] {
    return witness_outcome(in, F.r, pow(F.f, prm.l) * F.g * in.h(), "(r, f^l g h)");
  });

  if (prm.p_divides_t()) {
    run.run("rank3.plinth.gh", "plinth ideal generated by gh", [&] {
      Expr s = exact_div(F.r - pow(*in.q1(), prm.m), pow(F.f, prm.l));
      return witness_outcome(in, s, F.g * in.h(), "((r - q1^m)/f^l, g h)");
    });
  } else {
    run.run("rank3.plinth.order_witness", "plinth witness from the order of p mod t", [&] {
      u32 p = prm.p;
      u32 v = multiplicative_order(p, prm.t);
      u64 pv = 1;
      for (u32 k = 0; k < v; ++k) pv *= p;
      u64 u = (pv - 1) / prm.t;
      u64 lt1 = u64(prm.l) * prm.t + 1;
      Expr minus_f = -pow(F.f, lt1);
      Expr c = pow(minus_f, u);
      Expr s = pow(F.r, pv) - c * F.r;
      if (!divides(F.g.value(), s.value())) return Outcome::fail("g does not divide s");
      Expr flh = pow(F.f, prm.l) * in.h();
      Expr sg = exact_div(s, F.g);
      Expr rhs = pow(F.g, pv - 1) * pow(flh, pv) - c * flh;
      Witness w1 = check_witness(in, sg, rhs);
      // delta(s/g - r g^(p^v-2) (f^l h)^(p^v-1)) = -(-f^(lt+1))^u f^l h = (-1)^(u+1) f^(l') h
      Expr w = sg - F.r * pow(F.g, pv - 2) * pow(flh, pv - 1);
      u64 lprime = u * lt1 + prm.l;
      Expr target = pow(F.f, lprime) * in.h();
      Expr signed_w = (u % 2 == 0) ? -w : w;
      Witness w2 = check_witness(in, signed_w, target);
      std::ostringstream os;
      os << "v=" << v << ", u=" << u << ", l'=" << lprime;
      Outcome o = Outcome::expect(w1.delta_ok && w1.fixed_ok && w2.delta_ok && w2.fixed_ok, os.str());
      if (!w1.delta_ok || !w1.fixed_ok) o.details += "; (s/g, rhs) fails: " + artifact(w1.diff);
      if (!w2.delta_ok || !w2.fixed_ok) o.details += "; f^(l') h witness fails: " + artifact(w2.diff);
      o.telemetry = {{"s", size_of(s.value())}, {"rhs", size_of(rhs.value())}};
      return o;
    });
  }

  run.run("rank3.plinth.nonprincipal", "f^l outside I", [&] {
    std::vector<Poly> I;
    for (const Monomial& m : ideal_I(prm)) I.push_back(Poly::monomial(F.B, m));
    bool member = in_ideal(pow(F.f.value(), prm.l), I, opt.budget);
    return Outcome::expect(!member, member ? "f^l lies in I" : "f^l not in (x1, x2^(lt+1), x2^(lt) x3)");
  });

  run.run("rank3.plinth.containments", "delta_h images", [&] {
    std::vector<Monomial> I = ideal_I(prm);
    const Poly& h = in.h().value();
    Poly gh = F.g.value() * h;
    std::vector<std::string> bad;
    for (std::size_t i = 0; i < 3; ++i) {
      Poly d = in.delta(i);
      std::string name = "delta_h(x" + std::to_string(i + 1) + ")";
      if (!divides(h, d) || !in_monomial_ideal(exact_div(d, h), I)) bad.push_back(name + " not in h I");
      if (prm.p_divides_t() && !divides(gh, d)) bad.push_back(name + " not in gh k[x]");
    }
    Outcome o = Outcome::expect(bad.empty(), prm.p_divides_t() ? "in h I and in gh k[x]" : "in h I");
    for (const auto& b : bad) o.details += "; " + b;
    return o;
  });

  if (!prm.p_divides_t() && (u64(prm.m) * prm.t - 1) % prm.p != 0)
    run.run("rank3.derivation", "Jacobian derivations", [&] {
      JacobianChecks jc = derivation_checks(F);
      std::vector<std::string> bad;
      if (!jc.g_not_in_f) bad.push_back("D_(x2,f)(g) in (f)");
      if (!jc.g_expected) bad.push_back("D_(x2,f)(g) != (mt-1) x1^(mt-1) mod f");
      if (!jc.f_not_in_g) bad.push_back("D_(x1,g)(f) in (g)");
      if (!jc.d_x2_f_f.is_zero()) bad.push_back("D_(x2,f)(f) != 0");
      Outcome o = Outcome::expect(bad.empty(), "D_(x2,f)(g) not in (f), D_(x1,g)(f) not in (g)");
      for (const auto& b : bad) o.details += "; " + b;
      return o;
    });

  Params cf = closed_form_params(prm.p);
  const RingPtr& FG = in.h_rep().ring();
  if (cf.l == prm.l && cf.m == prm.m && cf.t == prm.t && in.h_rep() == Poly::var(FG, 0))
    run.run("rank3.closed_form_instance", "explicit automorphism of order p", [&] {
      ClosedFormInstance ci = closed_form_instance(prm.p);
      std::string miss = names3(ci.match, "phi(x");
      Outcome o = Outcome::expect(miss.empty(), miss.empty() ? "phi(x1), phi(x2), phi(x3) match the closed forms"
                                                             : "mismatch: " + miss);
      for (std::size_t i = 0; i < 3; ++i)
        if (!ci.match[i]) o.details += "; difference " + artifact(ci.inst->image(i) - ci.expected[i]);
      return o;
    });

  return run.take();
}

}  // namespace plinth::rank3
