#include "plinth/nagata.hpp"

#include <set>
#include <sstream>

#include "plinth/parse.hpp"

namespace plinth::nagata {

std::vector<std::string> default_zvars(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i) out.push_back("z" + std::to_string(i));
  return out;
}

namespace {

const std::set<std::string> kReserved{"x", "y", "f", "y0", "y1", "y2"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

Poly parse_in(const std::string& what, const std::string& text, const RingPtr& ring) {
  const auto& names = ring->vars().names();
  std::set<std::string> allowed(names.begin(), names.end());
  try {
    return to_poly(parse_expr(text, allowed), ring);
  } catch (const ParseError& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

// Images of the variables of `from` (the first k given explicitly, the rest
// matched by name in `to`).
std::vector<Poly> images(const RingPtr& from, const RingPtr& to, std::vector<Poly> head) {
  for (std::size_t i = head.size(); i < from->nvars(); ++i) head.push_back(Poly::var(to, from->vars().name(i)));
  return head;
}

Poly power_sum(const std::vector<Poly>& coeffs, const Poly& x, u32 step, u32 frob) {
  // sum_i c_i^frob x^(i / step) over the indices divisible by step.
  Poly out(x.ring());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_zero() || i % step) continue;
    out += pow(coeffs[i].in_ring(x.ring()), frob) * pow(x, i / step);
  }
  return out;
}

}  // namespace

FamilyPtr build(const Input& in, const Budget& budget) {
  if (!is_prime(in.p)) throw std::invalid_argument("p must be prime");
  if (in.zvars.empty()) throw std::invalid_argument("at least one z-variable is required");
  std::set<std::string> seen;
  for (const auto& z : in.zvars) {
    if (kReserved.count(z)) throw std::invalid_argument("z-variable name '" + z + "' is reserved");
    if (!seen.insert(z).second) throw std::invalid_argument("duplicate z-variable '" + z + "'");
  }
  u32 p = in.p;
  RingPtr B = Ring::make(p, with({"x", "y"}, in.zvars));
  RingPtr R = Ring::make(p, in.zvars);
  RingPtr Ry = Ring::make(p, with({"y"}, in.zvars));
  RingPtr Rf = Ring::make(p, with({"f"}, in.zvars));

  Poly aR = parse_in("a", in.a, R);
  if (aR.is_zero()) throw std::invalid_argument("a must be nonzero");
  Poly thetaRy = parse_in("theta", in.theta, Ry);
  if (thetaRy.is_zero()) throw std::invalid_argument("theta must be nonzero");
  for (const Term& t : thetaRy.terms())
    if (t.m.e[0] == 0) throw std::invalid_argument("theta must lie in yR[y] (no terms free of y)");
  Poly F_rep = parse_in("F", in.F, Rf);
  if (F_rep.is_zero()) throw std::invalid_argument("F must be nonzero");

  Poly a = aR.in_ring(B), theta = thetaRy.in_ring(B);
  Poly x = Poly::var(B, 0), y = Poly::var(B, 1);
  Poly f = a * x + theta;
  Poly F = substitute(F_rep, B, images(Rf, B, {f}));

  std::vector<Poly> s = coefficients(theta, 1);
  Poly dR = aR;
  for (std::size_t i = 1; i < s.size(); ++i) {
    Poly c = s[i].scaled(static_cast<u32>(i % p));
    if (!c.is_zero()) dR = gcd_pair(dR, c.in_ring(R), budget);
  }
  Poly d = dR.monic().in_ring(B);
  Poly b = exact_div(a, d);
  std::vector<Poly> t(s.size(), Poly(B));
  Poly rho(B);
  for (std::size_t i = 1; i < s.size(); ++i)
    if (i % p) {
      t[i] = exact_div(s[i], d);
      rho += t[i] * pow(y, i);
    }
  Poly theta_star = power_sum(s, y, p, 1);

  if (b * d != a) throw std::logic_error("a != b d");
  if (substitute(theta_star, {{"y", pow(y, p)}}) + d * rho != theta)
    throw std::logic_error("theta != theta*(y^p) + d rho");
  if (diff(theta, 1) != d * diff(rho, 1)) throw std::logic_error("theta' != d rho'");
  Poly bRy = b.in_ring(Ry);
  if (!gcd_pair(bRy, rho.in_ring(Ry), budget).is_one() || !gcd_pair(bRy, diff(rho, 1).in_ring(Ry), budget).is_one())
    throw std::logic_error("gcd(b, rho) or gcd(b, rho') is not 1");

  Poly aF = a * F;
  Poly shifted = substitute(theta, {{"y", y + aF}});
  std::vector<Poly> img = images(B, B, {x + exact_div(theta - shifted, a), y + aF});
  RingMorphism phi(B, img);

  std::string route;
  if (p <= 3) {
    if (!equal(power(phi, p), RingMorphism::identity(B))) throw std::logic_error("power(phi, p) != id");
    route = "direct composition";
  } else {
    std::string T = fresh_name(B->vars(), "T");
    RingPtr BT = B->extended({T});
    Poly aT = a.in_ring(BT) * Poly::var(BT, T);
    Poly thT = theta.in_ring(BT);
    Poly yT = Poly::var(BT, 1);
    Poly ex = Poly::var(BT, 0) + exact_div(thT - substitute(thT, {{"y", yT + aT}}), a.in_ring(BT));
    std::vector<Expr> rec{Expr::of(ex), Expr::of(yT + aT)};
    for (std::size_t i = 2; i < B->nvars(); ++i) rec.push_back(Expr::var(BT, i));
    Coaction eps(B, rec);
    AxiomReport rep = check_coaction(eps);
    if (!rep.ok()) throw std::logic_error("the coaction fails its axioms");
    if (!equal(specialize(eps, Expr::of(F)), phi)) throw std::logic_error("phi is not the specialization at F");
    route = "coaction axioms and invariance of F";
  }

  return std::make_shared<const Family>(Family{in, p, B, R, Ry, Rf, a, theta, F_rep, f, F, d, b, s, t, rho,
                                               theta_star, phi, route});
}

Invariants invariants(const Family& fam) {
  u32 p = fam.p;
  Poly y = Poly::var(fam.B, 1);
  Poly a = fam.a;
  Poly aF = a * fam.F;
  Poly q = pow(y, p) - pow(aF, p - 1) * y;
  Poly q1 = exact_div(fam.f - substitute(fam.theta_star, {{"y", q}}), fam.d);
  Invariants out{q, q1};
  out.q_fixed = fam.phi.apply(q) == q;
  out.q1_fixed = fam.phi.apply(q1) == q1;
  Poly factor = pow(fam.d, p - 2) * pow(fam.b * fam.F, p - 1) * y;
  out.containment = divides(factor, q1 - fam.b * Poly::var(fam.B, 0) - fam.rho);
  return out;
}

SecondInvariants lambda_and_q2(const Family& fam, const Invariants& inv, const Budget& budget) {
  u32 p = fam.p;
  conductor::Representation rep = conductor::represent(fam.rho.in_ring(fam.Ry), "y", 1, budget);
  Poly lam = substitute(rep.lambda, fam.B, images(rep.lambda.ring(), fam.B, {inv.q, inv.q1}));
  Poly rho_p_q = power_sum(fam.t, inv.q, 1, p);
  Poly qt1 = exact_div(pow(inv.q1, p) - rho_p_q, pow(fam.b, p - 1));
  Poly q2 = exact_div(qt1 - lam * pow(fam.d * fam.F, p - 1), fam.b);
  SecondInvariants out{rep, lam, qt1, q2};
  out.qt1_fixed = fam.phi.apply(qt1) == qt1;
  out.q2_fixed = fam.phi.apply(q2) == q2;
  return out;
}

Poly sigma(const Family& fam, const Invariants& inv, const SecondInvariants& sec, const Poly& h) {
  return substitute(h, fam.B, images(h.ring(), fam.B, {inv.q, inv.q1, sec.q2}));
}

Relation relation(const Family& fam, const Invariants& inv, const SecondInvariants& sec) {
  u32 p = fam.p;
  RingPtr Y = Ring::make(p, with({"y0", "y1", "y2"}, fam.input.zvars));
  Poly y0 = Poly::var(Y, 0), y1 = Poly::var(Y, 1), y2 = Poly::var(Y, 2);
  Poly d = fam.d.in_ring(Y), b = fam.b.in_ring(Y);
  Poly f_sub = d * y1 + power_sum(fam.s, y0, p, 1);
  Poly FY = substitute(fam.F_rep, Y, images(fam.Rf, Y, {f_sub}));
  Poly nu = pow(d * FY, p - 1);
  Poly lamY = substitute(sec.lambda.lambda, Y, images(sec.lambda.lambda.ring(), Y, {y0, y1}));
  Poly Lambda = pow(b, p) * y2 + power_sum(fam.t, y0, 1, p) - pow(y1, p) + pow(b, p - 1) * lamY * nu;
  Relation out{Y, nu, Lambda, sigma(fam, inv, sec, Lambda)};
  Poly nu_at = sigma(fam, inv, sec, nu);
  out.nu_ok = nu_at == pow(fam.d * fam.F, p - 1);
  out.qt1_identity = sec.qt1 == fam.b * sec.q2 + sec.lambda_at * nu_at;
  return out;
}

Verdict principality_test(const Family& fam, const Budget& budget) {
  if (fam.b_unit()) return {true, "b is a unit"};
  const RingPtr& R = fam.R;
  Poly b = fam.b.in_ring(R);
  Poly t1 = fam.t.size() > 1 ? fam.t[1].in_ring(R) : Poly(R);
  auto cert = ideal_certificate(Poly::constant(R, 1), {t1, b}, budget);
  if (!cert) return {false, "1 is not in (t_1, b) = (" + t1.str() + ", " + b.str() + ")"};
  std::string text = "1 = (" + (*cert)[0].str() + ")*t_1 + (" + (*cert)[1].str() + ")*b";
  for (std::size_t i = 2; i < fam.t.size(); ++i) {
    if (i % fam.p == 0 || fam.t[i].is_zero()) continue;
    if (!in_radical(fam.t[i].in_ring(R), {b}, budget))
      return {false, "t_" + std::to_string(i) + " = " + fam.t[i].str() + " is not in sqrt(b)"};
    text += "; t_" + std::to_string(i) + " in sqrt(b)";
  }
  return {true, text};
}

Verdict coordinate_test(const Family& fam, const Relation& rel, const Budget& budget) {
  if (fam.b_unit()) return {true, "b is a unit"};
  const RingPtr& Y = rel.Y;
  Poly b = fam.b.in_ring(Y);
  Poly bp = pow(b, fam.p);
  std::vector<Poly> u = coefficients(rel.Lambda, 0);
  Poly u1 = u.size() > 1 ? u[1] : Poly(Y);
  if (!in_ideal(Poly::constant(Y, 1), {u1, bp}, budget))
    return {false, "1 is not in (u_1, b^p) with u_1 = " + (u1.is_zero() ? std::string("0") : u1.str())};
  for (std::size_t i = 2; i < u.size(); ++i)
    if (!u[i].is_zero() && !in_radical(u[i], {b}, budget))
      return {false, "u_" + std::to_string(i) + " = " + u[i].str() + " is not in sqrt(b)"};
  return {true, "u_1 is a unit modulo b^p and u_i (i >= 2) are nilpotent"};
}

Singularity nonsmooth_test(const Family& fam, const Relation& rel, const Budget& budget) {
  const RingPtr& Y = rel.Y;
  std::vector<Poly> gens{rel.Lambda};
  for (std::size_t v = 0; v < Y->nvars(); ++v) gens.push_back(diff(rel.Lambda, v));
  GroebnerBasis gb = groebner(gens, budget);
  Singularity out;
  out.singular = !gb.is_unit();
  out.basis_size = gb.gens().size();

  // (alpha^p, rho(alpha, gamma), 0, gamma) with b(gamma) = 0 and rho'(alpha, gamma) = 0.
  u32 p = fam.p;
  std::size_t n = fam.input.zvars.size();
  double count = 1;
  for (std::size_t i = 0; i < n; ++i) count *= p;
  if (count > 4096) return out;
  Poly drho = diff(fam.rho, 1);
  std::vector<u32> gamma(n, 0);
  for (;;) {
    std::vector<u32> pt(2 + n, 0);
    std::copy(gamma.begin(), gamma.end(), pt.begin() + 2);
    if (evaluate(fam.b, pt).value == 0)
      for (u32 alpha = 0; alpha < p; ++alpha) {
        pt[1] = alpha;
        if (evaluate(drho, pt).value) continue;
        std::vector<u32> at{alpha, evaluate(fam.rho, pt).value, 0};
        at.insert(at.end(), gamma.begin(), gamma.end());
        bool zero = true;
        for (const Poly& g : gens) zero = zero && evaluate(g, at).value == 0;
        if (zero) {
          out.point = at;
          return out;
        }
      }
    std::size_t k = 0;
    while (k < n && ++gamma[k] == p) gamma[k++] = 0;
    if (k == n) break;
  }
  return out;
}

std::optional<PlinthWitness> divided_witness(const Family& fam, const Poly& g, const Poly& h, const Poly& c) {
  std::vector<bool> z_only(fam.B->nvars(), true);
  z_only[0] = z_only[1] = false;
  if (c.is_zero() || !c.only_uses(z_only)) return std::nullopt;
  if (fam.phi.apply(g) != g || fam.phi.apply(h) != h) return std::nullopt;
  Poly y = Poly::var(fam.B, 1);
  if (!divides(c, y * g - h)) return std::nullopt;
  Poly s = exact_div(y * g - h, c);
  Poly u = exact_div(fam.a * fam.F * g, c);
  return PlinthWitness{Expr::of(s), Expr::of(u)};
}

namespace {

// Groebner basis of (tags - images, b) in F_p[y, z.., tags], eliminating y.
struct ModB {
  RingPtr W;
  std::optional<GroebnerBasis> gb;
  std::vector<bool> y_free;

  ModB(const Family& fam, const std::vector<std::string>& tags, const std::vector<Poly>& tag_images,
       const Budget& budget) {
    std::vector<std::string> names = with(with({"y"}, fam.input.zvars), tags);
    W = Ring::make(fam.p, names, MonOrder::block(names.size(), {0}));
    std::vector<Poly> gens{fam.b.in_ring(W)};
    std::size_t base = 1 + fam.input.zvars.size();
    for (std::size_t k = 0; k < tags.size(); ++k) gens.push_back(Poly::var(W, base + k) - tag_images[k].in_ring(W));
    gb.emplace(groebner(gens, budget));
    y_free.assign(W->nvars(), true);
    y_free[0] = false;
  }

  std::optional<Poly> express(const Poly& target) const {
    Poly nf = gb->normal_form(target.in_ring(W));
    if (!nf.only_uses(y_free)) return std::nullopt;
    return nf;
  }
};

}  // namespace

std::optional<Poly> nu_hat(const Family& fam, const Budget& budget) {
  ModB mb(fam, {"Y"}, {fam.rho}, budget);
  auto r = mb.express(Poly::var(mb.W, 0));
  if (!r) return std::nullopt;
  return r->in_ring(Ring::make(fam.p, with({"Y"}, fam.input.zvars)));
}

SearchResult nonprincipal_search(const Family& fam, const Invariants& inv, u32 max_degree, const Budget& budget) {
  SearchResult out;
  ModB mb(fam, {"Y0", "Y1"}, {pow(Poly::var(fam.B, 1), fam.p), fam.rho}, budget);
  Poly yW = Poly::var(mb.W, 0), rhoW = fam.rho.in_ring(mb.W);
  std::size_t i0 = mb.W->nvars() - 2;
  for (u32 k = 1; k <= max_degree; ++k) {
    out.searched_degree = k;
    for (u32 j = 0; j <= k; ++j) {
      u32 i = k - j;
      auto g1 = mb.express(pow(yW, 1 + u64(fam.p) * i) * pow(rhoW, j));
      if (!g1) continue;
      Poly g2 = pow(inv.q, i) * pow(inv.q1, j);
      if (divides(fam.b, g2)) continue;
      std::vector<Poly> img(mb.W->nvars(), Poly(fam.B));
      for (std::size_t v = 1; v < i0; ++v) img[v] = Poly::var(fam.B, mb.W->vars().name(v));
      img[i0] = inv.q;
      img[i0 + 1] = inv.q1;
      Poly h = substitute(*g1, fam.B, img);
      auto w = divided_witness(fam, g2, h, fam.b);
      if (!w) continue;
      std::string name = "g = q^" + std::to_string(i) + " q1^" + std::to_string(j) + ", c = b";
      out.found = NamedWitness{name, *w, plinth_witness(fam.phi, *w)};
      return out;
    }
  }
  return out;
}

}  // namespace plinth::nagata
