#include "plinth/rank3.hpp"

#include <numeric>
#include <sstream>

#include "plinth/linalg.hpp"
#include "plinth/parse.hpp"

namespace plinth::rank3 {

std::string Params::str() const {
  std::ostringstream os;
  os << "(p,l,m,t)=(" << p << "," << l << "," << m << "," << t << ")";
  return os.str();
}

void validate(const Params& prm) {
  if (!is_prime(prm.p)) throw std::invalid_argument("p must be prime, got " + std::to_string(prm.p));
  if (prm.l < 1 || prm.m < 1) throw std::invalid_argument("l and m must be at least 1");
  if (prm.t < 2) throw std::invalid_argument("t must be at least 2");
  if (u64(prm.m) * prm.t < 3) throw std::invalid_argument("mt must be at least 3");
}

bool is_power_of(u64 n, u32 p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

u32 multiplicative_order(u32 p, u32 t) {
  if (t < 2 || std::gcd(p, t) != 1) throw std::invalid_argument("multiplicative_order: p and t must be coprime, t >= 2");
  u64 x = p % t;
  u32 v = 1;
  while (x != 1) {
    x = x * p % t;
    ++v;
  }
  return v;
}

namespace {

struct Fgr {
  Expr f, r, g;
};

Fgr make_fgr(const Params& prm, const Expr& x1, const Expr& x2, const Expr& x3) {
  Expr f = x1 * x3 - pow(x2, prm.t);
  Expr r = pow(f, prm.l) * x2 + pow(x1, prm.m);
  Expr g = exact_div(pow(f, u64(prm.l) * prm.t + 1) + pow(r, prm.t), x1);
  return {f, r, g};
}

Poly in_bt(const Poly& f, const RingPtr& BT) { return f.in_ring(BT); }

}  // namespace

bool Family::fixes_f() const { return eps_f == in_bt(f.value(), BT); }
bool Family::fixes_g() const { return eps_g == in_bt(g.value(), BT); }
bool Family::shifts_r() const {
  Poly shifted = in_bt(r.value(), BT) + in_bt(pow(f.value(), prm.l) * g.value(), BT) * Poly::var(BT, 3);
  return eps_r == shifted;
}

FamilyPtr build(const Params& prm, const Budget& budget) {
  validate(prm);
  RingPtr B = Ring::make(prm.p, {"x1", "x2", "x3"});
  RingPtr BT = Ring::make(prm.p, {"x1", "x2", "x3", "T"});
  Expr x1 = Expr::var(B, 0), x2 = Expr::var(B, 1), x3 = Expr::var(B, 2);
  auto [f, r, g] = make_fgr(prm, x1, x2, x3);
  u64 lt = u64(prm.l) * prm.t;
  Expr fl = pow(f, prm.l);

  Expr gstar = g - pow(f, lt) * x3 - pow(x1, u64(prm.m) * prm.t - 1);
  RingPtr uv = Ring::make(prm.p, {"u", "v"});
  Poly gstar_rep(uv);
  if (!gstar.value().is_zero()) {
    Poly u = fl.value() * x2.value();
    SubalgebraReducer red({u, x1.value()}, {"u", "v"}, {}, budget);
    gstar_rep = red.reduce(exact_div(gstar.value(), u)).in_ring(uv);
  }

  Expr y1 = exact_div(pow(f, lt + 1) + pow(r, prm.t), g);
  Expr y2 = exact_div(r - pow(y1, prm.m), fl);
  Expr y3 = exact_div(f + pow(y2, prm.t), y1);
  if (y1.value() != x1.value() || y2.value() != x2.value() || y3.value() != x3.value())
    throw std::logic_error("build: x1, x2, x3 are not recovered from f, g, r");

  Expr t1 = Expr::var(BT, 0), t2 = Expr::var(BT, 1), t3 = Expr::var(BT, 2), T = Expr::var(BT, 3);
  auto [fT, rT, gT] = make_fgr(prm, t1, t2, t3);
  Expr flT = pow(fT, prm.l);
  Expr R = rT + flT * gT * T;
  Expr e1 = exact_div(pow(fT, lt + 1) + pow(R, prm.t), gT);
  Expr e2 = exact_div(R - pow(e1, prm.m), flT);
  Expr e3 = exact_div(fT + pow(e2, prm.t), e1);
  Coaction eps(B, {e1, e2, e3});

  ExprEvaluator ev(BT, {e1.value(), e2.value(), e3.value()});
  Poly eps_f = ev(f), eps_g = ev(g), eps_r = ev(r);

  return std::make_shared<const Family>(Family{prm, B, BT, x1, x2, x3, f, r, g, gstar, gstar_rep,
                                               {y1, y2, y3}, std::move(eps), eps_f, eps_g, eps_r});
}

DeltaCheck closed_form_delta(const Family& fam) {
  const Params& prm = fam.prm;
  if (!is_power_of(prm.m, prm.p) || !is_power_of(prm.t, prm.p))
    throw std::domain_error("closed_form_delta: m and t must be powers of p");
  const RingPtr& BT = fam.BT;
  Poly F = in_bt(fam.f.value(), BT), G = in_bt(fam.g.value(), BT), T = Poly::var(BT, 3);
  Poly X1 = Poly::var(BT, 0);
  Poly Fl = pow(F, prm.l);
  Poly d1 = exact_div(pow(Fl * G * T, prm.t), G);
  Poly d2 = G * T - exact_div(pow(d1, prm.m), Fl);
  u64 s = u64(prm.m) * prm.t - 1;
  Poly d3 = -exact_div(pow(X1 + d1, s) - pow(X1, s), pow(F, u64(prm.l) * prm.t));
  DeltaCheck out;
  out.closed = {d1, d2, d3};
  for (std::size_t i = 0; i < 3; ++i) out.match.push_back(fam.eps.image(i) - Poly::var(BT, i) == out.closed[i]);
  return out;
}

std::string to_string(Route r) { return r == Route::direct ? "direct" : "certified"; }

Instance::Instance(FamilyPtr fam, const std::string& h_text, std::optional<Route> route, const Budget& budget)
    : fam_(std::move(fam)), h_text_(h_text), h_(fam_->f), h_rep_(Ring::make(fam_->prm.p, {"f", "g"})),
      q_(fam_->f) {
  (void)budget;
  const Family& F = *fam_;
  u32 p = F.prm.p;
  AstPtr ast = parse_expr(h_text, {"f", "g"});
  h_rep_ = to_poly(ast, h_rep_.ring());
  if (h_rep_.is_zero()) throw std::invalid_argument("h must be nonzero");
  h_ = lower<Expr>(
      ast, [&](const std::string& d) { return Expr::constant(F.B, literal_mod(d, p)); },
      [&](const std::string& id) { return id == "f" ? F.f : F.g; });

  u32 dh = h_.value().total_degree();
  for (std::size_t i = 0; i < 3; ++i)
    for (const Term& t : F.eps.image(i).terms()) {
      std::size_t d = t.m.deg - t.m.e[3] + std::size_t(t.m.e[3]) * dh;
      est_degree_ = std::max(est_degree_, d);
    }
  route_ = route ? *route : Route::direct;

  Expr ab = pow(F.f, F.prm.l) * F.g * h_;
  q_ = pow(F.r, p) - pow(ab, p - 1) * F.r;
  if (F.prm.p_divides_t())
    q1_ = exact_div(pow(F.f, u64(F.prm.l) * F.prm.t + 1) + pow(q_, F.prm.t / p), F.g);
  images_.resize(3);
}

const RingMorphism& Instance::morphism() const {
  if (!morphism_) morphism_ = specialize(fam_->eps, h_);
  return *morphism_;
}

ExprEvaluator& Instance::evaluator() const {
  if (eval_) return *eval_;
  const Family& F = *fam_;
  if (route_ == Route::direct) {
    eval_ = std::make_unique<ExprEvaluator>(F.B, 3, [this](std::size_t i) { return morphism().image(i); });
  } else {
    if (!F.fixes_f() || !F.fixes_g() || !F.shifts_r())
      throw std::logic_error("certified evaluation needs eps(f) = f, eps(g) = g, eps(r) = r + f^l g T");
    eval_ = std::make_unique<ExprEvaluator>(F.B, 3, [](std::size_t) -> Poly {
      throw std::logic_error("certified evaluation reached a variable");
    });
    eval_->seed(F.f, F.f.value());
    eval_->seed(F.g, F.g.value());
    eval_->seed(F.r, F.r.value() + pow(F.f.value(), F.prm.l) * F.g.value() * h_.value());
  }
  return *eval_;
}

Poly Instance::apply(const Expr& e) const {
  if (!same_ring(e.ring(), fam_->B)) throw AmbientMismatch("apply: recipe outside k[x1,x2,x3]");
  return evaluator()(e);
}

const Poly& Instance::image(std::size_t i) const {
  if (!images_.at(i)) images_[i] = route_ == Route::direct ? morphism().image(i) : apply(fam_->x_from_fgr[i]);
  return *images_[i];
}

PtInvariants Instance::invariants_pt(const Budget& budget) const {
  const Family& F = *fam_;
  const Params& prm = F.prm;
  if (!prm.p_divides_t()) throw std::domain_error("invariants_pt: p must divide t");
  u32 p = prm.p;
  u64 lt = u64(prm.l) * prm.t;
  const Expr& q1 = *q1_;
  PtInvariants out{false, q1, q1, q1, q1, std::nullopt, {}};

  Poly hp = pow(h_.value(), p - 1);
  Poly fl = pow(F.f.value(), prm.l);
  std::ostringstream why;
  try {
    Poly quot = exact_div(hp, fl);
    SubalgebraReducer red({F.f.value(), F.g.value()}, {"F", "G"}, {}, budget);
    if (auto rep = red.try_reduce(quot)) {
      out.first_branch = true;
      why << "h^(p-1)/f^l = " << rep->str() << " in k[F,G]";
    } else {
      why << "h^(p-1)/f^l is not in k[f,g]";
    }
  } catch (const NotDivisible& e) {
    why << "f^l does not divide h^(p-1); remainder " << artifact(e.remainder(), 120);
  }
  out.branch_details = why.str();

  Expr xi = pow(q1, u64(prm.m) * p);
  if (!out.first_branch) {
    const RingPtr& FG = h_rep_.ring();
    Poly eta = pow(Poly::var(FG, 1) * h_rep_, p - 1);
    Expr eta_expr = Expr::of(eta).compose(std::vector<Expr>{F.f, pow(q1, u64(prm.m) * prm.t - 1)});
    xi = xi - pow(F.f, u64(prm.l) * (p - 1)) * eta_expr * pow(q1, prm.m);
  }
  Expr flp = pow(F.f, u64(prm.l) * p);
  out.xi = xi;
  out.q2 = exact_div(q_ - xi, flp);
  out.lambda = exact_div(pow(q_, prm.t / p) - pow(flp * out.q2, prm.t / p), q1);
  out.q3 = exact_div(F.g - out.lambda, pow(F.f, lt));
  try {
    out.psi_x2p = exact_div(q_.value() - pow(q1.value(), u64(prm.m) * p), flp.value());
  } catch (const NotDivisible&) {
  }
  return out;
}

bool Instance::pnt_hypotheses(std::string* why) const {
  const Params& prm = fam_->prm;
  auto say = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (prm.p_divides_t()) return say("p divides t");
  if ((u64(prm.m) * prm.t - 1) % prm.p == 0) return say("p divides mt - 1");
  const RingPtr& FG = h_rep_.ring();
  Poly need = pow(Poly::var(FG, 0), prm.l + 1) * pow(Poly::var(FG, 1), 2);
  if (!divides(need, pow(h_rep_, prm.p - 1))) return say("h^(p-1) is not in f^(l+1) g^2 k[f,g]");
  return true;
}

PntImages Instance::frobenius_images_pnt() const {
  std::string why;
  if (!pnt_hypotheses(&why)) throw std::domain_error("frobenius_images_pnt: " + why);
  const Family& F = *fam_;
  const Params& prm = F.prm;
  u32 p = prm.p;
  Expr p1 = exact_div(pow(F.f, u64(p) * (u64(prm.l) * prm.t + 1)) + pow(q_, prm.t), pow(F.g, p));
  Expr p2 = exact_div(q_ - pow(p1, prm.m), pow(F.f, u64(prm.l) * p));
  Expr p3 = exact_div(pow(p2, prm.t) + pow(F.f, p), p1);
  return {p1, p2, p3};
}

Params closed_form_params(u32 p) { return Params{p, 1, p == 2 ? 2u : 1u, p}; }

ClosedFormInstance closed_form_instance(u32 p) {
  Params prm = closed_form_params(p);
  auto inst = std::make_shared<Instance>(build(prm), "f", Route::direct);
  const Family& F = inst->family();
  const Poly& f = F.f.value();
  const Poly& g = F.g.value();
  const Poly& x1 = F.x1.value();
  u64 s = u64(prm.m) * prm.t - 1;
  Poly a = pow(f, 2 * p) * pow(g, p - 1);
  Poly c = p == 2 ? pow(f, 7) * pow(g, 2) : pow(f, 2 * p - 1) * pow(g, p - 1);
  ClosedFormInstance out{inst, {}, {}};
  out.expected.push_back(x1 + a);
  out.expected.push_back(F.x2.value() + f * g - c);
  out.expected.push_back(F.x3.value() - exact_div(pow(x1 + a, s) - pow(x1, s), pow(f, p)));
  for (std::size_t i = 0; i < 3; ++i) out.match.push_back(inst->image(i) == out.expected[i]);
  return out;
}

Poly jacobian_det(const Poly& a, const Poly& b, const Poly& c) {
  const Poly* rows[3] = {&a, &b, &c};
  Poly J[3][3] = {{Poly(a.ring()), Poly(a.ring()), Poly(a.ring())},
                  {Poly(a.ring()), Poly(a.ring()), Poly(a.ring())},
                  {Poly(a.ring()), Poly(a.ring()), Poly(a.ring())}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) J[i][j] = diff(*rows[i], j);
  return J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) - J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
         J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
}

JacobianChecks derivation_checks(const Family& fam) {
  const Params& prm = fam.prm;
  if (prm.p_divides_t() || (u64(prm.m) * prm.t - 1) % prm.p == 0)
    throw std::domain_error("derivation_checks: needs p not dividing t or mt - 1");
  const Poly& f = fam.f.value();
  const Poly& g = fam.g.value();
  const Poly& x1 = fam.x1.value();
  const Poly& x2 = fam.x2.value();
  u64 s = u64(prm.m) * prm.t - 1;
  JacobianChecks out{jacobian_det(x2, f, g), jacobian_det(x1, g, f), jacobian_det(x2, f, f), false, false, false};
  out.g_not_in_f = !in_ideal(out.d_x2_f_g, {f});
  out.g_expected = in_ideal(out.d_x2_f_g - pow(x1, s).scaled(u32(s % prm.p)), {f});
  out.f_not_in_g = !in_ideal(out.d_x1_g_f, {g});
  return out;
}

}  // namespace plinth::rank3
