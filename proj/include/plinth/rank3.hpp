#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plinth/expr.hpp"
#include "plinth/groebner.hpp"
#include "plinth/morphism.hpp"
#include "plinth/report.hpp"

namespace plinth::rank3 {

struct Params {
  u32 p = 2;
  u32 l = 1;
  u32 m = 2;
  u32 t = 2;

  bool p_divides_t() const { return t % p == 0; }
  std::string str() const;
};

// Throws std::invalid_argument unless p is prime, l, m >= 1, t >= 2, mt >= 3.
void validate(const Params& prm);

bool is_power_of(u64 n, u32 p);
// Multiplicative order of p modulo t (p and t coprime, t >= 2).
u32 multiplicative_order(u32 p, u32 t);

// The family for fixed (p, l, m, t): f = x1x3 - x2^t, r = f^l x2 + x1^m,
// g = (f^(lt+1) + r^t)/x1, g* = g - f^(lt) x3 - x1^(mt-1), and the coaction
// eps with eps(r) = r + f^l g T.
struct Family {
  Params prm;
  RingPtr B;   // x1, x2, x3
  RingPtr BT;  // x1, x2, x3, T
  Expr x1, x2, x3, f, r, g, gstar;
  // g* = (f^l x2) * P(f^l x2, x1); P lives in k[u, v].
  Poly gstar_rep;
  // x1, x2, x3 rebuilt from f, g, r (nodes shared with the fields above).
  std::vector<Expr> x_from_fgr;
  Coaction eps;
  // eps(f), eps(g), eps(r) as computed from the coaction images.
  Poly eps_f, eps_g, eps_r;

  bool fixes_f() const;
  bool fixes_g() const;
  bool shifts_r() const;  // eps(r) == r + f^l g T
};

using FamilyPtr = std::shared_ptr<const Family>;

// Throws std::logic_error when an identity of the construction fails (every
// division is exact in a correct build).
FamilyPtr build(const Params& prm, const Budget& budget = {});

struct DeltaCheck {
  std::vector<Poly> closed;  // closed forms of eps(x_i) - x_i
  std::vector<bool> match;   // against the coaction images
};

// Requires m and t to be powers of p.
DeltaCheck closed_form_delta(const Family& fam);

enum class Route { direct, certified };
std::string to_string(Route r);

struct PtInvariants {
  bool first_branch = false;  // h^(p-1) in f^l k[f, g]
  Expr xi, q2, lambda, q3;
  // psi(x2^p) = (q - q1^(mp))/f^(lp) when that division is exact.
  std::optional<Poly> psi_x2p;
  std::string branch_details;
};

struct PntImages {
  Expr p1, p2, p3;
};

// The automorphism eps_h and the elements derived from it.
class Instance {
 public:
  Instance(FamilyPtr fam, const std::string& h_text, std::optional<Route> route = std::nullopt,
           const Budget& budget = {});

  const Family& family() const { return *fam_; }
  const Params& params() const { return fam_->prm; }
  const Expr& h() const { return h_; }
  // h as a polynomial in k[f, g].
  const Poly& h_rep() const { return h_rep_; }
  Route route() const { return route_; }
  std::string h_text() const { return h_text_; }

  // phi(e) for recipes over B. Direct route: substitution of the images of
  // x1, x2, x3 into the recipe. Certified route: recipe evaluation seeded with
  // phi(f) = f, phi(g) = g, phi(r) = r + f^l g h (valid once the family's
  // coaction identities hold).
  Poly apply(const Expr& e) const;
  bool fixes(const Expr& e) const { return apply(e) == e.value(); }
  const Poly& image(std::size_t i) const;
  Poly delta(std::size_t i) const { return image(i) - Poly::var(fam_->B, i); }
  // Full morphism with recipes (direct route; built on first use).
  const RingMorphism& morphism() const;

  const Expr& q() const { return q_; }
  // Defined when p | t.
  const std::optional<Expr>& q1() const { return q1_; }

  // p | t only.
  PtInvariants invariants_pt(const Budget& budget = {}) const;
  // Throws std::domain_error unless p does not divide t or mt - 1 and
  // h^(p-1) lies in f^(l+1) g^2 k[f, g].
  PntImages frobenius_images_pnt() const;
  bool pnt_hypotheses(std::string* why = nullptr) const;

  std::size_t estimated_degree() const { return est_degree_; }

 private:
  FamilyPtr fam_;
  std::string h_text_;
  Expr h_;
  Poly h_rep_;
  Route route_ = Route::direct;
  std::size_t est_degree_ = 0;
  Expr q_;
  std::optional<Expr> q1_;
  mutable std::unique_ptr<ExprEvaluator> eval_;
  mutable std::vector<std::optional<Poly>> images_;
  mutable std::optional<RingMorphism> morphism_;

  ExprEvaluator& evaluator() const;
};

// (l, t) = (1, p), m = 2 for p = 2 and 1 otherwise, h = f; compares phi(x_i)
// with the closed forms phi(x1) = x1 + f^(2p) g^(p-1), phi(x2) = x2 + fg - c,
// phi(x3) = x3 - f^(-p)((x1 + f^(2p) g^(p-1))^s - x1^s), s = mt - 1.
struct ClosedFormInstance {
  std::shared_ptr<Instance> inst;
  std::vector<Poly> expected;
  std::vector<bool> match;
};
ClosedFormInstance closed_form_instance(u32 p);
Params closed_form_params(u32 p);

struct JacobianChecks {
  Poly d_x2_f_g;      // D_(x2, f)(g)
  Poly d_x1_g_f;      // D_(x1, g)(f)
  Poly d_x2_f_f;      // D_(x2, f)(f)
  bool g_not_in_f;    // D_(x2, f)(g) not in (f)
  bool g_expected;    // D_(x2, f)(g) = (mt - 1) x1^(mt-1) mod f
  bool f_not_in_g;    // D_(x1, g)(f) not in (g)
};
// det of the Jacobian of (a, b, c) with respect to x1, x2, x3.
Poly jacobian_det(const Poly& a, const Poly& b, const Poly& c);
JacobianChecks derivation_checks(const Family& fam);

struct SuiteOptions {
  Params prm;
  std::string h = "f";
  std::vector<std::string> checks;  // empty or "all": everything
  Budget budget;
  u32 fixed_space_degree = 0;       // 0: skip the fixed-space comparison
  bool check_a2 = false;
  std::optional<Route> route;
};

std::vector<CheckRecord> run_suite(const SuiteOptions& opt);

}  // namespace plinth::rank3
