#include "plinth/conductor.hpp"

#include <algorithm>
#include <functional>

#include "plinth/linalg.hpp"

namespace plinth::conductor {

RelationIdeal::RelationIdeal(const Poly& f, std::string_view y, const Budget& budget)
    : f_(f), y_(f.ring()->vars().index(y)) {
  const RingPtr& src = f.ring();
  std::vector<std::string> names{std::string(y)};
  std::vector<std::string> rest;
  for (const auto& v : src->vars().names())
    if (v != y) rest.push_back(v);
  std::string Y0 = fresh_name(src->vars(), "Y0");
  std::vector<std::string> taken = src->vars().names();
  taken.push_back(Y0);
  std::string Y1 = fresh_name(VarTable(taken), "Y1");
  names.insert(names.end(), rest.begin(), rest.end());
  names.push_back(Y0);
  names.push_back(Y1);
  work_ = Ring::make(src->p(), names, MonOrder::block(names.size(), {0}));
  std::vector<std::string> tag_names{Y0, Y1};
  tag_names.insert(tag_names.end(), rest.begin(), rest.end());
  tags_ = Ring::make(src->p(), tag_names);

  Poly yw = Poly::var(work_, 0);
  std::size_t n = names.size();
  gb_.emplace(groebner({Poly::var(work_, n - 2) - pow(yw, src->p()), Poly::var(work_, n - 1) - f.in_ring(work_)},
                       budget));
  y_free_.assign(n, true);
  y_free_[0] = false;
}

std::optional<Poly> RelationIdeal::express(const Poly& target) const {
  Poly nf = gb_->normal_form(target.in_ring(work_));
  if (!nf.only_uses(y_free_)) return std::nullopt;
  return nf.in_ring(tags_);
}

Poly RelationIdeal::require(const Poly& target) const {
  Poly nf = gb_->normal_form(target.in_ring(work_));
  if (!nf.only_uses(y_free_)) throw NotMember("target is not in S[y^p, f]", nf);
  return nf.in_ring(tags_);
}

Poly RelationIdeal::expand(const Poly& lambda) const {
  const RingPtr& src = f_.ring();
  std::vector<Poly> images;
  images.push_back(pow(Poly::var(src, y_), src->p()));
  images.push_back(f_);
  for (std::size_t i = 2; i < tags_->nvars(); ++i) images.push_back(Poly::var(src, tags_->vars().name(i)));
  return substitute(lambda, src, images);
}

Poly RelationIdeal::reduce(const Poly& lambda) const {
  return gb_->normal_form(lambda.in_ring(work_)).in_ring(tags_);
}

Representation represent(const RelationIdeal& rel, u32 l) {
  const Poly& f = rel.f();
  Poly target = pow(diff(f, rel.y()), f.ring()->p()) * pow(Poly::var(f.ring(), rel.y()), l);
  Representation out{rel.require(target), target, l};
  if (rel.expand(out.lambda) != target) throw std::logic_error("represent: substitution identity fails");
  return out;
}

Representation represent(const Poly& f, std::string_view y, u32 l, const Budget& budget) {
  return represent(RelationIdeal(f, y, budget), l);
}

namespace {

// Monomials xi^alpha y^(p k) of weighted degree W, where xi_j has weight d - j.
std::vector<Monomial> ansatz(u32 d, u32 p, long long W) {
  std::vector<Monomial> out;
  if (W < 0) return out;
  std::size_t y = d - 1;
  Monomial m;
  std::function<void(std::size_t, long long)> rec = [&](std::size_t j, long long left) {
    if (j == y) {
      if (left % p) return;
      Monomial r = m;
      r.e[y] = static_cast<std::uint16_t>(left);
      r.deg += static_cast<u32>(left);
      out.push_back(r);
      return;
    }
    long long w = static_cast<long long>(d) - static_cast<long long>(j + 1);
    for (long long a = 0; a * w <= left; ++a) {
      m.e[j] = static_cast<std::uint16_t>(a);
      m.deg += static_cast<u32>(a);
      rec(j + 1, left - a * w);
      m.deg -= static_cast<u32>(a);
      m.e[j] = 0;
    }
  };
  rec(0, W);
  return out;
}

struct Column {
  std::size_t power;
  Monomial m;
};

std::optional<Combination> solve(const std::vector<Column>& cols, const std::vector<std::size_t>& order,
                                 const std::vector<Poly>& gp, const Poly& target, bool* independent) {
  PolyEchelon E(target.ring());
  for (std::size_t k : order) E.add(gp[cols[k].power].times_term(cols[k].m, 1), k);
  *independent = E.relations().empty();
  return E.solve(target);
}

}  // namespace

Decomposition generic_decomposition(u32 d, u32 p, u32 l) {
  if (!is_prime(p)) throw std::invalid_argument("generic_decomposition: p must be prime");
  if (d == 0 || d % p == 0) throw std::invalid_argument("generic_decomposition: p must not divide d");
  if (d > kMaxVars) throw std::invalid_argument("generic_decomposition: d too large");
  std::vector<std::string> names;
  for (u32 j = 1; j < d; ++j) names.push_back("xi" + std::to_string(j));
  names.push_back("y");
  RingPtr S = Ring::make(p, names);
  std::size_t y = d - 1;
  Poly Y = Poly::var(S, y);
  Poly g = pow(Y, d);
  for (u32 j = 1; j < d; ++j) g += Poly::var(S, j - 1) * pow(Y, j);
  Poly target = pow(diff(g, y), p) * pow(Y, l);
  Decomposition out{d, p, l, S, g, target, {}, {}};

  // Weighted-homogeneous ansatz: deg y = 1, deg xi_j = d - j makes g
  // homogeneous of degree d and the target of degree p(d-1) + l.
  long long total = static_cast<long long>(p) * (d - 1) + l;
  std::vector<Poly> gp{Poly::constant(S, 1)};
  for (u32 i = 1; i < p; ++i) gp.push_back(gp.back() * out.g);
  std::vector<Column> cols;
  for (u32 i = 0; i < p; ++i)
    for (const Monomial& m : ansatz(d, p, total - static_cast<long long>(i) * d)) cols.push_back({i, m});

  std::vector<std::size_t> fwd(cols.size()), rev(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) fwd[k] = rev[cols.size() - 1 - k] = k;
  bool ind1 = false, ind2 = false;
  auto c1 = solve(cols, fwd, gp, out.target, &ind1);
  if (!c1) throw std::logic_error("generic_decomposition: the linear system has no solution");
  auto c2 = solve(cols, rev, gp, out.target, &ind2);
  out.unique = ind1 && ind2 && c2 && *c1 == *c2;

  out.f.assign(p, Poly(S));
  for (const auto& [k, c] : *c1) out.f[cols[k].power] += Poly::monomial(S, cols[k].m, c);

  Poly sum(S);
  bool in_yp = true;
  out.bounds = true;
  for (u32 i = 0; i < p; ++i) {
    sum += out.f[i] * gp[i];
    u32 deg = 0;
    for (const Term& t : out.f[i].terms()) {
      if (t.m.e[y] % p) in_yp = false;
      deg = std::max(deg, t.m.deg - t.m.e[y]);
    }
    out.xi_degree.push_back(deg);
    if (deg > p - i) out.bounds = false;
  }
  out.identity = in_yp && sum == out.target;
  return out;
}

Poly as_tags(const Decomposition& dec, const RingPtr& tags) {
  std::vector<Poly> img;
  for (u32 j = 1; j < dec.d; ++j) img.push_back(Poly::var(tags, "xi" + std::to_string(j)));
  img.push_back(Poly::var(tags, 0));
  Poly out(tags);
  std::size_t y = dec.d - 1;
  for (std::size_t i = 0; i < dec.f.size(); ++i) {
    std::vector<Term> terms;
    for (const Term& t : dec.f[i].terms()) {
      Monomial m = t.m;
      m.deg -= m.e[y] - m.e[y] / dec.p;
      m.e[y] = static_cast<std::uint16_t>(m.e[y] / dec.p);
      terms.push_back(Term{m, t.c});
    }
    out += substitute(Poly::from_terms(dec.ring, std::move(terms)), tags, img) * pow(Poly::var(tags, 1), i);
  }
  return out;
}

}  // namespace plinth::conductor
