#include "plinth/groebner.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace plinth {

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Poly> gens, GbStats stats,
                             std::vector<std::vector<Poly>> cofactors)
    : ring_(std::move(ring)), gens_(std::move(gens)), stats_(stats), cof_(std::move(cofactors)) {}

Poly GroebnerBasis::normal_form(const Poly& f) const {
  if (!same_ring(f.ring(), ring_)) throw AmbientMismatch("normal_form: polynomial outside the basis ring");
  if (gens_.empty()) return f;
  return divide(f, gens_, false).remainder;
}

Poly normal_form(const Poly& f, const GroebnerBasis& gb) { return gb.normal_form(f); }

namespace {

struct Pair {
  u32 sugar;
  u32 deg;
  std::size_t i, j;
  Monomial lcm;
};

// Sugar strategy: smallest sugar first, then smallest lcm degree.
struct PairLess {
  bool operator()(const Pair& a, const Pair& b) const {
    return std::tie(a.sugar, a.deg, a.i, a.j) < std::tie(b.sugar, b.deg, b.i, b.j);
  }
};

class Buchberger {
 public:
  Buchberger(RingPtr ring, const Budget& budget, bool track, std::size_t ninputs)
      : ring_(std::move(ring)), n_(ring_->nvars()), budget_(budget), track_(track), ninputs_(ninputs),
        weights_(ring_->order().variable_weights(n_)) {}

  void add_input(const Poly& f, std::size_t index) {
    std::vector<Poly> cof;
    if (track_) {
      cof.assign(ninputs_, Poly(ring_));
      cof[index] = Poly::constant(ring_, 1);
    }
    reduce_and_insert(f, std::move(cof), wdeg(f));
  }

  GroebnerBasis run() {
    while (!pairs_.empty()) {
      Pair pr = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      if (budget_.max_pairs && ++stats_.pairs_processed > budget_.max_pairs)
        throw BudgetExceeded("Groebner basis: more than " + std::to_string(budget_.max_pairs) + " pairs");
      if (!budget_.max_pairs) ++stats_.pairs_processed;
      if (budget_.max_degree && pr.deg > budget_.max_degree)
        throw BudgetExceeded("Groebner basis: pair degree " + std::to_string(pr.deg) + " exceeds cap " +
                             std::to_string(budget_.max_degree));
      stats_.max_degree = std::max(stats_.max_degree, pr.deg);
      const Poly& a = G_[pr.i];
      const Poly& b = G_[pr.j];
      Monomial ua = mono_div(pr.lcm, a.lead().m, n_);
      Monomial ub = mono_div(pr.lcm, b.lead().m, n_);
      Poly s = a.times_term(ua, 1) - b.times_term(ub, 1);
      std::vector<Poly> cof;
      if (track_) {
        cof.resize(ninputs_, Poly(ring_));
        for (std::size_t k = 0; k < ninputs_; ++k)
          cof[k] = cof_[pr.i][k].times_term(ua, 1) - cof_[pr.j][k].times_term(ub, 1);
      }
      if (!reduce_and_insert(s, std::move(cof), pr.sugar)) ++stats_.zero_reductions;
      if (unit_) break;
    }
    return finish();
  }

 private:
  // Fully reduces f by the active basis; inserts the monic remainder if nonzero.
  bool reduce_and_insert(const Poly& f, std::vector<Poly> cof, u32 sugar) {
    if (unit_) return false;
    std::vector<std::size_t> idx;
    std::vector<Poly> act;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) {
        idx.push_back(k);
        act.push_back(G_[k]);
      }
    Poly h = f;
    if (!act.empty()) {
      Division d = divide(f, act, track_);
      h = std::move(d.remainder);
      if (track_)
        for (std::size_t s = 0; s < act.size(); ++s)
          if (!d.quotients[s].is_zero())
            for (std::size_t k = 0; k < ninputs_; ++k) cof[k] -= d.quotients[s] * cof_[idx[s]][k];
    }
    if (h.is_zero()) return false;
    u32 inv = ring_->field().inv(h.lead().c);
    h = h.scaled(inv);
    if (track_)
      for (auto& c : cof) c = c.scaled(inv);
    if (budget_.max_degree && h.total_degree() > budget_.max_degree)
      throw BudgetExceeded("Groebner basis: element degree " + std::to_string(h.total_degree()) +
                           " exceeds cap " + std::to_string(budget_.max_degree));
    sugar = std::max(sugar, wdeg(h));
    insert(std::move(h), std::move(cof), sugar);
    return true;
  }

  u32 wdeg(const Monomial& m) const {
    u32 d = 0;
    for (std::size_t v = 0; v < n_; ++v) d += weights_[v] * m.e[v];
    return d;
  }

  u32 wdeg(const Poly& f) const {
    u32 d = 0;
    for (const Term& t : f.terms()) d = std::max(d, wdeg(t.m));
    return d;
  }

  void insert(Poly h, std::vector<Poly> cof, u32 sugar) {
    std::size_t k = G_.size();
    const Monomial lh = h.lead().m;
    if (lh.deg == 0) unit_ = true;
    G_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);
    if (track_) cof_.push_back(std::move(cof));

    struct Cand {
      std::size_t j;
      Monomial lcm;
      bool coprime;
    };
    std::vector<Cand> C;
    for (std::size_t j = 0; j < k; ++j) {
      if (!active_[j]) continue;
      const Monomial& lj = G_[j].lead().m;
      C.push_back(Cand{j, mono_lcm(lh, lj, n_), mono_coprime(lh, lj, n_)});
    }
    // Keep a new pair unless another new pair has an lcm dividing its lcm
    // (among pairs still pending or already kept); coprime pairs are kept
    // here and dropped afterwards.
    std::vector<Cand> D;
    for (std::size_t c = 0; c < C.size(); ++c) {
      bool keep = C[c].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t e = c + 1; e < C.size() && keep; ++e)
          if (mono_divides(C[e].lcm, C[c].lcm, n_)) keep = false;
        for (std::size_t e = 0; e < D.size() && keep; ++e)
          if (mono_divides(D[e].lcm, C[c].lcm, n_)) keep = false;
      }
      if (keep) D.push_back(C[c]);
    }
    std::set<Pair, PairLess> kept;
    for (const Pair& pr : pairs_) {
      bool drop = mono_divides(lh, pr.lcm, n_) && !(mono_lcm(G_[pr.i].lead().m, lh, n_) == pr.lcm) &&
                  !(mono_lcm(G_[pr.j].lead().m, lh, n_) == pr.lcm);
      if (drop)
        ++stats_.pairs_skipped;
      else
        kept.insert(pr);
    }
    for (const Cand& c : D) {
      if (c.coprime) {
        ++stats_.pairs_skipped;
        continue;
      }
      const Monomial& lj = G_[c.j].lead().m;
      u32 sg = std::max(sugar_[c.j] + wdeg(c.lcm) - wdeg(lj), sugar_[k] + wdeg(c.lcm) - wdeg(lh));
      kept.insert(Pair{sg, c.lcm.deg, c.j, k, c.lcm});
    }
    stats_.pairs_skipped += C.size() - D.size();
    pairs_ = std::move(kept);
    for (std::size_t j = 0; j < k; ++j)
      if (active_[j] && mono_divides(lh, G_[j].lead().m, n_)) active_[j] = false;
  }

  GroebnerBasis finish() {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < G_.size(); ++k)
      if (active_[k]) idx.push_back(k);
    if (unit_) {
      idx.clear();
      for (std::size_t k = 0; k < G_.size(); ++k)
        if (G_[k].lead().m.deg == 0) idx = {k};
    }
    std::vector<Poly> out;
    std::vector<std::vector<Poly>> cofs;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      std::vector<Poly> others;
      std::vector<std::size_t> oidx;
      for (std::size_t b = 0; b < idx.size(); ++b)
        if (b != a) {
          others.push_back(G_[idx[b]]);
          oidx.push_back(idx[b]);
        }
      Poly g = G_[idx[a]];
      std::vector<Poly> cof;
      if (track_) cof = cof_[idx[a]];
      if (!others.empty()) {
        Division d = divide(g, others, track_);
        g = std::move(d.remainder);
        if (track_)
          for (std::size_t s = 0; s < others.size(); ++s)
            if (!d.quotients[s].is_zero())
              for (std::size_t k = 0; k < ninputs_; ++k) cof[k] -= d.quotients[s] * cof_[oidx[s]][k];
      }
      out.push_back(std::move(g));
      if (track_) cofs.push_back(std::move(cof));
    }
    std::vector<std::size_t> order(out.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return ring_->compare(out[a].lead().m, out[b].lead().m) < 0;
    });
    std::vector<Poly> sorted;
    std::vector<std::vector<Poly>> sorted_cof;
    for (std::size_t k : order) {
      sorted.push_back(std::move(out[k]));
      if (track_) sorted_cof.push_back(std::move(cofs[k]));
    }
    return GroebnerBasis(ring_, std::move(sorted), stats_, std::move(sorted_cof));
  }

  RingPtr ring_;
  std::size_t n_;
  Budget budget_;
  bool track_;
  std::size_t ninputs_;
  std::vector<Poly> G_;
  std::vector<u32> weights_;
  std::vector<bool> active_;
  std::vector<u32> sugar_;
  std::vector<std::vector<Poly>> cof_;
  std::set<Pair, PairLess> pairs_;
  GbStats stats_;
  bool unit_ = false;
};

}  // namespace

GroebnerBasis groebner(const std::vector<Poly>& gens, const Budget& budget, bool track_cofactors) {
  if (gens.empty()) throw std::invalid_argument("groebner: empty generator list");
  RingPtr ring = gens[0].ring();
  for (const Poly& g : gens)
    if (!same_ring(g.ring(), ring)) throw AmbientMismatch("groebner: generators live in different rings");
  Buchberger bb(ring, budget, track_cofactors, gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (!gens[i].is_zero()) bb.add_input(gens[i], i);
  return bb.run();
}

bool in_ideal(const Poly& f, const std::vector<Poly>& gens, const Budget& budget) {
  if (f.is_zero()) return true;
  return groebner(gens, budget).contains(f);
}

std::optional<std::vector<Poly>> ideal_certificate(const Poly& f, const std::vector<Poly>& gens,
                                                   const Budget& budget) {
  GroebnerBasis gb = groebner(gens, budget, true);
  std::vector<Poly> cert(gens.size(), Poly(f.ring()));
  if (!gb.gens().empty()) {
    Division d = divide(f, gb.gens(), true);
    if (!d.remainder.is_zero()) return std::nullopt;
    for (std::size_t k = 0; k < gb.gens().size(); ++k)
      if (!d.quotients[k].is_zero())
        for (std::size_t i = 0; i < gens.size(); ++i) cert[i] += d.quotients[k] * gb.cofactors()[k][i];
  } else if (!f.is_zero()) {
    return std::nullopt;
  }
  Poly check(f.ring());
  for (std::size_t i = 0; i < gens.size(); ++i) check += cert[i] * gens[i];
  if (check != f) throw std::logic_error("ideal_certificate: cofactors fail to reproduce the target");
  return cert;
}

bool in_radical(const Poly& f, const std::vector<Poly>& gens, const Budget& budget) {
  if (f.is_zero()) return true;
  const RingPtr& R = f.ring();
  std::string w = fresh_name(R->vars(), "w");
  RingPtr E = R->extended({w});
  std::vector<Poly> ext;
  for (const Poly& g : gens) ext.push_back(g.in_ring(E));
  ext.push_back(Poly::constant(E, 1) - Poly::var(E, w) * f.in_ring(E));
  return groebner(ext, budget).is_unit();
}

std::vector<Poly> eliminate(const std::vector<Poly>& gens, const std::vector<std::string>& vars,
                            const Budget& budget) {
  if (gens.empty()) return {};
  const RingPtr& R = gens[0].ring();
  std::vector<std::size_t> elim;
  std::vector<bool> allowed(R->nvars(), true);
  for (const auto& v : vars) {
    std::size_t i = R->vars().index(v);
    elim.push_back(i);
    allowed[i] = false;
  }
  RingPtr E = R->with_order(MonOrder::block(R->nvars(), elim));
  std::vector<Poly> in;
  for (const Poly& g : gens) in.push_back(g.in_ring(E));
  GroebnerBasis gb = groebner(in, budget);
  std::vector<Poly> out;
  for (const Poly& g : gb.gens())
    if (g.only_uses(allowed)) out.push_back(g.in_ring(R));
  return out;
}

SubalgebraReducer::SubalgebraReducer(const std::vector<Poly>& gens, const std::vector<std::string>& tag_names,
                                     const std::vector<std::string>& coefficient_vars, const Budget& budget,
                                     const std::vector<SubalgebraHint>& hints)
    : gens_(gens) {
  if (gens.empty()) throw std::invalid_argument("subalgebra: empty generator list");
  if (gens.size() != tag_names.size()) throw std::invalid_argument("subalgebra: one tag name per generator");
  ambient_ = gens[0].ring();
  for (const Poly& g : gens) require_same_ring(g, gens[0], "subalgebra");
  for (const auto& t : tag_names)
    if (ambient_->vars().find(t) != ambient_->nvars())
      throw std::invalid_argument("subalgebra: tag name " + t + " clashes with an ambient variable");
  std::vector<std::string> names = ambient_->vars().names();
  names.insert(names.end(), tag_names.begin(), tag_names.end());
  std::vector<std::string> hint_names;
  for (std::size_t k = 0; k < hints.size(); ++k) {
    hint_names.push_back(fresh_name(VarTable(names), "hint" + std::to_string(k)));
    names.push_back(hint_names.back());
  }
  std::size_t n = ambient_->nvars();
  std::vector<bool> coeff(n, false);
  for (const auto& c : coefficient_vars) coeff[ambient_->vars().index(c)] = true;
  std::vector<std::size_t> elim;
  for (std::size_t v = 0; v < n; ++v)
    if (!coeff[v]) elim.push_back(v);
  // Tags weighted by the degree of their generator.
  std::vector<u32> weights(names.size(), 1);
  for (std::size_t i = 0; i < gens.size(); ++i) weights[n + i] = std::max<u32>(1, gens[i].total_degree());
  for (std::size_t k = 0; k < hints.size(); ++k)
    weights[n + gens.size() + k] = std::max<u32>(1, hints[k].element.total_degree());
  work_ = Ring::make(ambient_->p(), names, MonOrder::block(names.size(), elim, OrderKind::grevlex, weights));
  rep_vars_.assign(names.size(), true);
  for (std::size_t v : elim) rep_vars_[v] = false;
  std::vector<std::string> rep_names;
  for (std::size_t v = 0; v < n; ++v)
    if (coeff[v]) rep_names.push_back(names[v]);
  rep_names.insert(rep_names.end(), tag_names.begin(), tag_names.end());
  rep_ring_ = Ring::make(ambient_->p(), rep_names);
  rep_names.insert(rep_names.end(), hint_names.begin(), hint_names.end());
  inner_rep_ring_ = Ring::make(ambient_->p(), rep_names);

  std::vector<Poly> rel;
  for (std::size_t i = 0; i < gens.size(); ++i) rel.push_back(Poly::var(work_, n + i) - gens[i].in_ring(work_));
  for (std::size_t k = 0; k < hints.size(); ++k) {
    require_same_ring(hints[k].element, gens[0], "subalgebra hint");
    Poly rep = hints[k].rep.in_ring(rep_ring_);
    if (expand(rep) != hints[k].element) throw std::invalid_argument("subalgebra: hint representation is wrong");
    hint_reps_.push_back(rep);
    rel.push_back(Poly::var(work_, n + gens.size() + k) - hints[k].element.in_ring(work_));
  }
  gb_.emplace(groebner(rel, budget));
}

Poly SubalgebraReducer::representation(const Poly& nf) const {
  Poly inner = nf.in_ring(inner_rep_ring_);
  Poly rep(rep_ring_);
  if (hint_reps_.empty()) {
    rep = inner.in_ring(rep_ring_);
  } else {
    std::vector<Poly> images;
    for (std::size_t v = 0; v < rep_ring_->nvars(); ++v) images.push_back(Poly::var(rep_ring_, v));
    images.insert(images.end(), hint_reps_.begin(), hint_reps_.end());
    rep = substitute(inner, rep_ring_, images);
  }
  return rep;
}

std::optional<Poly> SubalgebraReducer::try_reduce(const Poly& f) const {
  Poly nf = gb_->normal_form(f.in_ring(work_));
  if (!nf.only_uses(rep_vars_)) return std::nullopt;
  Poly rep = representation(nf);
  if (expand(rep) != f) throw std::logic_error("subalgebra: representation fails substitution check");
  return rep;
}

Poly SubalgebraReducer::reduce(const Poly& f) const {
  Poly nf = gb_->normal_form(f.in_ring(work_));
  if (!nf.only_uses(rep_vars_)) throw NotMember("subalgebra_reduce: normal form involves eliminated variables", nf);
  Poly rep = representation(nf);
  if (expand(rep) != f) throw std::logic_error("subalgebra: representation fails substitution check");
  return rep;
}

Poly SubalgebraReducer::expand(const Poly& rep) const {
  std::vector<Poly> images;
  std::size_t ncoef = rep_ring_->nvars() - gens_.size();
  for (std::size_t v = 0; v < ncoef; ++v) images.push_back(Poly::var(ambient_, rep_ring_->vars().name(v)));
  for (const Poly& g : gens_) images.push_back(g);
  return substitute(rep.in_ring(rep_ring_), ambient_, images);
}

Poly subalgebra_reduce(const Poly& f, const std::vector<Poly>& gens, const std::vector<std::string>& tag_names,
                       const std::vector<std::string>& coefficient_vars, const Budget& budget) {
  return SubalgebraReducer(gens, tag_names, coefficient_vars, budget).reduce(f);
}

Poly gcd_pair(const Poly& f, const Poly& g, const Budget& budget) {
  require_same_ring(f, g, "gcd_pair");
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd_pair: both arguments are zero");
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return Poly::constant(f.ring(), 1);
  const RingPtr& R = f.ring();
  std::string t = fresh_name(R->vars(), "t");
  std::vector<std::string> names = R->vars().names();
  names.push_back(t);
  std::size_t n = R->nvars();
  std::vector<MonOrder::Block> blocks{MonOrder::Block{{n}, OrderKind::grevlex, {}}};
  for (const auto& blk : R->order().blocks()) blocks.push_back(blk);
  RingPtr E = Ring::make(R->p(), names, MonOrder(blocks));
  Poly T = Poly::var(E, n);
  std::vector<Poly> gens{T * f.in_ring(E), (Poly::constant(E, 1) - T) * g.in_ring(E)};
  GroebnerBasis gb = groebner(gens, budget);
  std::vector<bool> allowed(n + 1, true);
  allowed[n] = false;
  std::vector<Poly> inter;
  for (const Poly& h : gb.gens())
    if (h.only_uses(allowed)) inter.push_back(h.in_ring(R));
  if (inter.size() != 1) throw std::logic_error("gcd_pair: intersection of principal ideals is not principal");
  return exact_div(f * g, inter[0]).monic();
}

}  // namespace plinth
