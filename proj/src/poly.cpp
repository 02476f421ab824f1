#include "plinth/poly.hpp"

#include <algorithm>
#include <queue>
#include <sstream>

namespace plinth {

namespace {

// Open-addressing map Monomial -> coefficient used to collect products.
class TermAccumulator {
 public:
  TermAccumulator(const Ring& ring, std::size_t expected) : ring_(ring), hash_{ring.nvars()} {
    std::size_t cap = 16;
    while (cap < 2 * expected) cap <<= 1;
    slots_.resize(cap);
    used_.assign(cap, 0);
  }

  void add(const Monomial& m, u32 c) {
    if (2 * (count_ + 1) > slots_.size()) grow();
    std::size_t mask = slots_.size() - 1;
    std::size_t i = hash_(m) & mask;
    while (used_[i]) {
      if (slots_[i].m == m) {
        slots_[i].c = ring_.field().add(slots_[i].c, c);
        return;
      }
      i = (i + 1) & mask;
    }
    used_[i] = 1;
    slots_[i] = Term{m, c};
    ++count_;
  }

  std::vector<Term> take() {
    std::vector<Term> out;
    out.reserve(count_);
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (used_[i] && slots_[i].c != 0) out.push_back(slots_[i]);
    return out;
  }

 private:
  void grow() {
    std::vector<Term> old;
    old.reserve(count_);
    for (std::size_t i = 0; i < slots_.size(); ++i)
      if (used_[i]) old.push_back(slots_[i]);
    std::size_t cap = slots_.size() * 2;
    slots_.assign(cap, Term{});
    used_.assign(cap, 0);
    count_ = 0;
    for (const Term& t : old) add(t.m, t.c);
  }

  const Ring& ring_;
  MonomialHash hash_;
  std::vector<Term> slots_;
  std::vector<unsigned char> used_;
  std::size_t count_ = 0;
};

void sort_terms(const Ring& ring, std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [&ring](const Term& a, const Term& b) { return ring.compare(a.m, b.m) > 0; });
}

// Binomial coefficient C(n, k) mod p via Lucas' theorem.
u32 binom_mod(u64 n, u64 k, const Zp& F) {
  u32 p = F.modulus();
  u32 r = 1;
  while (n || k) {
    u64 ni = n % p, ki = k % p;
    if (ki > ni) return 0;
    // C(ni, ki) with ni < p
    u32 num = 1, den = 1;
    for (u64 i = 0; i < ki; ++i) {
      num = F.mul(num, static_cast<u32>((ni - i) % p));
      den = F.mul(den, static_cast<u32>((i + 1) % p));
    }
    r = F.mul(r, F.mul(num, F.inv(den)));
    n /= p;
    k /= p;
  }
  return r;
}

Monomial var_monomial(std::size_t i) {
  Monomial m;
  m.e[i] = 1;
  m.deg = 1;
  return m;
}

}  // namespace

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw std::invalid_argument("polynomial without ring");
}

Poly Poly::constant(RingPtr ring, long long c) {
  Poly r(std::move(ring));
  u32 v = r.ring_->field().reduce(c);
  if (v) r.terms_.push_back(Term{Monomial{}, v});
  return r;
}

Poly Poly::var(RingPtr ring, std::size_t index) {
  if (index >= ring->nvars()) throw std::out_of_range("variable index out of range");
  Poly r(std::move(ring));
  r.terms_.push_back(Term{var_monomial(index), 1});
  return r;
}

Poly Poly::var(RingPtr ring, std::string_view name) {
  std::size_t i = ring->vars().index(name);
  return var(std::move(ring), i);
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, u32 c) {
  Poly r(std::move(ring));
  c %= r.ring_->p();
  if (c) r.terms_.push_back(Term{m, c});
  return r;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly r(std::move(ring));
  const Ring& R = *r.ring_;
  sort_terms(R, terms);
  for (Term& t : terms) {
    t.c %= R.p();
    if (!r.terms_.empty() && r.terms_.back().m == t.m) {
      r.terms_.back().c = R.field().add(r.terms_.back().c, t.c);
      if (r.terms_.back().c == 0) r.terms_.pop_back();
    } else if (t.c) {
      r.terms_.push_back(t);
    }
  }
  return r;
}

u32 Poly::constant_term() const {
  if (!terms_.empty() && terms_.back().m.deg == 0) return terms_.back().c;
  return 0;
}

const Term& Poly::lead() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
  return terms_.front();
}

u32 Poly::total_degree() const {
  u32 d = 0;
  for (const Term& t : terms_) d = std::max(d, t.m.deg);
  return d;
}

u32 Poly::degree_in(std::size_t v) const {
  u32 d = 0;
  for (const Term& t : terms_) d = std::max<u32>(d, t.m.e[v]);
  return d;
}

bool Poly::only_uses(const std::vector<bool>& allowed) const {
  for (const Term& t : terms_)
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
      if (t.m.e[v] && !allowed[v]) return false;
  return true;
}

void require_same_ring(const Poly& a, const Poly& b, const char* op) {
  if (!same_ring(a.ring(), b.ring()))
    throw AmbientMismatch(std::string(op) + ": operands live in different rings");
}

Poly Poly::operator-() const {
  Poly r(ring_);
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.c = ring_->field().neg(t.c);
  return r;
}

namespace {

std::vector<Term> merge(const Poly& a, const Poly& b, bool subtract) {
  require_same_ring(a, b, subtract ? "sub" : "add");
  const Ring& R = *a.ring();
  const Zp& F = R.field();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea || ib != eb) {
    int c = ia == ea ? -1 : ib == eb ? 1 : R.compare(ia->m, ib->m);
    if (c > 0) {
      out.push_back(*ia++);
    } else if (c < 0) {
      Term t = *ib++;
      if (subtract) t.c = F.neg(t.c);
      out.push_back(t);
    } else {
      u32 v = subtract ? F.sub(ia->c, ib->c) : F.add(ia->c, ib->c);
      if (v) out.push_back(Term{ia->m, v});
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

Poly operator+(const Poly& a, const Poly& b) {
  Poly r(a.ring());
  r.terms_ = merge(a, b, false);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  Poly r(a.ring());
  r.terms_ = merge(a, b, true);
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  require_same_ring(a, b, "mul");
  if (a.is_zero() || b.is_zero()) return Poly(a.ring());
  if (a.size() == 1) return b.times_term(a.terms_[0].m, a.terms_[0].c);
  if (b.size() == 1) return a.times_term(b.terms_[0].m, b.terms_[0].c);
  const Ring& R = *a.ring();
  const Zp& F = R.field();
  std::size_t n = R.nvars();
  const Poly& small = a.size() <= b.size() ? a : b;
  const Poly& big = a.size() <= b.size() ? b : a;
  TermAccumulator acc(R, std::max(big.size(), std::min<std::size_t>(small.size() * big.size(), 1u << 20)));
  for (const Term& s : small.terms_)
    for (const Term& t : big.terms_) acc.add(mono_mul(s.m, t.m, n), F.mul(s.c, t.c));
  std::vector<Term> terms = acc.take();
  sort_terms(R, terms);
  Poly r(a.ring());
  r.terms_ = std::move(terms);
  return r;
}

Poly& Poly::operator+=(const Poly& o) { return *this = *this + o; }
Poly& Poly::operator-=(const Poly& o) { return *this = *this - o; }
Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(u32 c) const {
  c %= ring_->p();
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.c = ring_->field().mul(t.c, c);
  return r;
}

Poly Poly::times_term(const Monomial& m, u32 c) const {
  c %= ring_->p();
  Poly r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  std::size_t n = ring_->nvars();
  // Multiplying by a monomial preserves the order of terms.
  for (const Term& t : terms_) r.terms_.push_back(Term{mono_mul(t.m, m, n), ring_->field().mul(t.c, c)});
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(lead().c));
}

bool Poly::operator==(const Poly& o) const {
  if (!same_ring(ring_, o.ring_)) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].c != o.terms_[i].c || !(terms_[i].m == o.terms_[i].m)) return false;
  return true;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  const auto& names = ring_->vars().names();
  bool first = true;
  for (const Term& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (t.c != 1 || t.m.deg == 0) {
      os << t.c;
      need_star = true;
    }
    for (std::size_t v = 0; v < names.size(); ++v) {
      if (!t.m.e[v]) continue;
      if (need_star) os << "*";
      os << names[v];
      if (t.m.e[v] > 1) os << "^" << t.m.e[v];
      need_star = true;
    }
  }
  return os.str();
}

Poly Poly::in_ring(const RingPtr& target) const {
  if (same_ring(ring_, target)) {
    Poly r(target);
    r.terms_ = terms_;
    return r;
  }
  if (target->p() != ring_->p()) throw AmbientMismatch("in_ring: characteristic differs");
  std::vector<std::size_t> map(ring_->nvars(), target->nvars());
  for (std::size_t v = 0; v < ring_->nvars(); ++v) map[v] = target->vars().find(ring_->vars().name(v));
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const Term& t : terms_) {
    Monomial m;
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
      if (!t.m.e[v]) continue;
      if (map[v] == target->nvars())
        throw AmbientMismatch("in_ring: variable " + ring_->vars().name(v) + " missing from target");
      m.e[map[v]] = t.m.e[v];
    }
    m.deg = t.m.deg;
    out.push_back(Term{m, t.c});
  }
  return from_terms(target, std::move(out));
}

Poly frobenius(const Poly& f, unsigned k) {
  u64 q = 1;
  for (unsigned i = 0; i < k; ++i) q *= f.ring()->p();
  std::vector<Term> out;
  out.reserve(f.size());
  std::size_t n = f.ring()->nvars();
  for (const Term& t : f.terms()) {
    Monomial m;
    for (std::size_t v = 0; v < n; ++v) {
      u64 e = u64(t.m.e[v]) * q;
      if (e > 0xFFFF) throw std::overflow_error("monomial exponent exceeds 65535");
      m.e[v] = static_cast<std::uint16_t>(e);
    }
    m.deg = static_cast<u32>(t.m.deg * q);
    out.push_back(Term{m, t.c});  // c^p == c in F_p
  }
  // Raising every monomial to the same power preserves a monomial order.
  return Poly::from_terms(f.ring(), std::move(out));
}

Poly pow(const Poly& f, u64 e) {
  Poly result = Poly::constant(f.ring(), 1);
  if (e == 0) return result;
  if (f.is_zero()) return f;
  if (f.size() == 1) {
    const Term& t = f.lead();
    Monomial m;
    std::size_t n = f.ring()->nvars();
    for (std::size_t v = 0; v < n; ++v) {
      u64 x = u64(t.m.e[v]) * e;
      if (x > 0xFFFF) throw std::overflow_error("monomial exponent exceeds 65535");
      m.e[v] = static_cast<std::uint16_t>(x);
    }
    m.deg = static_cast<u32>(u64(t.m.deg) * e);
    return Poly::monomial(f.ring(), m, f.ring()->field().pow(t.c, e));
  }
  // e = sum_i d_i p^i; f^e = prod_i (f^{p^i})^{d_i}.
  u32 p = f.ring()->p();
  Poly base = f;
  bool first = true;
  while (e) {
    u64 d = e % p;
    e /= p;
    if (d) {
      Poly part = base;
      Poly acc = Poly::constant(f.ring(), 1);
      u64 dd = d;
      bool started = false;
      while (dd) {
        if (dd & 1) {
          acc = started ? acc * part : part;
          started = true;
        }
        dd >>= 1;
        if (dd) part = part * part;
      }
      result = first ? acc : result * acc;
      first = false;
    }
    if (e) base = frobenius(base, 1);
  }
  return result;
}

Poly diff(const Poly& f, std::size_t v) {
  if (v >= f.ring()->nvars()) throw std::out_of_range("diff: unknown variable index");
  const Zp& F = f.ring()->field();
  std::vector<Term> out;
  for (const Term& t : f.terms()) {
    u32 k = t.m.e[v];
    if (k == 0) continue;
    u32 c = F.mul(t.c, k % F.modulus());
    if (!c) continue;
    Monomial m = t.m;
    m.e[v] -= 1;
    m.deg -= 1;
    out.push_back(Term{m, c});
  }
  return Poly::from_terms(f.ring(), std::move(out));
}

Poly diff(const Poly& f, std::string_view v) { return diff(f, f.ring()->vars().index(v)); }

std::vector<Poly> taylor_coeffs(const Poly& P, std::size_t v) {
  if (v >= P.ring()->nvars()) throw std::out_of_range("taylor_coeffs: unknown variable index");
  const Zp& F = P.ring()->field();
  u32 top = P.degree_in(v);
  std::vector<std::vector<Term>> parts(top + 1);
  for (const Term& t : P.terms()) {
    u32 k = t.m.e[v];
    for (u32 i = 0; i <= k; ++i) {
      u32 b = binom_mod(k, i, F);
      if (!b) continue;
      Monomial m = t.m;
      m.e[v] = static_cast<std::uint16_t>(k - i);
      m.deg -= i;
      parts[i].push_back(Term{m, F.mul(t.c, b)});
    }
  }
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.push_back(Poly::from_terms(P.ring(), std::move(part)));
  if (out.empty()) out.push_back(Poly(P.ring()));
  return out;
}

std::vector<Poly> coefficients(const Poly& P, std::size_t v) {
  if (v >= P.ring()->nvars()) throw std::out_of_range("coefficients: unknown variable index");
  std::vector<std::vector<Term>> parts(P.degree_in(v) + 1);
  for (const Term& t : P.terms()) {
    u32 k = t.m.e[v];
    Monomial m = t.m;
    m.e[v] = 0;
    m.deg -= k;
    parts[k].push_back(Term{m, t.c});
  }
  std::vector<Poly> out;
  out.reserve(parts.size());
  for (auto& part : parts) out.push_back(Poly::from_terms(P.ring(), std::move(part)));
  return out;
}

namespace {

class Substituter {
 public:
  Substituter(const Poly& f, const RingPtr& target, std::span<const Poly> images)
      : src_(*f.ring()), target_(target), images_(images), cache_(images.size()) {}

  Poly run(const Poly& f) {
    std::vector<const Term*> ts;
    ts.reserve(f.size());
    for (const Term& t : f.terms()) ts.push_back(&t);
    std::size_t n = src_.nvars();
    std::sort(ts.begin(), ts.end(), [n](const Term* a, const Term* b) {
      for (std::size_t v = 0; v < n; ++v)
        if (a->m.e[v] != b->m.e[v]) return a->m.e[v] > b->m.e[v];
      return false;
    });
    return rec(ts, 0, ts.size(), 0);
  }

 private:
  const Poly& power(std::size_t v, u32 k) {
    auto& c = cache_[v];
    auto it = c.find(k);
    if (it != c.end()) return it->second;
    // Reuse the largest cached lower power when one exists.
    Poly val(target_);
    auto lower = c.lower_bound(k);
    if (lower != c.begin()) {
      --lower;
      u32 j = lower->first;
      val = lower->second * pow(images_[v], k - j);
    } else {
      val = pow(images_[v], k);
    }
    return c.emplace(k, std::move(val)).first->second;
  }

  Poly rec(const std::vector<const Term*>& ts, std::size_t b, std::size_t e, std::size_t v) {
    std::size_t n = src_.nvars();
    // Skip variables absent from this block of terms.
    while (v < n) {
      bool any = false;
      for (std::size_t i = b; i < e && !any; ++i) any = ts[i]->m.e[v] != 0;
      if (any) break;
      ++v;
    }
    if (v == n) {
      u32 c = 0;
      for (std::size_t i = b; i < e; ++i) c = target_->field().add(c, ts[i]->c);
      return Poly::constant(target_, c);
    }
    Poly acc(target_);
    std::size_t i = b;
    while (i < e) {
      u32 k = ts[i]->m.e[v];
      std::size_t j = i;
      while (j < e && ts[j]->m.e[v] == k) ++j;
      Poly inner = rec(ts, i, j, v + 1);
      if (k) inner = inner * power(v, k);
      acc += inner;
      i = j;
    }
    return acc;
  }

  const Ring& src_;
  RingPtr target_;
  std::span<const Poly> images_;
  std::vector<std::map<u32, Poly>> cache_;
};

}  // namespace

Poly substitute(const Poly& f, const RingPtr& target, std::span<const Poly> images) {
  if (images.size() != f.ring()->nvars())
    throw std::invalid_argument("substitute: need one image per variable");
  for (const Poly& img : images)
    if (!same_ring(img.ring(), target)) throw AmbientMismatch("substitute: image outside target ring");
  if (target->p() != f.ring()->p()) throw AmbientMismatch("substitute: characteristic differs");
  Substituter s(f, target, images);
  return s.run(f);
}

Poly substitute(const Poly& f, const std::map<std::string, Poly>& assignment) {
  std::vector<Poly> images;
  images.reserve(f.ring()->nvars());
  for (std::size_t v = 0; v < f.ring()->nvars(); ++v) images.push_back(Poly::var(f.ring(), v));
  for (const auto& [name, img] : assignment) {
    std::size_t v = f.ring()->vars().index(name);
    if (!same_ring(img.ring(), f.ring())) throw AmbientMismatch("substitute: image outside ambient ring");
    images[v] = img;
  }
  return substitute(f, f.ring(), images);
}

namespace {

struct HeapItem {
  Monomial m;
  u32 s, k, j;
};

Division divide_impl(const Poly& f, std::span<const Poly> divisors, bool want_quotients,
                     bool stop_at_remainder) {
  const RingPtr& ring = f.ring();
  const Ring& R = *ring;
  const Zp& F = R.field();
  std::size_t n = R.nvars();
  for (const Poly& d : divisors) {
    require_same_ring(f, d, "divide");
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  }
  std::vector<u32> lead_inv;
  for (const Poly& d : divisors) lead_inv.push_back(F.inv(d.lead().c));

  // Quotient terms per divisor; these are needed for the heap even when the
  // caller does not want them back.
  std::vector<std::vector<Term>> quot(divisors.size());
  std::vector<Term> rem;

  auto cmp = [&R](const HeapItem& a, const HeapItem& b) { return R.compare(a.m, b.m) < 0; };
  std::priority_queue<HeapItem, std::vector<HeapItem>, decltype(cmp)> heap(cmp);

  const auto& ft = f.terms();
  std::size_t i = 0;
  while (i < ft.size() || !heap.empty()) {
    Monomial M;
    if (heap.empty()) {
      M = ft[i].m;
    } else if (i >= ft.size()) {
      M = heap.top().m;
    } else {
      M = R.compare(ft[i].m, heap.top().m) >= 0 ? ft[i].m : heap.top().m;
    }
    u32 c = 0;
    if (i < ft.size() && ft[i].m == M) c = ft[i++].c;
    while (!heap.empty() && heap.top().m == M) {
      HeapItem it = heap.top();
      heap.pop();
      const Poly& g = divisors[it.s];
      c = F.sub(c, F.mul(g.terms()[it.k].c, quot[it.s][it.j].c));
      if (it.k + 1 < g.size())
        heap.push(HeapItem{mono_mul(g.terms()[it.k + 1].m, quot[it.s][it.j].m, n), it.s, it.k + 1, it.j});
    }
    if (c == 0) continue;
    std::size_t s = 0;
    while (s < divisors.size() && !mono_divides(divisors[s].lead().m, M, n)) ++s;
    if (s == divisors.size()) {
      rem.push_back(Term{M, c});
      if (stop_at_remainder) break;
      continue;
    }
    const Poly& g = divisors[s];
    Term q{mono_div(M, g.lead().m, n), F.mul(c, lead_inv[s])};
    quot[s].push_back(q);
    if (g.size() > 1)
      heap.push(HeapItem{mono_mul(g.terms()[1].m, q.m, n), static_cast<u32>(s), 1,
                         static_cast<u32>(quot[s].size() - 1)});
  }

  Division out{{}, Poly::from_terms(ring, std::move(rem))};
  if (want_quotients)
    for (auto& q : quot) out.quotients.push_back(Poly::from_terms(ring, std::move(q)));
  return out;
}

}  // namespace

Division divide(const Poly& f, std::span<const Poly> divisors, bool want_quotients) {
  return divide_impl(f, divisors, want_quotients, false);
}

Poly exact_div(const Poly& f, const Poly& d) {
  require_same_ring(f, d, "exact_div");
  if (d.is_zero()) throw std::domain_error("exact_div: division by zero polynomial");
  const Poly* ds = &d;
  Division r = divide_impl(f, std::span<const Poly>(ds, 1), true, false);
  if (!r.remainder.is_zero())
    throw NotDivisible("exact_div: " + std::to_string(d.size()) + "-term divisor does not divide " +
                           std::to_string(f.size()) + "-term dividend",
                       r.remainder);
  return std::move(r.quotients[0]);
}

bool divides(const Poly& d, const Poly& f) {
  if (d.is_zero()) return f.is_zero();
  const Poly* ds = &d;
  return divide_impl(f, std::span<const Poly>(ds, 1), false, true).remainder.is_zero();
}

FieldElem evaluate(const Poly& f, std::span<const u32> point) {
  const Ring& R = *f.ring();
  if (point.size() != R.nvars()) throw std::invalid_argument("evaluate: point needs one value per variable");
  const Zp& F = R.field();
  u32 acc = 0;
  for (const Term& t : f.terms()) {
    u32 v = t.c;
    for (std::size_t i = 0; i < R.nvars() && v; ++i)
      if (t.m.e[i]) v = F.mul(v, F.pow(point[i] % R.p(), t.m.e[i]));
    acc = F.add(acc, v);
  }
  return FieldElem{acc, R.p()};
}

FieldElem evaluate(const Poly& f, const std::map<std::string, u32>& point) {
  const Ring& R = *f.ring();
  std::vector<u32> pt(R.nvars());
  for (std::size_t v = 0; v < R.nvars(); ++v) {
    auto it = point.find(R.vars().name(v));
    if (it == point.end()) throw std::invalid_argument("evaluate: no value for " + R.vars().name(v));
    pt[v] = it->second % R.p();
  }
  return evaluate(f, pt);
}

}  // namespace plinth
