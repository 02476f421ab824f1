#include "plinth/linalg.hpp"

namespace plinth {

namespace {

void axpy(Combination& acc, const Combination& x, u32 c, const Zp& F) {
  for (const auto& [k, v] : x) {
    u32 nv = F.add(acc[k], F.mul(c, v));
    if (nv)
      acc[k] = nv;
    else
      acc.erase(k);
  }
}

}  // namespace

void PolyEchelon::reduce(Poly& v, Combination& comb) const {
  const Zp& F = ring_->field();
  // Terms above pos are pivot-free and a row never touches terms above its lead.
  std::size_t pos = 0;
  while (pos < v.size()) {
    const Term& t = v.terms()[pos];
    auto it = pivot_.find(t.m);
    if (it == pivot_.end()) {
      ++pos;
      continue;
    }
    const Row& row = rows_[it->second];
    u32 c = F.neg(F.mul(t.c, F.inv(row.v.lead().c)));
    Poly step = row.v.scaled(c);
    v += step;
    axpy(comb, row.comb, c, F);
  }
}

bool PolyEchelon::add(const Poly& v, std::size_t label) {
  if (!same_ring(v.ring(), ring_)) throw AmbientMismatch("PolyEchelon: vector outside ring");
  Poly w = v;
  Combination comb{{label, 1}};
  reduce(w, comb);
  if (w.is_zero()) {
    relations_.push_back(std::move(comb));
    return false;
  }
  pivot_.emplace(w.lead().m, rows_.size());
  rows_.push_back(Row{std::move(w), std::move(comb)});
  return true;
}

std::optional<Combination> PolyEchelon::solve(const Poly& target) const {
  Poly w = target;
  Combination comb;
  reduce(w, comb);
  if (!w.is_zero()) return std::nullopt;
  // w_target - sum comb * v = 0 after negating the accumulated combination.
  const Zp& F = ring_->field();
  Combination out;
  for (const auto& [k, c] : comb) out[k] = F.neg(c);
  return out;
}

}  // namespace plinth
