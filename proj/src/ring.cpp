#include "plinth/ring.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace plinth {

bool is_prime(u32 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Zp::Zp(u32 p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw std::invalid_argument("modulus must be a prime below 2^31, got " + std::to_string(p));
}

u32 Zp::pow(u32 a, u64 e) const {
  u64 r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<u32>(r);
}

u32 Zp::inv(u32 a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
  return pow(a, p_ - 2);
}

u32 Zp::reduce(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<u32>(r);
}

Monomial mono_mul(const Monomial& a, const Monomial& b, std::size_t nvars) {
  Monomial r;
  for (std::size_t i = 0; i < nvars; ++i) {
    u32 s = u32(a.e[i]) + b.e[i];
    if (s > 0xFFFF) throw std::overflow_error("monomial exponent exceeds 65535");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  return r;
}

bool mono_divides(const Monomial& d, const Monomial& m, std::size_t nvars) {
  if (d.deg > m.deg) return false;
  for (std::size_t i = 0; i < nvars; ++i)
    if (d.e[i] > m.e[i]) return false;
  return true;
}

Monomial mono_div(const Monomial& m, const Monomial& d, std::size_t nvars) {
  Monomial r;
  for (std::size_t i = 0; i < nvars; ++i) r.e[i] = static_cast<std::uint16_t>(m.e[i] - d.e[i]);
  r.deg = m.deg - d.deg;
  return r;
}

Monomial mono_lcm(const Monomial& a, const Monomial& b, std::size_t nvars) {
  Monomial r;
  for (std::size_t i = 0; i < nvars; ++i) {
    r.e[i] = std::max(a.e[i], b.e[i]);
    r.deg += r.e[i];
  }
  return r;
}

bool mono_coprime(const Monomial& a, const Monomial& b, std::size_t nvars) {
  for (std::size_t i = 0; i < nvars; ++i)
    if (a.e[i] && b.e[i]) return false;
  return true;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  u64 h = 0x9E3779B97F4A7C15ull ^ m.deg;
  for (std::size_t i = 0; i < nvars; ++i) {
    h ^= m.e[i] + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ull);
}

namespace {

std::vector<std::size_t> iota_vars(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

MonOrder MonOrder::grevlex(std::size_t nvars) {
  MonOrder o({Block{iota_vars(nvars), OrderKind::grevlex}});
  o.whole_grevlex_ = true;
  o.nvars_ = nvars;
  return o;
}

MonOrder MonOrder::lex(std::size_t nvars) {
  MonOrder o({Block{iota_vars(nvars), OrderKind::lex}});
  o.nvars_ = nvars;
  return o;
}

MonOrder MonOrder::block(std::size_t nvars, const std::vector<std::size_t>& eliminated,
                         OrderKind inner, const std::vector<u32>& weights) {
  if (!weights.empty() && weights.size() != nvars) throw std::invalid_argument("block order: one weight per variable");
  std::vector<bool> in(nvars, false);
  Block first{{}, OrderKind::grevlex};
  for (std::size_t v : eliminated) {
    if (v >= nvars) throw std::out_of_range("block order: variable index out of range");
    if (!in[v]) first.vars.push_back(v);
    in[v] = true;
  }
  std::sort(first.vars.begin(), first.vars.end());
  Block rest{{}, inner};
  for (std::size_t v = 0; v < nvars; ++v)
    if (!in[v]) rest.vars.push_back(v);
  bool weighted = false;
  for (u32 w : weights) weighted = weighted || w != 1;
  if (weighted) {
    for (std::size_t v : first.vars) first.weights.push_back(weights[v]);
    if (inner == OrderKind::grevlex)
      for (std::size_t v : rest.vars) rest.weights.push_back(weights[v]);
  }
  std::vector<Block> blocks;
  if (!first.vars.empty()) blocks.push_back(std::move(first));
  if (!rest.vars.empty()) blocks.push_back(std::move(rest));
  MonOrder o(std::move(blocks));
  o.nvars_ = nvars;
  return o;
}

int MonOrder::compare(const Monomial& a, const Monomial& b) const {
  if (whole_grevlex_) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (std::size_t i = nvars_; i-- > 0;)
      if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    return 0;
  }
  for (const Block& blk : blocks_) {
    if (blk.kind == OrderKind::grevlex) {
      u32 da = 0, db = 0;
      if (blk.weights.empty()) {
        for (std::size_t v : blk.vars) {
          da += a.e[v];
          db += b.e[v];
        }
      } else {
        for (std::size_t k = 0; k < blk.vars.size(); ++k) {
          da += blk.weights[k] * a.e[blk.vars[k]];
          db += blk.weights[k] * b.e[blk.vars[k]];
        }
      }
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t k = blk.vars.size(); k-- > 0;) {
        std::size_t v = blk.vars[k];
        if (a.e[v] != b.e[v]) return a.e[v] > b.e[v] ? -1 : 1;
      }
    } else {
      for (std::size_t v : blk.vars)
        if (a.e[v] != b.e[v]) return a.e[v] < b.e[v] ? -1 : 1;
    }
  }
  return 0;
}

std::vector<u32> MonOrder::variable_weights(std::size_t nvars) const {
  std::vector<u32> w(nvars, 1);
  for (const Block& blk : blocks_)
    for (std::size_t k = 0; k < blk.weights.size(); ++k) w.at(blk.vars[k]) = blk.weights[k];
  return w;
}

std::string MonOrder::describe(const std::vector<std::string>& names) const {
  std::ostringstream os;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) os << " >> ";
    os << (blocks_[b].kind == OrderKind::grevlex ? "grevlex(" : "lex(");
    for (std::size_t k = 0; k < blocks_[b].vars.size(); ++k) {
      if (k) os << ",";
      os << names.at(blocks_[b].vars[k]);
      if (!blocks_[b].weights.empty() && blocks_[b].weights[k] != 1) os << ":" << blocks_[b].weights[k];
    }
    os << ")";
  }
  return os.str();
}

VarTable::VarTable(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("empty variable name");
    if (!seen.insert(n).second) throw std::invalid_argument("duplicate variable name: " + n);
  }
  if (names_.size() > kMaxVars)
    throw std::invalid_argument("too many variables (max " + std::to_string(kMaxVars) + ")");
}

std::size_t VarTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return names_.size();
}

std::size_t VarTable::index(std::string_view name) const {
  std::size_t i = find(name);
  if (i == names_.size()) throw std::invalid_argument("unknown variable: " + std::string(name));
  return i;
}

Ring::Ring(u32 p, VarTable vars, MonOrder order)
    : field_(p), vars_(std::move(vars)), order_(std::move(order)) {
  std::vector<bool> seen(vars_.size(), false);
  std::size_t count = 0;
  for (const auto& blk : order_.blocks())
    for (std::size_t v : blk.vars) {
      if (v >= vars_.size() || seen[v]) throw std::invalid_argument("malformed monomial order");
      seen[v] = true;
      ++count;
    }
  if (count != vars_.size()) throw std::invalid_argument("monomial order does not cover all variables");
  order_.nvars_ = vars_.size();
  order_.whole_grevlex_ = order_.blocks().size() == 1 &&
                          order_.blocks()[0].kind == OrderKind::grevlex &&
                          std::is_sorted(order_.blocks()[0].vars.begin(), order_.blocks()[0].vars.end());
}

RingPtr Ring::make(u32 p, std::vector<std::string> names) {
  std::size_t n = names.size();
  return std::make_shared<const Ring>(p, VarTable(std::move(names)), MonOrder::grevlex(n));
}

RingPtr Ring::make(u32 p, std::vector<std::string> names, MonOrder order) {
  return std::make_shared<const Ring>(p, VarTable(std::move(names)), std::move(order));
}

RingPtr Ring::with_order(MonOrder order) const {
  return std::make_shared<const Ring>(p(), vars_, std::move(order));
}

RingPtr Ring::extended(const std::vector<std::string>& extra) const {
  std::vector<std::string> names = vars_.names();
  names.insert(names.end(), extra.begin(), extra.end());
  return make(p(), std::move(names));
}

bool Ring::same_as(const Ring& o) const {
  return p() == o.p() && vars_ == o.vars_ && order_.blocks() == o.order_.blocks();
}

std::string fresh_name(const VarTable& vars, const std::string& stem) {
  if (vars.find(stem) == vars.size()) return stem;
  for (int k = 0;; ++k) {
    std::string c = stem + "_" + std::to_string(k);
    if (vars.find(c) == vars.size()) return c;
  }
}

}  // namespace plinth
