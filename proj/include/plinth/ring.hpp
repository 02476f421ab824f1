#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plinth {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Arithmetic in F_p for a prime p < 2^31. Values are kept in [0, p).
class Zp {
 public:
  explicit Zp(u32 p);

  u32 modulus() const { return p_; }
  u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p_ ? s - p_ : s; }
  u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p_ - b; }
  u32 neg(u32 a) const { return a == 0 ? 0 : p_ - a; }
  u32 mul(u32 a, u32 b) const { return static_cast<u32>(static_cast<u64>(a) * b % p_); }
  u32 pow(u32 a, u64 e) const;
  u32 inv(u32 a) const;
  u32 reduce(long long v) const;

 private:
  u32 p_;
};

bool is_prime(u32 n);

// A field element tagged with its modulus.
struct FieldElem {
  u32 value = 0;
  u32 modulus = 2;

  bool operator==(const FieldElem&) const = default;
};

inline constexpr std::size_t kMaxVars = 24;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  u32 deg = 0;

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
};

Monomial mono_mul(const Monomial& a, const Monomial& b, std::size_t nvars);
bool mono_divides(const Monomial& d, const Monomial& m, std::size_t nvars);
Monomial mono_div(const Monomial& m, const Monomial& d, std::size_t nvars);
Monomial mono_lcm(const Monomial& a, const Monomial& b, std::size_t nvars);
bool mono_coprime(const Monomial& a, const Monomial& b, std::size_t nvars);

struct MonomialHash {
  std::size_t nvars = kMaxVars;
  std::size_t operator()(const Monomial& m) const;
};

enum class OrderKind { grevlex, lex };

// A monomial order given as a sequence of blocks of variable indices. Monomials
// are compared block by block; within a block by `kind`. A single block holding
// all variables is an ordinary grevlex / lex order; two blocks give an
// elimination order for the variables of the first block.
class MonOrder {
 public:
  struct Block {
    std::vector<std::size_t> vars;
    OrderKind kind = OrderKind::grevlex;
    // Degree weights for a grevlex block, parallel to vars; empty means 1.
    std::vector<u32> weights;
    bool operator==(const Block&) const = default;
  };

  MonOrder() = default;
  explicit MonOrder(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}

  static MonOrder grevlex(std::size_t nvars);
  static MonOrder lex(std::size_t nvars);
  // `eliminated` first (grevlex), remaining variables next under `inner`.
  // `weights` (one per variable, empty: all 1) weight the grevlex degrees.
  static MonOrder block(std::size_t nvars, const std::vector<std::size_t>& eliminated,
                        OrderKind inner = OrderKind::grevlex, const std::vector<u32>& weights = {});

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  // Weight of each variable (1 unless a block assigns one).
  std::vector<u32> variable_weights(std::size_t nvars) const;
  const std::vector<Block>& blocks() const { return blocks_; }
  std::string describe(const std::vector<std::string>& names) const;

  bool operator==(const MonOrder&) const = default;

 private:
  std::vector<Block> blocks_;
  bool whole_grevlex_ = false;
  std::size_t nvars_ = 0;
  friend class Ring;
};

// Ordered table of distinct variable names.
class VarTable {
 public:
  VarTable() = default;
  explicit VarTable(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  // Index of `name`, or size() when absent.
  std::size_t find(std::string_view name) const;
  std::size_t index(std::string_view name) const;

  bool operator==(const VarTable&) const = default;

 private:
  std::vector<std::string> names_;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Ambient polynomial ring F_p[vars] together with its active monomial order.
class Ring {
 public:
  Ring(u32 p, VarTable vars, MonOrder order);

  static RingPtr make(u32 p, std::vector<std::string> names);
  static RingPtr make(u32 p, std::vector<std::string> names, MonOrder order);

  const Zp& field() const { return field_; }
  u32 p() const { return field_.modulus(); }
  std::size_t nvars() const { return vars_.size(); }
  const VarTable& vars() const { return vars_; }
  const MonOrder& order() const { return order_; }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b); }

  // Same variables, different order.
  RingPtr with_order(MonOrder order) const;
  // Appends variables (names must be new); the order becomes grevlex.
  RingPtr extended(const std::vector<std::string>& extra) const;

  bool same_as(const Ring& o) const;

 private:
  Zp field_;
  VarTable vars_;
  MonOrder order_;
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || a->same_as(*b);
}

// Fresh name not present in `vars`, derived from `stem`.
std::string fresh_name(const VarTable& vars, const std::string& stem);

class AmbientMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace plinth
