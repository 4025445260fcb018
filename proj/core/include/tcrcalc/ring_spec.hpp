#pragma once

#include "tcrcalc/ring.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace tcrcalc {

// Syntax tree of a ring spec. ProIntegers and ProWitt are towers; everything else is finite
// unless it contains a tower.
struct RingExpr {
  enum class Kind { ProIntegers, ZMod, GF, Product, GroupRing, Witt, ProWitt };

  Kind kind = Kind::ZMod;
  std::uint64_t modulus = 0;   // ZMod
  unsigned prime = 0;          // GF
  std::vector<unsigned> poly;  // GF, coefficients from x^0 up, monic
  unsigned n = 0;              // GroupRing order, Witt length
  std::string alias;           // ProIntegers: "Z" or "Z_2"
  std::vector<RingExpr> children;

  bool is_pro() const;
  std::string render() const;
  // Render with towers replaced by their level-N truncation.
  std::string render_at(unsigned level) const;
};

struct RingSpec {
  RingExpr expr;
  std::string involution = "trivial";

  bool is_pro() const { return expr.is_pro(); }
  std::string render() const;
};

// Grammar:
//   ring := "Z" | "Z/"INT | "GF("PRIME","POLY")" | ring"x"ring | ring"[C"INT"]" | "W"INT"("ring")"
//   spec := ring [" with " ("trivial"|"galois"|"swap"|"inv")]
// Also accepted: "W(ring)" for the Witt tower of a finite ring, "Z_2" for the 2-adic tower,
// and parentheses for grouping.
RingSpec parse_ring_spec(std::string_view text);

// Finite specs only; towers raise ParseError.
InvRing parse_ring(std::string_view text);

// Instantiates a spec, truncating towers at the given level.
InvRing instantiate(const RingSpec& spec, unsigned level = 0);

// Prime for Witt vectors over a ring of prime-power characteristic.
unsigned witt_prime(const FinRing& r);

class ProRing {
 public:
  explicit ProRing(RingSpec spec);
  static ProRing integers() { return ProRing(parse_ring_spec("Z")); }

  const RingSpec& spec() const { return spec_; }
  std::string name() const { return spec_.render(); }
  unsigned prime() const { return prime_; }
  unsigned max_level() const { return max_level_; }

  InvRing level(unsigned n) const;
  // Elementwise transition level n+1 -> level n.
  std::vector<Elem> transition(unsigned n) const;

 private:
  RingSpec spec_;
  unsigned prime_ = 2;
  unsigned max_level_ = 0;
};

}  // namespace tcrcalc
