#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/enumeration.hpp"
#include "tcrcalc/ring.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace tcrcalc {

// Sparse polynomial with integer coefficients in a fixed number of variables.
class IntPoly {
 public:
  using Exponents = std::vector<std::uint16_t>;

  IntPoly() = default;
  explicit IntPoly(std::size_t nvars) : nvars_(nvars) {}
  static IntPoly constant(std::size_t nvars, const Integer& c);
  static IntPoly variable(std::size_t nvars, std::size_t v);

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponents, Integer>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly scaled(const Integer& c) const;
  IntPoly pow(std::uint64_t e) const;
  // Exact division of every coefficient; throws if some coefficient is not divisible.
  IntPoly divexact(const Integer& d) const;
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string(const std::vector<std::string>& names) const;

 private:
  void add_term(const Exponents& e, const Integer& c);
  std::size_t nvars_ = 0;
  std::map<Exponents, Integer> terms_;
};

// Universal structure polynomials for W_n(-;p). Variables are a_0..a_n (indices 0..n) and
// b_0..b_n (indices n+1..2n+1). Sum, product and negation use a_i, b_i with i < n; the
// Frobenius polynomials F_0..F_{n-1} read a_0..a_n and describe F: W_{n+1} -> W_n.
class WittPolySet {
 public:
  WittPolySet(unsigned p, unsigned n);
  unsigned prime() const { return p_; }
  unsigned length() const { return n_; }
  std::size_t nvars() const { return 2 * (n_ + 1); }
  std::size_t a(unsigned i) const { return i; }
  std::size_t b(unsigned i) const { return n_ + 1 + i; }

  const std::vector<IntPoly>& sum() const;
  const std::vector<IntPoly>& product() const;
  const std::vector<IntPoly>& negation() const;
  const std::vector<IntPoly>& frobenius() const;

  IntPoly ghost_a(unsigned i) const;  // w_i(a)
  IntPoly ghost_b(unsigned i) const;
  std::vector<std::string> variable_names() const;

 private:
  struct Lazy;
  unsigned p_, n_;
  std::shared_ptr<Lazy> lazy_;
};

inline constexpr unsigned kDefaultWittLengthBound = 6;

// Memoized and thread-safe.
const WittPolySet& build_polys(unsigned p, unsigned n, unsigned bound = kDefaultWittLengthBound);

using WittVector = std::vector<Elem>;

class WittRing {
 public:
  WittRing() = default;
  WittRing(FinRing base, unsigned p, unsigned n);

  const FinRing& base() const { return base_; }
  unsigned prime() const { return p_; }
  unsigned length() const { return n_; }
  std::size_t size() const { return size_; }

  WittVector zero() const;
  WittVector one() const;
  WittVector teichmuller(Elem a) const;
  WittVector add(const WittVector& x, const WittVector& y) const;
  WittVector neg(const WittVector& x) const;
  WittVector sub(const WittVector& x, const WittVector& y) const { return add(x, neg(y)); }
  WittVector mul(const WittVector& x, const WittVector& y) const;
  WittVector scalar(const Integer& k, const WittVector& x) const;

  WittVector frobenius(const WittVector& x) const;     // W_n -> W_{n-1}
  WittVector verschiebung(const WittVector& x) const;  // W_n -> W_{n+1}
  WittVector restriction(const WittVector& x) const;   // W_n -> W_{n-1}
  std::vector<Elem> ghost(const WittVector& x) const;

  Elem encode(const WittVector& x) const;
  WittVector decode(Elem e) const;
  std::string name(const WittVector& x) const;
  std::string spec() const;

  // W_n(A) as a finite ring whose elements are encoded Witt vectors.
  FinRing fin_ring() const;

 private:
  struct Compiled;
  const Compiled& compiled() const;

  FinRing base_;
  unsigned p_ = 0, n_ = 0;
  std::size_t size_ = 0;
  std::shared_ptr<Compiled> compiled_;
};

class WittModel : public RingModel {
 public:
  explicit WittModel(WittRing w) : w_(std::move(w)) {}
  std::size_t size() const override { return w_.size(); }
  Elem zero() const override { return w_.encode(w_.zero()); }
  Elem one() const override { return w_.encode(w_.one()); }
  Elem add(Elem a, Elem b) const override { return w_.encode(w_.add(w_.decode(a), w_.decode(b))); }
  Elem neg(Elem a) const override { return w_.encode(w_.neg(w_.decode(a))); }
  Elem mul(Elem a, Elem b) const override { return w_.encode(w_.mul(w_.decode(a), w_.decode(b))); }
  std::string name(Elem a) const override { return w_.name(w_.decode(a)); }
  const WittRing& witt() const { return w_; }

 private:
  WittRing w_;
};

struct WittStructure {
  WittRing ring;
  FinRing as_ring;
  AdditiveChart chart;
  const FinAbGroup& group() const { return chart.group(); }
};

struct Budget;
WittStructure witt_structure(const FinRing& a, unsigned p, unsigned n, const Budget& budget);

// F, V, R as homomorphisms between the additive charts of consecutive lengths.
GroupHom witt_frobenius_hom(const WittStructure& from, const WittStructure& to);
GroupHom witt_verschiebung_hom(const WittStructure& from, const WittStructure& to);
GroupHom witt_restriction_hom(const WittStructure& from, const WittStructure& to);

// W_n(f) for a ring map f: A -> B given on elements.
WittVector witt_functor(const WittRing& target, const std::vector<Elem>& f, const WittVector& x);

}  // namespace tcrcalc
