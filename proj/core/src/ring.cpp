#include "tcrcalc/ring.hpp"
#include "tcrcalc/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace tcrcalc {

namespace {

constexpr std::size_t kTabulateLimit = 512;
constexpr Elem kNone = std::numeric_limits<Elem>::max();

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

bool needs_parens(const std::string& s) { return s.find('+') != std::string::npos; }

}  // namespace

// ------------------------------------------------------------------ FinRing

FinRing::FinRing(std::shared_ptr<const RingModel> model, std::string spec)
    : model_(std::move(model)), spec_(std::move(spec)) {
  size_ = model_->size();
  if (size_ == 0 || size_ > std::numeric_limits<Elem>::max() / 2) throw AlgebraError("ring size out of range");
  zero_ = model_->zero();
  one_ = model_->one();
  if (size_ <= kTabulateLimit) {
    add_.resize(size_ * size_);
    mul_.resize(size_ * size_);
    neg_.resize(size_);
    for (Elem a = 0; a < size_; ++a) {
      neg_[a] = model_->neg(a);
      for (Elem b = 0; b < size_; ++b) {
        add_[a * size_ + b] = model_->add(a, b);
        mul_[a * size_ + b] = model_->mul(a, b);
      }
    }
  }
}

Elem FinRing::pow(Elem a, std::uint64_t e) const {
  Elem result = one_, base = a;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Elem FinRing::from_int(const Integer& k) const {
  Integer n = abs(k);
  Elem acc = zero_, term = one_;
  while (sgn(n) != 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = add(acc, term);
    n >>= 1;
    if (sgn(n) != 0) term = add(term, term);
  }
  return sgn(k) < 0 ? neg(acc) : acc;
}

std::optional<Elem> FinRing::parse_element(const std::string& name) const {
  std::string target = strip_spaces(name);
  for (Elem a = 0; a < size_; ++a)
    if (strip_spaces(model_->name(a)) == target) return a;
  return std::nullopt;
}

Integer FinRing::characteristic() const {
  Elem x = one_;
  std::size_t n = 1;
  while (x != zero_) {
    x = add(x, one_);
    ++n;
  }
  return Integer(static_cast<unsigned long>(n));
}

AdditiveChart FinRing::additive_chart() const {
  return AdditiveChart::build(size_, zero_, [this](Elem a, Elem b) { return add(a, b); });
}

std::optional<std::string> FinRing::check_axioms() const {
  const Elem n = static_cast<Elem>(size_);
  for (Elem a = 0; a < n; ++a) {
    if (add(a, zero_) != a) return "zero is not additive identity at " + name(a);
    if (mul(a, one_) != a) return "one is not multiplicative identity at " + name(a);
    if (add(a, neg(a)) != zero_) return "negation fails at " + name(a);
    for (Elem b = 0; b < n; ++b) {
      if (add(a, b) != add(b, a)) return "addition not commutative";
      if (mul(a, b) != mul(b, a)) return "multiplication not commutative";
    }
  }
  const bool full = size_ <= 64;
  const Elem step = full ? 1 : static_cast<Elem>(size_ / 61 + 1);
  for (Elem a = 0; a < n; a += step)
    for (Elem b = 0; b < n; b += step)
      for (Elem c = 0; c < n; c += (full ? 1 : step)) {
        if (add(add(a, b), c) != add(a, add(b, c))) return "addition not associative";
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) return "multiplication not associative";
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) return "not distributive";
      }
  return std::nullopt;
}

// ------------------------------------------------------------------ models

ZModModel::ZModModel(std::uint64_t n) : n_(n) {
  if (n < 2) throw ParseError("Z/n needs n >= 2");
}

GaloisModel::GaloisModel(unsigned p, std::vector<unsigned> monic_poly) : p_(p), poly_(std::move(monic_poly)) {
  if (poly_.size() < 2 || poly_.back() != 1) throw ParseError("GF polynomial must be monic of degree >= 1");
  size_ = 1;
  for (std::size_t i = 0; i + 1 < poly_.size(); ++i) size_ *= p_;
}

std::vector<unsigned> GaloisModel::coeffs(Elem a) const {
  std::vector<unsigned> c(degree());
  for (auto& x : c) {
    x = a % p_;
    a /= p_;
  }
  return c;
}

Elem GaloisModel::make(const std::vector<unsigned>& c) const {
  Elem a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = a * p_ + c[i] % p_;
  return a;
}

Elem GaloisModel::add(Elem a, Elem b) const {
  auto x = coeffs(a), y = coeffs(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = (x[i] + y[i]) % p_;
  return make(x);
}

Elem GaloisModel::neg(Elem a) const {
  auto x = coeffs(a);
  for (auto& c : x) c = (p_ - c) % p_;
  return make(x);
}

Elem GaloisModel::mul(Elem a, Elem b) const {
  auto x = coeffs(a), y = coeffs(b);
  const unsigned d = degree();
  std::vector<unsigned> prod(2 * d, 0);
  for (unsigned i = 0; i < d; ++i)
    for (unsigned j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
  for (unsigned k = 2 * d - 1; k >= d; --k) {
    unsigned c = prod[k];
    if (c == 0) continue;
    for (unsigned i = 0; i <= d; ++i) prod[k - d + i] = (prod[k - d + i] + (p_ - c) * poly_[i]) % p_;
  }
  prod.resize(d);
  return make(prod);
}

std::string GaloisModel::name(Elem a) const {
  auto c = coeffs(a);
  std::string out;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c[i]);
      continue;
    }
    if (c[i] != 1) out += std::to_string(c[i]);
    out += 'x';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

ProductModel::ProductModel(FinRing left, FinRing right) : left_(std::move(left)), right_(std::move(right)) {}

Elem ProductModel::add(Elem a, Elem b) const {
  return make(left_.add(first(a), first(b)), right_.add(second(a), second(b)));
}
Elem ProductModel::neg(Elem a) const { return make(left_.neg(first(a)), right_.neg(second(a))); }
Elem ProductModel::mul(Elem a, Elem b) const {
  return make(left_.mul(first(a), first(b)), right_.mul(second(a), second(b)));
}
std::string ProductModel::name(Elem a) const {
  return "(" + left_.name(first(a)) + "," + right_.name(second(a)) + ")";
}

GroupRingModel::GroupRingModel(FinRing coeffs, unsigned order) : base_(std::move(coeffs)), m_(order) {
  if (m_ < 1) throw ParseError("cyclic group order must be positive");
  size_ = 1;
  for (unsigned i = 0; i < m_; ++i) {
    size_ *= base_.size();
    if (size_ > (std::size_t{1} << 30)) throw Refusal("enumeration-bound", "group ring too large");
  }
}

std::vector<Elem> GroupRingModel::coeffs(Elem a) const {
  std::vector<Elem> c(m_);
  for (auto& x : c) {
    x = static_cast<Elem>(a % base_.size());
    a = static_cast<Elem>(a / base_.size());
  }
  return c;
}

Elem GroupRingModel::make(const std::vector<Elem>& c) const {
  Elem a = 0;
  for (std::size_t i = c.size(); i-- > 0;) a = static_cast<Elem>(a * base_.size() + c[i]);
  return a;
}

Elem GroupRingModel::zero() const { return make(std::vector<Elem>(m_, base_.zero())); }

Elem GroupRingModel::one() const {
  std::vector<Elem> c(m_, base_.zero());
  c[0] = base_.one();
  return make(c);
}

Elem GroupRingModel::add(Elem a, Elem b) const {
  auto x = coeffs(a), y = coeffs(b);
  for (unsigned i = 0; i < m_; ++i) x[i] = base_.add(x[i], y[i]);
  return make(x);
}

Elem GroupRingModel::neg(Elem a) const {
  auto x = coeffs(a);
  for (auto& c : x) c = base_.neg(c);
  return make(x);
}

Elem GroupRingModel::mul(Elem a, Elem b) const {
  auto x = coeffs(a), y = coeffs(b);
  std::vector<Elem> z(m_, base_.zero());
  for (unsigned i = 0; i < m_; ++i)
    for (unsigned j = 0; j < m_; ++j) z[(i + j) % m_] = base_.add(z[(i + j) % m_], base_.mul(x[i], y[j]));
  return make(z);
}

std::string GroupRingModel::name(Elem a) const {
  auto c = coeffs(a);
  std::string out;
  for (unsigned i = 0; i < m_; ++i) {
    if (c[i] == base_.zero()) continue;
    if (!out.empty()) out += '+';
    std::string s = base_.name(c[i]);
    if (i == 0) {
      out += needs_parens(s) ? "(" + s + ")" : s;
      continue;
    }
    if (c[i] != base_.one()) out += (needs_parens(s) ? "(" + s + ")" : s) + "*";
    out += i == 1 ? "g" : "g^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

SubringModel::SubringModel(FinRing parent, std::vector<Elem> elements)
    : parent_(std::move(parent)), elems_(std::move(elements)), index_(parent_.size(), kNone) {
  for (Elem i = 0; i < elems_.size(); ++i) index_[elems_[i]] = i;
  for (Elem a : elems_)
    for (Elem b : elems_)
      if (index_[parent_.add(a, b)] == kNone || index_[parent_.mul(a, b)] == kNone)
        throw AlgebraError("subset is not closed under the ring operations");
  if (index_[parent_.one()] == kNone) throw AlgebraError("subset does not contain one");
}

std::optional<Elem> SubringModel::index_of(Elem parent_elem) const {
  Elem i = index_[parent_elem];
  if (i == kNone) return std::nullopt;
  return i;
}

StructureConstantsModel::StructureConstantsModel(FinAbGroup group, IntVector one,
                                                 std::vector<std::vector<IntVector>> products,
                                                 std::vector<std::string> basis_names)
    : group_(std::move(group)), names_(std::move(basis_names)) {
  if (!group_.is_finite()) throw AlgebraError("structure constants need a finite group");
  const std::size_t r = group_.rank();
  size_ = 1;
  for (const auto& d : group_.invariants()) {
    d_.push_back(d.get_si());
    size_ *= static_cast<std::size_t>(d.get_si());
  }
  prod_.assign(r, std::vector<std::vector<std::int64_t>>(r, std::vector<std::int64_t>(r)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      IntVector v = group_.reduce(products[i][j]);
      for (std::size_t k = 0; k < r; ++k) prod_[i][j][k] = v[k].get_si();
    }
  IntVector o = group_.reduce(one);
  std::vector<std::int64_t> oc(r);
  for (std::size_t k = 0; k < r; ++k) oc[k] = o[k].get_si();
  one_ = make(oc);
}

std::vector<std::int64_t> StructureConstantsModel::coords(Elem a) const {
  std::vector<std::int64_t> c(d_.size());
  for (std::size_t i = 0; i < d_.size(); ++i) {
    c[i] = a % d_[i];
    a = static_cast<Elem>(a / d_[i]);
  }
  return c;
}

Elem StructureConstantsModel::make(const std::vector<std::int64_t>& c) const {
  std::int64_t a = 0;
  for (std::size_t i = d_.size(); i-- > 0;) a = a * d_[i] + ((c[i] % d_[i]) + d_[i]) % d_[i];
  return static_cast<Elem>(a);
}

Elem StructureConstantsModel::add(Elem a, Elem b) const {
  auto x = coords(a), y = coords(b);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return make(x);
}

Elem StructureConstantsModel::neg(Elem a) const {
  auto x = coords(a);
  for (auto& c : x) c = -c;
  return make(x);
}

Elem StructureConstantsModel::mul(Elem a, Elem b) const {
  auto x = coords(a), y = coords(b);
  const std::size_t r = d_.size();
  std::vector<std::int64_t> z(r, 0);
  for (std::size_t i = 0; i < r; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < r; ++j) {
      if (y[j] == 0) continue;
      std::int64_t c = x[i] * y[j];
      for (std::size_t k = 0; k < r; ++k) z[k] = (z[k] + c % d_[k] * prod_[i][j][k]) % d_[k];
    }
  }
  return make(z);
}

std::string StructureConstantsModel::name(Elem a) const {
  auto c = coords(a);
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (c[i] != 1) out += std::to_string(c[i]) + "*";
    out += names_[i];
  }
  return out.empty() ? "0" : out;
}

// ------------------------------------------------------------------ InvRing

InvRing::InvRing(FinRing ring, std::vector<Elem> w, std::string scheme)
    : ring_(std::move(ring)), w_(std::move(w)), scheme_(std::move(scheme)) {
  const std::size_t n = ring_.size();
  if (w_.size() != n) throw ParseError("involution table has the wrong size");
  for (Elem a = 0; a < n; ++a) {
    if (w_[a] >= n) throw ParseError("involution table entry out of range");
    if (w_[w_[a]] != a) throw ParseError("involution does not square to the identity at " + ring_.name(a));
  }
  if (w_[ring_.one()] != ring_.one()) throw ParseError("involution does not fix one");
  const bool full = n <= 4096;
  const Elem step = full ? 1 : static_cast<Elem>(n / 4096 + 1);
  for (Elem a = 0; a < n; a += step)
    for (Elem b = 0; b < n; b += (full ? 1 : 1 + step / 7)) {
      if (w_[ring_.add(a, b)] != ring_.add(w_[a], w_[b])) throw ParseError("involution is not additive");
      if (w_[ring_.mul(a, b)] != ring_.mul(w_[a], w_[b])) throw ParseError("involution is not multiplicative");
    }
}

InvRing InvRing::trivial(FinRing ring) {
  std::vector<Elem> id(ring.size());
  for (Elem a = 0; a < id.size(); ++a) id[a] = a;
  return InvRing(std::move(ring), std::move(id), "trivial");
}

std::string InvRing::spec() const {
  return scheme_ == "trivial" ? ring_.spec() : ring_.spec() + " with " + scheme_;
}

}  // namespace tcrcalc
