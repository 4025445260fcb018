#include "tcrcalc/budget.hpp"
#include "tcrcalc/errors.hpp"
#include "tcrcalc/witt.hpp"

#include <mutex>

namespace tcrcalc {

namespace {

struct Term {
  Elem coef;
  std::vector<std::pair<std::uint16_t, std::uint16_t>> factors;  // (variable, exponent)
};

struct Family {
  std::vector<std::vector<Term>> polys;
  std::vector<std::uint16_t> max_exp;  // per variable
};

Family compile(const FinRing& r, const std::vector<IntPoly>& polys, std::size_t nvars) {
  Family f;
  f.max_exp.assign(nvars, 0);
  for (const auto& poly : polys) {
    std::vector<Term> terms;
    for (const auto& [e, c] : poly.terms()) {
      Elem coef = r.from_int(c);
      if (coef == r.zero()) continue;
      Term t{coef, {}};
      for (std::size_t v = 0; v < e.size(); ++v)
        if (e[v]) {
          t.factors.emplace_back(static_cast<std::uint16_t>(v), e[v]);
          f.max_exp[v] = std::max(f.max_exp[v], e[v]);
        }
      terms.push_back(std::move(t));
    }
    f.polys.push_back(std::move(terms));
  }
  return f;
}

std::vector<Elem> evaluate(const FinRing& r, const Family& f, const std::vector<Elem>& inputs) {
  std::vector<std::vector<Elem>> powers(inputs.size());
  for (std::size_t v = 0; v < inputs.size(); ++v) {
    if (f.max_exp[v] == 0) continue;
    auto& pw = powers[v];
    pw.resize(f.max_exp[v] + 1u);
    pw[0] = r.one();
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = r.mul(pw[k - 1], inputs[v]);
  }
  std::vector<Elem> out;
  out.reserve(f.polys.size());
  for (const auto& terms : f.polys) {
    Elem acc = r.zero();
    for (const auto& t : terms) {
      Elem x = t.coef;
      for (const auto& [v, e] : t.factors) {
        x = r.mul(x, powers[v][e]);
        if (x == r.zero()) break;
      }
      acc = r.add(acc, x);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

struct WittRing::Compiled {
  std::once_flag sum_once, prod_once, neg_once, frob_once;
  Family sum, prod, neg, frob;
};

WittRing::WittRing(FinRing base, unsigned p, unsigned n)
    : base_(std::move(base)), p_(p), n_(n), compiled_(std::make_shared<Compiled>()) {
  if (n == 0) throw AlgebraError("Witt length must be positive");
  if (p < 2) throw AlgebraError("Witt prime must be at least 2");
  size_ = 1;
  for (unsigned i = 0; i < n; ++i) {
    size_ *= base_.size();
    if (size_ > (std::size_t{1} << 30)) throw Refusal("enumeration-bound", "Witt ring too large to index");
  }
}

const WittRing::Compiled& WittRing::compiled() const { return *compiled_; }

WittVector WittRing::zero() const { return WittVector(n_, base_.zero()); }

WittVector WittRing::teichmuller(Elem a) const {
  WittVector x = zero();
  x[0] = a;
  return x;
}

WittVector WittRing::one() const { return teichmuller(base_.one()); }

namespace {

std::vector<Elem> pack(const WittPolySet& ps, const WittVector& x, const WittVector* y) {
  std::vector<Elem> in(ps.nvars(), 0);
  for (unsigned i = 0; i < x.size() && i <= ps.length(); ++i) in[ps.a(i)] = x[i];
  if (y)
    for (unsigned i = 0; i < y->size() && i <= ps.length(); ++i) in[ps.b(i)] = (*y)[i];
  return in;
}

}  // namespace

WittVector WittRing::add(const WittVector& x, const WittVector& y) const {
  const WittPolySet& ps = build_polys(p_, n_);
  std::call_once(compiled_->sum_once, [&] { compiled_->sum = compile(base_, ps.sum(), ps.nvars()); });
  return evaluate(base_, compiled_->sum, pack(ps, x, &y));
}

WittVector WittRing::mul(const WittVector& x, const WittVector& y) const {
  const WittPolySet& ps = build_polys(p_, n_);
  std::call_once(compiled_->prod_once, [&] { compiled_->prod = compile(base_, ps.product(), ps.nvars()); });
  return evaluate(base_, compiled_->prod, pack(ps, x, &y));
}

WittVector WittRing::neg(const WittVector& x) const {
  const WittPolySet& ps = build_polys(p_, n_);
  std::call_once(compiled_->neg_once, [&] { compiled_->neg = compile(base_, ps.negation(), ps.nvars()); });
  return evaluate(base_, compiled_->neg, pack(ps, x, nullptr));
}

WittVector WittRing::scalar(const Integer& k, const WittVector& x) const {
  Integer m = abs(k);
  WittVector acc = zero(), term = x;
  while (sgn(m) != 0) {
    if (mpz_odd_p(m.get_mpz_t())) acc = add(acc, term);
    m >>= 1;
    if (sgn(m) != 0) term = add(term, term);
  }
  return sgn(k) < 0 ? neg(acc) : acc;
}

WittVector WittRing::frobenius(const WittVector& x) const {
  if (n_ < 2) throw AlgebraError("Frobenius needs length at least 2");
  const WittPolySet& ps = build_polys(p_, n_ - 1);
  std::call_once(compiled_->frob_once, [&] { compiled_->frob = compile(base_, ps.frobenius(), ps.nvars()); });
  return evaluate(base_, compiled_->frob, pack(ps, x, nullptr));
}

WittVector WittRing::verschiebung(const WittVector& x) const {
  WittVector y(n_ + 1, base_.zero());
  for (unsigned i = 0; i < n_; ++i) y[i + 1] = x[i];
  return y;
}

WittVector WittRing::restriction(const WittVector& x) const {
  if (n_ < 2) throw AlgebraError("restriction needs length at least 2");
  return WittVector(x.begin(), x.end() - 1);
}

std::vector<Elem> WittRing::ghost(const WittVector& x) const {
  std::vector<Elem> g(n_, base_.zero());
  for (unsigned i = 0; i < n_; ++i) {
    Integer pj = 1;
    std::uint64_t e = 1;
    for (unsigned k = 0; k < i; ++k) e *= p_;
    for (unsigned j = 0; j <= i; ++j) {
      g[i] = base_.add(g[i], base_.mul(base_.from_int(pj), base_.pow(x[j], e)));
      pj *= p_;
      e /= p_;
    }
  }
  return g;
}

Elem WittRing::encode(const WittVector& x) const {
  if (x.size() != n_) throw AlgebraError("Witt vector has the wrong length");
  std::size_t e = 0;
  for (unsigned i = n_; i-- > 0;) e = e * base_.size() + x[i];
  return static_cast<Elem>(e);
}

WittVector WittRing::decode(Elem e) const {
  WittVector x(n_);
  for (unsigned i = 0; i < n_; ++i) {
    x[i] = static_cast<Elem>(e % base_.size());
    e = static_cast<Elem>(e / base_.size());
  }
  return x;
}

std::string WittRing::name(const WittVector& x) const {
  std::string s = "[";
  for (unsigned i = 0; i < x.size(); ++i) s += (i ? "," : "") + base_.name(x[i]);
  return s + "]";
}

std::string WittRing::spec() const { return "W" + std::to_string(n_) + "(" + base_.spec() + ")"; }

FinRing WittRing::fin_ring() const { return FinRing(std::make_shared<WittModel>(*this), spec()); }

WittStructure witt_structure(const FinRing& a, unsigned p, unsigned n, const Budget& budget) {
  std::size_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    size *= a.size();
    if (size > budget.max_enum) break;
  }
  budget.require_enum(size, "Witt vectors");
  WittRing w(a, p, n);
  FinRing r = w.fin_ring();
  AdditiveChart chart = r.additive_chart();
  return {w, r, std::move(chart)};
}

GroupHom witt_frobenius_hom(const WittStructure& from, const WittStructure& to) {
  return from.chart.hom_or_throw(to.chart, [&](Elem e) { return to.ring.encode(from.ring.frobenius(from.ring.decode(e))); });
}

GroupHom witt_verschiebung_hom(const WittStructure& from, const WittStructure& to) {
  return from.chart.hom_or_throw(to.chart,
                                 [&](Elem e) { return to.ring.encode(from.ring.verschiebung(from.ring.decode(e))); });
}

GroupHom witt_restriction_hom(const WittStructure& from, const WittStructure& to) {
  return from.chart.hom_or_throw(to.chart,
                                 [&](Elem e) { return to.ring.encode(from.ring.restriction(from.ring.decode(e))); });
}

WittVector witt_functor(const WittRing& target, const std::vector<Elem>& f, const WittVector& x) {
  WittVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f[x[i]];
  if (y.size() != target.length()) throw AlgebraError("Witt functor: length mismatch");
  return y;
}

}  // namespace tcrcalc
