#include "tcrcalc/errors.hpp"
#include "tcrcalc/witt.hpp"

#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>

namespace tcrcalc {

// ------------------------------------------------------------------ IntPoly

IntPoly IntPoly::constant(std::size_t nvars, const Integer& c) {
  IntPoly p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

IntPoly IntPoly::variable(std::size_t nvars, std::size_t v) {
  IntPoly p(nvars);
  Exponents e(nvars, 0);
  e[v] = 1;
  p.add_term(e, 1);
  return p;
}

void IntPoly::add_term(const Exponents& e, const Integer& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.nvars_);
  IntPoly::Exponents e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint16_t>(ea[v] + eb[v]);
      out.add_term(e, ca * cb);
    }
  return out;
}

IntPoly IntPoly::scaled(const Integer& c) const {
  IntPoly out(nvars_);
  if (sgn(c) == 0) return out;
  out.terms_ = terms_;
  for (auto& [e, x] : out.terms_) x *= c;
  return out;
}

IntPoly IntPoly::pow(std::uint64_t e) const {
  IntPoly result = constant(nvars_, 1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

IntPoly IntPoly::divexact(const Integer& d) const {
  IntPoly out(nvars_);
  out.terms_ = terms_;
  for (auto& [e, c] : out.terms_) {
    if (!mpz_divisible_p(c.get_mpz_t(), d.get_mpz_t()))
      throw AlgebraError("Witt polynomial solve: coefficient " + c.get_str() + " not divisible by " + d.get_str());
    mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
  }
  return out;
}

std::string IntPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first for readability.
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer ac = abs(c);
    if (first)
      os << (sgn(c) < 0 ? "-" : "");
    else
      os << (sgn(c) < 0 ? "-" : "+");
    first = false;
    bool has_var = false;
    std::ostringstream mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (has_var) mono << '*';
      mono << names[v];
      if (e[v] > 1) mono << '^' << e[v];
      has_var = true;
    }
    if (!has_var)
      os << ac.get_str();
    else if (ac == 1)
      os << mono.str();
    else
      os << ac.get_str() << '*' << mono.str();
  }
  return os.str();
}

// ------------------------------------------------------------- WittPolySet

struct WittPolySet::Lazy {
  std::once_flag sum_once, prod_once, neg_once, frob_once;
  std::vector<IntPoly> sum, prod, neg, frob;
};

WittPolySet::WittPolySet(unsigned p, unsigned n) : p_(p), n_(n), lazy_(std::make_shared<Lazy>()) {
  if (n == 0) throw AlgebraError("Witt length must be positive");
}

namespace {

Integer ipow(unsigned p, unsigned e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

std::uint64_t upow(unsigned p, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

// Solves p^i X_i = target_i - sum_{j<i} p^j X_j^{p^{i-j}} for i < count.
std::vector<IntPoly> solve_ghost(unsigned p, unsigned count, const std::function<IntPoly(unsigned)>& target) {
  std::vector<IntPoly> xs;
  for (unsigned i = 0; i < count; ++i) {
    IntPoly rhs = target(i);
    for (unsigned j = 0; j < i; ++j) rhs -= xs[j].pow(upow(p, i - j)).scaled(ipow(p, j));
    xs.push_back(rhs.divexact(ipow(p, i)));
  }
  return xs;
}

}  // namespace

IntPoly WittPolySet::ghost_a(unsigned i) const {
  IntPoly g(nvars());
  for (unsigned j = 0; j <= i; ++j) g += IntPoly::variable(nvars(), a(j)).pow(upow(p_, i - j)).scaled(ipow(p_, j));
  return g;
}

IntPoly WittPolySet::ghost_b(unsigned i) const {
  IntPoly g(nvars());
  for (unsigned j = 0; j <= i; ++j) g += IntPoly::variable(nvars(), b(j)).pow(upow(p_, i - j)).scaled(ipow(p_, j));
  return g;
}

const std::vector<IntPoly>& WittPolySet::sum() const {
  std::call_once(lazy_->sum_once, [this] {
    lazy_->sum = solve_ghost(p_, n_, [this](unsigned i) { return ghost_a(i) + ghost_b(i); });
  });
  return lazy_->sum;
}

const std::vector<IntPoly>& WittPolySet::product() const {
  std::call_once(lazy_->prod_once, [this] {
    lazy_->prod = solve_ghost(p_, n_, [this](unsigned i) { return ghost_a(i) * ghost_b(i); });
  });
  return lazy_->prod;
}

const std::vector<IntPoly>& WittPolySet::negation() const {
  std::call_once(lazy_->neg_once, [this] {
    lazy_->neg = solve_ghost(p_, n_, [this](unsigned i) { return ghost_a(i).scaled(-1); });
  });
  return lazy_->neg;
}

const std::vector<IntPoly>& WittPolySet::frobenius() const {
  std::call_once(lazy_->frob_once, [this] {
    lazy_->frob = solve_ghost(p_, n_, [this](unsigned i) { return ghost_a(i + 1); });
  });
  return lazy_->frob;
}

std::vector<std::string> WittPolySet::variable_names() const {
  std::vector<std::string> names;
  for (unsigned i = 0; i <= n_; ++i) names.push_back("a" + std::to_string(i));
  for (unsigned i = 0; i <= n_; ++i) names.push_back("b" + std::to_string(i));
  return names;
}

const WittPolySet& build_polys(unsigned p, unsigned n, unsigned bound) {
  if (n > bound) throw Refusal("witt-length-bound", "length " + std::to_string(n) + " exceeds " + std::to_string(bound));
  static std::shared_mutex mutex;
  static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<WittPolySet>> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find({p, n});
    if (it != cache.end()) return *it->second;
  }
  std::unique_lock lock(mutex);
  auto& slot = cache[{p, n}];
  if (!slot) slot = std::make_unique<WittPolySet>(p, n);
  return *slot;
}

}  // namespace tcrcalc
