#include "tcrcalc/abelian.hpp"
#include "tcrcalc/errors.hpp"

#include <sstream>

namespace tcrcalc {

namespace {

Integer mod_nonneg(const Integer& x, const Integer& d) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  return r;
}

bool divides(const Integer& d, const Integer& x) {
  if (sgn(d) == 0) return sgn(x) == 0;
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace

std::string format_integer(const Integer& x) { return x.get_str(); }

// ---------------------------------------------------------------- FinAbGroup

FinAbGroup::FinAbGroup(IntVector invariants) : inv_(std::move(invariants)) {
  bool seen_free = false;
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    const Integer& d = inv_[i];
    if (sgn(d) < 0 || d == 1) throw AlgebraError("invariant factors must be 0 or at least 2");
    if (sgn(d) == 0) {
      seen_free = true;
      continue;
    }
    if (seen_free) throw AlgebraError("free factors must come last");
    if (i > 0 && !divides(inv_[i - 1], d)) throw AlgebraError("invariant factors must form a divisibility chain");
  }
}

FinAbGroup::FinAbGroup(std::initializer_list<long> invariants)
    : FinAbGroup(IntVector(invariants.begin(), invariants.end())) {}

FinAbGroup FinAbGroup::from_factors(const IntVector& factors) {
  IntVector d;
  for (const auto& f : factors) d.push_back(abs(f));
  return normalize_presentation(d.size(), IntMatrix::diagonal(d)).group;
}

bool FinAbGroup::is_finite() const {
  for (const auto& d : inv_)
    if (sgn(d) == 0) return false;
  return true;
}

std::size_t FinAbGroup::free_rank() const {
  std::size_t n = 0;
  for (const auto& d : inv_)
    if (sgn(d) == 0) ++n;
  return n;
}

Integer FinAbGroup::order() const {
  if (!is_finite()) throw AlgebraError("order of an infinite group");
  Integer n = 1;
  for (const auto& d : inv_) n *= d;
  return n;
}

void FinAbGroup::set_labels(std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != inv_.size()) throw AlgebraError("one label per generator");
  labels_ = std::move(labels);
}

IntVector FinAbGroup::reduce(IntVector coords) const {
  if (coords.size() != inv_.size()) throw AlgebraError("coordinate length mismatch");
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (sgn(inv_[i]) != 0) coords[i] = mod_nonneg(coords[i], inv_[i]);
  return coords;
}

bool FinAbGroup::is_zero(const IntVector& coords) const {
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!divides(inv_[i], coords[i])) return false;
  return true;
}

std::string FinAbGroup::to_string() const {
  if (inv_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < inv_.size(); ++i) {
    if (i) os << '+';
    if (sgn(inv_[i]) == 0)
      os << 'Z';
    else
      os << "Z/" << inv_[i].get_str();
  }
  return os.str();
}

// ------------------------------------------------------------------ GroupHom

GroupHom::GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix)
    : src_(std::move(source)), tgt_(std::move(target)), m_(std::move(matrix)) {
  if (m_.rows() != tgt_.rank() || m_.cols() != src_.rank())
    throw AlgebraError("homomorphism matrix has the wrong shape");
  const auto& a = src_.invariants();
  const auto& b = tgt_.invariants();
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sgn(a[j]) == 0) continue;
    for (std::size_t i = 0; i < b.size(); ++i)
      if (!divides(b[i], a[j] * m_(i, j))) throw AlgebraError("matrix does not define a homomorphism");
  }
  for (std::size_t i = 0; i < b.size(); ++i)
    if (sgn(b[i]) != 0)
      for (std::size_t j = 0; j < a.size(); ++j) m_(i, j) = mod_nonneg(m_(i, j), b[i]);
}

GroupHom GroupHom::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return GroupHom(source, target, IntMatrix(target.rank(), source.rank()));
}

GroupHom GroupHom::identity(const FinAbGroup& g) { return GroupHom(g, g, IntMatrix::identity(g.rank())); }

GroupHom GroupHom::scalar(const FinAbGroup& g, const Integer& k) {
  IntMatrix m = IntMatrix::identity(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) m(i, i) = k;
  return GroupHom(g, g, m);
}

IntVector GroupHom::apply(const IntVector& x) const { return tgt_.reduce(m_.apply(x)); }

bool GroupHom::is_zero() const { return m_.is_zero(); }

GroupHom operator*(const GroupHom& after, const GroupHom& before) {
  if (!(before.tgt_ == after.src_)) throw AlgebraError("composition of incompatible homomorphisms");
  return GroupHom(before.src_, after.tgt_, after.m_ * before.m_);
}

GroupHom operator+(const GroupHom& a, const GroupHom& b) {
  if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_)) throw AlgebraError("sum of homomorphisms with different types");
  return GroupHom(a.src_, a.tgt_, a.m_ + b.m_);
}

GroupHom operator-(const GroupHom& a, const GroupHom& b) {
  if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_))
    throw AlgebraError("difference of homomorphisms with different types");
  return GroupHom(a.src_, a.tgt_, a.m_ - b.m_);
}

GroupHom GroupHom::operator-() const { return GroupHom(src_, tgt_, IntMatrix(m_.rows(), m_.cols()) - m_); }

bool operator==(const GroupHom& a, const GroupHom& b) {
  return a.src_ == b.src_ && a.tgt_ == b.tgt_ && a.m_ == b.m_;
}

// ------------------------------------------------------------- presentations

NormalizedGroup normalize_presentation(std::size_t generators, const IntMatrix& relations) {
  if (relations.rows() != generators) throw AlgebraError("relation matrix has the wrong row count");
  SmithForm f = smith_normal_form(relations);
  IntVector inv;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < generators; ++i) {
    Integer d = i < f.rank ? f.D(i, i) : Integer(0);
    if (d == 1) continue;
    keep.push_back(i);
    inv.push_back(d);
  }
  NormalizedGroup out{FinAbGroup(inv), f.U.select_rows(keep), f.U_inv.select_cols(keep)};
  for (std::size_t i = 0; i < inv.size(); ++i)
    if (sgn(inv[i]) != 0)
      for (std::size_t j = 0; j < generators; ++j) out.to_normal(i, j) = mod_nonneg(out.to_normal(i, j), inv[i]);
  return out;
}

namespace {

IntMatrix diag_of(const FinAbGroup& g) { return IntMatrix::diagonal(g.invariants()); }

// Basis of {x in Z^rA : M x = 0 in B}.
IntMatrix preimage_of_zero(const GroupHom& h) {
  const std::size_t ra = h.source().rank();
  IntMatrix stacked = h.matrix().hstack(IntMatrix(h.target().rank(), h.target().rank()) - diag_of(h.target()));
  IntMatrix k = integer_kernel(stacked);
  std::vector<std::size_t> top(ra);
  for (std::size_t i = 0; i < ra; ++i) top[i] = i;
  return lattice_basis(k.select_rows(top));
}

}  // namespace

SubgroupResult kernel(const GroupHom& h) {
  const auto& a = h.source().invariants();
  IntMatrix kb = preimage_of_zero(h);
  std::vector<IntVector> rel;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sgn(a[j]) == 0) continue;
    IntVector e(a.size(), Integer(0));
    e[j] = a[j];
    auto c = solve_integer(kb, e);
    if (!c) throw AlgebraError("kernel: relation outside preimage lattice");
    rel.push_back(*c);
  }
  NormalizedGroup ng = normalize_presentation(kb.cols(), IntMatrix::from_columns(kb.cols(), rel));
  GroupHom incl(ng.group, h.source(), kb * ng.from_normal);
  return {ng.group, incl};
}

SubgroupResult image(const GroupHom& h) {
  IntMatrix kb = preimage_of_zero(h);
  NormalizedGroup ng = normalize_presentation(h.source().rank(), kb);
  GroupHom incl(ng.group, h.target(), h.matrix() * ng.from_normal);
  return {ng.group, incl};
}

QuotientResult cokernel(const GroupHom& h) {
  IntMatrix rel = h.matrix().hstack(diag_of(h.target()));
  NormalizedGroup ng = normalize_presentation(h.target().rank(), rel);
  return {ng.group, GroupHom(h.target(), ng.group, ng.to_normal)};
}

bool is_injective(const GroupHom& h) { return kernel(h).group.is_trivial(); }
bool is_surjective(const GroupHom& h) { return cokernel(h).group.is_trivial(); }
bool is_isomorphism(const GroupHom& h) { return is_injective(h) && is_surjective(h); }

std::optional<IntVector> preimage(const GroupHom& h, const IntVector& y) {
  IntMatrix m = h.matrix().hstack(diag_of(h.target()));
  auto sol = solve_integer(m, y);
  if (!sol) return std::nullopt;
  sol->resize(h.source().rank());
  return h.source().reduce(*sol);
}

GroupHom inverse(const GroupHom& h) {
  if (!is_isomorphism(h)) throw AlgebraError("inverse of a non-isomorphism");
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < h.target().rank(); ++i) {
    IntVector e(h.target().rank(), Integer(0));
    e[i] = 1;
    cols.push_back(*preimage(h, e));
  }
  return GroupHom(h.target(), h.source(), IntMatrix::from_columns(h.source().rank(), cols));
}

GroupHom lift_through_injection(const GroupHom& incl, const GroupHom& h) {
  if (!(incl.target() == h.target())) throw AlgebraError("lift: targets differ");
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < h.source().rank(); ++j) {
    auto x = preimage(incl, h.matrix().column(j));
    if (!x) throw AlgebraError("lift: map does not factor through the subgroup");
    cols.push_back(*x);
  }
  return GroupHom(h.source(), incl.source(), IntMatrix::from_columns(incl.source().rank(), cols));
}

GroupHom lift_through_surjection(const GroupHom& proj, const GroupHom& h) {
  if (!(proj.target() == h.target())) throw AlgebraError("lift: targets differ");
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < h.source().rank(); ++j) {
    auto x = preimage(proj, h.matrix().column(j));
    if (!x) throw AlgebraError("lift: element outside the image");
    cols.push_back(*x);
  }
  return GroupHom(h.source(), proj.source(), IntMatrix::from_columns(proj.source().rank(), cols));
}

GroupHom descend_through_surjection(const GroupHom& q, const GroupHom& h) {
  if (!(q.source() == h.source())) throw AlgebraError("descend: sources differ");
  std::vector<IntVector> cols;
  for (std::size_t i = 0; i < q.target().rank(); ++i) {
    IntVector e(q.target().rank(), Integer(0));
    e[i] = 1;
    auto x = preimage(q, e);
    if (!x) throw AlgebraError("descend: map is not surjective");
    cols.push_back(h.apply(*x));
  }
  GroupHom g(q.target(), h.target(), IntMatrix::from_columns(h.target().rank(), cols));
  if (!(g * q == h)) throw AlgebraError("descend: kernel is not contained in the kernel of the map");
  return g;
}

DirectSum direct_sum(const std::vector<FinAbGroup>& parts) {
  std::size_t total = 0;
  for (const auto& p : parts) total += p.rank();
  IntVector d;
  for (const auto& p : parts)
    for (const auto& x : p.invariants()) d.push_back(x);
  NormalizedGroup ng = normalize_presentation(total, IntMatrix::diagonal(d));
  DirectSum out{ng.group, {}, {}};
  std::size_t off = 0;
  for (const auto& p : parts) {
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < p.rank(); ++k) idx.push_back(off + k);
    out.injections.emplace_back(p, ng.group, ng.to_normal.select_cols(idx));
    out.projections.emplace_back(ng.group, p, ng.from_normal.select_rows(idx));
    off += p.rank();
  }
  return out;
}

GroupHom block_hom(const DirectSum& src, const DirectSum& tgt, const std::vector<std::vector<GroupHom>>& blocks) {
  if (blocks.size() != tgt.injections.size()) throw AlgebraError("block_hom: wrong number of block rows");
  GroupHom out = GroupHom::zero(src.group, tgt.group);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].size() != src.projections.size()) throw AlgebraError("block_hom: wrong number of block columns");
    for (std::size_t l = 0; l < blocks[k].size(); ++l)
      if (!blocks[k][l].is_zero()) out = out + tgt.injections[k] * blocks[k][l] * src.projections[l];
  }
  return out;
}

bool is_exact_at(const GroupHom& f, const GroupHom& g) {
  if (!(g * f).is_zero()) return false;
  SubgroupResult k = kernel(g);
  return is_surjective(lift_through_injection(k.inclusion, f));
}

TensorProduct tensor(const FinAbGroup& a, const FinAbGroup& b) {
  IntVector d;
  for (const auto& x : a.invariants())
    for (const auto& y : b.invariants()) d.push_back(gcd(x, y));
  NormalizedGroup ng = normalize_presentation(d.size(), IntMatrix::diagonal(d));
  return {ng.group, ng};
}

}  // namespace tcrcalc
