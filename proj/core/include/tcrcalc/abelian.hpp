#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tcrcalc {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& d);
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector column(std::size_t j) const;
  IntVector row(std::size_t i) const;
  IntVector apply(const IntVector& v) const;

  IntMatrix transpose() const;
  IntMatrix hstack(const IntMatrix& right) const;
  IntMatrix vstack(const IntMatrix& below) const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// U * M * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... , d_i >= 0.
struct SmithForm {
  IntMatrix U, U_inv, D, V, V_inv;
  std::size_t rank = 0;
  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Columns form a basis of {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);
// Columns form a basis of the lattice spanned by the columns of gens.
IntMatrix lattice_basis(const IntMatrix& gens);
std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b);

// Finitely generated abelian group ⊕ Z/d_i in invariant-factor form: d_i != 1,
// d_i | d_{i+1}, with free factors (d = 0) last.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(IntVector invariants);
  FinAbGroup(std::initializer_list<long> invariants);

  // Arbitrary cyclic factors, normalized (e.g. {2,3} becomes {6}).
  static FinAbGroup from_factors(const IntVector& factors);

  const IntVector& invariants() const { return inv_; }
  std::size_t rank() const { return inv_.size(); }
  bool is_trivial() const { return inv_.empty(); }
  bool is_finite() const;
  std::size_t free_rank() const;
  Integer order() const;  // throws for infinite groups

  const std::vector<std::string>& labels() const { return labels_; }
  void set_labels(std::vector<std::string> labels);

  // Reduces coordinates into [0, d_i) for finite factors.
  IntVector reduce(IntVector coords) const;
  bool is_zero(const IntVector& coords) const;

  std::string to_string() const;  // "Z/2+Z/4+Z", "0"
  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.inv_ == b.inv_; }

 private:
  IntVector inv_;
  std::vector<std::string> labels_;
};

class GroupHom {
 public:
  GroupHom() = default;
  // matrix is target.rank() x source.rank(); well-definedness is checked.
  GroupHom(FinAbGroup source, FinAbGroup target, IntMatrix matrix);

  static GroupHom zero(const FinAbGroup& source, const FinAbGroup& target);
  static GroupHom identity(const FinAbGroup& g);
  static GroupHom scalar(const FinAbGroup& g, const Integer& k);

  const FinAbGroup& source() const { return src_; }
  const FinAbGroup& target() const { return tgt_; }
  const IntMatrix& matrix() const { return m_; }

  IntVector apply(const IntVector& x) const;
  bool is_zero() const;

  friend GroupHom operator*(const GroupHom& after, const GroupHom& before);
  friend GroupHom operator+(const GroupHom& a, const GroupHom& b);
  friend GroupHom operator-(const GroupHom& a, const GroupHom& b);
  GroupHom operator-() const;
  friend bool operator==(const GroupHom& a, const GroupHom& b);

 private:
  FinAbGroup src_, tgt_;
  IntMatrix m_;
};

// Z^g / (column span of relations), with coordinate changes to and from normal form.
struct NormalizedGroup {
  FinAbGroup group;
  IntMatrix to_normal;    // group.rank() x g
  IntMatrix from_normal;  // g x group.rank()
};
NormalizedGroup normalize_presentation(std::size_t generators, const IntMatrix& relations);

struct SubgroupResult {
  FinAbGroup group;
  GroupHom inclusion;
};
struct QuotientResult {
  FinAbGroup group;
  GroupHom projection;
};

SubgroupResult kernel(const GroupHom& h);
SubgroupResult image(const GroupHom& h);
QuotientResult cokernel(const GroupHom& h);

bool is_injective(const GroupHom& h);
bool is_surjective(const GroupHom& h);
bool is_isomorphism(const GroupHom& h);
GroupHom inverse(const GroupHom& h);  // throws unless h is an isomorphism

// Unique g with incl * g == h; throws if h does not factor through incl.
GroupHom lift_through_injection(const GroupHom& incl, const GroupHom& h);
// Some g with proj * g == h (for free or projective-enough sources; throws otherwise).
GroupHom lift_through_surjection(const GroupHom& proj, const GroupHom& h);
std::optional<IntVector> preimage(const GroupHom& h, const IntVector& y);
// Factor h through a surjection q: returns g with g * q == h; throws if ker q ⊄ ker h.
GroupHom descend_through_surjection(const GroupHom& q, const GroupHom& h);

struct DirectSum {
  FinAbGroup group;
  std::vector<GroupHom> injections;
  std::vector<GroupHom> projections;
};
DirectSum direct_sum(const std::vector<FinAbGroup>& parts);
// Block map ⊕ sources -> ⊕ targets from a matrix of homs (row = target index).
GroupHom block_hom(const DirectSum& src, const DirectSum& tgt,
                   const std::vector<std::vector<GroupHom>>& blocks);

// True when a -f-> b -g-> c is exact at b.
bool is_exact_at(const GroupHom& f, const GroupHom& g);

// Tensor product of finite groups with the bilinear pairing on basis elements.
struct TensorProduct {
  FinAbGroup group;
  // basis index of e_i ⊗ e_j is i * right.rank() + j before normalization
  NormalizedGroup presentation;
};
TensorProduct tensor(const FinAbGroup& a, const FinAbGroup& b);

std::string format_integer(const Integer& x);

}  // namespace tcrcalc
