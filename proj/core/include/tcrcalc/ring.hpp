#pragma once

#include "tcrcalc/abelian.hpp"
#include "tcrcalc/enumeration.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tcrcalc {

// Elements of a finite commutative ring are indices 0..size()-1.
class RingModel {
 public:
  virtual ~RingModel() = default;
  virtual std::size_t size() const = 0;
  virtual Elem zero() const = 0;
  virtual Elem one() const = 0;
  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual std::string name(Elem a) const = 0;
};

class FinRing {
 public:
  FinRing() = default;
  FinRing(std::shared_ptr<const RingModel> model, std::string spec);

  std::size_t size() const { return size_; }
  Elem zero() const { return zero_; }
  Elem one() const { return one_; }
  Elem add(Elem a, Elem b) const { return add_.empty() ? model_->add(a, b) : add_[a * size_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_.empty() ? model_->mul(a, b) : mul_[a * size_ + b]; }
  Elem neg(Elem a) const { return neg_.empty() ? model_->neg(a) : neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem from_int(const Integer& k) const;
  std::string name(Elem a) const { return model_->name(a); }
  std::optional<Elem> parse_element(const std::string& name) const;

  const std::string& spec() const { return spec_; }
  Integer characteristic() const;
  AdditiveChart additive_chart() const;

  const RingModel& model() const { return *model_; }
  template <class T>
  const T* as() const {
    return dynamic_cast<const T*>(model_.get());
  }

  // Exhaustive ring axioms; returns a description of the first failure.
  std::optional<std::string> check_axioms() const;

 private:
  std::shared_ptr<const RingModel> model_;
  std::string spec_;
  std::size_t size_ = 0;
  Elem zero_ = 0, one_ = 0;
  std::vector<Elem> add_, mul_, neg_;  // tabulated for small rings
};

// ---------------------------------------------------------------- models

class ZModModel : public RingModel {
 public:
  explicit ZModModel(std::uint64_t n);
  std::size_t size() const override { return n_; }
  Elem zero() const override { return 0; }
  Elem one() const override { return n_ == 1 ? 0 : 1; }
  Elem add(Elem a, Elem b) const override { return static_cast<Elem>((std::uint64_t{a} + b) % n_); }
  Elem neg(Elem a) const override { return a == 0 ? 0 : static_cast<Elem>(n_ - a); }
  Elem mul(Elem a, Elem b) const override { return static_cast<Elem>((std::uint64_t{a} * b) % n_); }
  std::string name(Elem a) const override { return std::to_string(a); }
  std::uint64_t modulus() const { return n_; }

 private:
  std::uint64_t n_;
};

// F_p[x]/(f), f monic irreducible; element index = sum c_i p^i.
class GaloisModel : public RingModel {
 public:
  GaloisModel(unsigned p, std::vector<unsigned> monic_poly);
  std::size_t size() const override { return size_; }
  Elem zero() const override { return 0; }
  Elem one() const override { return 1; }
  Elem add(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem mul(Elem a, Elem b) const override;
  std::string name(Elem a) const override;
  unsigned prime() const { return p_; }
  unsigned degree() const { return static_cast<unsigned>(poly_.size() - 1); }
  std::vector<unsigned> coeffs(Elem a) const;
  Elem make(const std::vector<unsigned>& c) const;

 private:
  unsigned p_;
  std::vector<unsigned> poly_;
  std::size_t size_;
};

class ProductModel : public RingModel {
 public:
  ProductModel(FinRing left, FinRing right);
  std::size_t size() const override { return left_.size() * right_.size(); }
  Elem zero() const override { return make(left_.zero(), right_.zero()); }
  Elem one() const override { return make(left_.one(), right_.one()); }
  Elem add(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem mul(Elem a, Elem b) const override;
  std::string name(Elem a) const override;
  const FinRing& left() const { return left_; }
  const FinRing& right() const { return right_; }
  Elem first(Elem a) const { return static_cast<Elem>(a % left_.size()); }
  Elem second(Elem a) const { return static_cast<Elem>(a / left_.size()); }
  Elem make(Elem a, Elem b) const { return static_cast<Elem>(a + left_.size() * b); }

 private:
  FinRing left_, right_;
};

// A[C_m]; element index = sum c_i |A|^i for coefficient c_i of g^i.
class GroupRingModel : public RingModel {
 public:
  GroupRingModel(FinRing coeffs, unsigned order);
  std::size_t size() const override { return size_; }
  Elem zero() const override;
  Elem one() const override;
  Elem add(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem mul(Elem a, Elem b) const override;
  std::string name(Elem a) const override;
  const FinRing& coefficient_ring() const { return base_; }
  unsigned order() const { return m_; }
  std::vector<Elem> coeffs(Elem a) const;
  Elem make(const std::vector<Elem>& c) const;

 private:
  FinRing base_;
  unsigned m_;
  std::size_t size_;
};

// A subring of a parent ring given by its element list.
class SubringModel : public RingModel {
 public:
  SubringModel(FinRing parent, std::vector<Elem> elements);
  std::size_t size() const override { return elems_.size(); }
  Elem zero() const override { return index_[parent_.zero()]; }
  Elem one() const override { return index_[parent_.one()]; }
  Elem add(Elem a, Elem b) const override { return index_[parent_.add(elems_[a], elems_[b])]; }
  Elem neg(Elem a) const override { return index_[parent_.neg(elems_[a])]; }
  Elem mul(Elem a, Elem b) const override { return index_[parent_.mul(elems_[a], elems_[b])]; }
  std::string name(Elem a) const override { return parent_.name(elems_[a]); }
  const FinRing& parent() const { return parent_; }
  Elem inclusion(Elem a) const { return elems_[a]; }
  std::optional<Elem> index_of(Elem parent_elem) const;

 private:
  FinRing parent_;
  std::vector<Elem> elems_;
  std::vector<Elem> index_;  // parent element -> sub index, or sentinel
};

// Ring on ⊕ Z/d_i given by structure constants on the basis; element index is mixed radix.
class StructureConstantsModel : public RingModel {
 public:
  StructureConstantsModel(FinAbGroup group, IntVector one,
                          std::vector<std::vector<IntVector>> products,  // products[i][j] = e_i e_j
                          std::vector<std::string> basis_names);
  std::size_t size() const override { return size_; }
  Elem zero() const override { return 0; }
  Elem one() const override { return one_; }
  Elem add(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem mul(Elem a, Elem b) const override;
  std::string name(Elem a) const override;
  const FinAbGroup& group() const { return group_; }
  std::vector<std::int64_t> coords(Elem a) const;
  Elem make(const std::vector<std::int64_t>& c) const;

 private:
  FinAbGroup group_;
  std::vector<std::int64_t> d_;
  std::vector<std::vector<std::vector<std::int64_t>>> prod_;
  std::vector<std::string> names_;
  std::size_t size_;
  Elem one_;
};

// ---------------------------------------------------------------- involutions

class InvRing {
 public:
  InvRing() = default;
  // Validates that w is a ring automorphism with w∘w = id.
  InvRing(FinRing ring, std::vector<Elem> w, std::string scheme);
  static InvRing trivial(FinRing ring);

  const FinRing& ring() const { return ring_; }
  Elem w(Elem a) const { return w_[a]; }
  const std::vector<Elem>& involution() const { return w_; }
  const std::string& scheme() const { return scheme_; }
  std::string spec() const;

 private:
  FinRing ring_;
  std::vector<Elem> w_;
  std::string scheme_ = "trivial";
};

// ---------------------------------------------------------------- operations

struct FrobeniusMap {
  unsigned p = 0;
  std::vector<Elem> map;
  bool additive = false;
  bool injective = false;
  bool bijective = false;
};
FrobeniusMap frobenius(const FinRing& a, unsigned p);

struct FixedSubring {
  FinRing ring;
  std::vector<Elem> inclusion;  // fixed index -> A
  std::vector<Elem> transfer;   // A -> fixed index, a + w(a)
  std::vector<Elem> norm;       // A -> fixed index, a w(a)
  std::optional<Elem> index_of(Elem a) const;
};
FixedSubring fixed_subring(const InvRing& a);

struct NormTensor {
  FixedSubring fixed;
  AdditiveChart fixed_chart;
  FinRing ring;        // (F ⊗ F) / <1⊗n - n⊗1>
  GroupHom mu;         // additive μ: ring -> F
  GroupHom section;    // x ↦ x ⊗ 1
  std::vector<std::string> kernel_witnesses;  // tensor expressions of kernel generators
  std::string render(const IntVector& coords) const;  // element of ring as a tensor expression

  // internal presentation data
  NormalizedGroup tensor_presentation;
  IntMatrix quotient_from_tensor;  // ring coords from tensor normal coords
  IntMatrix tensor_from_quotient;  // a lift of ring coords into tensor normal coords
};

struct Budget;
NormTensor norm_tensor(const InvRing& a, const Budget& budget);

struct MuReport {
  bool iso = false;
  FinAbGroup kernel;
  std::string witness;  // empty when iso
  bool kernel_two_primary = true;
};
MuReport mu_is_iso(const InvRing& a, const Budget& budget);
MuReport mu_report(const NormTensor& t);

}  // namespace tcrcalc
