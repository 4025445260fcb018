#pragma once

#include "tcrcalc/abelian.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace tcrcalc {

using Elem = std::uint32_t;

// Invariant-factor coordinates for a finite abelian group given by its addition table.
class AdditiveChart {
 public:
  AdditiveChart() = default;
  static AdditiveChart build(std::size_t size, Elem zero, const std::function<Elem(Elem, Elem)>& add);

  const FinAbGroup& group() const { return group_; }
  std::size_t size() const { return elem_of_index_.size(); }
  IntVector coords(Elem e) const;
  Elem element(const IntVector& coords) const;
  Elem basis_element(std::size_t i) const;

  // The homomorphism agreeing with f everywhere, or nullopt when f is not additive.
  std::optional<GroupHom> hom(const AdditiveChart& target, const std::function<Elem(Elem)>& f) const;
  GroupHom hom_or_throw(const AdditiveChart& target, const std::function<Elem(Elem)>& f) const;

 private:
  std::size_t index_of(const std::int64_t* c) const;

  FinAbGroup group_;
  std::vector<std::int64_t> radix_;
  std::vector<std::int64_t> coords_;  // size() x rank, row per element
  std::vector<Elem> elem_of_index_;
};

}  // namespace tcrcalc
