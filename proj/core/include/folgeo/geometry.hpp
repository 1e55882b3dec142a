#ifndef FOLGEO_GEOMETRY_HPP
#define FOLGEO_GEOMETRY_HPP

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "folgeo/bitset.hpp"
#include "folgeo/formula.hpp"

namespace folgeo {

/// A model: an algebra together with an interpretation of every relation
/// symbol as a set of tuples.
struct Model {
  FiniteAlgebra algebra;
  std::vector<std::set<std::vector<int>>> interp;  // per relation index
};

std::vector<std::string> validate_model(const Model& m);

inline constexpr std::uint64_t kDefaultPointCap = 1ull << 20;

/// The finite affine space of assignments over a context: one coordinate
/// per context variable, mixed-radix indexed with the first (name-least)
/// variable most significant.
class PointSpace {
 public:
  PointSpace() = default;
  PointSpace(const FiniteAlgebra& alg, VarContext ctx,
             std::uint64_t cap = kDefaultPointCap);

  std::uint64_t size() const { return size_; }
  const VarContext& context() const { return ctx_; }
  int radix(std::size_t i) const { return radix_[i]; }

  std::uint64_t index_of(std::span<const int> point) const;
  std::vector<int> point_at(std::uint64_t index) const;

  bool operator==(const PointSpace& o) const {
    return ctx_ == o.ctx_ && radix_ == o.radix_;
  }

 private:
  VarContext ctx_;
  std::vector<int> radix_;
  std::uint64_t size_ = 1;
};

/// A subset of a point space as a bit vector over the canonical index.
struct PointSet {
  PointSpace space;
  Bitset bits;

  static PointSet empty(PointSpace sp) {
    Bitset b(sp.size());
    return PointSet{std::move(sp), std::move(b)};
  }
  static PointSet full(PointSpace sp) {
    Bitset b(sp.size());
    b.flip();
    return PointSet{std::move(sp), std::move(b)};
  }

  bool operator==(const PointSet& o) const {
    return space == o.space && bits == o.bits;
  }
};

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersect(const PointSet& a, const PointSet& b);
PointSet set_complement(const PointSet& a);

/// Val_f: the value of a formula as a subset of the space of its context.
PointSet eval_formula(const Model& m, const TypedFormula& u);

/// Cylinder of A along the axis of variable x.
PointSet exists_quant(const PointSet& a, std::string_view var);

/// s_*: {nu over target : nu.s in A} for A over the source context.
PointSet subst_pushforward(const FiniteAlgebra& alg, const Substitution& s,
                           const PointSet& a);

/// s^*: {nu.s : nu in B} for B over the target context.
PointSet subst_image(const FiniteAlgebra& alg, const Substitution& s,
                     const PointSet& b);

/// Membership of u in the logical kernel of the point: point satisfies u.
bool in_log_kernel(const Model& m, std::span<const int> point, const TypedFormula& u);

/// Variables whose quantifier genuinely changes the formula's value.
std::set<std::string> semantic_support(const Model& m, const TypedFormula& u);

}  // namespace folgeo

#endif
