#ifndef FOLGEO_AUTGALOIS_HPP
#define FOLGEO_AUTGALOIS_HPP

#include <optional>

#include "folgeo/geometry.hpp"

namespace folgeo {

/// Automorphisms of the algebra that map every interpreted relation onto
/// itself tuple-wise.
Group aut_model(const Model& m);

/// The action of an automorphism on a point set:
/// {mu : delta.mu in A}. A Boolean automorphism commuting with quantifiers
/// and substitutions.
PointSet act_on_pointset(const FiniteAlgebra& alg, const AlgebraMap& delta,
                         const PointSet& a);

/// A permutation of the points of a space.
struct PointSubstitution {
  PointSpace space;
  std::vector<std::uint64_t> map;  // image of each point index
};

/// Correctness: mu(x) = nu(x) iff (tau mu)(x) = (tau nu)(x), for all point
/// pairs and all context variables.
bool is_correct_substitution(const PointSubstitution& tau);

/// Orbits of the group acting on the point space by mu -> delta.mu.
/// Orbits sorted by least member; members ascending.
std::vector<std::vector<std::uint64_t>> point_orbits(const Group& h,
                                                     const PointSpace& space);

/// All unions of orbits: the invariant sets H' at this context, in
/// canonical (bit-vector) order. Throws when 2^orbits exceeds max_sets.
std::vector<PointSet> invariant_sets(const Group& h, const PointSpace& space,
                                     std::size_t max_sets = 1u << 16);

/// The subgroup of the ambient group fixing every set in the family.
Group stabilizer_of_family(const Group& ambient, const std::vector<PointSet>& sets);

/// H'': the stabilizer of all H-invariant sets over contexts of size up to
/// context_bound (plus the context with one variable per carrier element
/// when the total carrier is at most 4).
Group double_closure_subgroup(const Group& h, int context_bound = 2);

/// First isomorphism delta: a1 -> a2 with h2 = delta h1 delta^{-1}, in
/// deterministic order; absent when none exists.
std::optional<AlgebraMap> conjugating_iso(const FiniteAlgebra& a1,
                                          const FiniteAlgebra& a2,
                                          const Group& h1, const Group& h2);

}  // namespace folgeo

#endif
