#ifndef FOLGEO_KNOWLEDGE_HPP
#define FOLGEO_KNOWLEDGE_HPP

#include <map>
#include <optional>

#include "folgeo/galois.hpp"

namespace folgeo {

/// A piece of knowledge: a place (context), a description (theory), and
/// its content (the theory's value in one model).
struct KnowledgeObject {
  VarContext context;
  Theory description;
  PointSet content;
};

/// One algebra with several named relation interpretations; instances are
/// independent.
struct Multimodel {
  FiniteAlgebra algebra;
  std::vector<std::pair<std::string, std::vector<std::set<std::vector<int>>>>> instances;

  std::optional<std::size_t> instance_index(std::string_view name) const;
};

std::vector<std::string> validate_multimodel(const Multimodel& mm);
Model instance_model(const Multimodel& mm, std::size_t i);

/// A knowledge base is a multimodel with query answering: a description
/// (X, T) is a query, T^f its reply.
struct KnowledgeBase {
  Multimodel mm;
};

/// The content functor at one instance: (X, T) -> (X, T^f).
KnowledgeObject ct(const Model& m, const Theory& t);

/// Admissibility of s: W(Y) -> W(X) for A over X and B over Y: every point
/// of A pulls back into B. Computed pointwise and via the pushforward
/// inclusion; the two must agree.
bool admissible_sets(const FiniteAlgebra& alg, const Substitution& s,
                     const PointSet& a, const PointSet& b);

/// Admissibility on descriptions: s_* of every formula of T2 lies in the
/// theory of T1's value.
bool admissible_theories(const Model& m, const Substitution& s, const Theory& t1,
                         const Theory& t2);

/// Automorphic equivalence of models: an isomorphism of the algebras
/// conjugating Aut(f1) onto Aut(f2).
std::optional<AlgebraMap> models_automorphic_equivalent(const Model& m1,
                                                        const Model& m2);

struct EquivalenceWitness {
  std::vector<std::pair<std::string, std::string>> alpha;  // instance matching
  std::map<std::string, AlgebraMap> delta;                 // per first-KB instance
};

/// Decision procedure for informational equivalence of finite knowledge
/// bases: a perfect matching of instances under automorphic equivalence.
std::optional<EquivalenceWitness> kb_equivalent(const KnowledgeBase& kb1,
                                                const KnowledgeBase& kb2);

struct GammaCheckReport {
  bool pass = true;
  std::string detail;
};

/// Verifies that the point bijection induced by delta carries R_{m1}(X)
/// onto R_{m2}(X) for contexts up to the bound, commuting with union,
/// complement and quantifiers on sampled pairs.
GammaCheckReport induced_gamma_check(const AlgebraMap& delta, const Model& m1,
                                     const Model& m2, int context_bound = 2,
                                     int sample_count = 50);

}  // namespace folgeo

#endif
