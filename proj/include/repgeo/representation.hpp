#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "repgeo/errors.hpp"
#include "repgeo/free_module.hpp"
#include "repgeo/linalg.hpp"

namespace repgeo {

/// Construction errors: group_too_large, ill_defined_action, singular_matrix, shape, not_normal, ...
class RepresentationError : public Error {
public:
    using Error::Error;
};

/// A generator of (V,G): its group matrix realizes G faithfully, its action
/// matrix is rho(g) on V = F_p^d. Non-faithful actions are allowed.
struct GeneratorPair {
    ModMatrix group;
    ModMatrix action;
};

/// Finite representation (V,G) over F_p.
///
/// G is the closure of the generator pairs under multiplication. Elements
/// are numbered in breadth-first order from the identity (index 0), trying
/// generators in the order given, so identical inputs give identical
/// numbering. Immutable once generated.
class FiniteRepresentation {
public:
    static constexpr std::size_t kDefaultGroupBound = 5000;

    static FiniteRepresentation generate(std::uint32_t p, std::size_t group_dim, std::size_t action_dim,
                                         std::vector<GeneratorPair> generators,
                                         std::size_t bound = kDefaultGroupBound);

    std::uint32_t p() const { return p_; }
    Field field() const { return Field::prime(p_); }
    std::size_t group_dim() const { return group_dim_; }
    std::size_t action_dim() const { return action_dim_; }
    std::size_t order() const { return group_.size(); }
    static constexpr std::size_t identity() { return 0; }

    const ModMatrix& group_matrix(std::size_t g) const { return group_[g]; }
    const ModMatrix& action_matrix(std::size_t g) const { return action_[g]; }
    const std::vector<GeneratorPair>& generators() const { return generators_; }
    /// Element index of the i-th generator.
    std::size_t generator_element(std::size_t i) const { return generator_elements_[i]; }

    std::size_t multiply(std::size_t a, std::size_t b) const;
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }
    std::optional<std::size_t> find(const ModMatrix& group_matrix) const;

    /// |V| = p^d; throws BudgetError if it does not fit in 64 bits.
    std::uint64_t vector_count() const;
    /// The i-th vector of V in counter order (first coordinate most significant).
    ModVector vector_at(std::uint64_t index) const;

    bool operator==(const FiniteRepresentation& o) const;

private:
    std::uint32_t p_ = 2;
    std::size_t group_dim_ = 0;
    std::size_t action_dim_ = 0;
    std::vector<GeneratorPair> generators_;
    std::vector<std::size_t> generator_elements_;
    std::vector<ModMatrix> group_;
    std::vector<ModMatrix> action_;
    std::unordered_map<ModMatrix, std::size_t, ModMatrixHash> index_;
    std::vector<std::size_t> table_;  // Cayley table, when small enough
    std::vector<std::size_t> inverse_;
};

/// beta: generator index i (1-based) -> beta[i-1], an element index.
std::size_t eval_word(const FiniteRepresentation& rep, std::span<const std::size_t> beta, const Word& f);

/// rho(u^beta) = sum_w c_w rho(beta(w)). Coefficients are mapped into F_p.
ModMatrix eval_ring(const FiniteRepresentation& rep, std::span<const std::size_t> beta, const GroupRingElement& u);

/// w^alpha = sum_k alpha(x_k) rho(u_k^beta) for w = sum_k x_k o u_k.
ModVector eval_point(const FiniteRepresentation& rep, std::span<const ModVector> alpha,
                     std::span<const std::size_t> beta, const FreeModuleElement& w);

/// Elements acting as the identity on V; verified to form a normal subgroup.
std::vector<std::size_t> action_kernel(const FiniteRepresentation& rep);

bool is_subgroup(const FiniteRepresentation& rep, std::span<const std::size_t> elements);
bool is_normal_subgroup(const FiniteRepresentation& rep, std::span<const std::size_t> elements);

/// (V, G/ker): the group is realized by the distinct action matrices.
FiniteRepresentation faithful_image(const FiniteRepresentation& rep);

/// (KG, G): basis e_h indexed by element h, e_h o g = e_{hg}.
FiniteRepresentation regular_representation(const FiniteRepresentation& rep);

/// Group algebra KG of a represented group, elements as coordinate vectors indexed by group element.
class GroupAlgebra {
public:
    explicit GroupAlgebra(const FiniteRepresentation& rep);

    const FiniteRepresentation& group() const { return *rep_; }
    std::uint32_t p() const { return rep_->p(); }
    std::size_t dimension() const { return rep_->order(); }

    ModVector unit() const { return basis_element(FiniteRepresentation::identity()); }
    ModVector basis_element(std::size_t g) const;
    ModVector multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const;
    /// Matrix of r -> r*g (right) or r -> g*r (left), acting on row vectors.
    ModMatrix right_multiplication(std::size_t g) const;
    ModMatrix left_multiplication(std::size_t g) const;

private:
    const FiniteRepresentation* rep_;
};

/// Subspace U of KG given by an RREF basis.
struct RightIdealBasis {
    ModMatrix basis;  // rows, RREF
    std::size_t rank() const { return basis.rows(); }
    bool contains(std::span<const std::uint32_t> r) const;
};

/// Smallest right ideal containing the given elements.
RightIdealBasis right_ideal_generated(const GroupAlgebra& alg, const std::vector<ModVector>& generators);
/// Wraps a spanning set as a right ideal; throws RepresentationError("not_right_ideal") otherwise.
RightIdealBasis make_right_ideal(const GroupAlgebra& alg, const std::vector<ModVector>& spanning);
bool is_right_ideal(const GroupAlgebra& alg, const ModMatrix& basis);
bool is_two_sided(const GroupAlgebra& alg, const RightIdealBasis& u);

/// (KG/U, G) with basis the non-pivot coordinates of U's RREF; dim = |G| - rank(U).
/// Elements are numbered exactly as in alg.group().
FiniteRepresentation quotient_module_representation(const GroupAlgebra& alg, const RightIdealBasis& u);

/// ann_{KG} S = {r in KG | s rho(r) = 0 for all s in S}, S a set of vectors of V.
RightIdealBasis annihilator(const FiniteRepresentation& rep, const std::vector<ModVector>& subset);

/// stab_{KG} S = 1 + ann_{KG} S, together with its trace on G.
struct Stabilizer {
    RightIdealBasis annihilator;
    std::vector<std::size_t> group_elements;  // g with g - 1 in ann
    bool contains(const GroupAlgebra& alg, std::span<const std::uint32_t> r) const;
};
Stabilizer stabilizer(const FiniteRepresentation& rep, const std::vector<ModVector>& subset);

/// {g in G | g - 1 in U} for a two-sided ideal U.
std::vector<std::size_t> kernel_via_ideal(const GroupAlgebra& alg, const RightIdealBasis& u);

}  // namespace repgeo
