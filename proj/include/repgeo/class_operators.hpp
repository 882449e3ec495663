#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "repgeo/representation.hpp"

namespace repgeo {

/// Direct sum of the modules with the direct product of the groups acting
/// componentwise. Realized by block-diagonal matrices; an empty list gives the
/// zero module with the trivial group.
FiniteRepresentation cartesian_product(std::uint32_t p, std::span<const FiniteRepresentation> factors,
                                       std::size_t bound = FiniteRepresentation::kDefaultGroupBound);

/// A proper filter over {0..n-1}; member sets are bitmasks.
class FilterSpec {
public:
    static constexpr std::size_t kMaxIndices = 20;

    /// Validates: nonempty, upward closed, closed under intersection, no empty set.
    FilterSpec(std::size_t n, std::vector<std::uint32_t> members);

    /// All supersets of `core`.
    static FilterSpec principal(std::size_t n, std::uint32_t core);
    /// Smallest filter containing the given sets.
    static FilterSpec generated_by(std::size_t n, std::span<const std::uint32_t> sets);

    std::size_t index_count() const { return n_; }
    const std::vector<std::uint32_t>& members() const { return members_; }
    bool contains(std::uint32_t set) const;
    /// Intersection of all members. Over a finite index set this is the least member.
    std::uint32_t core() const;

private:
    std::size_t n_;
    std::vector<std::uint32_t> members_;  // sorted
};

/// The quotient of the full product by tuple agreement on a filter set,
/// computed from the definition: two tuples are identified when the indices
/// where they agree form a member of the filter.
struct LiteralFilteredProduct {
    std::vector<ModVector> vector_classes;               // representative tuple, coordinates concatenated
    std::vector<std::vector<std::size_t>> group_classes;  // representative tuple of element indices
    std::vector<std::size_t> action_table;                // [v * |group classes| + g] -> class of v o g
    std::vector<std::size_t> group_table;                 // [g * |group classes| + h] -> class of g h
};

LiteralFilteredProduct literal_filtered_product(std::span<const FiniteRepresentation> factors, const FilterSpec& filter,
                                                std::uint64_t budget);

struct FilteredProduct {
    FiniteRepresentation rep;         // product over the core
    std::vector<std::size_t> core;    // kept factor indices; the collapse map projects onto them
    bool verified_literally = false;  // the literal construction was within budget and agreed
};

/// Product over the core of the filter. When the literal construction fits in
/// `literal_budget` tuples it is built too and compared class by class.
FilteredProduct filtered_product(std::uint32_t p, std::span<const FiniteRepresentation> factors,
                                 const FilterSpec& filter, std::uint64_t literal_budget = 200'000);

/// True when the literal quotient and the core product have the same sizes and
/// the projection onto the core intertwines their action and multiplication tables.
bool literal_matches_core(const LiteralFilteredProduct& literal, const FiniteRepresentation& core_rep,
                          std::span<const FiniteRepresentation> factors, std::span<const std::size_t> core);

/// (V0, G0): G0 the subgroup generated by `group_gens`, V0 the smallest
/// G0-invariant subspace containing `module_gens`.
struct Subrepresentation {
    ModMatrix module_basis;                  // RREF rows spanning V0
    std::vector<std::size_t> group_elements;  // sorted element indices of G0
    std::vector<std::size_t> group_generators;

    /// V0 in the coordinates of module_basis, with G0 realized by its matrices in the ambient rep.
    FiniteRepresentation as_representation(const FiniteRepresentation& ambient) const;
};

Subrepresentation generated_subrepresentation(const FiniteRepresentation& rep, const std::vector<ModVector>& module_gens,
                                              const std::vector<std::size_t>& group_gens);

/// Subgroup generated by the given elements, sorted.
std::vector<std::size_t> subgroup_closure(const FiniteRepresentation& rep, std::span<const std::size_t> gens);

/// (V, G/N) for a normal N acting trivially. Cosets are numbered by first
/// appearance in element order and G/N acts on them by permutation matrices.
FiniteRepresentation qr_quotient(const FiniteRepresentation& rep, std::span<const std::size_t> normal_subgroup);

/// A generator of the covering group and the element of D it maps to.
struct CoverGenerator {
    ModMatrix group;
    std::size_t image;
};

/// (V, G) where G acts through the epimorphism G -> D given on generators.
/// Throws not_homomorphism or not_surjective.
FiniteRepresentation q0_inflation(const FiniteRepresentation& d, std::size_t group_dim,
                                  const std::vector<CoverGenerator>& cover,
                                  std::size_t bound = FiniteRepresentation::kDefaultGroupBound);

}  // namespace repgeo
