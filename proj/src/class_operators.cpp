#include "repgeo/class_operators.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <set>

namespace repgeo {

namespace {

ModMatrix block_diagonal(std::uint32_t p, const std::vector<ModMatrix>& blocks) {
    std::size_t n = 0;
    for (const auto& b : blocks) n += b.rows();
    ModMatrix m(n, n, p);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c) m(off + r, off + c) = b(r, c);
        off += b.rows();
    }
    return m;
}

std::vector<std::size_t> action_offsets(std::span<const FiniteRepresentation> factors) {
    std::vector<std::size_t> off{0};
    for (const auto& f : factors) off.push_back(off.back() + f.action_dim());
    return off;
}

std::uint64_t checked_product(const std::vector<std::uint64_t>& sizes, std::uint64_t budget) {
    std::uint64_t total = 1;
    for (auto s : sizes) {
        if (s != 0 && total > budget / s) return budget + 1;
        total *= s;
    }
    return total;
}

// Decodes `index` into per-factor digits, first factor most significant.
std::vector<std::uint64_t> mixed_radix(std::uint64_t index, const std::vector<std::uint64_t>& sizes) {
    std::vector<std::uint64_t> digits(sizes.size());
    for (std::size_t i = sizes.size(); i-- > 0;) {
        digits[i] = index % sizes[i];
        index /= sizes[i];
    }
    return digits;
}

template <class Tuple, class Agree>
std::size_t find_or_add_class(std::vector<Tuple>& classes, const Tuple& t, const FilterSpec& filter, Agree agree) {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (filter.contains(agree(classes[c], t))) return c;
    classes.push_back(t);
    return classes.size() - 1;
}

template <class Tuple, class Agree>
std::size_t find_class(const std::vector<Tuple>& classes, const Tuple& t, const FilterSpec& filter, Agree agree) {
    for (std::size_t c = 0; c < classes.size(); ++c)
        if (filter.contains(agree(classes[c], t))) return c;
    throw RepresentationError("internal", "filtered product: tuple outside every class");
}

}  // namespace

FiniteRepresentation cartesian_product(std::uint32_t p, std::span<const FiniteRepresentation> factors,
                                       std::size_t bound) {
    std::size_t group_dim = 0, action_dim = 0;
    for (const auto& f : factors) {
        if (f.p() != p)
            throw AlgebraError("field_mismatch", "factor over F" + std::to_string(f.p()) + " in a product over F" +
                                                     std::to_string(p));
        group_dim += f.group_dim();
        action_dim += f.action_dim();
    }
    std::vector<GeneratorPair> gens;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        for (const auto& gen : factors[i].generators()) {
            std::vector<ModMatrix> gblocks, ablocks;
            for (std::size_t j = 0; j < factors.size(); ++j) {
                gblocks.push_back(i == j ? gen.group : ModMatrix::identity(factors[j].group_dim(), p));
                ablocks.push_back(i == j ? gen.action : ModMatrix::identity(factors[j].action_dim(), p));
            }
            gens.push_back({block_diagonal(p, gblocks), block_diagonal(p, ablocks)});
        }
    }
    return FiniteRepresentation::generate(p, group_dim, action_dim, std::move(gens), bound);
}

FilterSpec::FilterSpec(std::size_t n, std::vector<std::uint32_t> members) : n_(n), members_(std::move(members)) {
    if (n == 0 || n > kMaxIndices)
        throw AlgebraError("invalid_filter", "index count must be in 1.." + std::to_string(kMaxIndices));
    const std::uint32_t full = (n == 32 ? ~0u : (1u << n) - 1);
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty()) throw AlgebraError("invalid_filter", "filter is empty");
    for (auto s : members_) {
        if (s & ~full) throw AlgebraError("invalid_filter", "member set uses an index beyond " + std::to_string(n));
        if (s == 0) throw AlgebraError("invalid_filter", "filter contains the empty set");
    }
    for (auto a : members_) {
        for (auto b : members_)
            if (!contains(a & b)) throw AlgebraError("invalid_filter", "filter is not closed under intersection");
        for (std::uint32_t bit = 0; bit < n; ++bit)
            if (!contains(a | (1u << bit))) throw AlgebraError("invalid_filter", "filter is not upward closed");
    }
}

FilterSpec FilterSpec::principal(std::size_t n, std::uint32_t core) {
    if (n == 0 || n > kMaxIndices)
        throw AlgebraError("invalid_filter", "index count must be in 1.." + std::to_string(kMaxIndices));
    std::vector<std::uint32_t> members;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        if ((s & core) == core) members.push_back(s);
    return FilterSpec(n, std::move(members));
}

FilterSpec FilterSpec::generated_by(std::size_t n, std::span<const std::uint32_t> sets) {
    if (n == 0 || n > kMaxIndices)
        throw AlgebraError("invalid_filter", "index count must be in 1.." + std::to_string(kMaxIndices));
    std::uint32_t core = (1u << n) - 1;
    for (auto s : sets) core &= s;
    if (core == 0) throw AlgebraError("invalid_filter", "generating sets have empty intersection");
    return principal(n, core);
}

bool FilterSpec::contains(std::uint32_t set) const {
    return std::binary_search(members_.begin(), members_.end(), set);
}

std::uint32_t FilterSpec::core() const {
    std::uint32_t c = members_.back();
    for (auto s : members_) c &= s;
    return c;
}

LiteralFilteredProduct literal_filtered_product(std::span<const FiniteRepresentation> factors, const FilterSpec& filter,
                                                std::uint64_t budget) {
    if (factors.size() != filter.index_count())
        throw AlgebraError("invalid_filter", "filter is over " + std::to_string(filter.index_count()) +
                                                 " indices but there are " + std::to_string(factors.size()) + " factors");
    const auto off = action_offsets(factors);
    std::vector<std::uint64_t> vsizes, gsizes;
    for (const auto& f : factors) {
        vsizes.push_back(f.vector_count());
        gsizes.push_back(f.order());
    }
    const std::uint64_t vtotal = checked_product(vsizes, budget);
    const std::uint64_t gtotal = checked_product(gsizes, budget);
    if (vtotal > budget || gtotal > budget)
        throw BudgetError("literal filtered product needs more than " + std::to_string(budget) + " tuples");

    auto vector_agree = [&](const ModVector& a, const ModVector& b) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (std::equal(a.begin() + off[i], a.begin() + off[i + 1], b.begin() + off[i])) mask |= 1u << i;
        return mask;
    };
    auto group_agree = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
        std::uint32_t mask = 0;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (a[i] == b[i]) mask |= 1u << i;
        return mask;
    };

    LiteralFilteredProduct out;
    for (std::uint64_t t = 0; t < vtotal; ++t) {
        auto digits = mixed_radix(t, vsizes);
        ModVector v;
        for (std::size_t i = 0; i < factors.size(); ++i) {
            auto block = factors[i].vector_at(digits[i]);
            v.insert(v.end(), block.begin(), block.end());
        }
        find_or_add_class(out.vector_classes, v, filter, vector_agree);
    }
    for (std::uint64_t t = 0; t < gtotal; ++t) {
        auto digits = mixed_radix(t, gsizes);
        std::vector<std::size_t> g(digits.begin(), digits.end());
        find_or_add_class(out.group_classes, g, filter, group_agree);
    }

    const std::size_t ng = out.group_classes.size();
    out.action_table.resize(out.vector_classes.size() * ng);
    for (std::size_t v = 0; v < out.vector_classes.size(); ++v) {
        const auto& tuple = out.vector_classes[v];
        for (std::size_t g = 0; g < ng; ++g) {
            ModVector image;
            for (std::size_t i = 0; i < factors.size(); ++i) {
                std::span<const std::uint32_t> block(tuple.data() + off[i], off[i + 1] - off[i]);
                auto b = multiply(block, factors[i].action_matrix(out.group_classes[g][i]));
                image.insert(image.end(), b.begin(), b.end());
            }
            out.action_table[v * ng + g] = find_class(out.vector_classes, image, filter, vector_agree);
        }
    }
    out.group_table.resize(ng * ng);
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t h = 0; h < ng; ++h) {
            std::vector<std::size_t> prod(factors.size());
            for (std::size_t i = 0; i < factors.size(); ++i)
                prod[i] = factors[i].multiply(out.group_classes[g][i], out.group_classes[h][i]);
            out.group_table[g * ng + h] = find_class(out.group_classes, prod, filter, group_agree);
        }
    return out;
}

bool literal_matches_core(const LiteralFilteredProduct& literal, const FiniteRepresentation& core_rep,
                          std::span<const FiniteRepresentation> factors, std::span<const std::size_t> core) {
    if (literal.vector_classes.size() != core_rep.vector_count() || literal.group_classes.size() != core_rep.order())
        return false;
    const auto off = action_offsets(factors);
    const std::uint32_t p = core_rep.p();

    auto project_vector = [&](const ModVector& tuple) {
        std::uint64_t index = 0;
        for (auto i : core)
            for (std::size_t c = off[i]; c < off[i + 1]; ++c) index = index * p + tuple[c];
        return index;
    };
    auto project_group = [&](const std::vector<std::size_t>& tuple) -> std::optional<std::size_t> {
        std::vector<ModMatrix> blocks;
        for (auto i : core) blocks.push_back(factors[i].group_matrix(tuple[i]));
        return core_rep.find(block_diagonal(p, blocks));
    };

    std::vector<std::uint64_t> vproj;
    for (const auto& t : literal.vector_classes) vproj.push_back(project_vector(t));
    std::vector<std::size_t> gproj;
    for (const auto& t : literal.group_classes) {
        auto g = project_group(t);
        if (!g) return false;
        gproj.push_back(*g);
    }
    if (std::set<std::uint64_t>(vproj.begin(), vproj.end()).size() != vproj.size()) return false;
    if (std::set<std::size_t>(gproj.begin(), gproj.end()).size() != gproj.size()) return false;

    const std::size_t ng = literal.group_classes.size();
    for (std::size_t v = 0; v < vproj.size(); ++v)
        for (std::size_t g = 0; g < ng; ++g) {
            auto image = multiply(core_rep.vector_at(vproj[v]), core_rep.action_matrix(gproj[g]));
            if (core_rep.vector_at(vproj[literal.action_table[v * ng + g]]) != image) return false;
        }
    for (std::size_t g = 0; g < ng; ++g)
        for (std::size_t h = 0; h < ng; ++h)
            if (gproj[literal.group_table[g * ng + h]] != core_rep.multiply(gproj[g], gproj[h])) return false;
    return true;
}

FilteredProduct filtered_product(std::uint32_t p, std::span<const FiniteRepresentation> factors,
                                 const FilterSpec& filter, std::uint64_t literal_budget) {
    if (factors.size() != filter.index_count())
        throw AlgebraError("invalid_filter", "filter is over " + std::to_string(filter.index_count()) +
                                                 " indices but there are " + std::to_string(factors.size()) + " factors");
    std::vector<std::size_t> core;
    std::vector<FiniteRepresentation> kept;
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (filter.core() >> i & 1u) {
            core.push_back(i);
            kept.push_back(factors[i]);
        }
    if (!filter.contains(filter.core()))
        throw AlgebraError("invalid_filter", "filter is not principal");

    FilteredProduct out{cartesian_product(p, kept), core, false};

    std::vector<std::uint64_t> vsizes, gsizes;
    for (const auto& f : factors) {
        vsizes.push_back(f.vector_count());
        gsizes.push_back(f.order());
    }
    if (checked_product(vsizes, literal_budget) <= literal_budget &&
        checked_product(gsizes, literal_budget) <= literal_budget) {
        auto literal = literal_filtered_product(factors, filter, literal_budget);
        if (!literal_matches_core(literal, out.rep, factors, core))
            throw RepresentationError("internal", "literal filtered product disagrees with the core product");
        out.verified_literally = true;
    }
    return out;
}

std::vector<std::size_t> subgroup_closure(const FiniteRepresentation& rep, std::span<const std::size_t> gens) {
    std::vector<bool> seen(rep.order(), false);
    std::deque<std::size_t> queue{FiniteRepresentation::identity()};
    seen[FiniteRepresentation::identity()] = true;
    while (!queue.empty()) {
        auto e = queue.front();
        queue.pop_front();
        for (auto g : gens) {
            if (g >= rep.order()) throw RepresentationError("shape", "element index " + std::to_string(g) + " out of range");
            auto h = rep.multiply(e, g);
            if (!seen[h]) {
                seen[h] = true;
                queue.push_back(h);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < rep.order(); ++g)
        if (seen[g]) out.push_back(g);
    return out;
}

Subrepresentation generated_subrepresentation(const FiniteRepresentation& rep, const std::vector<ModVector>& module_gens,
                                              const std::vector<std::size_t>& group_gens) {
    for (const auto& v : module_gens)
        if (v.size() != rep.action_dim())
            throw RepresentationError("shape", "module generator has dimension " + std::to_string(v.size()) + ", expected " +
                                                   std::to_string(rep.action_dim()));
    Subrepresentation sub;
    sub.group_elements = subgroup_closure(rep, group_gens);
    sub.group_generators = group_gens;

    ModMatrix basis = span_basis(rep.p(), rep.action_dim(), module_gens);
    while (true) {
        std::vector<ModVector> vecs;
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            vecs.push_back(basis.row_vector(i));
            for (auto g : group_gens) vecs.push_back(multiply(basis.row(i), rep.action_matrix(g)));
        }
        ModMatrix next = span_basis(rep.p(), rep.action_dim(), vecs);
        if (next.rows() == basis.rows()) break;
        basis = std::move(next);
    }
    sub.module_basis = std::move(basis);
    return sub;
}

FiniteRepresentation Subrepresentation::as_representation(const FiniteRepresentation& ambient) const {
    Echelon e = row_reduce(module_basis);
    const std::size_t d = module_basis.rows();
    std::vector<GeneratorPair> gens;
    for (auto g : group_generators) {
        ModMatrix a(d, d, ambient.p());
        for (std::size_t i = 0; i < d; ++i) {
            auto c = coordinates_in(e, multiply(e.form.row(i), ambient.action_matrix(g)));
            for (std::size_t j = 0; j < d; ++j) a(i, j) = c[j];
        }
        gens.push_back({ambient.group_matrix(g), std::move(a)});
    }
    return FiniteRepresentation::generate(ambient.p(), ambient.group_dim(), d, std::move(gens),
                                          std::max(ambient.order(), FiniteRepresentation::kDefaultGroupBound));
}

FiniteRepresentation qr_quotient(const FiniteRepresentation& rep, std::span<const std::size_t> normal_subgroup) {
    if (!is_normal_subgroup(rep, normal_subgroup))
        throw RepresentationError("not_normal", "subgroup is not normal");
    for (auto n : normal_subgroup)
        if (!rep.action_matrix(n).is_identity())
            throw RepresentationError("not_in_kernel", "element " + std::to_string(n) + " acts nontrivially");

    std::vector<std::size_t> coset(rep.order(), rep.order());
    std::size_t count = 0;
    for (std::size_t g = 0; g < rep.order(); ++g) {
        if (coset[g] != rep.order()) continue;
        for (auto n : normal_subgroup) coset[rep.multiply(n, g)] = count;
        ++count;
    }
    std::vector<std::size_t> representative(count);
    for (std::size_t g = rep.order(); g-- > 0;) representative[coset[g]] = g;

    std::vector<GeneratorPair> gens;
    for (std::size_t i = 0; i < rep.generators().size(); ++i) {
        ModMatrix perm(count, count, rep.p());
        for (std::size_t c = 0; c < count; ++c)
            perm(c, coset[rep.multiply(representative[c], rep.generator_element(i))]) = 1;
        gens.push_back({std::move(perm), rep.generators()[i].action});
    }
    return FiniteRepresentation::generate(rep.p(), count, rep.action_dim(), std::move(gens),
                                          std::max(count, FiniteRepresentation::kDefaultGroupBound));
}

FiniteRepresentation q0_inflation(const FiniteRepresentation& d, std::size_t group_dim,
                                  const std::vector<CoverGenerator>& cover, std::size_t bound) {
    std::vector<GeneratorPair> to_d, inflated;
    for (const auto& c : cover) {
        if (c.image >= d.order())
            throw RepresentationError("shape", "image index " + std::to_string(c.image) + " out of range");
        to_d.push_back({c.group, d.group_matrix(c.image)});
        inflated.push_back({c.group, d.action_matrix(c.image)});
    }
    try {
        auto graph = FiniteRepresentation::generate(d.p(), group_dim, d.group_dim(), to_d, bound);
        std::set<std::size_t> hit;
        for (std::size_t g = 0; g < graph.order(); ++g) hit.insert(*d.find(graph.action_matrix(g)));
        if (hit.size() != d.order())
            throw RepresentationError("not_surjective", "generator map reaches " + std::to_string(hit.size()) + " of " +
                                                            std::to_string(d.order()) + " elements");
    } catch (const RepresentationError& e) {
        if (e.code() == "ill_defined_action")
            throw RepresentationError("not_homomorphism", "generator map does not extend to a homomorphism");
        throw;
    }
    return FiniteRepresentation::generate(d.p(), group_dim, d.action_dim(), std::move(inflated), bound);
}

}  // namespace repgeo
