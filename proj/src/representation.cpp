#include "repgeo/representation.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace repgeo {

namespace {

constexpr std::size_t kCayleyTableLimit = 2048;

void check_square_invertible(const ModMatrix& m, std::size_t dim, std::uint32_t p, const char* what) {
    if (m.rows() != dim || m.cols() != dim)
        throw RepresentationError("shape", std::string(what) + " matrix must be " + std::to_string(dim) + "x" +
                                               std::to_string(dim));
    if (m.modulus() != p) throw RepresentationError("shape", std::string(what) + " matrix has the wrong modulus");
    try {
        (void)m.inverse();
    } catch (const AlgebraError&) {
        throw RepresentationError("singular_matrix", std::string(what) + " matrix is singular mod " + std::to_string(p));
    }
}

}  // namespace

FiniteRepresentation FiniteRepresentation::generate(std::uint32_t p, std::size_t group_dim, std::size_t action_dim,
                                                    std::vector<GeneratorPair> generators, std::size_t bound) {
    if (!is_prime(p)) throw RepresentationError("not_prime", "modulus " + std::to_string(p) + " is not prime");
    for (const auto& g : generators) {
        check_square_invertible(g.group, group_dim, p, "group");
        check_square_invertible(g.action, action_dim, p, "action");
    }

    FiniteRepresentation rep;
    rep.p_ = p;
    rep.group_dim_ = group_dim;
    rep.action_dim_ = action_dim;
    rep.generators_ = std::move(generators);

    rep.group_.push_back(ModMatrix::identity(group_dim, p));
    rep.action_.push_back(ModMatrix::identity(action_dim, p));
    rep.index_.emplace(rep.group_.front(), 0);

    for (std::size_t e = 0; e < rep.group_.size(); ++e) {
        for (const auto& gen : rep.generators_) {
            ModMatrix g = rep.group_[e] * gen.group;
            ModMatrix a = rep.action_[e] * gen.action;
            auto it = rep.index_.find(g);
            if (it != rep.index_.end()) {
                if (!(rep.action_[it->second] == a))
                    throw RepresentationError("ill_defined_action",
                                              "ill-defined action: group element " + g.to_string() +
                                                  " reached with two different action matrices");
                continue;
            }
            if (rep.group_.size() >= bound)
                throw RepresentationError("group_too_large",
                                          "group too large: more than " + std::to_string(bound) + " elements");
            rep.index_.emplace(g, rep.group_.size());
            rep.group_.push_back(std::move(g));
            rep.action_.push_back(std::move(a));
        }
    }

    for (const auto& gen : rep.generators_) rep.generator_elements_.push_back(rep.index_.at(gen.group));

    const std::size_t n = rep.group_.size();
    if (n <= kCayleyTableLimit) {
        rep.table_.resize(n * n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) rep.table_[a * n + b] = rep.index_.at(rep.group_[a] * rep.group_[b]);
    }
    rep.inverse_.resize(n);
    for (std::size_t a = 0; a < n; ++a) rep.inverse_[a] = rep.index_.at(rep.group_[a].inverse());
    return rep;
}

std::size_t FiniteRepresentation::multiply(std::size_t a, std::size_t b) const {
    if (!table_.empty()) return table_[a * group_.size() + b];
    return index_.at(group_[a] * group_[b]);
}

std::optional<std::size_t> FiniteRepresentation::find(const ModMatrix& group_matrix) const {
    auto it = index_.find(group_matrix);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::uint64_t FiniteRepresentation::vector_count() const {
    std::uint64_t n = 1;
    for (std::size_t i = 0; i < action_dim_; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / p_) throw BudgetError("module too large to enumerate");
        n *= p_;
    }
    return n;
}

ModVector FiniteRepresentation::vector_at(std::uint64_t index) const {
    ModVector v(action_dim_, 0);
    for (std::size_t j = action_dim_; j-- > 0;) {
        v[j] = static_cast<std::uint32_t>(index % p_);
        index /= p_;
    }
    return v;
}

bool FiniteRepresentation::operator==(const FiniteRepresentation& o) const {
    return p_ == o.p_ && group_dim_ == o.group_dim_ && action_dim_ == o.action_dim_ && group_ == o.group_ &&
           action_ == o.action_;
}

std::size_t eval_word(const FiniteRepresentation& rep, std::span<const std::size_t> beta, const Word& f) {
    std::size_t result = FiniteRepresentation::identity();
    for (int l : f.letters()) {
        std::size_t i = static_cast<std::size_t>(l < 0 ? -l : l);
        if (i > beta.size()) throw AlgebraError("unassigned", "group variable y" + std::to_string(i) + " is not assigned");
        std::size_t g = beta[i - 1];
        result = rep.multiply(result, l < 0 ? rep.inverse(g) : g);
    }
    return result;
}

ModMatrix eval_ring(const FiniteRepresentation& rep, std::span<const std::size_t> beta, const GroupRingElement& u) {
    const std::uint32_t p = rep.p();
    const std::size_t d = rep.action_dim();
    ModMatrix m(d, d, p);
    for (const auto& [w, c] : u.terms()) {
        std::uint32_t coef = c.residue_mod(p);
        const ModMatrix& a = rep.action_matrix(eval_word(rep, beta, w));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) m(i, j) = modp::add(m(i, j), modp::mul(coef, a(i, j), p), p);
    }
    return m;
}

ModVector eval_point(const FiniteRepresentation& rep, std::span<const ModVector> alpha,
                     std::span<const std::size_t> beta, const FreeModuleElement& w) {
    const std::uint32_t p = rep.p();
    ModVector out(rep.action_dim(), 0);
    for (const auto& [k, u] : w.components()) {
        if (static_cast<std::size_t>(k) > alpha.size())
            throw AlgebraError("unassigned", "module variable x" + std::to_string(k) + " is not assigned");
        const ModVector& a = alpha[static_cast<std::size_t>(k) - 1];
        if (a.size() != rep.action_dim()) throw AlgebraError("vector length does not match the module dimension");
        if (is_zero(a)) continue;
        for (const auto& [word, c] : u.terms()) {
            ModVector image = multiply(a, rep.action_matrix(eval_word(rep, beta, word)));
            axpy(out, c.residue_mod(p), image, p);
        }
    }
    return out;
}

bool is_subgroup(const FiniteRepresentation& rep, std::span<const std::size_t> elements) {
    std::vector<bool> in(rep.order(), false);
    for (auto g : elements) {
        if (g >= rep.order()) return false;
        in[g] = true;
    }
    if (!in[FiniteRepresentation::identity()]) return false;
    for (auto a : elements)
        for (auto b : elements)
            if (!in[rep.multiply(a, b)]) return false;
    return true;
}

bool is_normal_subgroup(const FiniteRepresentation& rep, std::span<const std::size_t> elements) {
    if (!is_subgroup(rep, elements)) return false;
    std::vector<bool> in(rep.order(), false);
    for (auto g : elements) in[g] = true;
    for (std::size_t g = 0; g < rep.order(); ++g)
        for (auto n : elements)
            if (!in[rep.multiply(rep.multiply(rep.inverse(g), n), g)]) return false;
    return true;
}

std::vector<std::size_t> action_kernel(const FiniteRepresentation& rep) {
    std::vector<std::size_t> kernel;
    for (std::size_t g = 0; g < rep.order(); ++g)
        if (rep.action_matrix(g).is_identity()) kernel.push_back(g);
    if (!is_normal_subgroup(rep, kernel))
        throw RepresentationError("internal", "action kernel is not a normal subgroup");
    return kernel;
}

FiniteRepresentation faithful_image(const FiniteRepresentation& rep) {
    std::vector<GeneratorPair> gens;
    for (const auto& g : rep.generators()) gens.push_back({g.action, g.action});
    return FiniteRepresentation::generate(rep.p(), rep.action_dim(), rep.action_dim(), std::move(gens));
}

FiniteRepresentation regular_representation(const FiniteRepresentation& rep) {
    GroupAlgebra alg(rep);
    std::vector<GeneratorPair> gens;
    for (std::size_t i = 0; i < rep.generators().size(); ++i)
        gens.push_back({rep.generators()[i].group, alg.right_multiplication(rep.generator_element(i))});
    auto reg = FiniteRepresentation::generate(rep.p(), rep.group_dim(), rep.order(), std::move(gens),
                                              std::max(rep.order(), FiniteRepresentation::kDefaultGroupBound));
    for (std::size_t g = 0; g < rep.order(); ++g)
        if (!(reg.group_matrix(g) == rep.group_matrix(g)))
            throw RepresentationError("internal", "regular representation renumbered the group");
    return reg;
}

GroupAlgebra::GroupAlgebra(const FiniteRepresentation& rep) : rep_(&rep) {}

ModVector GroupAlgebra::basis_element(std::size_t g) const {
    ModVector v(dimension(), 0);
    v[g] = 1;
    return v;
}

ModVector GroupAlgebra::multiply(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) const {
    const std::uint32_t pp = p();
    ModVector r(dimension(), 0);
    for (std::size_t g = 0; g < a.size(); ++g) {
        if (!a[g]) continue;
        for (std::size_t h = 0; h < b.size(); ++h) {
            if (!b[h]) continue;
            auto gh = rep_->multiply(g, h);
            r[gh] = modp::add(r[gh], modp::mul(a[g], b[h], pp), pp);
        }
    }
    return r;
}

ModMatrix GroupAlgebra::right_multiplication(std::size_t g) const {
    ModMatrix m(dimension(), dimension(), p());
    for (std::size_t h = 0; h < dimension(); ++h) m(h, rep_->multiply(h, g)) = 1;
    return m;
}

ModMatrix GroupAlgebra::left_multiplication(std::size_t g) const {
    ModMatrix m(dimension(), dimension(), p());
    for (std::size_t h = 0; h < dimension(); ++h) m(h, rep_->multiply(g, h)) = 1;
    return m;
}

bool RightIdealBasis::contains(std::span<const std::uint32_t> r) const {
    return span_contains(row_reduce(basis), r);
}

namespace {

// Span of `start` closed under v -> v * m for every m in `maps`.
ModMatrix invariant_closure(std::uint32_t p, std::size_t dim, std::vector<ModVector> start,
                            const std::vector<ModMatrix>& maps) {
    ModMatrix basis = span_basis(p, dim, start);
    while (true) {
        std::vector<ModVector> vecs;
        for (std::size_t i = 0; i < basis.rows(); ++i) {
            vecs.push_back(basis.row_vector(i));
            for (const auto& m : maps) vecs.push_back(multiply(basis.row(i), m));
        }
        ModMatrix next = span_basis(p, dim, vecs);
        if (next.rows() == basis.rows()) return next;
        basis = std::move(next);
    }
}

bool invariant_under(const ModMatrix& basis, const std::vector<ModMatrix>& maps) {
    Echelon e = row_reduce(basis);
    for (std::size_t i = 0; i < basis.rows(); ++i)
        for (const auto& m : maps)
            if (!span_contains(e, multiply(basis.row(i), m))) return false;
    return true;
}

std::vector<ModMatrix> generator_maps(const GroupAlgebra& alg, bool right) {
    std::vector<ModMatrix> maps;
    const auto& rep = alg.group();
    for (std::size_t i = 0; i < rep.generators().size(); ++i) {
        auto g = rep.generator_element(i);
        maps.push_back(right ? alg.right_multiplication(g) : alg.left_multiplication(g));
    }
    return maps;
}

}  // namespace

RightIdealBasis right_ideal_generated(const GroupAlgebra& alg, const std::vector<ModVector>& generators) {
    return {invariant_closure(alg.p(), alg.dimension(), generators, generator_maps(alg, true))};
}

bool is_right_ideal(const GroupAlgebra& alg, const ModMatrix& basis) {
    return invariant_under(basis, generator_maps(alg, true));
}

RightIdealBasis make_right_ideal(const GroupAlgebra& alg, const std::vector<ModVector>& spanning) {
    ModMatrix basis = span_basis(alg.p(), alg.dimension(), spanning);
    if (!is_right_ideal(alg, basis))
        throw RepresentationError("not_right_ideal", "span is not closed under right multiplication by G");
    return {basis};
}

bool is_two_sided(const GroupAlgebra& alg, const RightIdealBasis& u) {
    return is_right_ideal(alg, u.basis) && invariant_under(u.basis, generator_maps(alg, false));
}

FiniteRepresentation quotient_module_representation(const GroupAlgebra& alg, const RightIdealBasis& u) {
    if (!is_right_ideal(alg, u.basis))
        throw RepresentationError("not_right_ideal", "quotient needs a right ideal");
    const auto& rep = alg.group();
    Echelon e = row_reduce(u.basis);
    std::vector<bool> pivot(alg.dimension(), false);
    for (auto c : e.pivots) pivot[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < alg.dimension(); ++j)
        if (!pivot[j]) free.push_back(j);

    std::vector<GeneratorPair> gens;
    for (std::size_t i = 0; i < rep.generators().size(); ++i) {
        ModMatrix r = alg.right_multiplication(rep.generator_element(i));
        ModMatrix q(free.size(), free.size(), alg.p());
        for (std::size_t a = 0; a < free.size(); ++a) {
            ModVector image = reduce_against(e, r.row(free[a]));
            for (std::size_t b = 0; b < free.size(); ++b) q(a, b) = image[free[b]];
        }
        gens.push_back({rep.generators()[i].group, std::move(q)});
    }
    auto quot = FiniteRepresentation::generate(alg.p(), rep.group_dim(), free.size(), std::move(gens),
                                               std::max(rep.order(), FiniteRepresentation::kDefaultGroupBound));
    for (std::size_t g = 0; g < rep.order(); ++g)
        if (!(quot.group_matrix(g) == rep.group_matrix(g)))
            throw RepresentationError("internal", "quotient module renumbered the group");
    return quot;
}

RightIdealBasis annihilator(const FiniteRepresentation& rep, const std::vector<ModVector>& subset) {
    const std::size_t d = rep.action_dim();
    const std::size_t n = rep.order();
    for (const auto& s : subset)
        if (s.size() != d) throw AlgebraError("vector length does not match the module dimension");
    // Row g of m is (s_1 rho(g), ..., s_k rho(g)); ann = left kernel of m.
    ModMatrix m(n, subset.size() * d, rep.p());
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t k = 0; k < subset.size(); ++k) {
            ModVector img = multiply(subset[k], rep.action_matrix(g));
            for (std::size_t j = 0; j < d; ++j) m(g, k * d + j) = img[j];
        }
    RightIdealBasis ann{left_kernel(m)};

    GroupAlgebra alg(rep);
    if (!is_right_ideal(alg, ann.basis))
        throw RepresentationError("internal", "annihilator is not a right ideal");
    std::vector<ModMatrix> actions;
    for (const auto& g : rep.generators()) actions.push_back(g.action);
    if (!subset.empty() && invariant_under(span_basis(rep.p(), d, subset), actions) && !is_two_sided(alg, ann))
        throw RepresentationError("internal", "annihilator of a submodule is not two-sided");
    return ann;
}

bool Stabilizer::contains(const GroupAlgebra& alg, std::span<const std::uint32_t> r) const {
    ModVector shifted(r.begin(), r.end());
    shifted[FiniteRepresentation::identity()] = modp::sub(shifted[0], 1, alg.p());
    return annihilator.contains(shifted);
}

Stabilizer stabilizer(const FiniteRepresentation& rep, const std::vector<ModVector>& subset) {
    Stabilizer st{annihilator(rep, subset), {}};
    GroupAlgebra alg(rep);
    Echelon e = row_reduce(st.annihilator.basis);
    for (std::size_t g = 0; g < rep.order(); ++g) {
        ModVector r = alg.basis_element(g);
        r[0] = modp::sub(r[0], 1, rep.p());
        if (span_contains(e, r)) st.group_elements.push_back(g);
    }
    return st;
}

std::vector<std::size_t> kernel_via_ideal(const GroupAlgebra& alg, const RightIdealBasis& u) {
    if (!is_two_sided(alg, u)) throw RepresentationError("not_two_sided", "ideal is not two-sided");
    Echelon e = row_reduce(u.basis);
    std::vector<std::size_t> out;
    for (std::size_t g = 0; g < alg.dimension(); ++g) {
        ModVector r = alg.basis_element(g);
        r[0] = modp::sub(r[0], 1, alg.p());
        if (span_contains(e, r)) out.push_back(g);
    }
    return out;
}

}  // namespace repgeo
