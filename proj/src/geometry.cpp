#include "repgeo/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <limits>
#include <random>
#include <set>

#include "parallel.hpp"

namespace repgeo {

namespace {

void check_element_arity(const FreeModuleElement& w, Arity arity) {
    if (static_cast<std::size_t>(w.max_module_index()) > arity.nx || static_cast<std::size_t>(w.max_generator()) > arity.ny)
        throw AlgebraError("arity", "equation " + w.to_string() + " uses variables outside x1..x" +
                                        std::to_string(arity.nx) + ", y1..y" + std::to_string(arity.ny));
}

void check_word_arity(const Word& f, Arity arity) {
    if (static_cast<std::size_t>(f.max_generator()) > arity.ny)
        throw AlgebraError("arity", "group equation " + f.to_string() + " uses variables outside y1..y" +
                                        std::to_string(arity.ny));
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exponent, std::uint64_t limit) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (base != 0 && r > limit / base) return std::numeric_limits<std::uint64_t>::max();
        r *= base;
    }
    return r;
}

}  // namespace

std::string Point::to_string() const {
    std::string out;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
        out += (out.empty() ? "" : " ") + std::string("x") + std::to_string(k + 1) + "=(";
        for (std::size_t j = 0; j < alpha[k].size(); ++j) out += (j ? "," : "") + std::to_string(alpha[k][j]);
        out += ")";
    }
    for (std::size_t i = 0; i < beta.size(); ++i)
        out += (out.empty() ? "" : " ") + std::string("y") + std::to_string(i + 1) + "=g" + std::to_string(beta[i]);
    return out;
}

void EquationSet::validate() const {
    for (const auto& w : action) check_element_arity(w, arity);
    for (const auto& f : group) check_word_arity(f, arity);
}

void QuasiIdentity::validate() const {
    if (conclusion.has_value() == group_conclusion.has_value())
        throw AlgebraError("quasi_identity", "a quasi-identity needs exactly one conclusion");
    for (const auto& w : premises) check_element_arity(w, arity);
    for (const auto& f : group_premises) check_word_arity(f, arity);
    if (conclusion) check_element_arity(*conclusion, arity);
    if (group_conclusion) check_word_arity(*group_conclusion, arity);
}

PointSet::PointSet(std::uint64_t size, bool filled) : size_(size), bits_((size + 63) / 64, filled ? ~0ull : 0ull) {
    if (filled && (size & 63)) bits_.back() = (1ull << (size & 63)) - 1;
}

void PointSet::set(std::uint64_t i, bool v) {
    if (v)
        bits_[i >> 6] |= 1ull << (i & 63);
    else
        bits_[i >> 6] &= ~(1ull << (i & 63));
}

std::uint64_t PointSet::count() const {
    std::uint64_t c = 0;
    for (auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
}

PointSet& PointSet::operator&=(const PointSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
    return *this;
}

PointSet& PointSet::operator|=(const PointSet& o) {
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
    return *this;
}

bool PointSet::is_subset_of(const PointSet& o) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i] & ~o.bits_[i]) return false;
    return true;
}

std::vector<std::uint64_t> PointSet::indices() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 0; i < size_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

AffineSpace::AffineSpace(const FiniteRepresentation& rep, Arity arity, std::uint64_t max_points)
    : rep_(&rep), arity_(arity) {
    const std::uint64_t limit = std::max<std::uint64_t>(max_points, 1);
    alpha_count_ = arity.nx == 0 ? 1 : checked_power(rep.vector_count(), arity.nx, limit);
    beta_count_ = checked_power(rep.order(), arity.ny, limit);
    if (alpha_count_ > limit || beta_count_ > limit || alpha_count_ > limit / beta_count_)
        throw BudgetError("affine space over |V|=" + std::to_string(rep.vector_count()) + ", |G|=" +
                          std::to_string(rep.order()) + " with |X|=" + std::to_string(arity.nx) + ", |Y|=" +
                          std::to_string(arity.ny) + " exceeds max points " + std::to_string(max_points));
}

std::vector<ModVector> AffineSpace::alpha(std::uint64_t alpha_index) const {
    std::vector<ModVector> out(arity_.nx);
    const std::uint64_t base = arity_.nx ? rep_->vector_count() : 1;
    for (std::size_t k = arity_.nx; k-- > 0;) {
        out[k] = rep_->vector_at(alpha_index % base);
        alpha_index /= base;
    }
    return out;
}

std::vector<std::size_t> AffineSpace::beta(std::uint64_t beta_index) const {
    std::vector<std::size_t> out(arity_.ny);
    const std::uint64_t base = rep_->order();
    for (std::size_t i = arity_.ny; i-- > 0;) {
        out[i] = static_cast<std::size_t>(beta_index % base);
        beta_index /= base;
    }
    return out;
}

Point AffineSpace::point(std::uint64_t index) const {
    return {alpha(index / beta_count_), beta(index % beta_count_)};
}

std::vector<Point> enumerate_points(const FiniteRepresentation& rep, Arity arity, const GeometryOptions& opts) {
    AffineSpace space(rep, arity, opts.max_points);
    std::vector<Point> out;
    out.reserve(space.size());
    for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.point(i));
    return out;
}

std::vector<PointSet> zero_sets(const AffineSpace& space, std::span<const FreeModuleElement> elements,
                                unsigned workers) {
    const auto& rep = space.rep();
    const std::uint32_t p = rep.p();
    const Arity arity = space.arity();
    for (const auto& w : elements) check_element_arity(w, arity);

    const std::uint64_t vcount = arity.nx ? rep.vector_count() : 1;
    std::vector<ModVector> vectors;
    if (arity.nx)
        for (std::uint64_t v = 0; v < vcount; ++v) vectors.push_back(rep.vector_at(v));

    workers = std::max(1u, workers);
    std::vector<std::vector<PointSet>> local(workers, std::vector<PointSet>(elements.size(), PointSet(space.size(), false)));

    detail::parallel_chunks(space.beta_count(), workers, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
        auto& sets = local[worker];
        std::vector<std::uint64_t> digits(arity.nx);
        for (std::uint64_t b = begin; b < end; ++b) {
            const auto beta = space.beta(b);
            for (std::size_t e = 0; e < elements.size(); ++e) {
                // images[k][v] = (v-th vector of V) * rho(u_k^beta)
                std::vector<std::vector<ModVector>> images(arity.nx);
                for (const auto& [k, u] : elements[e].components()) {
                    ModMatrix m = eval_ring(rep, beta, u);
                    auto& img = images[static_cast<std::size_t>(k) - 1];
                    img.reserve(vcount);
                    for (const auto& v : vectors) img.push_back(multiply(v, m));
                }
                ModVector sum(rep.action_dim());
                for (std::uint64_t a = 0; a < space.alpha_count(); ++a) {
                    std::uint64_t rest = a;
                    for (std::size_t k = arity.nx; k-- > 0;) {
                        digits[k] = rest % vcount;
                        rest /= vcount;
                    }
                    std::fill(sum.begin(), sum.end(), 0u);
                    for (std::size_t k = 0; k < arity.nx; ++k) {
                        if (images[k].empty()) continue;
                        const auto& img = images[k][digits[k]];
                        for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = modp::add(sum[j], img[j], p);
                    }
                    if (is_zero(sum)) sets[e].set(a * space.beta_count() + b);
                }
            }
        }
    });

    std::vector<PointSet> result = std::move(local[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t e = 0; e < elements.size(); ++e) result[e] |= local[w][e];
    return result;
}

PointSet group_solution_set(const AffineSpace& space, std::span<const Word> words) {
    PointSet s(space.size(), false);
    for (const auto& f : words) check_word_arity(f, space.arity());
    for (std::uint64_t b = 0; b < space.beta_count(); ++b) {
        const auto beta = space.beta(b);
        bool ok = std::all_of(words.begin(), words.end(), [&](const Word& f) {
            return eval_word(space.rep(), beta, f) == FiniteRepresentation::identity();
        });
        if (!ok) continue;
        for (std::uint64_t a = 0; a < space.alpha_count(); ++a) s.set(a * space.beta_count() + b);
    }
    return s;
}

PointSet solution_set(const AffineSpace& space, const EquationSet& t, unsigned workers) {
    t.validate();
    PointSet s(space.size(), true);
    for (const auto& z : zero_sets(space, t.action, workers)) s &= z;
    if (!t.group.empty()) s &= group_solution_set(space, t.group);
    return s;
}

std::vector<Point> algebraic_set(const FiniteRepresentation& rep, const EquationSet& t, const GeometryOptions& opts) {
    AffineSpace space(rep, t.arity, opts.max_points);
    std::vector<Point> out;
    for (auto i : solution_set(space, t, opts.workers).indices()) out.push_back(space.point(i));
    return out;
}

std::vector<bool> closure_members(const FiniteRepresentation& rep, const EquationSet& t,
                                  std::span<const FreeModuleElement> candidates, const GeometryOptions& opts) {
    AffineSpace space(rep, t.arity, opts.max_points);
    PointSet s = solution_set(space, t, opts.workers);
    auto zeros = zero_sets(space, candidates, opts.workers);
    std::vector<bool> out;
    out.reserve(candidates.size());
    for (const auto& z : zeros) out.push_back(s.is_subset_of(z));
    return out;
}

bool closure_member(const FiniteRepresentation& rep, const EquationSet& t, const FreeModuleElement& w0,
                    const GeometryOptions& opts) {
    return closure_members(rep, t, std::span<const FreeModuleElement>(&w0, 1), opts).front();
}

bool group_closure_member(const FiniteRepresentation& rep, const EquationSet& t, const Word& f0,
                          const GeometryOptions& opts) {
    check_word_arity(f0, t.arity);
    AffineSpace space(rep, t.arity, opts.max_points);
    PointSet s = solution_set(space, t, opts.workers);
    for (auto i : s.indices())
        if (eval_word(rep, space.beta(i % space.beta_count()), f0) != FiniteRepresentation::identity()) return false;
    return true;
}

QuasiIdentityCheck check_quasi_identity(const FiniteRepresentation& rep, const QuasiIdentity& q,
                                        const GeometryOptions& opts) {
    q.validate();
    AffineSpace space(rep, q.arity, opts.max_points);
    QuasiIdentityCheck result;
    result.points_enumerated = space.size();
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        Point pt = space.point(i);
        bool premises_hold =
            std::all_of(q.group_premises.begin(), q.group_premises.end(),
                        [&](const Word& f) { return eval_word(rep, pt.beta, f) == FiniteRepresentation::identity(); }) &&
            std::all_of(q.premises.begin(), q.premises.end(),
                        [&](const FreeModuleElement& w) { return is_zero(eval_point(rep, pt.alpha, pt.beta, w)); });
        if (!premises_hold) continue;
        bool conclusion_holds = q.conclusion
                                    ? is_zero(eval_point(rep, pt.alpha, pt.beta, *q.conclusion))
                                    : eval_word(rep, pt.beta, *q.group_conclusion) == FiniteRepresentation::identity();
        if (!conclusion_holds) {
            result.holds = false;
            result.counterexample = std::move(pt);
            return result;
        }
    }
    return result;
}

bool is_group_identity(const FiniteRepresentation& rep, const Word& f, std::size_t ny) {
    if (static_cast<std::size_t>(f.max_generator()) > ny)
        throw AlgebraError("arity", "word " + f.to_string() + " uses generators beyond y" + std::to_string(ny));
    AffineSpace space(rep, Arity{0, ny}, std::numeric_limits<std::uint64_t>::max());
    for (std::uint64_t b = 0; b < space.beta_count(); ++b)
        if (eval_word(rep, space.beta(b), f) != FiniteRepresentation::identity()) return false;
    return true;
}

std::vector<Word> group_identities(const FiniteRepresentation& rep, std::size_t ny, std::size_t max_len) {
    std::vector<Word> out;
    for (auto& f : enumerate_words(static_cast<int>(ny), max_len))
        if (is_group_identity(rep, f, ny)) out.push_back(std::move(f));
    return out;
}

bool group_identity_constraints_agree(const FiniteRepresentation& rep, const EquationSet& t, std::size_t max_len,
                                      const GeometryOptions& opts) {
    AffineSpace space(rep, t.arity, opts.max_points);
    EquationSet action_only{t.arity, t.action, {}};
    EquationSet bisided{t.arity, t.action, group_identities(rep, t.arity.ny, max_len)};
    return solution_set(space, action_only, opts.workers) == solution_set(space, bisided, opts.workers);
}

std::vector<FreeModuleElement> probe_elements(Field field, Arity arity, std::size_t max_len) {
    std::vector<FreeModuleElement> out;
    const auto one = GroupRingElement::one(field);
    for (const auto& f : enumerate_words(static_cast<int>(arity.ny), max_len)) {
        const auto word = GroupRingElement::word(field, f);
        for (std::size_t k = 1; k <= arity.nx; ++k) {
            out.push_back(FreeModuleElement::basis(static_cast<int>(k), word));
            if (!f.is_identity()) out.push_back(FreeModuleElement::basis(static_cast<int>(k), word - one));
        }
    }
    return out;
}

std::size_t element_word_length(const FreeModuleElement& w) {
    std::size_t m = 0;
    for (const auto& [k, u] : w.components()) m = std::max(m, u.max_word_length());
    return m;
}

std::vector<bool> closed_submodule_signature(const FiniteRepresentation& rep, const EquationSet& t,
                                             std::size_t max_len, const GeometryOptions& opts) {
    auto probes = probe_elements(rep.field(), t.arity, max_len);
    return closure_members(rep, t, probes, opts);
}

namespace {

using Candidate = std::vector<std::uint32_t>;

std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    long double r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
        if (r > static_cast<long double>(cap)) return cap + 1;
    }
    return static_cast<std::uint64_t>(r + 0.5L);
}

void append_combinations(std::size_t pool, std::size_t size, std::vector<Candidate>& out) {
    Candidate c(size);
    for (std::size_t i = 0; i < size; ++i) c[i] = static_cast<std::uint32_t>(i);
    if (size > pool) return;
    while (true) {
        out.push_back(c);
        std::size_t i = size;
        while (i > 0 && c[i - 1] == pool - size + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < size; ++j) c[j] = c[j - 1] + 1;
    }
}

}  // namespace

RefuteResult refute_equivalence(const FiniteRepresentation& rep1, const FiniteRepresentation& rep2,
                                const RefuteOptions& opts) {
    if (rep1.p() != rep2.p())
        throw AlgebraError("field_mismatch", "representations are over different fields F" + std::to_string(rep1.p()) +
                                                 " and F" + std::to_string(rep2.p()));
    RefuteResult result;
    result.seed = opts.seed;

    const auto pool = probe_elements(rep1.field(), opts.arity, opts.max_len);
    AffineSpace space1(rep1, opts.arity, opts.max_points);
    AffineSpace space2(rep2, opts.arity, opts.max_points);
    result.points_enumerated = space1.size() + space2.size();
    const auto zeros1 = zero_sets(space1, pool, opts.workers);
    const auto zeros2 = zero_sets(space2, pool, opts.workers);

    std::vector<std::size_t> length(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) length[i] = element_word_length(pool[i]);

    const std::uint64_t budget = std::max<std::uint64_t>(opts.candidate_budget, 1);
    std::uint64_t total = 0;
    for (std::size_t j = 0; j <= opts.max_premises && total <= budget; ++j)
        total += binomial_capped(pool.size(), j, budget);

    std::vector<Candidate> candidates;
    if (total <= budget) {
        result.candidates_total = total;
        for (std::size_t j = 0; j <= opts.max_premises; ++j) append_combinations(pool.size(), j, candidates);
    } else {
        result.sampled = true;
        std::mt19937_64 rng(opts.seed);
        std::set<Candidate> seen;
        std::uniform_int_distribution<std::size_t> size_dist(0, opts.max_premises);
        std::uniform_int_distribution<std::uint32_t> index_dist(0, static_cast<std::uint32_t>(pool.size() - 1));
        for (std::uint64_t attempt = 0; attempt < 4 * budget && seen.size() < budget; ++attempt) {
            std::size_t size = std::min(size_dist(rng), pool.size());
            std::set<std::uint32_t> picked;
            while (picked.size() < size) picked.insert(index_dist(rng));
            seen.emplace(picked.begin(), picked.end());
        }
        candidates.assign(seen.begin(), seen.end());
        result.candidates_total = candidates.size();
    }

    auto summed_length = [&](const Candidate& c) {
        std::size_t s = 0;
        for (auto i : c) s += length[i];
        return s;
    };
    std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        std::size_t la = summed_length(a), lb = summed_length(b);
        if (la != lb) return la < lb;
        return a < b;
    });

    constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    std::atomic<std::uint64_t> best{kNone};
    std::vector<std::pair<std::uint64_t, Witness>> found(std::max(1u, opts.workers), {kNone, Witness{}});

    detail::parallel_chunks(candidates.size(), opts.workers, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
        for (std::uint64_t c = begin; c < end && c < best.load(); ++c) {
            PointSet s1(space1.size(), true), s2(space2.size(), true);
            for (auto i : candidates[c]) {
                s1 &= zeros1[i];
                s2 &= zeros2[i];
            }
            for (std::size_t i = 0; i < pool.size(); ++i) {
                bool in1 = s1.is_subset_of(zeros1[i]);
                bool in2 = s2.is_subset_of(zeros2[i]);
                if (in1 == in2) continue;
                Witness wit;
                for (auto t : candidates[c]) wit.premises.push_back(pool[t]);
                wit.conclusion = pool[i];
                wit.closed_in = in1 ? 1 : 2;
                found[w] = {c, std::move(wit)};
                std::uint64_t cur = best.load();
                while (c < cur && !best.compare_exchange_weak(cur, c)) {
                }
                return;
            }
        }
    });

    const auto winner = std::min_element(found.begin(), found.end(),
                                         [](const auto& a, const auto& b) { return a.first < b.first; });
    if (winner->first != kNone) {
        result.witness = winner->second;
        result.candidates_checked = winner->first + 1;
    } else {
        result.candidates_checked = candidates.size();
    }
    return result;
}

}  // namespace repgeo
