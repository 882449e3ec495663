#pragma once

// Random instances and independent reference computations shared by the tests.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "repgeo/class_operators.hpp"
#include "repgeo/fox.hpp"
#include "repgeo/geometry.hpp"

namespace testing {

using namespace repgeo;
using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Unreduced letter sequence over y1..y_m.
inline std::vector<int> random_letters(Rng& rng, int m, int max_len) {
    std::vector<int> out(static_cast<std::size_t>(uniform(rng, 0, max_len)));
    for (auto& l : out) l = uniform(rng, 1, m) * (uniform(rng, 0, 1) ? 1 : -1);
    return out;
}

/// Reference free reduction: rescan from the start and delete the first
/// cancelling pair until none is left.
inline std::vector<int> naive_reduce(std::vector<int> letters) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
            if (letters[i] == -letters[i + 1]) {
                letters.erase(letters.begin() + static_cast<long>(i), letters.begin() + static_cast<long>(i) + 2);
                changed = true;
                break;
            }
        }
    }
    return letters;
}

inline Scalar random_scalar(Rng& rng, Field f) {
    if (f.is_rational()) return Scalar(f, Rational(uniform(rng, -9, 9), uniform(rng, 1, 4)));
    return Scalar(f, std::int64_t{uniform(rng, 0, static_cast<int>(f.characteristic()) - 1)});
}

inline GroupRingElement random_element(Rng& rng, Field f, int m, int max_support, int max_len) {
    GroupRingElement u(f);
    int terms = uniform(rng, 0, max_support);
    for (int t = 0; t < terms; ++t) u.add_term(Word(random_letters(rng, m, max_len)), random_scalar(rng, f));
    return u;
}

inline FreeModuleElement random_module_element(Rng& rng, Field f, int nx, int m, int max_support, int max_len) {
    FreeModuleElement w(f);
    for (int k = 1; k <= nx; ++k)
        if (uniform(rng, 0, 2)) w += FreeModuleElement::basis(k, random_element(rng, f, m, max_support, max_len));
    return w;
}

/// Fox derivative computed letter by letter from the product rule,
/// d(l w) = d(l) + l d(w), with d(y_i) = 1 and d(y_i^-1) = -y_i^-1.
inline GroupRingElement reference_fox(int i, const GroupRingElement& u) {
    const Field f = u.field();
    GroupRingElement out(f);
    for (const auto& [w, c] : u.terms()) {
        GroupRingElement prefix = GroupRingElement::one(f);
        for (int l : w.letters()) {
            GroupRingElement letter = GroupRingElement::word(f, Word{l});
            if (l == i) out += (prefix).scaled(c);
            if (l == -i) out -= (prefix * letter).scaled(c);
            prefix = prefix * letter;
        }
    }
    return out;
}

inline ModMatrix random_invertible(Rng& rng, std::uint32_t p, std::size_t n) {
    while (true) {
        ModMatrix m(n, n, p);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m(r, c) = static_cast<std::uint32_t>(uniform(rng, 0, static_cast<int>(p) - 1));
        if (rank(m) == n) return m;
    }
}

inline ModMatrix block_diag(const ModMatrix& a, const ModMatrix& b) {
    ModMatrix m(a.rows() + b.rows(), a.rows() + b.rows(), a.modulus());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, a.rows() + c) = b(r, c);
    return m;
}

/// A representation whose generators have group matrix diag(B, A) and action
/// matrix A, so the action is well defined and usually not faithful.
/// Rejects groups larger than max_order.
inline FiniteRepresentation random_rep(Rng& rng, std::uint32_t p, std::size_t d, std::size_t max_order,
                                       int max_generators = 2) {
    while (true) {
        std::size_t b = static_cast<std::size_t>(uniform(rng, 1, 2));
        std::vector<GeneratorPair> gens;
        int count = uniform(rng, 1, max_generators);
        for (int i = 0; i < count; ++i) {
            ModMatrix a = uniform(rng, 0, 3) == 0 ? ModMatrix::identity(d, p) : random_invertible(rng, p, d);
            ModMatrix g = random_invertible(rng, p, b);
            gens.push_back({block_diag(g, a), a});
        }
        try {
            return FiniteRepresentation::generate(p, b + d, d, gens, max_order);
        } catch (const RepresentationError& e) {
            if (e.code() != "group_too_large") throw;
        }
    }
}

inline FiniteRepresentation one_generator(std::uint32_t p, std::vector<std::vector<std::int64_t>> group,
                                          std::vector<std::vector<std::int64_t>> action) {
    ModMatrix g(p, group, group.size()), a(p, action, action.size());
    return FiniteRepresentation::generate(p, g.rows(), a.rows(), {{g, a}});
}

/// C2 acting on F3 by negation.
inline FiniteRepresentation negation_c2() { return one_generator(3, {{2}}, {{2}}); }
/// C2 acting trivially on F3.
inline FiniteRepresentation trivial_action_c2() { return one_generator(3, {{2}}, {{1}}); }
/// Trivial group on F3.
inline FiniteRepresentation trivial_group() { return FiniteRepresentation::generate(3, 1, 1, {}); }

/// Cyclic group of order n acting regularly on F_p^n by cyclic shift.
inline FiniteRepresentation cyclic_regular(std::uint32_t p, std::size_t n) {
    ModMatrix shift(n, n, p);
    for (std::size_t i = 0; i < n; ++i) shift(i, (i + 1) % n) = 1;
    return FiniteRepresentation::generate(p, n, n, {{shift, shift}});
}

/// Every vector of F_p^n.
inline std::vector<ModVector> all_vectors(std::uint32_t p, std::size_t n) {
    std::vector<ModVector> out{ModVector(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<ModVector> next;
        for (const auto& v : out)
            for (std::uint32_t x = 0; x < p; ++x) {
                auto w = v;
                w[i] = x;
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

/// Every subspace of F_p^n as an RREF basis, found by spanning all tuples of
/// at most n vectors.
inline std::vector<ModMatrix> all_subspaces(std::uint32_t p, std::size_t n) {
    auto vecs = all_vectors(p, n);
    std::vector<ModMatrix> out;
    auto record = [&](const std::vector<ModVector>& gens) {
        ModMatrix b = span_basis(p, n, gens);
        for (const auto& s : out)
            if (s == b) return;
        out.push_back(b);
    };
    std::function<void(std::size_t, std::vector<ModVector>&)> rec = [&](std::size_t start, std::vector<ModVector>& cur) {
        record(cur);
        if (cur.size() == n) return;
        for (std::size_t i = start; i < vecs.size(); ++i) {
            cur.push_back(vecs[i]);
            rec(i + 1, cur);
            cur.pop_back();
        }
    };
    std::vector<ModVector> cur;
    rec(0, cur);
    return out;
}

/// Direct point-by-point solution count, used to cross-check the bitset path.
inline std::uint64_t brute_force_solution_count(const FiniteRepresentation& rep, const EquationSet& t) {
    AffineSpace space(rep, t.arity, 10'000'000);
    std::uint64_t n = 0;
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        Point pt = space.point(i);
        bool ok = true;
        for (const auto& w : t.action) ok = ok && is_zero(eval_point(rep, pt.alpha, pt.beta, w));
        for (const auto& f : t.group) ok = ok && eval_word(rep, pt.beta, f) == FiniteRepresentation::identity();
        n += ok;
    }
    return n;
}

}  // namespace testing
