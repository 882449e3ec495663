#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "repgeo/representation.hpp"

namespace repgeo {

/// Declared sizes of X = {x1..x_nx} and Y = {y1..y_ny}.
struct Arity {
    std::size_t nx = 1;
    std::size_t ny = 1;
};

/// A homomorphism (alpha, beta) from W(X,Y): alpha[k-1] is the image of x_k,
/// beta[i-1] the element index of the image of y_i.
struct Point {
    std::vector<ModVector> alpha;
    std::vector<std::size_t> beta;

    bool operator==(const Point&) const = default;
    std::string to_string() const;
};

/// Action equations w = 0, optionally with group equations f = 1.
struct EquationSet {
    Arity arity;
    std::vector<FreeModuleElement> action;
    std::vector<Word> group;

    /// Throws AlgebraError("arity") if an equation uses an undeclared variable.
    void validate() const;
};

/// (and_i w_i = 0) and (and_j f_j = 1)  =>  w_0 = 0   (or f_0 = 1).
struct QuasiIdentity {
    Arity arity;
    std::vector<FreeModuleElement> premises;
    std::vector<Word> group_premises;
    std::optional<FreeModuleElement> conclusion;
    std::optional<Word> group_conclusion;

    void validate() const;
};

struct GeometryOptions {
    std::uint64_t max_points = 1'000'000;
    unsigned workers = 1;
};

/// Bitset over the points of an affine space.
class PointSet {
public:
    PointSet() = default;
    PointSet(std::uint64_t size, bool filled);

    std::uint64_t size() const { return size_; }
    bool test(std::uint64_t i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::uint64_t i, bool v = true);
    std::uint64_t count() const;
    PointSet& operator&=(const PointSet& o);
    PointSet& operator|=(const PointSet& o);
    bool is_subset_of(const PointSet& o) const;
    bool operator==(const PointSet& o) const = default;
    std::vector<std::uint64_t> indices() const;

private:
    std::uint64_t size_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Hom(W(X,Y), (V,G)): |V|^nx * |G|^ny points, enumerated lexicographically in
/// alpha (x1 most significant, each vector in counter order) and then beta.
class AffineSpace {
public:
    AffineSpace(const FiniteRepresentation& rep, Arity arity, std::uint64_t max_points);

    const FiniteRepresentation& rep() const { return *rep_; }
    Arity arity() const { return arity_; }
    std::uint64_t size() const { return alpha_count_ * beta_count_; }
    std::uint64_t alpha_count() const { return alpha_count_; }
    std::uint64_t beta_count() const { return beta_count_; }
    Point point(std::uint64_t index) const;
    std::vector<ModVector> alpha(std::uint64_t alpha_index) const;
    std::vector<std::size_t> beta(std::uint64_t beta_index) const;

private:
    const FiniteRepresentation* rep_;
    Arity arity_;
    std::uint64_t alpha_count_ = 1;
    std::uint64_t beta_count_ = 1;
};

std::vector<Point> enumerate_points(const FiniteRepresentation& rep, Arity arity, const GeometryOptions& opts = {});

/// Zero sets of each element: result[i] holds the points where elements[i] evaluates to 0.
std::vector<PointSet> zero_sets(const AffineSpace& space, std::span<const FreeModuleElement> elements,
                                unsigned workers = 1);
/// Points whose beta sends every word to the identity.
PointSet group_solution_set(const AffineSpace& space, std::span<const Word> words);

/// T' as a point set (action and group equations).
PointSet solution_set(const AffineSpace& space, const EquationSet& t, unsigned workers = 1);
std::vector<Point> algebraic_set(const FiniteRepresentation& rep, const EquationSet& t, const GeometryOptions& opts = {});

/// w0 lies in the closure of T: w0 vanishes at every point of T's algebraic set.
bool closure_member(const FiniteRepresentation& rep, const EquationSet& t, const FreeModuleElement& w0,
                    const GeometryOptions& opts = {});
std::vector<bool> closure_members(const FiniteRepresentation& rep, const EquationSet& t,
                                  std::span<const FreeModuleElement> candidates, const GeometryOptions& opts = {});
/// f0 lies in the group component of the closure: beta(f0) = 1 at every point of T's algebraic set.
bool group_closure_member(const FiniteRepresentation& rep, const EquationSet& t, const Word& f0,
                          const GeometryOptions& opts = {});

struct QuasiIdentityCheck {
    bool holds = true;
    std::optional<Point> counterexample;
    std::uint64_t points_enumerated = 0;
};

/// Direct evaluation at every point, independent of the closure machinery.
QuasiIdentityCheck check_quasi_identity(const FiniteRepresentation& rep, const QuasiIdentity& q,
                                        const GeometryOptions& opts = {});

/// f = 1 under all |G|^ny assignments.
bool is_group_identity(const FiniteRepresentation& rep, const Word& f, std::size_t ny);
/// Words of length <= max_len over y1..y_ny that are group identities of rep, in shortlex order.
std::vector<Word> group_identities(const FiniteRepresentation& rep, std::size_t ny, std::size_t max_len);

/// Compares the action-type algebraic set of T with the bi-sided one whose
/// group part is the group identities of length <= max_len. True when equal.
bool group_identity_constraints_agree(const FiniteRepresentation& rep, const EquationSet& t, std::size_t max_len = 3,
                                      const GeometryOptions& opts = {});

/// Probe elements x_k o f and x_k o (f - 1), for reduced words f of length <= max_len
/// (f != 1 for the second kind). Ordered by |f|, then f shortlex, then k, then kind.
std::vector<FreeModuleElement> probe_elements(Field field, Arity arity, std::size_t max_len);
/// Length of the longest word in any component.
std::size_t element_word_length(const FreeModuleElement& w);

/// Closure membership bits of every probe element of length <= max_len.
std::vector<bool> closed_submodule_signature(const FiniteRepresentation& rep, const EquationSet& t,
                                             std::size_t max_len, const GeometryOptions& opts = {});

struct RefuteOptions {
    Arity arity;
    std::size_t max_premises = 2;
    std::size_t max_len = 2;
    std::uint64_t candidate_budget = 200'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::uint64_t max_points = 1'000'000;
};

/// conclusion is in the closure of premises over rep `closed_in` (1 or 2) but not over the other.
struct Witness {
    std::vector<FreeModuleElement> premises;
    FreeModuleElement conclusion;
    int closed_in = 1;
};

struct RefuteResult {
    std::optional<Witness> witness;
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t candidates_total = 0;
    std::uint64_t candidates_checked = 0;
    std::uint64_t points_enumerated = 0;
};

/// Bounded search for a set T of probe elements whose closures differ over the
/// two representations. A witness certifies non-equivalence; none is inconclusive.
/// Candidates are ordered by premise count, then summed word length, then
/// probe order; the first witness in that order is returned whatever the worker count.
RefuteResult refute_equivalence(const FiniteRepresentation& rep1, const FiniteRepresentation& rep2,
                                const RefuteOptions& opts);

}  // namespace repgeo
