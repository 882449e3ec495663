#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "repgeo/group_ring.hpp"

namespace repgeo {

/// Sequence of generator indices (i1, ..., ik), each in 1..m.
using IndexSequence = std::vector<int>;

/// Augmentation: sum of coefficients. A ring homomorphism KF(Y) -> K.
Scalar augment(const GroupRingElement& u);

/// Left Fox derivative by y_i.
///
/// K-linear, d_i(y_j) = [i == j], d_i(uv) = d_i(u) + u d_i(v). With this
/// convention u - augment(u) = sum_i d_i(u) (y_i - 1) holds exactly.
GroupRingElement fox_derivative(int index, const GroupRingElement& u);

/// Iterated derivative d_{i1,...,ik} = d_{i1} o d_{i2} o ... o d_{ik}:
/// the LAST index is applied first. That is the order in which the
/// coefficient of (y_{i1}-1)...(y_{ik}-1) in the Taylor expansion comes out.
GroupRingElement iterated_fox(std::span<const int> indices, const GroupRingElement& u);

/// (y_{i1} - 1) ... (y_{ik} - 1); the empty sequence gives 1.
GroupRingElement augmentation_monomial(Field field, std::span<const int> indices);

/// Fox-Taylor expansion of order k:
///   w = sum_{|s| < k} augment(d_s w) * (y-1)^s  +  sum_{|s| = k} (d_s w) * (y-1)^s
/// Zero coefficients are omitted from both maps.
struct TaylorExpansion {
    Field field;
    int generators = 0;
    int order = 0;
    std::map<IndexSequence, Scalar> head;
    std::map<IndexSequence, GroupRingElement> tail;

    GroupRingElement reconstruct() const;
};

/// `generators` is m; indices run over 1..m. Requires order >= 1.
TaylorExpansion taylor_expand(const GroupRingElement& w, int order, int generators);

/// Image of an element in KF(Y)/Delta^n, Delta the augmentation ideal.
///
/// Coordinates are taken in the basis (y_{i1}-1)...(y_{ik}-1), k < n,
/// ordered by length then lexicographically. The ambient dimension is
/// sum_{k<n} m^k.
class TruncatedElement {
public:
    TruncatedElement(Field field, int generators, int degree_bound);

    static std::size_t dimension(int generators, int degree_bound);
    /// Position of an index sequence in the length-then-lex basis.
    static std::size_t basis_index(int generators, std::span<const int> indices);
    static IndexSequence basis_sequence(int generators, std::size_t position);
    static TruncatedElement basis_vector(Field field, int generators, int degree_bound, std::span<const int> indices);

    Field field() const { return field_; }
    int generators() const { return generators_; }
    int degree_bound() const { return degree_bound_; }
    const std::vector<Scalar>& coordinates() const { return coords_; }
    Scalar coordinate(std::span<const int> indices) const;
    void set_coordinate(std::span<const int> indices, const Scalar& value);
    bool is_zero() const;

    TruncatedElement operator+(const TruncatedElement& o) const;
    TruncatedElement operator-(const TruncatedElement& o) const;
    /// Concatenation of basis monomials, dropping products of length >= n.
    TruncatedElement operator*(const TruncatedElement& o) const;
    TruncatedElement scaled(const Scalar& c) const;
    bool operator==(const TruncatedElement& o) const;

    /// One `(i1,...,ik): c` line per nonzero coordinate, `0` if none.
    std::string to_string() const;

private:
    void check_compatible(const TruncatedElement& o) const;

    Field field_;
    int generators_;
    int degree_bound_;
    std::vector<Scalar> coords_;
};

/// Coordinates augment(d_s u) for all |s| < n.
TruncatedElement truncate(const GroupRingElement& u, int degree_bound, int generators);

}  // namespace repgeo
