#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "repgeo/field.hpp"

namespace repgeo {

using ModVector = std::vector<std::uint32_t>;

/// Dense row-major matrix over F_p. Vectors are rows and act on the right: v * A.
class ModMatrix {
public:
    ModMatrix() = default;
    ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);
    ModMatrix(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& entries, std::size_t cols_if_empty = 0);

    static ModMatrix identity(std::size_t n, std::uint32_t p);
    static ModMatrix from_rows(std::uint32_t p, std::size_t cols, const std::vector<ModVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return p_; }

    std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::uint32_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::span<const std::uint32_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    ModVector row_vector(std::size_t r) const;
    const std::vector<std::uint32_t>& data() const { return data_; }

    ModMatrix operator*(const ModMatrix& o) const;
    bool operator==(const ModMatrix& o) const = default;
    bool is_identity() const;
    ModMatrix transpose() const;
    /// Throws AlgebraError("singular matrix") when not invertible.
    ModMatrix inverse() const;

    std::vector<std::vector<std::int64_t>> to_nested() const;
    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::uint32_t p_ = 2;
    std::vector<std::uint32_t> data_;
};

struct ModMatrixHash {
    std::size_t operator()(const ModMatrix& m) const;
};

/// v * A over F_p.
ModVector multiply(std::span<const std::uint32_t> v, const ModMatrix& a);
void axpy(ModVector& y, std::uint32_t c, std::span<const std::uint32_t> x, std::uint32_t p);
bool is_zero(std::span<const std::uint32_t> v);

/// Reduced row echelon form; pivots[i] is the pivot column of row i.
struct Echelon {
    ModMatrix form;
    std::vector<std::size_t> pivots;
    std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(const ModMatrix& m);
std::size_t rank(const ModMatrix& m);

/// Canonical basis (nonzero RREF rows) of the row span of the given vectors.
ModMatrix span_basis(std::uint32_t p, std::size_t dim, const std::vector<ModVector>& vectors);
/// Reduces v against an RREF basis; the result is zero iff v lies in the span.
ModVector reduce_against(const Echelon& basis, std::span<const std::uint32_t> v);
bool span_contains(const Echelon& basis, std::span<const std::uint32_t> v);
/// Row space of a contained in row space of b.
bool subspace_contains(const ModMatrix& b, const ModMatrix& a);
/// {c : c * m = 0}, as RREF basis rows.
ModMatrix left_kernel(const ModMatrix& m);
/// Coordinates c with c * basis = v; basis rows must be independent and v in their span.
ModVector coordinates_in(const Echelon& basis, std::span<const std::uint32_t> v);

/// Rank over an arbitrary exact field (used for rational computations).
std::size_t rank(std::vector<std::vector<Scalar>> rows);

}  // namespace repgeo
