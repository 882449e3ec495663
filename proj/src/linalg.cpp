#include "repgeo/linalg.hpp"

#include <sstream>

namespace repgeo {

ModMatrix::ModMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

ModMatrix::ModMatrix(std::uint32_t p, const std::vector<std::vector<std::int64_t>>& entries, std::size_t cols_if_empty)
    : rows_(entries.size()), cols_(entries.empty() ? cols_if_empty : entries.front().size()), p_(p) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : entries) {
        if (r.size() != cols_) throw AlgebraError("ragged matrix rows");
        for (auto v : r) data_.push_back(modp::reduce(v, p));
    }
}

ModMatrix ModMatrix::identity(std::size_t n, std::uint32_t p) {
    ModMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ModMatrix ModMatrix::from_rows(std::uint32_t p, std::size_t cols, const std::vector<ModVector>& rows) {
    ModMatrix m(rows.size(), cols, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw AlgebraError("row length mismatch");
        std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
    }
    return m;
}

ModVector ModMatrix::row_vector(std::size_t r) const {
    auto s = row(r);
    return ModVector(s.begin(), s.end());
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw AlgebraError("matrix shape or field mismatch");
    ModMatrix r(rows_, o.cols_, p_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            std::uint64_t a = (*this)(i, k);
            if (!a) continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) = static_cast<std::uint32_t>((r(i, j) + a * o(k, j)) % p_);
        }
    }
    return r;
}

bool ModMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
}

ModMatrix ModMatrix::transpose() const {
    ModMatrix t(cols_, rows_, p_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ModMatrix ModMatrix::inverse() const {
    if (rows_ != cols_) throw AlgebraError("singular_matrix", "singular matrix: not square");
    const std::size_t n = rows_;
    if (n == 0) return *this;
    ModMatrix aug(n, 2 * n, p_);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
        aug(i, n + i) = 1;
    }
    Echelon e = row_reduce(aug);
    if (e.rank() < n || e.pivots[n - 1] != n - 1) throw AlgebraError("singular_matrix", "singular matrix");
    ModMatrix inv(n, n, p_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.form(i, n + j);
    return inv;
}

std::vector<std::vector<std::int64_t>> ModMatrix::to_nested() const {
    std::vector<std::vector<std::int64_t>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i].push_back((*this)(i, j));
    return out;
}

std::string ModMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "," : "") << '[';
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::size_t ModMatrixHash::operator()(const ModMatrix& m) const {
    std::size_t h = m.rows() * 31 + m.cols();
    for (auto v : m.data()) h = h * 1000003u ^ v;
    return h;
}

ModVector multiply(std::span<const std::uint32_t> v, const ModMatrix& a) {
    if (v.size() != a.rows()) throw AlgebraError("vector/matrix shape mismatch");
    const std::uint32_t p = a.modulus();
    ModVector r(a.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k]) continue;
        axpy(r, v[k], a.row(k), p);
    }
    return r;
}

void axpy(ModVector& y, std::uint32_t c, std::span<const std::uint32_t> x, std::uint32_t p) {
    for (std::size_t j = 0; j < x.size(); ++j) y[j] = modp::add(y[j], modp::mul(c, x[j], p), p);
}

bool is_zero(std::span<const std::uint32_t> v) {
    for (auto x : v)
        if (x) return false;
    return true;
}

Echelon row_reduce(const ModMatrix& m) {
    Echelon e{m, {}};
    ModMatrix& a = e.form;
    const std::uint32_t p = a.modulus();
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t pivot = r;
        while (pivot < a.rows() && a(pivot, c) == 0) ++pivot;
        if (pivot == a.rows()) continue;
        if (pivot != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(r, j), a(pivot, j));
        std::uint32_t inv = modp::inv(a(r, c), p);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) = modp::mul(a(r, j), inv, p);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            std::uint32_t f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = modp::sub(a(i, j), modp::mul(f, a(r, j), p), p);
        }
        e.pivots.push_back(c);
        ++r;
    }
    return e;
}

std::size_t rank(const ModMatrix& m) { return row_reduce(m).rank(); }

ModMatrix span_basis(std::uint32_t p, std::size_t dim, const std::vector<ModVector>& vectors) {
    Echelon e = row_reduce(ModMatrix::from_rows(p, dim, vectors));
    ModMatrix b(e.rank(), dim, p);
    for (std::size_t i = 0; i < e.rank(); ++i)
        for (std::size_t j = 0; j < dim; ++j) b(i, j) = e.form(i, j);
    return b;
}

ModVector reduce_against(const Echelon& basis, std::span<const std::uint32_t> v) {
    const std::uint32_t p = basis.form.modulus();
    ModVector r(v.begin(), v.end());
    for (std::size_t i = 0; i < basis.rank(); ++i) {
        std::uint32_t c = r[basis.pivots[i]];
        if (c) axpy(r, modp::neg(c, p), basis.form.row(i), p);
    }
    return r;
}

bool span_contains(const Echelon& basis, std::span<const std::uint32_t> v) { return is_zero(reduce_against(basis, v)); }

bool subspace_contains(const ModMatrix& b, const ModMatrix& a) {
    Echelon eb = row_reduce(b);
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (!span_contains(eb, a.row(i))) return false;
    return true;
}

ModMatrix left_kernel(const ModMatrix& m) {
    // c * m = 0  <=>  m^T c^T = 0: null space of m^T from its RREF.
    const std::uint32_t p = m.modulus();
    Echelon e = row_reduce(m.transpose());
    const std::size_t n = m.rows();
    std::vector<bool> is_pivot(n, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<ModVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        ModVector v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = modp::neg(e.form(i, free), p);
        basis.push_back(std::move(v));
    }
    return span_basis(p, n, basis);
}

ModVector coordinates_in(const Echelon& basis, std::span<const std::uint32_t> v) {
    // RREF rows: the coordinate on row i is the entry of v at that row's pivot.
    ModVector c(basis.rank(), 0);
    for (std::size_t i = 0; i < basis.rank(); ++i) c[i] = v[basis.pivots[i]];
    return c;
}

std::size_t rank(std::vector<std::vector<Scalar>> rows) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        Scalar inv = rows[r][c].inverse();
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero()) continue;
            Scalar f = rows[i][c] * inv;
            for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace repgeo
