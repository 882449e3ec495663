#include "repgeo/fox.hpp"

#include <cstdlib>

namespace repgeo {

namespace {

void check_index(int index, int generators) {
    if (index < 1 || (generators > 0 && index > generators))
        throw AlgebraError("generator index " + std::to_string(index) + " out of range 1.." +
                           std::to_string(generators));
}

std::size_t ipow(std::size_t base, int exponent) {
    std::size_t r = 1;
    for (int i = 0; i < exponent; ++i) r *= base;
    return r;
}

}  // namespace

Scalar augment(const GroupRingElement& u) {
    Scalar s = Scalar::zero(u.field());
    for (const auto& [w, c] : u.terms()) s += c;
    return s;
}

GroupRingElement fox_derivative(int index, const GroupRingElement& u) {
    check_index(index, 0);
    const Field field = u.field();
    GroupRingElement result(field);
    for (const auto& [w, c] : u.terms()) {
        auto letters = w.letters();
        // d(l1...ln) = sum_k l1...l_{k-1} d(l_k); d(y) = 1, d(y^-1) = -y^-1.
        for (std::size_t k = 0; k < letters.size(); ++k) {
            int l = letters[k];
            if (std::abs(l) != index) continue;
            if (l > 0)
                result.add_term(Word(std::vector<int>(letters.begin(), letters.begin() + k)), c);
            else
                result.add_term(Word(std::vector<int>(letters.begin(), letters.begin() + k + 1)), -c);
        }
    }
    return result;
}

GroupRingElement iterated_fox(std::span<const int> indices, const GroupRingElement& u) {
    if (indices.empty()) throw AlgebraError("iterated Fox derivative needs at least one index");
    GroupRingElement r = u;
    for (auto it = indices.rbegin(); it != indices.rend(); ++it) r = fox_derivative(*it, r);
    return r;
}

GroupRingElement augmentation_monomial(Field field, std::span<const int> indices) {
    GroupRingElement r = GroupRingElement::one(field);
    for (int i : indices) r = r * GroupRingElement::augmentation_generator(field, i);
    return r;
}

GroupRingElement TaylorExpansion::reconstruct() const {
    GroupRingElement r(field);
    for (const auto& [seq, c] : head) r += augmentation_monomial(field, seq).scaled(c);
    for (const auto& [seq, coeff] : tail) r += coeff * augmentation_monomial(field, seq);
    return r;
}

TaylorExpansion taylor_expand(const GroupRingElement& w, int order, int generators) {
    if (order < 1) throw AlgebraError("Taylor order must be >= 1");
    if (generators < w.max_generator())
        throw AlgebraError("element uses y" + std::to_string(w.max_generator()) + " but only " +
                           std::to_string(generators) + " generators declared");
    TaylorExpansion t{w.field(), generators, order, {}, {}};

    // derivatives[s] = d_s w, built by prepending one index at a time to the derivative of the suffix.
    std::map<IndexSequence, GroupRingElement> level{{IndexSequence{}, w}};
    for (int len = 0; len <= order; ++len) {
        std::map<IndexSequence, GroupRingElement> next;
        for (const auto& [seq, d] : level) {
            if (len < order) {
                Scalar e = augment(d);
                if (!e.is_zero()) t.head.emplace(seq, e);
                if (d.is_zero()) continue;
                for (int i = 1; i <= generators; ++i) {
                    IndexSequence s{i};
                    s.insert(s.end(), seq.begin(), seq.end());
                    next.emplace(std::move(s), fox_derivative(i, d));
                }
            } else if (!d.is_zero()) {
                t.tail.emplace(seq, d);
            }
        }
        if (len < order) level = std::move(next);
    }
    return t;
}

TruncatedElement::TruncatedElement(Field field, int generators, int degree_bound)
    : field_(field), generators_(generators), degree_bound_(degree_bound) {
    if (degree_bound < 1) throw AlgebraError("degree bound n must be >= 1");
    if (generators < 0) throw AlgebraError("generator count must be >= 0");
    coords_.assign(dimension(generators, degree_bound), Scalar::zero(field));
}

std::size_t TruncatedElement::dimension(int generators, int degree_bound) {
    std::size_t d = 0;
    for (int k = 0; k < degree_bound; ++k) d += ipow(static_cast<std::size_t>(generators), k);
    return d;
}

std::size_t TruncatedElement::basis_index(int generators, std::span<const int> indices) {
    const int k = static_cast<int>(indices.size());
    std::size_t offset = dimension(generators, k);
    std::size_t lex = 0;
    for (int i : indices) {
        check_index(i, generators);
        lex = lex * static_cast<std::size_t>(generators) + static_cast<std::size_t>(i - 1);
    }
    return offset + lex;
}

IndexSequence TruncatedElement::basis_sequence(int generators, std::size_t position) {
    int k = 0;
    while (position >= ipow(static_cast<std::size_t>(generators), k)) {
        position -= ipow(static_cast<std::size_t>(generators), k);
        ++k;
    }
    IndexSequence seq(static_cast<std::size_t>(k));
    for (int j = k - 1; j >= 0; --j) {
        seq[j] = static_cast<int>(position % generators) + 1;
        position /= generators;
    }
    return seq;
}

TruncatedElement TruncatedElement::basis_vector(Field field, int generators, int degree_bound,
                                                std::span<const int> indices) {
    TruncatedElement e(field, generators, degree_bound);
    e.set_coordinate(indices, Scalar::one(field));
    return e;
}

Scalar TruncatedElement::coordinate(std::span<const int> indices) const {
    if (static_cast<int>(indices.size()) >= degree_bound_) return Scalar::zero(field_);
    return coords_[basis_index(generators_, indices)];
}

void TruncatedElement::set_coordinate(std::span<const int> indices, const Scalar& value) {
    if (static_cast<int>(indices.size()) >= degree_bound_)
        throw AlgebraError("index sequence longer than the truncation degree");
    coords_[basis_index(generators_, indices)] = value;
}

bool TruncatedElement::is_zero() const {
    for (const auto& c : coords_)
        if (!c.is_zero()) return false;
    return true;
}

void TruncatedElement::check_compatible(const TruncatedElement& o) const {
    if (!(field_ == o.field_) || generators_ != o.generators_ || degree_bound_ != o.degree_bound_)
        throw AlgebraError("truncated elements live in different quotients");
}

TruncatedElement TruncatedElement::operator+(const TruncatedElement& o) const {
    check_compatible(o);
    TruncatedElement r = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] += o.coords_[i];
    return r;
}

TruncatedElement TruncatedElement::operator-(const TruncatedElement& o) const {
    check_compatible(o);
    TruncatedElement r = *this;
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] -= o.coords_[i];
    return r;
}

TruncatedElement TruncatedElement::scaled(const Scalar& c) const {
    TruncatedElement r = *this;
    for (auto& x : r.coords_) x *= c;
    return r;
}

TruncatedElement TruncatedElement::operator*(const TruncatedElement& o) const {
    check_compatible(o);
    TruncatedElement r(field_, generators_, degree_bound_);
    for (std::size_t a = 0; a < coords_.size(); ++a) {
        if (coords_[a].is_zero()) continue;
        IndexSequence sa = basis_sequence(generators_, a);
        for (std::size_t b = 0; b < o.coords_.size(); ++b) {
            if (o.coords_[b].is_zero()) continue;
            IndexSequence sb = basis_sequence(generators_, b);
            if (static_cast<int>(sa.size() + sb.size()) >= degree_bound_) continue;
            IndexSequence s = sa;
            s.insert(s.end(), sb.begin(), sb.end());
            auto pos = basis_index(generators_, s);
            r.coords_[pos] += coords_[a] * o.coords_[b];
        }
    }
    return r;
}

bool TruncatedElement::operator==(const TruncatedElement& o) const {
    return field_ == o.field_ && generators_ == o.generators_ && degree_bound_ == o.degree_bound_ &&
           coords_ == o.coords_;
}

std::string TruncatedElement::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (coords_[i].is_zero()) continue;
        IndexSequence s = basis_sequence(generators_, i);
        out += "(";
        for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + std::to_string(s[j]);
        out += "): " + coords_[i].to_string() + "\n";
    }
    return out.empty() ? "0\n" : out;
}

TruncatedElement truncate(const GroupRingElement& u, int degree_bound, int generators) {
    if (generators < u.max_generator())
        throw AlgebraError("element uses y" + std::to_string(u.max_generator()) + " but only " +
                           std::to_string(generators) + " generators declared");
    TruncatedElement t(u.field(), generators, degree_bound);
    std::map<IndexSequence, GroupRingElement> level{{IndexSequence{}, u}};
    for (int len = 0; len < degree_bound; ++len) {
        std::map<IndexSequence, GroupRingElement> next;
        for (const auto& [seq, d] : level) {
            if (d.is_zero()) continue;
            t.set_coordinate(seq, augment(d));
            if (len + 1 == degree_bound) continue;
            for (int i = 1; i <= generators; ++i) {
                IndexSequence s{i};
                s.insert(s.end(), seq.begin(), seq.end());
                next.emplace(std::move(s), fox_derivative(i, d));
            }
        }
        level = std::move(next);
    }
    return t;
}

}  // namespace repgeo
