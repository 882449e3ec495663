#pragma once

#include <map>
#include <string>

#include "repgeo/field.hpp"
#include "repgeo/word.hpp"

namespace repgeo {

/// Element of the group ring KF(Y): a finitely supported map from reduced
/// words to nonzero scalars, kept in shortlex order.
class GroupRingElement {
public:
    using Terms = std::map<Word, Scalar, ShortLex>;

    GroupRingElement() = default;
    explicit GroupRingElement(Field field) : field_(field) {}

    static GroupRingElement zero(Field field) { return GroupRingElement(field); }
    static GroupRingElement one(Field field) { return monomial(Scalar::one(field), Word{}); }
    static GroupRingElement constant(const Scalar& c) { return monomial(c, Word{}); }
    static GroupRingElement monomial(const Scalar& coefficient, const Word& word);
    static GroupRingElement word(Field field, const Word& w) { return monomial(Scalar::one(field), w); }
    /// y_i - 1, a generator of the augmentation ideal.
    static GroupRingElement augmentation_generator(Field field, int index);

    Field field() const { return field_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    Scalar coefficient(const Word& w) const;
    int max_generator() const;
    std::size_t max_word_length() const;

    /// Adds c*w in place, dropping the term if it cancels.
    void add_term(const Word& w, const Scalar& c);

    GroupRingElement operator-() const;
    GroupRingElement operator+(const GroupRingElement& o) const;
    GroupRingElement operator-(const GroupRingElement& o) const;
    GroupRingElement operator*(const GroupRingElement& o) const;
    GroupRingElement& operator+=(const GroupRingElement& o);
    GroupRingElement& operator-=(const GroupRingElement& o);
    GroupRingElement scaled(const Scalar& c) const;
    /// Positive powers only; negative powers exist only for unit monomials, see inverse_monomial.
    GroupRingElement pow(unsigned exponent) const;
    /// Inverse of c*w, when this element is a single nonzero monomial.
    GroupRingElement inverse_monomial() const;

    bool operator==(const GroupRingElement& o) const;

    /// Canonical text, e.g. `-1 + 2*y1 + y2*y1`; `0` for zero.
    std::string to_string() const;

private:
    void check_same(const GroupRingElement& o) const;

    Field field_;
    Terms terms_;
};

}  // namespace repgeo
