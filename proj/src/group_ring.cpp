#include "repgeo/group_ring.hpp"

#include <algorithm>

namespace repgeo {

GroupRingElement GroupRingElement::monomial(const Scalar& coefficient, const Word& word) {
    GroupRingElement r(coefficient.field());
    r.add_term(word, coefficient);
    return r;
}

GroupRingElement GroupRingElement::augmentation_generator(Field field, int index) {
    GroupRingElement r = word(field, Word::generator(index));
    r.add_term(Word{}, -Scalar::one(field));
    return r;
}

Scalar GroupRingElement::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

int GroupRingElement::max_generator() const {
    int m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.max_generator());
    return m;
}

std::size_t GroupRingElement::max_word_length() const {
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.length());
    return m;
}

void GroupRingElement::add_term(const Word& w, const Scalar& c) {
    if (!(c.field() == field_)) throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs " + c.field().name());
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void GroupRingElement::check_same(const GroupRingElement& o) const {
    if (!(field_ == o.field_)) throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs " + o.field_.name());
}

GroupRingElement GroupRingElement::operator-() const {
    GroupRingElement r(field_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
    check_same(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
    check_same(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

GroupRingElement GroupRingElement::operator+(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    r += o;
    return r;
}

GroupRingElement GroupRingElement::operator-(const GroupRingElement& o) const {
    GroupRingElement r = *this;
    r -= o;
    return r;
}

GroupRingElement GroupRingElement::operator*(const GroupRingElement& o) const {
    check_same(o);
    GroupRingElement r(field_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) r.add_term(wa * wb, ca * cb);
    return r;
}

GroupRingElement GroupRingElement::scaled(const Scalar& c) const {
    if (!(c.field() == field_)) throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs " + c.field().name());
    GroupRingElement r(field_);
    if (c.is_zero()) return r;
    for (const auto& [w, coef] : terms_) r.terms_.emplace(w, coef * c);
    return r;
}

GroupRingElement GroupRingElement::pow(unsigned exponent) const {
    GroupRingElement result = one(field_);
    GroupRingElement base = *this;
    while (exponent) {
        if (exponent & 1u) result = result * base;
        exponent >>= 1;
        if (exponent) base = base * base;
    }
    return result;
}

GroupRingElement GroupRingElement::inverse_monomial() const {
    if (terms_.size() != 1) throw AlgebraError("only a single nonzero monomial c*w is invertible here");
    const auto& [w, c] = *terms_.begin();
    return monomial(c.inverse(), w.inverse());
}

bool GroupRingElement::operator==(const GroupRingElement& o) const {
    return field_ == o.field_ && terms_ == o.terms_;
}

std::string GroupRingElement::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        bool negative = c.is_negative_literal();
        Scalar magnitude = negative ? -c : c;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        if (w.is_identity()) {
            out += magnitude.to_string();
        } else {
            if (!magnitude.is_one()) out += magnitude.to_string() + "*";
            out += w.to_string();
        }
    }
    return out;
}

}  // namespace repgeo
