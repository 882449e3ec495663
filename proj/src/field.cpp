#include "repgeo/field.hpp"

namespace repgeo {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p)) throw AlgebraError("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

std::string Field::name() const {
    return is_rational() ? "Q" : "F" + std::to_string(p_);
}

namespace modp {

std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
    if (a % p == 0) throw AlgebraError("division by zero in F" + std::to_string(p));
    // Fermat: a^(p-2)
    std::uint32_t result = 1, base = a % p;
    std::uint32_t e = p - 2;
    while (e) {
        if (e & 1u) result = mul(result, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return result;
}

}  // namespace modp

Scalar::Scalar(Field field, std::int64_t value) : field_(field) {
    if (field_.is_rational())
        value_ = value;
    else
        residue_ = modp::reduce(value, field_.characteristic());
}

Scalar::Scalar(Field field, const Rational& value) : field_(field) {
    if (field_.is_rational()) {
        value_ = value;
    } else {
        std::uint32_t p = field_.characteristic();
        auto num = boost::multiprecision::numerator(value) % p;
        auto den = boost::multiprecision::denominator(value) % p;
        auto n = modp::reduce(num.convert_to<std::int64_t>(), p);
        auto d = modp::reduce(den.convert_to<std::int64_t>(), p);
        residue_ = modp::mul(n, modp::inv(d, p), p);
    }
}

bool Scalar::is_zero() const {
    return field_.is_rational() ? value_ == 0 : residue_ == 0;
}

bool Scalar::is_one() const {
    return field_.is_rational() ? value_ == 1 : residue_ == 1;
}

std::uint32_t Scalar::residue() const {
    if (field_.is_rational()) throw AlgebraError("residue() on a rational scalar");
    return residue_;
}

const Rational& Scalar::rational() const {
    if (!field_.is_rational()) throw AlgebraError("rational() on a modular scalar");
    return value_;
}

std::uint32_t Scalar::residue_mod(std::uint32_t p) const {
    if (!field_.is_rational()) {
        if (field_.characteristic() != p)
            throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs F" + std::to_string(p));
        return residue_;
    }
    return Scalar(Field::prime(p), value_).residue();
}

void Scalar::check_same(const Scalar& o) const {
    if (!(field_ == o.field_)) throw AlgebraError("field_mismatch", "field mismatch: " + field_.name() + " vs " + o.field_.name());
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (field_.is_rational())
        r.value_ = -value_;
    else
        r.residue_ = modp::neg(residue_, field_.characteristic());
    return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    if (field_.is_rational())
        r.value_ += o.value_;
    else
        r.residue_ = modp::add(residue_, o.residue_, field_.characteristic());
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    if (field_.is_rational())
        r.value_ -= o.value_;
    else
        r.residue_ = modp::sub(residue_, o.residue_, field_.characteristic());
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar r = *this;
    if (field_.is_rational())
        r.value_ *= o.value_;
    else
        r.residue_ = modp::mul(residue_, o.residue_, field_.characteristic());
    return r;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw AlgebraError("division by zero");
    Scalar r = *this;
    if (field_.is_rational())
        r.value_ = 1 / value_;
    else
        r.residue_ = modp::inv(residue_, field_.characteristic());
    return r;
}

Scalar Scalar::operator/(const Scalar& o) const {
    check_same(o);
    return *this * o.inverse();
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rational() ? value_ == o.value_ : residue_ == o.residue_;
}

bool Scalar::is_negative_literal() const {
    if (field_.is_rational()) return value_ < 0;
    return residue_ > field_.characteristic() / 2;
}

std::string Scalar::to_string() const {
    if (field_.is_rational()) return value_.str();
    std::int64_t v = residue_;
    if (is_negative_literal()) v -= field_.characteristic();
    return std::to_string(v);
}

}  // namespace repgeo
