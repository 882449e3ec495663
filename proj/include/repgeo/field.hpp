#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "repgeo/errors.hpp"

namespace repgeo {

using Rational = boost::multiprecision::cpp_rational;

bool is_prime(std::uint64_t n);

/// Coefficient field: either F_p for a prime p, or Q (stored as p == 0).
class Field {
public:
    Field() = default;

    static Field rationals() { return Field(0); }
    static Field prime(std::uint32_t p);

    bool is_rational() const { return p_ == 0; }
    std::uint32_t characteristic() const { return p_; }
    std::string name() const;

    bool operator==(const Field&) const = default;

private:
    explicit Field(std::uint32_t p) : p_(p) {}
    std::uint32_t p_ = 0;
};

namespace modp {

inline std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}
inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p ? s - p : s);
}
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return a >= b ? a - b : static_cast<std::uint32_t>(std::uint64_t{a} + p - b);
}
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
    return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}
inline std::uint32_t neg(std::uint32_t a, std::uint32_t p) { return a == 0 ? 0 : p - a; }
std::uint32_t inv(std::uint32_t a, std::uint32_t p);

}  // namespace modp

/// Exact element of a Field. F_p values live in [0, p); Q values are reduced fractions.
class Scalar {
public:
    Scalar() = default;
    Scalar(Field field, std::int64_t value);
    Scalar(Field field, const Rational& value);

    static Scalar zero(Field field) { return Scalar(field, std::int64_t{0}); }
    static Scalar one(Field field) { return Scalar(field, std::int64_t{1}); }

    Field field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Residue in [0, p); only valid over F_p.
    std::uint32_t residue() const;
    /// Exact value over Q; only valid over Q.
    const Rational& rational() const;
    /// Image in F_p for any prime p: F_p values must match p, Q values need a denominator prime to p.
    std::uint32_t residue_mod(std::uint32_t p) const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar inverse() const;

    bool operator==(const Scalar& o) const;

    /// Signed representative: F_p residues print in (-p/2, p/2], rationals as a or a/b.
    std::string to_string() const;
    bool is_negative_literal() const;

private:
    void check_same(const Scalar& o) const;

    Field field_;
    std::uint32_t residue_ = 0;
    Rational value_;
};

}  // namespace repgeo
