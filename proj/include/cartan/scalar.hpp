#pragma once

// Exact coefficient fields: Q, Q(i), F_p and F_p(i) for p = 3 mod 4.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "cartan/error.hpp"

namespace cartan {

struct Field {
    std::uint32_t characteristic = 0;
    bool imaginary = false;

    static Field rationals() { return {}; }
    static Field gaussian() { return {0, true}; }
    static Field prime(std::uint32_t p, bool imaginary = false) { return {p, imaginary}; }

    /// Throws ArithmeticError when the descriptor does not name a field.
    void validate() const;

    /// "Q", "Q(i)", "F_5", "F_7(i)".
    std::string name() const;

    friend bool operator==(const Field&, const Field&) = default;
};

class Scalar {
public:
    Scalar() = default;
    Scalar(const Field& field, long value);
    Scalar(const Field& field, mpq_class re, mpq_class im = 0);

    static Scalar zero(const Field& field) { return Scalar(field, 0L); }
    static Scalar one(const Field& field) { return Scalar(field, 1L); }
    /// The imaginary unit; the field must adjoin it.
    static Scalar imaginary_unit(const Field& field);

    /// Accepts "3", "-1/2", "i", "-2i", "3+2i", "1/2-1/3i". Rationals are
    /// reduced into F_p when the field has positive characteristic.
    static Scalar parse(const Field& field, std::string_view text);

    const Field& field() const noexcept { return field_; }
    const mpq_class& real() const noexcept { return re_; }
    const mpq_class& imag() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const noexcept { return re_ == 1 && sgn(im_) == 0; }
    bool is_minus_one() const;

    Scalar operator-() const;
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar lhs, const Scalar& rhs) { return lhs += rhs; }
    friend Scalar operator-(Scalar lhs, const Scalar& rhs) { return lhs -= rhs; }
    friend Scalar operator*(Scalar lhs, const Scalar& rhs) { return lhs *= rhs; }
    friend Scalar operator/(Scalar lhs, const Scalar& rhs) { return lhs /= rhs; }

    friend bool operator==(const Scalar& a, const Scalar& b)
    {
        return a.field_ == b.field_ && a.re_ == b.re_ && a.im_ == b.im_;
    }

    /// Multiplication by (-1)^e.
    Scalar signed_by(int exponent) const { return (exponent & 1) ? -*this : *this; }

    /// Canonical text; round-trips through parse().
    std::string str() const;
    /// True when str() needs parentheses as a product factor ("3+2i").
    bool is_compound() const noexcept { return sgn(re_) != 0 && sgn(im_) != 0; }

private:
    void check_same_field(const Scalar& rhs) const;
    void normalize();

    Field field_{};
    mpq_class re_{0};
    mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Field element binom(n, k).
Scalar binomial(const Field& field, unsigned long n, unsigned long k);

} // namespace cartan
