#include "cartan/scalar.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace cartan {

ValidationError::ValidationError(std::vector<std::string> witnesses)
    : Error([&] {
          std::string msg = "validation failed";
          for (const auto& w : witnesses) {
              msg += "\n  ";
              msg += w;
          }
          return msg;
      }()),
      witnesses_(std::move(witnesses))
{
}

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::uint32_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

mpq_class reduce_mod(const mpq_class& q, std::uint32_t p)
{
    mpz_class modulus(p);
    mpz_class num = q.get_num() % modulus;
    mpz_class den = q.get_den() % modulus;
    if (den == 0) {
        throw ArithmeticError("denominator of " + q.get_str() + " vanishes modulo " +
                              std::to_string(p));
    }
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
    mpz_class r = (num * inv) % modulus;
    if (r < 0) {
        r += modulus;
    }
    return mpq_class(r);
}

std::string rational_str(const mpq_class& q)
{
    return q.get_str();
}

} // namespace

void Field::validate() const
{
    if (characteristic != 0 && !is_prime(characteristic)) {
        throw ArithmeticError("characteristic " + std::to_string(characteristic) +
                              " is not prime");
    }
    if (imaginary && characteristic == 2) {
        throw ArithmeticError("adjoining i is trivial in characteristic 2");
    }
    if (imaginary && characteristic % 4 == 1) {
        throw ArithmeticError("x^2+1 splits modulo " + std::to_string(characteristic) +
                              "; F_p(i) is not a field");
    }
}

std::string Field::name() const
{
    std::string base = characteristic == 0 ? "Q" : "F_" + std::to_string(characteristic);
    return imaginary ? base + "(i)" : base;
}

Scalar::Scalar(const Field& field, long value) : field_(field), re_(value), im_(0)
{
    normalize();
}

Scalar::Scalar(const Field& field, mpq_class re, mpq_class im)
    : field_(field), re_(std::move(re)), im_(std::move(im))
{
    re_.canonicalize();
    im_.canonicalize();
    if (!field_.imaginary && sgn(im_) != 0) {
        throw ArithmeticError("imaginary part in field " + field_.name());
    }
    normalize();
}

Scalar Scalar::imaginary_unit(const Field& field)
{
    if (!field.imaginary) {
        throw ArithmeticError("field " + field.name() + " does not contain i");
    }
    return Scalar(field, 0, 1);
}

void Scalar::normalize()
{
    if (field_.characteristic != 0) {
        re_ = reduce_mod(re_, field_.characteristic);
        im_ = reduce_mod(im_, field_.characteristic);
    }
}

void Scalar::check_same_field(const Scalar& rhs) const
{
    if (!(field_ == rhs.field_)) {
        throw ArithmeticError("mixed-field operands: " + field_.name() + " and " +
                              rhs.field_.name());
    }
}

bool Scalar::is_minus_one() const
{
    return (-*this).is_one();
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    r.re_ = -r.re_;
    r.im_ = -r.im_;
    r.normalize();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs)
{
    check_same_field(rhs);
    re_ += rhs.re_;
    im_ += rhs.im_;
    if (field_.characteristic != 0) {
        normalize();
    }
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs)
{
    check_same_field(rhs);
    re_ -= rhs.re_;
    im_ -= rhs.im_;
    if (field_.characteristic != 0) {
        normalize();
    }
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs)
{
    check_same_field(rhs);
    if (sgn(im_) == 0 && sgn(rhs.im_) == 0) {
        re_ *= rhs.re_;
    } else {
        mpq_class re = re_ * rhs.re_ - im_ * rhs.im_;
        mpq_class im = re_ * rhs.im_ + im_ * rhs.re_;
        re_ = std::move(re);
        im_ = std::move(im);
    }
    if (field_.characteristic != 0) {
        normalize();
    }
    return *this;
}

Scalar Scalar::inverse() const
{
    if (is_zero()) {
        throw ArithmeticError("division by zero in " + field_.name());
    }
    mpq_class norm = re_ * re_ + im_ * im_;
    Scalar r = *this;
    if (field_.characteristic == 0) {
        r.re_ = re_ / norm;
        r.im_ = -im_ / norm;
        return r;
    }
    mpq_class n = reduce_mod(norm, field_.characteristic);
    mpz_class inv;
    mpz_class modulus(field_.characteristic);
    mpz_class nz = n.get_num();
    if (mpz_invert(inv.get_mpz_t(), nz.get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw ArithmeticError("zero divisor in " + field_.name());
    }
    r.re_ = re_ * mpq_class(inv);
    r.im_ = -im_ * mpq_class(inv);
    r.normalize();
    return r;
}

Scalar& Scalar::operator/=(const Scalar& rhs)
{
    check_same_field(rhs);
    return *this *= rhs.inverse();
}

Scalar Scalar::parse(const Field& field, std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s.push_back(c);
        }
    }
    // Normalize unicode minus.
    for (std::size_t pos; (pos = s.find("\xe2\x88\x92")) != std::string::npos;) {
        s.replace(pos, 3, "-");
    }
    if (s.empty()) {
        throw ParseError("empty scalar");
    }
    // Split into at most two signed parts: [real][(+|-)imag i].
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
            split = k;
        }
    }
    auto parse_part = [&](std::string part, mpq_class& re, mpq_class& im) {
        bool imag = !part.empty() && part.back() == 'i';
        if (imag) {
            part.pop_back();
            if (!part.empty() && part.back() == '*') {
                part.pop_back();
            }
        }
        if (part.empty() || part == "+" || part == "-") {
            part += "1";
        }
        if (part[0] == '+') {
            part.erase(0, 1);
        }
        for (std::size_t k = 0; k < part.size(); ++k) {
            char c = part[k];
            bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
                      (c == '-' && k == 0);
            if (!ok) {
                throw ParseError("malformed scalar '" + std::string(text) + "'");
            }
        }
        mpq_class q;
        if (q.set_str(part, 10) != 0) {
            throw ParseError("malformed scalar '" + std::string(text) + "'");
        }
        if (q.get_den() == 0) {
            throw ParseError("zero denominator in '" + std::string(text) + "'");
        }
        q.canonicalize();
        (imag ? im : re) += q;
    };
    mpq_class re = 0;
    mpq_class im = 0;
    if (split == std::string::npos) {
        parse_part(s, re, im);
    } else {
        parse_part(s.substr(0, split), re, im);
        parse_part(s.substr(split), re, im);
    }
    if (sgn(im) != 0 && !field.imaginary) {
        throw ParseError("scalar '" + std::string(text) + "' needs i but field is " +
                         field.name());
    }
    return Scalar(field, re, im);
}

std::string Scalar::str() const
{
    // In F_p print the symmetric residue so that -1 reads as -1.
    auto show = [&](const mpq_class& q) {
        if (field_.characteristic != 0) {
            mpz_class v = q.get_num();
            mpz_class p(field_.characteristic);
            if (2 * v > p) {
                v -= p;
            }
            return v.get_str();
        }
        return rational_str(q);
    };
    bool has_re = sgn(re_) != 0;
    bool has_im = sgn(im_) != 0;
    if (!has_re && !has_im) {
        return "0";
    }
    std::string out;
    if (has_re) {
        out = show(re_);
    }
    if (has_im) {
        std::string v = show(im_);
        if (v == "1") {
            v = "";
        } else if (v == "-1") {
            v = "-";
        }
        if (has_re && (v.empty() || v[0] != '-')) {
            out += "+";
        }
        out += v + "i";
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s)
{
    return os << s.str();
}

Scalar binomial(const Field& field, unsigned long n, unsigned long k)
{
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Scalar(field, mpq_class(b));
}

} // namespace cartan
