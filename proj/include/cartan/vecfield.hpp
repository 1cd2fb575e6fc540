#pragma once

// Polynomial vector fields, 1-forms and 2-forms on a weighted superspace.
//
// A field is X = sum_a X^a d_a with coefficients written on the left of d_a.
// A 1-form is w = sum_a w_a dx^a and pairs with a field by w(X) = sum_a X^a w_a.
// 2-forms are stored by components W_ab for a <= b (a == b only for odd a).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/superpoly.hpp"

namespace cartan {

class VectorField {
public:
    VectorField() = default;
    explicit VectorField(RingPtr ring);
    VectorField(RingPtr ring, std::vector<Polynomial> coefficients);

    /// d_i
    static VectorField coordinate(RingPtr ring, std::size_t i);
    /// Parses "d1 - x2*d3 - x1*x2*d4 - x2^(2)*d5".
    static VectorField parse(RingPtr ring, std::string_view text);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const Polynomial& coefficient(std::size_t a) const { return coeffs_.at(a); }
    const std::vector<Polynomial>& coefficients() const noexcept { return coeffs_; }
    void set_coefficient(std::size_t a, Polynomial p);

    bool is_zero() const;
    /// Parity when every term agrees.
    std::optional<Parity> parity() const;
    /// Weighted degree when homogeneous: deg(coefficient of d_a) - weight(a).
    std::optional<int> weighted_degree() const;
    /// Component of standard degree p: coefficients of standard degree p + 1.
    VectorField standard_part(int p) const;
    /// Largest standard degree present (-2 for the zero field).
    int max_standard_degree() const;
    VectorField parity_part(Parity p) const;
    VectorField weighted_part(int degree) const;

    /// X(f) = sum_a X^a d_a(f)
    Polynomial apply(const Polynomial& f) const;
    /// Constant terms of the coefficients.
    std::vector<Scalar> eval_at_origin() const;

    VectorField& operator+=(const VectorField& rhs);
    VectorField& operator-=(const VectorField& rhs);
    VectorField& operator*=(const Scalar& c);
    VectorField operator-() const;
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    friend VectorField operator*(VectorField a, const Scalar& c) { return a *= c; }
    friend VectorField operator*(const Scalar& c, VectorField a) { return a *= c; }
    friend bool operator==(const VectorField& a, const VectorField& b);

    /// f * X
    VectorField left_multiply(const Polynomial& f) const;

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Polynomial> coeffs_;
};

/// Super commutator [X, Y] = XY - (-1)^{p(X)p(Y)} YX.
VectorField bracket(const VectorField& x, const VectorField& y);

/// Y(P f) for odd Y, Y(f) for even Y, where P multiplies odd monomials by -1.
Polynomial apply_hat(const VectorField& y, const Polynomial& f);

class OneForm {
public:
    OneForm() = default;
    explicit OneForm(RingPtr ring);
    OneForm(RingPtr ring, std::vector<Polynomial> coefficients);

    static OneForm coordinate(RingPtr ring, std::size_t a);
    /// Parses "dx3 + x2*dx1".
    static OneForm parse(RingPtr ring, std::string_view text);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    const Polynomial& coefficient(std::size_t a) const { return coeffs_.at(a); }
    const std::vector<Polynomial>& coefficients() const noexcept { return coeffs_; }
    void set_coefficient(std::size_t a, Polynomial p);

    bool is_zero() const;
    std::optional<Parity> parity() const;

    OneForm& operator+=(const OneForm& rhs);
    OneForm& operator-=(const OneForm& rhs);
    OneForm& operator*=(const Scalar& c);
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    friend bool operator==(const OneForm& a, const OneForm& b);

    std::string str() const;

private:
    RingPtr ring_;
    std::vector<Polynomial> coeffs_;
};

/// w(X) = sum_a X^a w_a
Polynomial pair(const OneForm& w, const VectorField& x);

class TwoForm {
public:
    TwoForm() = default;
    explicit TwoForm(RingPtr ring);

    const RingPtr& ring() const noexcept { return ring_; }
    std::size_t size() const noexcept { return n_; }
    /// Component for a <= b.
    const Polynomial& component(std::size_t a, std::size_t b) const;
    void add_to(std::size_t a, std::size_t b, const Polynomial& p);

    bool is_zero() const;
    /// First nonzero component (a, b), if any.
    std::optional<std::pair<std::size_t, std::size_t>> first_nonzero() const;

    TwoForm& operator+=(const TwoForm& rhs);
    TwoForm& operator-=(const TwoForm& rhs);
    TwoForm& operator*=(const Scalar& c);
    friend TwoForm operator+(TwoForm a, const TwoForm& b) { return a += b; }
    friend TwoForm operator-(TwoForm a, const TwoForm& b) { return a -= b; }
    friend bool operator==(const TwoForm& a, const TwoForm& b);

    std::string str() const;

private:
    std::size_t index(std::size_t a, std::size_t b) const;

    RingPtr ring_;
    std::size_t n_ = 0;
    std::vector<Polynomial> comps_;
};

/// d(w)_ab = d_a w_b - (-1)^{p_a p_b} d_b w_a
TwoForm exterior_d(const OneForm& w);

/// The 2-form with components (-1)^{p(u)(p_b + p(v))} u_a v_b for a <= b,
/// i.e. the (a, b) evaluation of u (x) v; u and v must have definite parity.
TwoForm tensor_part(const OneForm& u, const OneForm& v);

/// u ^ v = tensor_part(u, v) - (-1)^{p(u)p(v)} tensor_part(v, u)
TwoForm wedge(const OneForm& u, const OneForm& v);

/// Two-sided inverse of I + N for a matrix whose off-diagonal part N is
/// nilpotent (entries [row][col]); products keep row entries on the left.
std::vector<std::vector<Polynomial>> unipotent_inverse(const std::vector<std::vector<Polynomial>>& m);

} // namespace cartan
