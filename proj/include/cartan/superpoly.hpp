#pragma once

// Divided-power polynomial superalgebra in weighted even and odd indeterminates.
//
// Even generators use the divided-power basis x^(k) with
//     x^(a) * x^(b) = binom(a+b, a) x^(a+b),   d/dx x^(k) = x^(k-1),
// in every characteristic; over Q, x^(k) stands for x^k/k!. Odd generators
// square to zero and anticommute. Monomials store odd generators in ascending
// index order; reordering signs are produced by the operations, never stored.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/linear_system.hpp"
#include "cartan/scalar.hpp"

namespace cartan {

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline int bit(Parity p) noexcept { return static_cast<int>(p); }
inline Parity parity_of(int b) noexcept { return (b & 1) ? Parity::odd : Parity::even; }
inline Parity operator+(Parity a, Parity b) noexcept { return parity_of(bit(a) + bit(b)); }

struct Variable {
    std::string name;
    Parity parity = Parity::even;
    int weight = 1;
};

class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n) : exps_(n, 0) {}

    std::size_t size() const noexcept { return exps_.size(); }
    unsigned exponent(std::size_t i) const { return exps_[i]; }
    int weight() const noexcept { return weight_; }
    Parity parity() const noexcept { return parity_of(odd_count_); }
    int standard_degree() const noexcept { return standard_degree_; }
    bool is_one() const noexcept { return standard_degree_ == 0; }

    /// Graded order: weighted degree, then lexicographic on exponents.
    friend auto operator<=>(const Monomial& a, const Monomial& b)
    {
        if (auto c = a.weight_ <=> b.weight_; c != 0) {
            return c;
        }
        return a.exps_ <=> b.exps_;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

private:
    friend class Ring;
    std::vector<std::uint16_t> exps_;
    int weight_ = 0;
    int odd_count_ = 0;
    int standard_degree_ = 0;
};

/// Coefficient field plus the table of indeterminates.
class Ring {
public:
    Ring(Field field, std::vector<Variable> variables);

    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return vars_.size(); }
    const Variable& variable(std::size_t i) const { return vars_.at(i); }
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    Parity parity(std::size_t i) const { return vars_.at(i).parity; }
    int weight(std::size_t i) const { return vars_.at(i).weight; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    Scalar zero() const { return Scalar::zero(field_); }
    Scalar one() const { return Scalar::one(field_); }

    /// Monomial with the given exponents; odd exponents must be 0 or 1.
    Monomial monomial(std::vector<std::uint16_t> exps) const;
    Monomial one_monomial() const { return monomial(std::vector<std::uint16_t>(size(), 0)); }
    Monomial generator(std::size_t i) const;

    /// m1 * m2 as (coefficient, monomial); nullopt when the product vanishes.
    std::optional<std::pair<Scalar, Monomial>> multiply(const Monomial& a, const Monomial& b) const;
    /// d/dx_i m as (coefficient, monomial); nullopt when zero.
    std::optional<std::pair<Scalar, Monomial>> derive(std::size_t i, const Monomial& m) const;
    /// M with d/dx_i M = m, divided-power antiderivative; nullopt when m already contains odd x_i.
    std::optional<std::pair<Scalar, Monomial>> antiderive(std::size_t i, const Monomial& m) const;

    /// All monomials of the given weighted degree (and parity when given), ascending.
    std::vector<Monomial> monomials_of_weight(int weight, std::optional<Parity> parity = {},
                                              const std::vector<bool>& allowed = {}) const;

    std::string monomial_str(const Monomial& m) const;
    /// Rendering of d/dx_i: "d3" for x3, "dt" for t.
    std::string derivation_symbol(std::size_t i) const;
    /// Rendering of dx_i: "dx3", "dt".
    std::string differential_symbol(std::size_t i) const;

private:
    Field field_;
    std::vector<Variable> vars_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(Field field, std::vector<Variable> variables);

class Polynomial {
public:
    using Terms = std::map<Monomial, Scalar>;

    Polynomial() = default;
    explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

    static Polynomial constant(RingPtr ring, const Scalar& c);
    static Polynomial variable(RingPtr ring, std::size_t i);
    static Polynomial term(RingPtr ring, const Monomial& m, const Scalar& c);
    /// Parses text such as "x1^(3) - 2*x1*x2 + (1+i)*th1*th2".
    static Polynomial parse(RingPtr ring, std::string_view text);

    const RingPtr& ring() const noexcept { return ring_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Scalar coefficient(const Monomial& m) const;
    Scalar constant_term() const;
    /// Parity when all monomials agree (zero counts as even).
    std::optional<Parity> parity() const;
    /// Weighted degree when homogeneous (nullopt for zero or mixed).
    std::optional<int> weighted_degree() const;

    void add_term(const Monomial& m, const Scalar& c);

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Scalar& c);
    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
    friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b);

    /// Part of given parity.
    Polynomial parity_part(Parity p) const;
    /// Parity operator: multiplies each monomial by (-1)^{parity}.
    Polynomial parity_twist() const;
    /// Terms whose monomials have the given standard (total) degree.
    Polynomial standard_part(int degree) const;
    Polynomial weighted_part(int degree) const;

    std::string str() const;

private:
    void check_ring(const Polynomial& rhs) const;

    RingPtr ring_;
    Terms terms_;
};

Polynomial mul(const Polynomial& f, const Polynomial& g);
Polynomial partial(std::size_t i, const Polynomial& f);
/// Sign-twisted derivative (-1)^{p(f) p(d_i)} d_i f; f must have definite parity.
Polynomial nabla(std::size_t i, const Polynomial& f);
/// Divided-power antiderivative term by term (see Ring::antiderive).
Polynomial antiderivative(std::size_t i, const Polynomial& f);

/// Odd Hodge star, the Fourier transform f*(eta) = int exp(sum eta_i xi_i) f(xi) vol(xi)
/// with int xi_1...xi_m vol = 1:
///     theta_I -> (-1)^{k(k-1)/2 + k(m-k)} sign(I, I^c) theta_{I^c},  k = |I^c|.
/// Even variables must be listed in `parameters`; they pass through unchanged.
Polynomial hodge_star(const Polynomial& f, const std::vector<std::size_t>& parameters = {});

/// A polynomial whose coefficients are affine functions of scalar unknowns:
/// constant + sum_k u_k * part_k.
class AffinePolynomial {
public:
    AffinePolynomial() = default;
    explicit AffinePolynomial(RingPtr ring) : ring_(ring), constant_(std::move(ring)) {}
    AffinePolynomial(const Polynomial& constant) : ring_(constant.ring()), constant_(constant) {}

    static AffinePolynomial unknown(RingPtr ring, std::size_t u, const Polynomial& part);

    const RingPtr& ring() const noexcept { return ring_; }
    const Polynomial& constant() const noexcept { return constant_; }
    const std::map<std::size_t, Polynomial>& parts() const noexcept { return parts_; }
    bool is_zero() const noexcept { return constant_.is_zero() && parts_.empty(); }

    AffinePolynomial& operator+=(const AffinePolynomial& rhs);
    AffinePolynomial& operator-=(const AffinePolynomial& rhs);
    AffinePolynomial& operator*=(const Scalar& c);
    friend AffinePolynomial operator+(AffinePolynomial a, const AffinePolynomial& b) { return a += b; }
    friend AffinePolynomial operator-(AffinePolynomial a, const AffinePolynomial& b) { return a -= b; }
    friend AffinePolynomial operator*(AffinePolynomial a, const Scalar& c) { return a *= c; }

    /// Applies a scalar-linear map to every part.
    AffinePolynomial map(const std::function<Polynomial(const Polynomial&)>& f) const;
    AffinePolynomial left_multiply(const Polynomial& g) const;
    AffinePolynomial right_multiply(const Polynomial& g) const;

    /// Value after substituting the unknowns.
    Polynomial evaluate(const DenseVector& values) const;

    /// Appends one row per monomial expressing "this == 0".
    void append_equations(LinearSystem& system) const;

private:
    RingPtr ring_;
    Polynomial constant_;
    std::map<std::size_t, Polynomial> parts_;
};

namespace detail {

/// Parses "poly*SYM + poly*SYM + ..." where SYM is recognized by `slot_of`.
/// Returns the slotless remainder and one polynomial per slot.
std::pair<Polynomial, std::vector<Polynomial>>
parse_slotted(const RingPtr& ring, std::string_view text, std::size_t slots,
              const std::function<std::optional<std::size_t>(std::string_view)>& slot_of);

/// Coefficient text as a product prefix: "" for 1, "-" for -1, "3*", "(1+i)*".
std::string coefficient_prefix(const Scalar& c);

/// Joins rendered terms "a", "-b" into "a - b".
std::string join_terms(const std::vector<std::string>& terms);

} // namespace detail

} // namespace cartan
