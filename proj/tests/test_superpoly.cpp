#include "doctest.h"

#include "cartan/superpoly.hpp"

using namespace cartan;

namespace {

RingPtr even_ring(Field f = Field::rationals())
{
    return make_ring(f, {{"x1", Parity::even, 1}, {"x2", Parity::even, 1}, {"x3", Parity::even, 2}});
}

RingPtr odd_ring(Field f = Field::rationals())
{
    return make_ring(f, {{"t", Parity::even, 2},
                         {"th1", Parity::odd, 1},
                         {"th2", Parity::odd, 1},
                         {"th3", Parity::odd, 1}});
}

}

TEST_CASE("divided power products")
{
    auto r = even_ring();
    Polynomial x = Polynomial::variable(r, 0);
    Polynomial x2 = Polynomial::parse(r, "x1^(2)");
    CHECK(mul(x, x) == x2 * Scalar(r->field(), 2));
    CHECK(mul(x2, Polynomial::parse(r, "x1^(3)")) == Polynomial::parse(r, "10*x1^(5)"));
    CHECK(Polynomial::parse(r, "x1^2") == Polynomial::parse(r, "2*x1^(2)"));
    CHECK(partial(0, Polynomial::parse(r, "x1^(3)*x2")) == Polynomial::parse(r, "x1^(2)*x2"));
}

TEST_CASE("divided powers in characteristic p")
{
    auto r = even_ring(Field::prime(3));
    Polynomial x = Polynomial::variable(r, 0);
    Polynomial cube = mul(mul(x, x), x);
    CHECK(cube.is_zero());
    Polynomial d = Polynomial::parse(r, "x1^(3)");
    CHECK_FALSE(d.is_zero());
    CHECK(partial(0, d) == Polynomial::parse(r, "x1^(2)"));
}

TEST_CASE("odd variables anticommute")
{
    auto r = odd_ring();
    auto a = Polynomial::parse(r, "th1*th2");
    auto b = Polynomial::parse(r, "th2*th1");
    CHECK(a == -b);
    CHECK(Polynomial::parse(r, "th1*th1").is_zero());
    CHECK(mul(Polynomial::parse(r, "th2"), Polynomial::parse(r, "th1*th3")) ==
          -Polynomial::parse(r, "th1*th2*th3"));
    // left derivative
    CHECK(partial(2, Polynomial::parse(r, "th1*th2")) == -Polynomial::parse(r, "th1"));
    CHECK(partial(1, Polynomial::parse(r, "th1*th2")) == Polynomial::parse(r, "th2"));
}

TEST_CASE("leibniz rule with signs")
{
    auto r = odd_ring();
    auto f = Polynomial::parse(r, "th1 + t*th3");
    auto g = Polynomial::parse(r, "th2*th3 + t^(2)");
    for (std::size_t i = 0; i < r->size(); ++i) {
        // d(fg) = d(f) g + (-1)^{p(i)p(f)} f d(g), f odd
        Polynomial lhs = partial(i, mul(f, g));
        Polynomial rhs = mul(partial(i, f), g);
        Polynomial second = mul(f, partial(i, g));
        rhs += r->parity(i) == Parity::odd ? -second : second;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("antiderivative inverts partial")
{
    auto r = odd_ring();
    auto f = Polynomial::parse(r, "th1 + t*th3 - 2*t^(2)");
    for (std::size_t i : {0, 2}) {
        Polynomial g = f.parity_part(Parity::even);
        if (i == 2) {
            g = Polynomial::parse(r, "th1 + t*th3");
        }
        CHECK(partial(i, antiderivative(i, g)) == g);
    }
}

namespace {

// f*(eta) = int exp(sum eta_i xi_i) f(xi) vol(xi), expanded in a ring with
// eta_1..eta_m listed before xi_1..xi_m so that every surviving monomial
// reads eta_J xi_1...xi_m and the integral keeps eta_J.
Polynomial berezin_oracle(const Polynomial& f, std::size_t m)
{
    std::vector<Variable> vars;
    for (std::size_t i = 1; i <= m; ++i) {
        vars.push_back({"eta" + std::to_string(i), Parity::odd, 1});
    }
    for (std::size_t i = 1; i <= m; ++i) {
        vars.push_back({"xi" + std::to_string(i), Parity::odd, 1});
    }
    auto big = make_ring(f.ring()->field(), vars);
    Polynomial kernel = Polynomial::constant(big, big->one());
    for (std::size_t i = 0; i < m; ++i) {
        kernel = kernel * (Polynomial::constant(big, big->one()) +
                           Polynomial::variable(big, i) * Polynomial::variable(big, m + i));
    }
    Polynomial lifted(big);
    for (const auto& [mono, c] : f.terms()) {
        std::vector<std::uint16_t> e(2 * m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            e[m + i] = static_cast<std::uint16_t>(mono.exponent(i));
        }
        lifted.add_term(big->monomial(e), c);
    }
    Polynomial out(f.ring());
    Polynomial product = kernel * lifted;
    for (const auto& [mono, c] : product.terms()) {
        bool full = true;
        std::vector<std::uint16_t> e(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            full = full && mono.exponent(m + i) == 1;
            e[i] = static_cast<std::uint16_t>(mono.exponent(i));
        }
        if (full) {
            out.add_term(f.ring()->monomial(e), c);
        }
    }
    return out;
}

} // namespace

TEST_CASE("hodge star agrees with the Berezin integral")
{
    for (std::size_t m : {3u, 6u}) {
        std::vector<Variable> vars;
        for (std::size_t i = 1; i <= m; ++i) {
            vars.push_back({"th" + std::to_string(i), Parity::odd, 1});
        }
        auto r = make_ring(Field::rationals(), vars);
        for (unsigned mask = 0; mask < (1u << m); ++mask) {
            std::vector<std::uint16_t> e(m, 0);
            for (std::size_t i = 0; i < m; ++i) {
                e[i] = (mask >> i) & 1u;
            }
            Polynomial f = Polynomial::term(r, r->monomial(e), r->one());
            Polynomial star = hodge_star(f);
            INFO(f.str(), " -> ", star.str(), " vs ", berezin_oracle(f, m).str());
            CHECK(star == berezin_oracle(f, m));
            Polynomial twice = hodge_star(star);
            CHECK((twice == f || twice == -f));
        }
        if (m == 6) {
            CHECK(hodge_star(Polynomial::parse(r, "th1*th2*th3")) == Polynomial::parse(r, "th4*th5*th6"));
            CHECK(hodge_star(Polynomial::parse(r, "1")) == -Polynomial::parse(r, "th1*th2*th3*th4*th5*th6"));
        }
    }
}

TEST_CASE("hodge star")
{
    auto r = odd_ring();
    CHECK(hodge_star(Polynomial::parse(r, "th2"), {0}) == Polynomial::parse(r, "th1*th3"));
    CHECK(hodge_star(Polynomial::parse(r, "1"), {0}) == -Polynomial::parse(r, "th1*th2*th3"));
    CHECK(hodge_star(Polynomial::parse(r, "t*th1*th2*th3"), {0}) == Polynomial::parse(r, "t"));
    CHECK_THROWS(hodge_star(Polynomial::parse(r, "th1")));
}

TEST_CASE("parity operator and parts")
{
    auto r = odd_ring();
    auto f = Polynomial::parse(r, "t + th1 + th1*th2");
    CHECK(f.parity_twist() == Polynomial::parse(r, "t - th1 + th1*th2"));
    CHECK_FALSE(f.parity().has_value());
    CHECK(f.parity_part(Parity::odd) == Polynomial::parse(r, "th1"));
}

TEST_CASE("rendering round trip")
{
    Field g = Field::gaussian();
    auto r = odd_ring(g);
    for (const char* s : {"t^(3) - 2*th1*th2", "(1+i)*t*th3 + i*th1", "-1/2*t + 3", "0"}) {
        Polynomial p = Polynomial::parse(r, s);
        CHECK(Polynomial::parse(r, p.str()) == p);
    }
    CHECK(Polynomial::parse(r, "t^(2) - th1*th2").str() == "-th1*th2 + t^(2)");
    CHECK_THROWS_AS(Polynomial::parse(r, "y"), ParseError);
    CHECK_THROWS_AS(Polynomial::parse(r, "t +"), ParseError);
}

TEST_CASE("monomial enumeration by weight")
{
    auto r = odd_ring();
    auto ms = r->monomials_of_weight(2);
    // t, th_i th_j (3)
    CHECK(ms.size() == 4);
    CHECK(r->monomials_of_weight(2, Parity::odd).empty());
}

TEST_CASE("affine polynomial equations")
{
    auto r = even_ring();
    AffinePolynomial a = AffinePolynomial::unknown(r, 0, Polynomial::parse(r, "x1"));
    a += AffinePolynomial::unknown(r, 1, Polynomial::parse(r, "x1 + x2"));
    a -= AffinePolynomial(Polynomial::parse(r, "x2"));
    LinearSystem sys{r->field(), 2, {}, {}, {}};
    a.append_equations(sys);
    auto s = solve(sys, SolvePolicy::free_vars_zero);
    CHECK(a.evaluate(*s.particular).is_zero());
}
