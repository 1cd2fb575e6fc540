#include "doctest.h"

#include "cartan/vecfield.hpp"

using namespace cartan;

namespace {

RingPtr g2_ring()
{
    return make_ring(Field::rationals(), {{"x1", Parity::even, 1},
                                          {"x2", Parity::even, 1},
                                          {"x3", Parity::even, 2},
                                          {"x4", Parity::even, 3},
                                          {"x5", Parity::even, 3}});
}

RingPtr super_ring()
{
    return make_ring(Field::rationals(), {{"x1", Parity::even, 1},
                                          {"th1", Parity::odd, 1},
                                          {"th2", Parity::odd, 1},
                                          {"t", Parity::even, 2}});
}

}

TEST_CASE("bracket of coordinate fields")
{
    auto r = g2_ring();
    CHECK(bracket(VectorField::parse(r, "d1"), VectorField::parse(r, "x1*d2")) == VectorField::parse(r, "d2"));
    auto x1 = VectorField::parse(r, "d1 - x2*d3 - x1*x2*d4 - x2^(2)*d5");
    auto x2 = VectorField::parse(r, "d2");
    CHECK(bracket(x1, x2) == VectorField::parse(r, "d3 + x1*d4 + x2*d5"));
    CHECK(x1.weighted_degree() == -1);
}

TEST_CASE("pairing and origin values")
{
    auto r = g2_ring();
    auto w3 = OneForm::parse(r, "dx3 + x2*dx1");
    auto x3 = VectorField::parse(r, "d3 + x1*d4 + x2*d5");
    CHECK(pair(w3, x3) == Polynomial::parse(r, "1"));
    CHECK(pair(OneForm::parse(r, "dx1"), VectorField::parse(r, "d1")) == Polynomial::parse(r, "1"));
    auto v = x3.eval_at_origin();
    CHECK(v[2].is_one());
    CHECK(v[3].is_zero());
    for (const auto& s : VectorField::parse(r, "x1*d2").eval_at_origin()) {
        CHECK(s.is_zero());
    }
}

TEST_CASE("exterior derivative")
{
    auto r = g2_ring();
    CHECK(exterior_d(OneForm::parse(r, "dx1")).is_zero());
    auto w1 = OneForm::parse(r, "dx1");
    auto w2 = OneForm::parse(r, "dx2");
    auto w3 = OneForm::parse(r, "dx3 + x2*dx1");
    TwoForm expected = wedge(w1, w2);
    expected *= Scalar(r->field(), -1);
    CHECK(exterior_d(w3) == expected);
    auto w5 = OneForm::parse(r, "dx5 - x2*dx3 - x2^(2)*dx1");
    TwoForm e5 = wedge(w2, w3);
    e5 *= Scalar(r->field(), -1);
    CHECK(exterior_d(w5) == e5);
}

TEST_CASE("rendering round trip of fields and forms")
{
    auto r = super_ring();
    auto x = VectorField::parse(r, "dth1 - th1*dt + 2*x1*th2*d1");
    CHECK(VectorField::parse(r, x.str()) == x);
    auto w = OneForm::parse(r, "dt + th1*dth1 - x1^(2)*dx1");
    CHECK(OneForm::parse(r, w.str()) == w);
    CHECK_THROWS_AS(VectorField::parse(r, "x1 + dt"), ParseError);
    CHECK_THROWS_AS(VectorField::parse(r, "dt*x1"), ParseError);
}

TEST_CASE("super bracket")
{
    auto r = super_ring();
    auto x = VectorField::parse(r, "dth1 + th1*dt");
    // [X, X] = 2 X^2 = 2 dt
    CHECK(bracket(x, x) == VectorField::parse(r, "2*dt"));
    auto y = VectorField::parse(r, "dth1 - th1*dt");
    CHECK(bracket(x, y).is_zero());
    CHECK(bracket(y, y) == VectorField::parse(r, "-2*dt"));
}

TEST_CASE("hat operator")
{
    auto r = super_ring();
    auto y = VectorField::parse(r, "dth1 - th1*dt");
    auto f = Polynomial::parse(r, "th1");
    CHECK(apply_hat(y, f) == Polynomial::parse(r, "-1"));
    auto g = Polynomial::parse(r, "t");
    CHECK(apply_hat(y, g) == Polynomial::parse(r, "-th1"));
    auto e = VectorField::parse(r, "d1");
    CHECK(apply_hat(e, Polynomial::parse(r, "x1*th1")) == Polynomial::parse(r, "th1"));
}

TEST_CASE("unipotent inverse")
{
    auto r = g2_ring();
    std::vector<std::vector<Polynomial>> m(3, std::vector<Polynomial>(3, Polynomial(r)));
    for (std::size_t i = 0; i < 3; ++i) {
        m[i][i] = Polynomial::parse(r, "1");
    }
    m[2][0] = Polynomial::parse(r, "x2");
    m[2][1] = Polynomial::parse(r, "x1^(2)");
    m[1][0] = Polynomial::parse(r, "x3");
    auto inv = unipotent_inverse(m);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            Polynomial acc(r);
            for (std::size_t k = 0; k < 3; ++k) {
                acc += mul(m[i][k], inv[k][j]);
            }
            CHECK(acc == Polynomial::parse(r, i == j ? "1" : "0"));
        }
    }
}
