#include "doctest.h"

#include "cartan/centralize.hpp"
#include "test_support.hpp"

using namespace cartan;
using namespace cartan::testing;

TEST_CASE("g(2) centralizer and coframe")
{
    auto r = solve_forms(g2_spec());
    auto c = centralize(r);
    const char* ys[] = {"d1 + x3*d4", "d2 - x1*d3 - x1^(2)*d4 + x3*d5", "d3", "d4", "d5"};
    const char* th[] = {"dx1", "dx2", "dx3 + x1*dx2", "dx4 - x3*dx1 + x1^(2)*dx2", "dx5 - x3*dx2"};
    for (std::size_t k = 0; k < 5; ++k) {
        INFO(k, " ", c.fields[k].str(), " | ", c.forms[k].str());
        CHECK(c.fields[k] == VectorField::parse(r.ring, ys[k]));
        CHECK(c.forms[k] == OneForm::parse(r.ring, th[k]));
    }
    CHECK(coframe_defects(r, c).empty());
}

TEST_CASE("Heisenberg centralizer matches the contact frame")
{
    // explicit fields X_q = dq + p dt, X_p = dp - q dt
    auto spec = heisenberg_spec(2);
    auto ring = spec.coordinate_ring();
    std::vector<VectorField> xs = {
        VectorField::parse(ring, "dq1 + p1*dt"), VectorField::parse(ring, "dq2 + p2*dt"),
        VectorField::parse(ring, "dp1 - q1*dt"), VectorField::parse(ring, "dp2 - q2*dt"),
        VectorField::parse(ring, "dt")};
    auto r = ingest_fields(spec, ring, xs);
    auto c = centralize(r);
    CHECK(c.fields[0] == VectorField::parse(ring, "dq1 - p1*dt"));
    CHECK(c.fields[2] == VectorField::parse(ring, "dp1 + q1*dt"));
    CHECK(c.forms[4] == OneForm::parse(ring, "dt + p1*dq1 + p2*dq2 - q1*dp1 - q2*dp2"));
    CHECK(coframe_defects(r, c).empty());
}

TEST_CASE("odd Heisenberg centralizer")
{
    auto r = solve_forms(odd_heisenberg_spec(3));
    auto c = centralize(r);
    CHECK(r.fields[0] == VectorField::parse(r.ring, "dth1 + th1*dt"));
    CHECK(c.fields[0] == VectorField::parse(r.ring, "dth1 - th1*dt"));
    CHECK(coframe_defects(r, c).empty());
}

TEST_CASE("depth one centralizer is the coordinate frame")
{
    auto r = solve_forms(abelian_spec(3));
    auto c = centralize(r);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(c.fields[i] == VectorField::coordinate(r.ring, i));
        CHECK(c.forms[i] == OneForm::coordinate(r.ring, i));
    }
}
