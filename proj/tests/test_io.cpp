#include "doctest.h"

#include "cartan/io.hpp"

using namespace cartan;

namespace {

io::Json fixture(const std::string& name)
{
    return io::load_file(std::string(CARTAN_FIXTURE_DIR) + "/" + name);
}

const char* const spec_fixtures[] = {"g2.json",          "heisenberg-n1.json", "heisenberg-n2.json",
                                     "abelian-n3.json",  "depth1-n2.json",     "depth1-n3.json",
                                     "super-depth1.json", "he16.json",         "contact-char5.json",
                                     "contact-char2.json"};

} // namespace

TEST_CASE("every fixture spec validates and round-trips")
{
    for (const char* name : spec_fixtures) {
        INFO(name);
        auto spec = io::spec_from_json(fixture(name));
        CHECK(validate(spec).ok());
        auto again = io::spec_from_json(io::spec_to_json(spec));
        REQUIRE(again.size() == spec.size());
        for (std::size_t i = 0; i < spec.size(); ++i) {
            CHECK(again.generator(i).coordinate_name() == spec.generator(i).coordinate_name());
            for (std::size_t j = 0; j < spec.size(); ++j) {
                CHECK(again.bracket(i, j) == spec.bracket(i, j));
            }
        }
    }
}

TEST_CASE("realization JSON re-ingests to the same data")
{
    for (const char* name : spec_fixtures) {
        INFO(name);
        Realization r = io::realization_from_json(fixture(name));
        io::Json dumped = io::realization_to_json(r);
        Realization back = io::realization_from_json(io::Json::parse(dumped.dump()));
        REQUIRE(back.fields.size() == r.fields.size());
        for (std::size_t k = 0; k < r.fields.size(); ++k) {
            CHECK(back.fields[k].str() == r.fields[k].str());
            CHECK(back.forms[k].str() == r.forms[k].str());
        }
        auto dims = [](const Realization& x) {
            std::vector<std::size_t> out;
            for (const auto& c : complete_prolong(Prolongation(x), 1, false).components) {
                out.push_back(c.dim());
            }
            return out;
        };
        CHECK(dims(back) == dims(r));
    }
}

TEST_CASE("field descriptors and overrides")
{
    CHECK(io::parse_field("0") == Field::rationals());
    CHECK(io::parse_field("0,i") == Field::gaussian());
    CHECK(io::parse_field("7,i") == Field::prime(7, true));
    CHECK_THROWS_AS(io::parse_field("5,i"), ParseError);
    CHECK_THROWS_AS(io::parse_field("2,i"), ParseError);
    CHECK_THROWS_AS(io::parse_field("6"), ParseError);
    CHECK_THROWS_AS(io::parse_field("x"), ParseError);
    auto spec = io::spec_from_json(fixture("heisenberg-n1.json"), Field::prime(5));
    CHECK(spec.field() == Field::prime(5));
    CHECK(spec.c(0, 1, 2) == Scalar(Field::prime(5), 3L));
}

TEST_CASE("schema errors are distinguished from invalid algebras")
{
    io::Json doc = fixture("g2.json");
    io::Json missing = doc;
    missing.erase("generators");
    CHECK_THROWS_AS(io::spec_from_json(missing), ParseError);

    io::Json unknown = doc;
    unknown["brackets"][0]["j"] = "e9";
    CHECK_THROWS_AS(io::spec_from_json(unknown), ParseError);

    io::Json position = doc;
    position["brackets"][0]["i"] = 1;
    position["brackets"][0]["j"] = 2;
    CHECK(io::spec_from_json(position).c(0, 1, 2).is_one());

    io::Json bad_degree = doc;
    bad_degree["brackets"][0]["k"] = "e4";
    CHECK_FALSE(validate(io::spec_from_json(bad_degree)).ok());

    io::Json bad_coeff = doc;
    bad_coeff["brackets"][0]["coeff"] = "1/0";
    CHECK_THROWS_AS(io::spec_from_json(bad_coeff), ParseError);

    CHECK_THROWS_AS(io::load_file("/nonexistent/spec.json"), ParseError);
}

TEST_CASE("beginning parts from fields, generating functions and coefficients")
{
    Prolongation p(io::realization_from_json(fixture("heisenberg-n1.json")));
    auto g0 = p.complete_component(0);
    io::Json doc = io::Json::parse(R"({"beginning": [{"degree": 0, "coefficients": [["1", "0", "0", "0"]]},
                                                     {"degree": 0, "generating": ["q1*p1"]}]})");
    auto bp = io::beginning_from_json(doc, p);
    REQUIRE(bp.parts.at(0).size() == 2);
    CHECK(bp.parts.at(0)[0] == g0.basis[0]);
    CHECK(p.generating_tuple(bp.parts.at(0)[1])[0] == Polynomial::parse(p.ring(), "q1*p1"));

    io::Json wrong = io::Json::parse(R"({"beginning": [{"degree": 0, "coefficients": [["1"]]}]})");
    CHECK_THROWS_AS(io::beginning_from_json(wrong, p), ParseError);
}

TEST_CASE("prolongation reports serialize exact data")
{
    Prolongation p(io::realization_from_json(fixture("heisenberg-n1.json")));
    auto res = reduce_defining_degree(p, io::beginning_from_json(fixture("w2-n1.json"), p), {3, true});
    io::Json j = io::partial_to_json(p, res);
    CHECK(j["total_dim"] == 10);
    CHECK(j["defining_degree"] == 1);
    CHECK(j["operators"]["1"].size() == 4);
    CHECK(j["components"][2]["dim"] == 4);
    CHECK(j["components"][0]["generating"][0][0] == "1");

    auto complete = complete_prolong(p, 2, true);
    io::Json c = io::complete_to_json(p, complete);
    CHECK(c["generating_coordinates"] == io::Json::array({"t"}));
    CHECK(c["components"][1]["oracle_agrees"] == true);
}
