#include "cartan/io.hpp"

#include <fstream>
#include <sstream>

namespace cartan::io {

namespace {

// Schema helpers: every structural problem becomes a ParseError.
const Json& member(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) {
        throw ParseError(where + ": missing \"" + key + "\"");
    }
    return j.at(key);
}

std::string as_string(const Json& j, const std::string& where)
{
    if (!j.is_string()) {
        throw ParseError(where + ": expected a string");
    }
    return j.get<std::string>();
}

long as_int(const Json& j, const std::string& where)
{
    if (!j.is_number_integer()) {
        throw ParseError(where + ": expected an integer");
    }
    return j.get<long>();
}

const Json& as_array(const Json& j, const std::string& where)
{
    if (!j.is_array()) {
        throw ParseError(where + ": expected an array");
    }
    return j;
}

Scalar scalar_from(const Field& f, const Json& j, const std::string& where)
{
    if (j.is_number_integer()) {
        return Scalar(f, j.get<long>());
    }
    return Scalar::parse(f, as_string(j, where));
}

Parity parity_from(const Json& j, const std::string& where)
{
    if (j.is_string()) {
        auto s = j.get<std::string>();
        if (s == "even") {
            return Parity::even;
        }
        if (s == "odd") {
            return Parity::odd;
        }
    } else if (j.is_number_integer()) {
        long v = j.get<long>();
        if (v == 0 || v == 1) {
            return parity_of(static_cast<int>(v));
        }
    }
    throw ParseError(where + ": parity must be \"even\" or \"odd\"");
}

std::size_t generator_index(const std::vector<Generator>& gens, const Json& j, const std::string& where)
{
    if (j.is_string()) {
        auto name = j.get<std::string>();
        for (std::size_t a = 0; a < gens.size(); ++a) {
            if (gens[a].name == name) {
                return a;
            }
        }
        throw ParseError(where + ": unknown generator \"" + name + "\"");
    }
    long v = as_int(j, where);
    if (v < 1 || static_cast<std::size_t>(v) > gens.size()) {
        throw ParseError(where + ": generator position " + std::to_string(v) + " out of range");
    }
    return static_cast<std::size_t>(v - 1);
}

Json strings(const std::vector<VectorField>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) {
        out.push_back(x.str());
    }
    return out;
}

Json strings(const std::vector<OneForm>& ws)
{
    Json out = Json::array();
    for (const auto& w : ws) {
        out.push_back(w.str());
    }
    return out;
}

Json tuple_json(const std::vector<Polynomial>& t)
{
    Json out = Json::array();
    for (const auto& f : t) {
        out.push_back(f.str());
    }
    return out;
}

} // namespace

Json load_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Json::parse(buf.str());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

Field field_from_json(const Json& j)
{
    Field f;
    long p = as_int(member(j, "char", "field"), "field.char");
    if (p < 0) {
        throw ParseError("field.char must be non-negative");
    }
    f.characteristic = static_cast<std::uint32_t>(p);
    if (j.contains("i")) {
        if (!j.at("i").is_boolean()) {
            throw ParseError("field.i: expected a boolean");
        }
        f.imaginary = j.at("i").get<bool>();
    }
    try {
        f.validate();
    } catch (const ArithmeticError& e) {
        throw ParseError(std::string("field: ") + e.what());
    }
    return f;
}

Json field_to_json(const Field& f)
{
    return Json{{"char", f.characteristic}, {"i", f.imaginary}};
}

Field parse_field(std::string_view text)
{
    Field f;
    std::string s(text);
    auto comma = s.find(',');
    std::string head = s.substr(0, comma);
    if (comma != std::string::npos) {
        if (s.substr(comma + 1) != "i") {
            throw ParseError("field override must look like \"p\" or \"p,i\"");
        }
        f.imaginary = true;
    }
    try {
        std::size_t used = 0;
        long p = std::stol(head, &used);
        if (used != head.size() || p < 0) {
            throw ParseError("bad characteristic '" + head + "'");
        }
        f.characteristic = static_cast<std::uint32_t>(p);
    } catch (const std::logic_error&) {
        throw ParseError("bad characteristic '" + head + "'");
    }
    try {
        f.validate();
    } catch (const ArithmeticError& e) {
        throw ParseError(e.what());
    }
    return f;
}

GradedAlgebraSpec spec_from_json(const Json& doc, const std::optional<Field>& field)
{
    Field f = field ? *field : field_from_json(member(doc, "field", "spec"));
    std::vector<Generator> gens;
    const Json& gj = as_array(member(doc, "generators", "spec"), "generators");
    for (std::size_t a = 0; a < gj.size(); ++a) {
        std::string where = "generators[" + std::to_string(a) + "]";
        Generator g;
        g.name = as_string(member(gj[a], "name", where), where + ".name");
        g.degree = static_cast<int>(as_int(member(gj[a], "degree", where), where + ".degree"));
        g.parity = gj[a].contains("parity") ? parity_from(gj[a].at("parity"), where + ".parity") : Parity::even;
        if (gj[a].contains("coordinate")) {
            g.coordinate = as_string(gj[a].at("coordinate"), where + ".coordinate");
        }
        gens.push_back(std::move(g));
    }
    std::vector<BracketEntry> entries;
    if (doc.contains("brackets")) {
        const Json& bj = as_array(doc.at("brackets"), "brackets");
        for (std::size_t a = 0; a < bj.size(); ++a) {
            std::string where = "brackets[" + std::to_string(a) + "]";
            BracketEntry e;
            e.i = generator_index(gens, member(bj[a], "i", where), where + ".i");
            e.j = generator_index(gens, member(bj[a], "j", where), where + ".j");
            e.k = generator_index(gens, member(bj[a], "k", where), where + ".k");
            e.coeff = scalar_from(f, member(bj[a], "coeff", where), where + ".coeff");
            entries.push_back(std::move(e));
        }
    }
    return GradedAlgebraSpec(f, std::move(gens), entries);
}

Json spec_to_json(const GradedAlgebraSpec& spec)
{
    Json gens = Json::array();
    for (const auto& g : spec.generators()) {
        Json e{{"name", g.name}, {"degree", g.degree}, {"parity", g.parity == Parity::odd ? "odd" : "even"}};
        if (!g.coordinate.empty()) {
            e["coordinate"] = g.coordinate;
        }
        gens.push_back(std::move(e));
    }
    // one entry per unordered pair; the reader restores the other by symmetry
    Json br = Json::array();
    for (std::size_t i = 0; i < spec.size(); ++i) {
        for (std::size_t j = i; j < spec.size(); ++j) {
            for (const auto& [k, c] : spec.bracket(i, j)) {
                br.push_back({{"i", spec.generator(i).name},
                              {"j", spec.generator(j).name},
                              {"k", spec.generator(k).name},
                              {"coeff", c.str()}});
            }
        }
    }
    return Json{{"field", field_to_json(spec.field())}, {"generators", gens}, {"brackets", br}};
}

RealizeOptions realize_options_from_json(const Json& doc)
{
    RealizeOptions o;
    if (!doc.is_object()) {
        throw ParseError("column order: expected an object");
    }
    if (doc.contains("column_preference")) {
        for (const auto& e : as_array(doc.at("column_preference"), "column_preference")) {
            o.column_preference.push_back(as_string(e, "column_preference"));
        }
    }
    if (doc.contains("shuffle_seed")) {
        o.shuffle_seed = static_cast<std::uint64_t>(as_int(doc.at("shuffle_seed"), "shuffle_seed"));
    }
    return o;
}

Realization realization_from_json(const Json& doc, const std::optional<Field>& field, const RealizeOptions& options)
{
    GradedAlgebraSpec spec = spec_from_json(doc, field);
    if (!doc.contains("realization")) {
        require_valid(spec);
        return solve_forms(spec, options);
    }
    const Json& rj = doc.at("realization");
    RingPtr ring = spec.coordinate_ring();
    if (rj.contains("forms")) {
        std::vector<OneForm> forms;
        for (const auto& e : as_array(rj.at("forms"), "realization.forms")) {
            forms.push_back(OneForm::parse(ring, as_string(e, "realization.forms")));
        }
        if (forms.size() != spec.size()) {
            throw ParseError("realization.forms: expected " + std::to_string(spec.size()) + " entries");
        }
        return ingest_forms(spec, ring, std::move(forms));
    }
    if (rj.contains("fields")) {
        std::vector<VectorField> fields;
        for (const auto& e : as_array(rj.at("fields"), "realization.fields")) {
            fields.push_back(VectorField::parse(ring, as_string(e, "realization.fields")));
        }
        if (fields.size() != spec.size()) {
            throw ParseError("realization.fields: expected " + std::to_string(spec.size()) + " entries");
        }
        return ingest_fields(spec, ring, std::move(fields));
    }
    throw ParseError("realization: needs \"forms\" or \"fields\"");
}

Json realization_to_json(const Realization& r)
{
    Json doc = spec_to_json(r.spec);
    Json v = Json::array();
    for (const auto& w : r.forms) {
        Json row = Json::array();
        for (const auto& c : w.coefficients()) {
            row.push_back(c.str());
        }
        v.push_back(std::move(row));
    }
    doc["realization"] = Json{{"forms", strings(r.forms)}, {"fields", strings(r.fields)}, {"V", v}};
    return doc;
}

Json coframe_to_json(const Realization& r, const Coframe& c)
{
    Json doc = realization_to_json(r);
    doc["coframe"] = Json{{"Y", strings(c.fields)}, {"theta", strings(c.forms)}};
    return doc;
}

BeginningPart beginning_from_json(const Json& doc, const Prolongation& engine)
{
    const RingPtr& ring = engine.ring();
    BeginningPart bp;
    std::map<int, ProlongComponent> complete;
    auto g = [&](int k) -> const ProlongComponent& {
        auto it = complete.find(k);
        if (it == complete.end()) {
            it = complete.emplace(k, engine.complete_component(k)).first;
        }
        return it->second;
    };
    const Json& list = as_array(member(doc, "beginning", "partial"), "beginning");
    for (std::size_t a = 0; a < list.size(); ++a) {
        std::string where = "beginning[" + std::to_string(a) + "]";
        const Json& e = list[a];
        int k = static_cast<int>(as_int(member(e, "degree", where), where + ".degree"));
        if (k < 0) {
            throw ParseError(where + ": degree must be non-negative");
        }
        auto& part = bp.parts[k];
        if (e.contains("complete")) {
            if (!e.at("complete").is_boolean()) {
                throw ParseError(where + ".complete: expected a boolean");
            }
            if (e.at("complete").get<bool>()) {
                const auto& basis = g(k).basis;
                part.insert(part.end(), basis.begin(), basis.end());
            }
        }
        if (e.contains("fields")) {
            for (const auto& x : as_array(e.at("fields"), where + ".fields")) {
                part.push_back(VectorField::parse(ring, as_string(x, where + ".fields")));
            }
        }
        if (e.contains("generating")) {
            for (const auto& x : as_array(e.at("generating"), where + ".generating")) {
                std::vector<Polynomial> tuple;
                if (x.is_string()) {
                    tuple.push_back(Polynomial::parse(ring, x.get<std::string>()));
                } else {
                    for (const auto& y : as_array(x, where + ".generating")) {
                        tuple.push_back(Polynomial::parse(ring, as_string(y, where + ".generating")));
                    }
                }
                part.push_back(engine.field_from_generating(k, tuple));
            }
        }
        if (e.contains("coefficients")) {
            const auto& basis = g(k).basis;
            for (const auto& row : as_array(e.at("coefficients"), where + ".coefficients")) {
                as_array(row, where + ".coefficients");
                if (row.size() != basis.size()) {
                    throw ParseError(where + ".coefficients: expected " + std::to_string(basis.size()) +
                                     " entries per row");
                }
                VectorField x(ring);
                for (std::size_t b = 0; b < basis.size(); ++b) {
                    x += basis[b] * scalar_from(ring->field(), row[b], where + ".coefficients");
                }
                part.push_back(std::move(x));
            }
        }
    }
    return bp;
}

Json operator_to_json(const Prolongation& engine, const DiffOperator& op)
{
    Json terms = Json::array();
    for (const auto& t : op.terms) {
        Json word = Json::array();
        for (std::size_t w : t.word) {
            word.push_back(engine.spec().generator(w).name);
        }
        terms.push_back({{"coeff", t.coeff.str()}, {"word", word}, {"target", engine.spec().generator(t.target).name}});
    }
    return Json{{"text", engine.operator_str(op)}, {"symmetrized", op.symmetrized}, {"terms", terms}};
}

Json component_to_json(const ProlongComponent& c)
{
    Json gen = Json::array();
    for (const auto& t : c.generating) {
        gen.push_back(tuple_json(t));
    }
    return Json{{"degree", c.degree}, {"dim", c.dim()}, {"basis", strings(c.basis)}, {"generating", gen}};
}

Json complete_to_json(const Prolongation& engine, const CompleteResult& r)
{
    Json gen = Json::array();
    for (std::size_t a : engine.generating()) {
        gen.push_back(engine.spec().generator(a).name);
    }
    Json comps = Json::array();
    std::size_t total = 0;
    for (std::size_t q = 0; q < r.components.size(); ++q) {
        Json c = component_to_json(r.components[q]);
        if (!r.oracle_agrees.empty()) {
            c["oracle_agrees"] = static_cast<bool>(r.oracle_agrees[q]);
        }
        total += r.components[q].dim();
        comps.push_back(std::move(c));
    }
    Json doc{{"generating_coordinates", gen}, {"components", comps}, {"total_dim", total},
             {"stabilized_to_zero", r.stabilized_to_zero}};
    doc["vanishes_from"] = r.vanishes_from ? Json(*r.vanishes_from) : Json(nullptr);
    return doc;
}

Json partial_to_json(const Prolongation& engine, const PartialResult& r)
{
    Json degs = Json::array();
    std::size_t total = 0;
    for (const auto& d : r.degrees) {
        Json c = component_to_json(d.component);
        c["complete_dim"] = d.complete_dim;
        c["defining"] = d.defining;
        c["oracle_agrees"] = d.oracle_agrees;
        total += d.partial_dim;
        degs.push_back(std::move(c));
    }
    Json ops = Json::object();
    for (const auto& [k, list] : r.operators) {
        Json l = Json::array();
        for (const auto& op : list) {
            l.push_back(operator_to_json(engine, op));
        }
        ops[std::to_string(k)] = std::move(l);
    }
    return Json{{"defining_degree", r.defining_degree}, {"components", degs}, {"total_dim", total},
                {"operators", ops}, {"warnings", r.warnings}, {"stabilized_to_zero", r.stabilized_to_zero}};
}

} // namespace cartan::io
