// Command-line front end. Exit codes: 0 success, 1 mathematical failure,
// 2 schema or I/O failure.

#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "cartan/io.hpp"

using namespace cartan;
using io::Json;

namespace {

struct Job {
    std::string input;
    std::string format = "text";
    std::string column_order;
    std::string field;
    std::string partial;
    int max_degree = 3;
    bool no_check = false;
};

std::optional<Field> field_override(const Job& job)
{
    if (job.field.empty()) {
        return std::nullopt;
    }
    return io::parse_field(job.field);
}

Realization load_realization(const Job& job)
{
    RealizeOptions opts;
    if (!job.column_order.empty()) {
        opts = io::realize_options_from_json(io::load_file(job.column_order));
    }
    return io::realization_from_json(io::load_file(job.input), field_override(job), opts);
}

std::string dims_str(const std::vector<std::size_t>& dims)
{
    std::ostringstream out;
    out << "[";
    for (std::size_t a = 0; a < dims.size(); ++a) {
        out << (a ? "," : "") << dims[a];
    }
    out << "]";
    return out.str();
}

void print_json(const Json& j)
{
    std::cout << j.dump(2) << "\n";
}

int cmd_validate(const Job& job)
{
    GradedAlgebraSpec spec = io::spec_from_json(io::load_file(job.input), field_override(job));
    ValidationReport rep = validate(spec);
    if (job.format == "json") {
        Json out{{"valid", rep.ok()}, {"witnesses", rep.witnesses}};
        if (rep.ok()) {
            out["depth"] = spec.depth();
            out["dims"] = spec.dims();
        }
        print_json(out);
    } else if (rep.ok()) {
        std::cout << "valid: depth " << spec.depth() << ", dims " << dims_str(spec.dims()) << "\n";
    } else {
        std::cout << "invalid:\n";
        for (const auto& w : rep.witnesses) {
            std::cout << "  " << w << "\n";
        }
    }
    return rep.ok() ? 0 : 1;
}

int cmd_embed(const Job& job)
{
    Realization r = load_realization(job);
    if (job.format == "json") {
        print_json(io::realization_to_json(r));
        return 0;
    }
    for (std::size_t k = 0; k < r.forms.size(); ++k) {
        std::cout << "w" << k + 1 << " = " << r.forms[k].str() << "\n";
    }
    for (std::size_t k = 0; k < r.fields.size(); ++k) {
        std::cout << "X" << k + 1 << " = " << r.fields[k].str() << "\n";
    }
    bool mc = true;
    for (const auto& res : maurer_cartan_residual(r.spec, r.forms)) {
        mc = mc && res.is_zero();
    }
    std::cout << "Maurer-Cartan residual: " << (mc ? "0" : "nonzero") << "\n";
    return mc ? 0 : 1;
}

int cmd_centralize(const Job& job)
{
    Realization r = load_realization(job);
    Coframe c = centralize(r);
    if (job.format == "json") {
        print_json(io::coframe_to_json(r, c));
        return 0;
    }
    for (std::size_t k = 0; k < c.fields.size(); ++k) {
        std::cout << "Y" << k + 1 << " = " << c.fields[k].str() << "\n";
    }
    for (std::size_t k = 0; k < c.forms.size(); ++k) {
        std::cout << "theta" << k + 1 << " = " << c.forms[k].str() << "\n";
    }
    auto defects = coframe_defects(r, c);
    for (const auto& d : defects) {
        std::cout << "defect: " << d << "\n";
    }
    return defects.empty() ? 0 : 1;
}

void print_basis(const ProlongComponent& c)
{
    for (std::size_t b = 0; b < c.dim(); ++b) {
        std::cout << "  " << c.basis[b].str();
        if (b < c.generating.size() && !c.generating[b].empty()) {
            std::cout << "    [";
            for (std::size_t a = 0; a < c.generating[b].size(); ++a) {
                std::cout << (a ? ", " : "") << c.generating[b][a].str();
            }
            std::cout << "]";
        }
        std::cout << "\n";
    }
}

int cmd_prolong(const Job& job)
{
    Realization r = load_realization(job);
    if (job.max_degree < -r.spec.depth()) {
        throw ParseError("--max-degree must be at least " + std::to_string(-r.spec.depth()));
    }
    Prolongation engine(r);
    const bool check = !job.no_check;

    if (job.partial.empty()) {
        CompleteResult res = complete_prolong(engine, job.max_degree, check);
        bool ok = true;
        for (bool b : res.oracle_agrees) {
            ok = ok && b;
        }
        if (job.format == "json") {
            print_json(io::complete_to_json(engine, res));
            return ok ? 0 : 1;
        }
        std::vector<std::size_t> dims;
        std::size_t total = 0;
        std::cout << std::setw(4) << "s" << std::setw(10) << "dim g_s" << (check ? "  oracle" : "") << "\n";
        for (std::size_t q = 0; q < res.components.size(); ++q) {
            const auto& c = res.components[q];
            dims.push_back(c.dim());
            total += c.dim();
            std::cout << std::setw(4) << c.degree << std::setw(10) << c.dim();
            if (check) {
                std::cout << "  " << (res.oracle_agrees[q] ? "ok" : "MISMATCH");
            }
            std::cout << "\n";
        }
        std::cout << "dims " << dims_str(dims) << ", total " << total << "\n";
        if (res.stabilized_to_zero) {
            std::cout << "stabilized to zero\n";
        }
        for (const auto& c : res.components) {
            if (c.dim() > 0) {
                std::cout << "g_" << c.degree << ":\n";
                print_basis(c);
            }
        }
        return ok ? 0 : 1;
    }

    BeginningPart bp = io::beginning_from_json(io::load_file(job.partial), engine);
    PartialResult res = reduce_defining_degree(engine, bp, {job.max_degree, check});
    bool ok = true;
    for (const auto& d : res.degrees) {
        ok = ok && d.oracle_agrees;
    }
    if (job.format == "json") {
        print_json(io::partial_to_json(engine, res));
        return ok ? 0 : 1;
    }
    std::vector<std::size_t> dims;
    std::size_t total = 0;
    std::cout << std::setw(4) << "s" << std::setw(10) << "dim g_s" << std::setw(10) << "dim h_s"
              << (check ? "  oracle" : "") << "\n";
    for (const auto& d : res.degrees) {
        dims.push_back(d.partial_dim);
        total += d.partial_dim;
        std::cout << std::setw(4) << d.degree << std::setw(10) << d.complete_dim << std::setw(10) << d.partial_dim;
        if (check) {
            std::cout << "  " << (d.oracle_agrees ? "ok" : "MISMATCH");
        }
        std::cout << (d.defining ? "  defining" : "") << "\n";
    }
    std::cout << "dims " << dims_str(dims) << ", total " << total << "\n";
    std::cout << "defining degree " << res.defining_degree << "\n";
    for (const auto& [k, ops] : res.operators) {
        std::cout << "operators at degree " << k << ":\n";
        for (const auto& op : ops) {
            std::cout << "  " << engine.operator_str(op) << " = 0\n";
        }
    }
    for (const auto& w : res.warnings) {
        std::cout << "warning: " << w << "\n";
    }
    for (const auto& d : res.degrees) {
        if (d.partial_dim > 0) {
            std::cout << "h_" << d.degree << ":\n";
            print_basis(d.component);
        }
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cartan prolongation of graded nilpotent Lie (super)algebras"};
    app.require_subcommand(1);
    Job job;

    auto common = [&](CLI::App* sub) {
        sub->add_option("input", job.input, "Spec JSON file")->required();
        sub->add_option("--format", job.format, "Output format")->check(CLI::IsMember({"text", "json"}));
        sub->add_option("--field", job.field, "Field override: p or p,i");
    };
    auto* validate_cmd = app.add_subcommand("validate", "Check a spec");
    common(validate_cmd);
    auto* embed_cmd = app.add_subcommand("embed", "Maurer-Cartan forms and embedded fields");
    auto* centralize_cmd = app.add_subcommand("centralize", "Centralizer frame and coframe");
    auto* prolong_cmd = app.add_subcommand("prolong", "Complete or partial prolongation");
    for (auto* sub : {embed_cmd, centralize_cmd, prolong_cmd}) {
        common(sub);
        sub->add_option("--column-order", job.column_order, "JSON file with solver column preferences");
    }
    prolong_cmd->add_option("--max-degree", job.max_degree, "Highest degree to compute");
    prolong_cmd->add_option("--partial", job.partial, "JSON file with the beginning part");
    prolong_cmd->add_flag("--no-check", job.no_check, "Skip the brute-force cross-check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate_cmd->parsed()) {
            return cmd_validate(job);
        }
        if (embed_cmd->parsed()) {
            return cmd_embed(job);
        }
        if (centralize_cmd->parsed()) {
            return cmd_centralize(job);
        }
        return cmd_prolong(job);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "invalid:\n";
        for (const auto& w : e.witnesses()) {
            std::cerr << "  " << w << "\n";
        }
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
