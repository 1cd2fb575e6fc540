#include "cartan/algspec.hpp"

#include <algorithm>
#include <set>

namespace cartan {

namespace {

std::string triple(const GradedAlgebraSpec& s, std::size_t i, std::size_t j, std::size_t k)
{
    return "(" + s.generator(i).name + ", " + s.generator(j).name + ", " + s.generator(k).name + ")";
}

bool both_odd(Parity a, Parity b)
{
    return a == Parity::odd && b == Parity::odd;
}

} // namespace

GradedAlgebraSpec::GradedAlgebraSpec(Field field, std::vector<Generator> generators,
                                     const std::vector<BracketEntry>& entries)
    : field_(field), gens_(std::move(generators))
{
    field_.validate();
    const std::size_t n = gens_.size();
    table_.assign(n, std::vector<SparseRow>(n));
    std::set<std::pair<std::size_t, std::size_t>> given;
    std::vector<std::string> problems;
    for (const auto& e : entries) {
        if (e.i >= n || e.j >= n || e.k >= n) {
            throw ValidationError({"bracket entry references a generator index out of range"});
        }
        if (!(e.coeff.field() == field_)) {
            throw ValidationError({"bracket entry coefficient lies in another field"});
        }
        if (e.coeff.is_zero()) {
            given.insert({e.i, e.j});
            continue;
        }
        auto& row = table_[e.i][e.j];
        auto it = row.find(e.k);
        if (it != row.end()) {
            problems.push_back("duplicate bracket entry " + triple(*this, e.i, e.j, e.k));
            continue;
        }
        row.emplace(e.k, e.coeff);
        given.insert({e.i, e.j});
    }
    // complete by super antisymmetry
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!given.count({i, j}) || given.count({j, i})) {
                continue;
            }
            SparseRow mirrored;
            for (const auto& [k, c] : table_[i][j]) {
                mirrored.emplace(k, both_odd(gens_[i].parity, gens_[j].parity) ? c : -c);
            }
            table_[j][i] = std::move(mirrored);
        }
    }
    if (!problems.empty()) {
        throw ValidationError(problems);
    }
}

const SparseRow& GradedAlgebraSpec::bracket(std::size_t i, std::size_t j) const
{
    return table_.at(i).at(j);
}

Scalar GradedAlgebraSpec::c(std::size_t i, std::size_t j, std::size_t k) const
{
    const SparseRow& row = bracket(i, j);
    auto it = row.find(k);
    return it == row.end() ? Scalar::zero(field_) : it->second;
}

int GradedAlgebraSpec::depth() const
{
    int d = 0;
    for (const auto& g : gens_) {
        d = std::max(d, -g.degree);
    }
    return d;
}

std::vector<std::size_t> GradedAlgebraSpec::indices_of_degree(int degree) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        if (gens_[i].degree == degree) {
            out.push_back(i);
        }
    }
    return out;
}

std::vector<std::size_t> GradedAlgebraSpec::dims() const
{
    std::vector<std::size_t> d(static_cast<std::size_t>(depth()), 0);
    for (const auto& g : gens_) {
        if (g.degree < 0) {
            ++d[static_cast<std::size_t>(-g.degree - 1)];
        }
    }
    return d;
}

RingPtr GradedAlgebraSpec::coordinate_ring() const
{
    std::vector<Variable> vars;
    for (const auto& g : gens_) {
        vars.push_back({g.coordinate_name(), g.parity, -g.degree});
    }
    return make_ring(field_, std::move(vars));
}

ValidationReport validate(const GradedAlgebraSpec& spec)
{
    ValidationReport rep;
    auto& w = rep.witnesses;
    const std::size_t n = spec.size();
    const Field& f = spec.field();
    if (n == 0) {
        w.push_back("algebra has no generators");
        return rep;
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = spec.generator(i);
        if (g.degree >= 0) {
            w.push_back("generator " + g.name + " has non-negative degree " + std::to_string(g.degree));
        }
        if (!names.insert(g.name).second) {
            w.push_back("duplicate generator name " + g.name);
        }
        if (i > 0 && g.degree > spec.generator(i - 1).degree) {
            w.push_back("generator " + g.name + " of degree " + std::to_string(g.degree) +
                        " follows a generator of lower degree; list degree -1 first, then -2, ...");
        }
    }
    if (!w.empty()) {
        return rep;
    }
    try {
        (void)spec.coordinate_ring();
    } catch (const Error& e) {
        w.push_back(std::string("coordinate names: ") + e.what());
        return rep;
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (const auto& [k, c] : spec.bracket(i, j)) {
                if (spec.degree(k) != spec.degree(i) + spec.degree(j)) {
                    w.push_back("degree mismatch " + triple(spec, i, j, k) + ": c = " + c.str() +
                                " but deg " + std::to_string(spec.degree(i)) + " + " +
                                std::to_string(spec.degree(j)) + " != " + std::to_string(spec.degree(k)));
                }
                if (spec.parity(k) != spec.parity(i) + spec.parity(j)) {
                    w.push_back("parity mismatch " + triple(spec, i, j, k) + ": c = " + c.str());
                }
            }
            // super antisymmetry
            std::set<std::size_t> ks;
            for (const auto& [k, c] : spec.bracket(i, j)) {
                (void)c;
                ks.insert(k);
            }
            for (const auto& [k, c] : spec.bracket(j, i)) {
                (void)c;
                ks.insert(k);
            }
            for (std::size_t k : ks) {
                Scalar lhs = spec.c(i, j, k);
                Scalar rhs = spec.c(j, i, k);
                Scalar residual = both_odd(spec.parity(i), spec.parity(j)) ? lhs - rhs : lhs + rhs;
                if (!residual.is_zero() && i <= j) {
                    w.push_back("super antisymmetry fails " + triple(spec, i, j, k) + ": residual " +
                                residual.str());
                }
            }
        }
    }

    // super Jacobi: (-1)^{p_i p_k}[e_i,[e_j,e_k]] + (-1)^{p_j p_i}[e_j,[e_k,e_i]] + (-1)^{p_k p_j}[e_k,[e_i,e_j]] = 0
    auto nested = [&](std::size_t a, std::size_t b, std::size_t c, SparseRow& acc, bool negate) {
        for (const auto& [l, x] : spec.bracket(b, c)) {
            for (const auto& [m, y] : spec.bracket(a, l)) {
                Scalar v = x * y;
                if (negate) {
                    v = -v;
                }
                auto it = acc.emplace(m, Scalar::zero(f)).first;
                it->second += v;
            }
        }
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            for (std::size_t k = j; k < n; ++k) {
                SparseRow acc;
                nested(i, j, k, acc, both_odd(spec.parity(i), spec.parity(k)));
                nested(j, k, i, acc, both_odd(spec.parity(j), spec.parity(i)));
                nested(k, i, j, acc, both_odd(spec.parity(k), spec.parity(j)));
                for (const auto& [m, v] : acc) {
                    if (!v.is_zero()) {
                        w.push_back("super Jacobi fails on " + triple(spec, i, j, k) + ": component " +
                                    spec.generator(m).name + " = " + v.str());
                        break;
                    }
                }
            }
        }
    }

    // generation by the degree -1 part
    std::vector<std::size_t> first = spec.indices_of_degree(-1);
    if (first.empty()) {
        w.push_back("degree -1 part is empty");
        return rep;
    }
    std::vector<SparseRow> level;
    for (std::size_t i : first) {
        level.push_back({{i, Scalar::one(f)}});
    }
    for (int s = 2; s <= spec.depth(); ++s) {
        std::vector<SparseRow> next;
        for (std::size_t i : first) {
            for (const auto& v : level) {
                SparseRow r;
                for (const auto& [l, x] : v) {
                    for (const auto& [m, y] : spec.bracket(i, l)) {
                        auto it = r.emplace(m, Scalar::zero(f)).first;
                        it->second += x * y;
                    }
                }
                std::erase_if(r, [](const auto& kv) { return kv.second.is_zero(); });
                if (!r.empty()) {
                    next.push_back(std::move(r));
                }
            }
        }
        RowEchelon e = row_reduce(f, n, next);
        std::vector<std::size_t> wanted = spec.indices_of_degree(-s);
        if (e.rank() < wanted.size()) {
            // find a generator outside the span
            std::vector<SparseRow> probe = e.rows;
            for (std::size_t k : wanted) {
                probe.push_back({{k, Scalar::one(f)}});
                if (rank_of(f, n, probe) > e.rank()) {
                    w.push_back("degree -1 part does not generate: " + spec.generator(k).name +
                                " (degree " + std::to_string(-s) + ") is not reached; reached dimension " +
                                std::to_string(e.rank()) + " of " + std::to_string(wanted.size()));
                    break;
                }
                probe.pop_back();
            }
        }
        level = std::move(e.rows);
    }
    for (int s = 1; s <= spec.depth(); ++s) {
        if (spec.indices_of_degree(-s).empty()) {
            w.push_back("degree " + std::to_string(-s) + " part is empty below the depth");
        }
    }
    return rep;
}

void require_valid(const GradedAlgebraSpec& spec)
{
    ValidationReport r = validate(spec);
    if (!r.ok()) {
        throw ValidationError(r.witnesses);
    }
}

namespace {

LinearSystem center_system(const GradedAlgebraSpec& spec)
{
    const std::size_t n = spec.size();
    LinearSystem sys{spec.field(), n, {}, {}, {}};
    // sum_i x_i c^k_ij = 0 for all j, k
    for (std::size_t j = 0; j < n; ++j) {
        std::map<std::size_t, SparseRow> rows;
        for (std::size_t i = 0; i < n; ++i) {
            for (const auto& [k, c] : spec.bracket(i, j)) {
                rows[k][i] = c;
            }
        }
        for (auto& [k, row] : rows) {
            (void)k;
            sys.add_row(std::move(row));
        }
    }
    return sys;
}

std::vector<std::size_t> deep_first_order(const GradedAlgebraSpec& spec)
{
    std::vector<std::size_t> order(spec.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return spec.degree(a) < spec.degree(b); });
    return order;
}

} // namespace

std::vector<DenseVector> center_basis(const GradedAlgebraSpec& spec)
{
    return solve(center_system(spec), SolvePolicy::kernel_basis).kernel;
}

std::vector<std::size_t> center_of_negative(const GradedAlgebraSpec& spec)
{
    std::vector<SparseRow> rows;
    for (const auto& v : center_basis(spec)) {
        rows.push_back(to_sparse(v));
    }
    RowEchelon e = row_reduce(spec.field(), spec.size(), rows, deep_first_order(spec));
    return e.pivot_columns;
}

} // namespace cartan
