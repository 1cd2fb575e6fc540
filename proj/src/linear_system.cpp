#include "cartan/linear_system.hpp"

#include <algorithm>
#include <numeric>

namespace cartan {

void LinearSystem::add_row(SparseRow row, const Scalar& value)
{
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
    for (const auto& [col, v] : row) {
        (void)v;
        if (col >= unknowns) {
            throw Error("linear system row references column " + std::to_string(col) +
                        " beyond " + std::to_string(unknowns) + " unknowns");
        }
    }
    rows.push_back(std::move(row));
    rhs.push_back(value);
}

InconsistentSystem::InconsistentSystem(SparseRow certificate, Scalar residual)
    : Error("linear system has no solution (certificate combines " +
            std::to_string(certificate.size()) + " rows to 0 = " + residual.str() + ")"),
      certificate_(std::move(certificate)), residual_(std::move(residual))
{
}

namespace {

void axpy(SparseRow& target, const Scalar& factor, const SparseRow& source)
{
    // target -= factor * source
    for (const auto& [col, v] : source) {
        auto it = target.find(col);
        Scalar delta = factor * v;
        if (it == target.end()) {
            target.emplace(col, -delta);
        } else {
            it->second -= delta;
            if (it->second.is_zero()) {
                target.erase(it);
            }
        }
    }
}

void scale(SparseRow& row, const Scalar& factor)
{
    for (auto& [col, v] : row) {
        (void)col;
        v *= factor;
    }
}

} // namespace

RowEchelon row_reduce(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows,
                      const std::vector<std::size_t>& column_order, bool track)
{
    std::vector<std::size_t> order = column_order;
    if (order.empty()) {
        order.resize(columns);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    if (order.size() != columns) {
        throw Error("column order has wrong length");
    }
    std::vector<std::size_t> position(columns, columns);
    for (std::size_t k = 0; k < columns; ++k) {
        if (order[k] >= columns || position[order[k]] != columns) {
            throw Error("column order is not a permutation");
        }
        position[order[k]] = k;
    }

    struct Pivot {
        SparseRow row;
        SparseRow comb;
    };
    std::map<std::size_t, Pivot> pivots; // keyed by position
    RowEchelon out;

    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        SparseRow row;
        for (const auto& [col, v] : rows[idx]) {
            if (col >= columns) {
                throw Error("row references column beyond matrix width");
            }
            if (!v.is_zero()) {
                row.emplace(position[col], v);
            }
        }
        SparseRow comb;
        if (track) {
            comb.emplace(idx, Scalar::one(field));
        }
        std::vector<std::size_t> hits;
        for (const auto& [pos, v] : row) {
            (void)v;
            if (pivots.count(pos)) {
                hits.push_back(pos);
            }
        }
        for (std::size_t pos : hits) {
            auto it = row.find(pos);
            if (it == row.end()) {
                continue;
            }
            Scalar factor = it->second;
            const Pivot& p = pivots.at(pos);
            axpy(row, factor, p.row);
            if (track) {
                axpy(comb, factor, p.comb);
            }
        }
        if (row.empty()) {
            if (track) {
                out.left_kernel.push_back(std::move(comb));
            }
            continue;
        }
        std::size_t lead = row.begin()->first;
        Scalar inv = row.begin()->second.inverse();
        scale(row, inv);
        if (track) {
            scale(comb, inv);
        }
        for (auto& [pos, p] : pivots) {
            (void)pos;
            auto it = p.row.find(lead);
            if (it == p.row.end()) {
                continue;
            }
            Scalar factor = it->second;
            axpy(p.row, factor, row);
            if (track) {
                axpy(p.comb, factor, comb);
            }
        }
        pivots.emplace(lead, Pivot{std::move(row), std::move(comb)});
    }

    for (auto& [pos, p] : pivots) {
        out.pivot_columns.push_back(order[pos]);
        SparseRow back;
        for (const auto& [q, v] : p.row) {
            back.emplace(order[q], v);
        }
        out.rows.push_back(std::move(back));
        if (track) {
            out.transforms.push_back(std::move(p.comb));
        }
    }
    return out;
}

std::size_t rank_of(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows)
{
    return row_reduce(field, columns, rows).rank();
}

Solution solve(const LinearSystem& system, SolvePolicy policy)
{
    const std::size_t n = system.unknowns;
    const bool homogeneous = system.rhs.empty();
    if (!homogeneous && system.rhs.size() != system.rows.size()) {
        throw Error("linear system rhs length differs from row count");
    }
    std::vector<SparseRow> rows = system.rows;
    if (!homogeneous) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!system.rhs[r].is_zero()) {
                rows[r][n] = system.rhs[r];
            }
        }
    }
    std::vector<std::size_t> order = system.column_order;
    if (order.empty()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
    }
    order.push_back(n);

    RowEchelon ech = row_reduce(system.field, n + 1, rows, order);
    for (std::size_t k = 0; k < ech.rank(); ++k) {
        if (ech.pivot_columns[k] == n) {
            RowEchelon tracked = row_reduce(system.field, n + 1, rows, order, true);
            for (std::size_t j = 0; j < tracked.rank(); ++j) {
                if (tracked.pivot_columns[j] == n) {
                    throw InconsistentSystem(tracked.transforms[j], Scalar::one(system.field));
                }
            }
        }
    }

    Solution sol;
    sol.pivot_columns = ech.pivot_columns;
    if (policy == SolvePolicy::free_vars_zero) {
        DenseVector x(n, Scalar::zero(system.field));
        for (std::size_t k = 0; k < ech.rank(); ++k) {
            auto it = ech.rows[k].find(n);
            if (it != ech.rows[k].end()) {
                x[ech.pivot_columns[k]] = it->second;
            }
        }
        sol.particular = std::move(x);
    } else {
        std::vector<bool> is_pivot(n, false);
        for (std::size_t c : ech.pivot_columns) {
            is_pivot[c] = true;
        }
        for (std::size_t pos = 0; pos < n; ++pos) {
            std::size_t f = order[pos];
            if (is_pivot[f]) {
                continue;
            }
            DenseVector v(n, Scalar::zero(system.field));
            v[f] = Scalar::one(system.field);
            for (std::size_t k = 0; k < ech.rank(); ++k) {
                auto it = ech.rows[k].find(f);
                if (it != ech.rows[k].end()) {
                    v[ech.pivot_columns[k]] = -it->second;
                }
            }
            sol.kernel.push_back(std::move(v));
        }
    }
    return sol;
}

SparseRow to_sparse(const DenseVector& v)
{
    SparseRow row;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) {
            row.emplace(k, v[k]);
        }
    }
    return row;
}

DenseVector to_dense(const Field& field, std::size_t n, const SparseRow& row)
{
    DenseVector v(n, Scalar::zero(field));
    for (const auto& [k, x] : row) {
        v.at(k) = x;
    }
    return v;
}

} // namespace cartan
