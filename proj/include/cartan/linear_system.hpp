#pragma once

// Deterministic exact Gauss-Jordan elimination over sparse rows.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "cartan/scalar.hpp"

namespace cartan {

/// column index -> nonzero entry
using SparseRow = std::map<std::size_t, Scalar>;
using DenseVector = std::vector<Scalar>;

struct LinearSystem {
    Field field;
    std::size_t unknowns = 0;
    std::vector<SparseRow> rows;
    std::vector<Scalar> rhs; ///< empty means homogeneous
    /// Pivot preference: a permutation of 0..unknowns-1. Empty means natural order.
    std::vector<std::size_t> column_order;

    /// Appends a row; zero entries are dropped.
    void add_row(SparseRow row, const Scalar& value);
    void add_row(SparseRow row) { add_row(std::move(row), Scalar::zero(field)); }
};

enum class SolvePolicy { free_vars_zero, kernel_basis };

/// Raised for an inconsistent system. The certificate is a combination of the
/// input rows whose left-hand side vanishes while its right-hand side does not.
class InconsistentSystem : public Error {
public:
    InconsistentSystem(SparseRow certificate, Scalar residual);

    const SparseRow& certificate() const noexcept { return certificate_; }
    const Scalar& residual() const noexcept { return residual_; }

private:
    SparseRow certificate_;
    Scalar residual_;
};

struct Solution {
    std::optional<DenseVector> particular;   ///< set for free_vars_zero
    std::vector<DenseVector> kernel;         ///< set for kernel_basis
    std::vector<std::size_t> pivot_columns;  ///< in elimination order
};

Solution solve(const LinearSystem& system, SolvePolicy policy);

/// Reduced row echelon form of a list of rows. When `track` is set every
/// result row also records the combination of input rows producing it, and
/// the combinations producing zero rows are returned as `left_kernel`.
struct RowEchelon {
    std::vector<std::size_t> pivot_columns;
    std::vector<SparseRow> rows;
    std::vector<SparseRow> transforms;
    std::vector<SparseRow> left_kernel;

    std::size_t rank() const noexcept { return rows.size(); }
};

RowEchelon row_reduce(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows,
                      const std::vector<std::size_t>& column_order = {}, bool track = false);

/// Rank of a list of rows.
std::size_t rank_of(const Field& field, std::size_t columns, const std::vector<SparseRow>& rows);

SparseRow to_sparse(const DenseVector& v);
DenseVector to_dense(const Field& field, std::size_t n, const SparseRow& row);

} // namespace cartan
