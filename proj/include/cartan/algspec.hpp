#pragma once

// Negatively graded nilpotent Lie (super)algebras given by structure constants.

#include <map>
#include <string>
#include <vector>

#include "cartan/superpoly.hpp"

namespace cartan {

struct Generator {
    std::string name;
    int degree = -1;
    Parity parity = Parity::even;
    /// Name of the dual coordinate; empty means "use name".
    std::string coordinate;

    const std::string& coordinate_name() const { return coordinate.empty() ? name : coordinate; }
};

struct BracketEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    Scalar coeff;
};

class GradedAlgebraSpec {
public:
    GradedAlgebraSpec() = default;
    /// Builds the full table from entries. An entry (i, j) implies
    /// (j, i) = -(-1)^{p_i p_j} (i, j) unless both are given, in which case
    /// they must agree (ValidationError otherwise).
    GradedAlgebraSpec(Field field, std::vector<Generator> generators,
                      const std::vector<BracketEntry>& entries);

    const Field& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return gens_.size(); }
    const Generator& generator(std::size_t i) const { return gens_.at(i); }
    const std::vector<Generator>& generators() const noexcept { return gens_; }
    Parity parity(std::size_t i) const { return gens_.at(i).parity; }
    int degree(std::size_t i) const { return gens_.at(i).degree; }
    /// Weight of the dual coordinate: -degree.
    int weight(std::size_t i) const { return -gens_.at(i).degree; }

    /// [e_i, e_j] as k -> c^k_ij.
    const SparseRow& bracket(std::size_t i, std::size_t j) const;
    Scalar c(std::size_t i, std::size_t j, std::size_t k) const;

    int depth() const;
    /// Indices of generators of the given degree, ascending.
    std::vector<std::size_t> indices_of_degree(int degree) const;
    /// dims()[s-1] = dim of the degree -s part, s = 1..depth.
    std::vector<std::size_t> dims() const;

    /// Coordinate ring: one variable per generator, weight -degree, same parity.
    RingPtr coordinate_ring() const;

private:
    Field field_;
    std::vector<Generator> gens_;
    std::vector<std::vector<SparseRow>> table_;
};

struct ValidationReport {
    std::vector<std::string> witnesses;
    bool ok() const noexcept { return witnesses.empty(); }
};

/// Checks grading, parity, super antisymmetry, super Jacobi and generation by the
/// degree -1 part. Every failure is reported with a witness.
ValidationReport validate(const GradedAlgebraSpec& spec);
/// Throws ValidationError with the witnesses when invalid.
void require_valid(const GradedAlgebraSpec& spec);

/// Basis of the center of the algebra as coefficient vectors.
std::vector<DenseVector> center_basis(const GradedAlgebraSpec& spec);
/// Pivot indices of the row-reduced center basis with deeper generators
/// preferred (depth descending, index ascending). For a center spanned by basis
/// vectors these are exactly those basis indices.
std::vector<std::size_t> center_of_negative(const GradedAlgebraSpec& spec);

} // namespace cartan
