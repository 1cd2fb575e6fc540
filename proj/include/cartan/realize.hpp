#pragma once

// Embedding of a negatively graded algebra into polynomial vector fields via
// Maurer-Cartan forms.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cartan/algspec.hpp"
#include "cartan/vecfield.hpp"

namespace cartan {

struct Realization {
    GradedAlgebraSpec spec;
    RingPtr ring;
    std::vector<OneForm> forms;      ///< w^1..w^n
    std::vector<VectorField> fields; ///< X_1..X_n

    /// V^k_a: coefficient of dx^a in w^k.
    const Polynomial& v(std::size_t k, std::size_t a) const { return forms.at(k).coefficient(a); }
};

struct RealizeOptions {
    /// Unknowns to prefer as pivots, in order. Each entry is "m*dxa" (the
    /// coefficient of monomial m in slot dxa) optionally prefixed by
    /// "name:" to restrict it to the form dual to generator `name`.
    std::vector<std::string> column_preference;
    /// When set, the default order is replaced by a pseudo-random permutation.
    std::optional<std::uint64_t> shuffle_seed;
};

/// Solves the Maurer-Cartan equations level by level and dualizes.
Realization solve_forms(const GradedAlgebraSpec& spec, const RealizeOptions& options = {});

/// X_j = sum_a (V^{-1})_j^a d_a
std::vector<VectorField> dualize(const std::vector<OneForm>& forms);
/// Forms dual to a frame of fields.
std::vector<OneForm> dual_forms(const std::vector<VectorField>& fields);

/// d w^k + sum_{ij} c^k_ij (w^i (x) w^j), zero for every k exactly when the
/// Maurer-Cartan equations hold.
std::vector<TwoForm> maurer_cartan_residual(const GradedAlgebraSpec& spec,
                                            const std::vector<OneForm>& forms);

/// Every violated invariant of a candidate realization, as witness strings.
std::vector<std::string> realization_defects(const Realization& r);

/// Wraps user data after checking duality, Maurer-Cartan, brackets, degrees
/// and values at the origin. Throws ValidationError listing all defects.
Realization ingest_forms(const GradedAlgebraSpec& spec, RingPtr ring, std::vector<OneForm> forms);
Realization ingest_fields(const GradedAlgebraSpec& spec, RingPtr ring, std::vector<VectorField> fields);

} // namespace cartan
