#pragma once

// The frame Y_1..Y_n commuting with a realization, and its dual coframe.

#include <vector>

#include "cartan/realize.hpp"

namespace cartan {

struct Coframe {
    std::vector<VectorField> fields; ///< Y_1..Y_n
    std::vector<OneForm> forms;      ///< theta^1..theta^n
};

/// Y_j with (Y_j)_(-1) = d_j and [X_i, Y_j] = 0 for all i, built component by
/// component in the standard grading.
std::vector<VectorField> centralizer_fields(const Realization& r);

/// Forms theta^k with theta^k(Y_j) = delta^k_j.
std::vector<OneForm> dual_coframe(const std::vector<VectorField>& y);

Coframe centralize(const Realization& r);

/// Witnesses for failures of [X_i, Y_j] = 0, [Y_i, Y_j] = -sum c^k_ij Y_k and duality.
std::vector<std::string> coframe_defects(const Realization& r, const Coframe& c);

} // namespace cartan
