#pragma once

// Complete and partial Cartan prolongations of a realized negative part.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cartan/centralize.hpp"

namespace cartan {

/// A basis of homogeneous fields of one weighted degree together with their
/// generating functions (theta-coordinates along the generating directions).
struct ProlongComponent {
    int degree = 0;
    std::vector<VectorField> basis;
    std::vector<std::vector<Polynomial>> generating;

    std::size_t dim() const noexcept { return basis.size(); }
};

/// One term coeff * S(Y^_{w_1} ... Y^_{w_t}) applied to theta^target(X).
struct OperatorTerm {
    Scalar coeff;
    std::vector<std::size_t> word; ///< sorted multiset of Y-indices
    std::size_t target = 0;        ///< coframe index j
};

/// A constant-coefficient operator on fields. When `symmetrized` is set each
/// word is summed over its distinct arrangements, odd letters contributing the
/// sign of their permutation; otherwise the sorted word is applied as is.
struct DiffOperator {
    std::vector<OperatorTerm> terms;
    bool symmetrized = true;
};

class Prolongation {
public:
    explicit Prolongation(Realization realization);
    Prolongation(Realization realization, Coframe coframe);

    const Realization& realization() const noexcept { return real_; }
    const Coframe& coframe() const noexcept { return cof_; }
    const RingPtr& ring() const noexcept { return real_.ring; }
    const GradedAlgebraSpec& spec() const noexcept { return real_.spec; }
    /// Coordinates whose theta-values determine a field: the deepest level plus
    /// the free columns of each level system.
    const std::vector<std::size_t>& generating() const noexcept { return generating_; }
    const std::vector<std::size_t>& first_level() const noexcept { return first_; }

    /// Fields of degree s preserving the distribution theta^k = 0 (k outside
    /// the degree -1 block), from the level equations on generating functions.
    ProlongComponent complete_component(int s) const;

    /// Brute-force component: for s < 0 the span of the realization fields of
    /// that degree; for s >= 0 the fields f*Y_j of degree s with
    /// [X_i, X] in span(lower) for all degree -1 fields X_i.
    ProlongComponent oracle_component(int s, const ProlongComponent& lower) const;

    /// Fields X in span(candidates) with [X_i, X] in span(lower) for i in the
    /// degree -1 block.
    ProlongComponent recurrence_component(int s, const std::vector<VectorField>& candidates,
                                          const ProlongComponent& lower) const;

    /// theta^j(X) for j in generating().
    std::vector<Polynomial> generating_tuple(const VectorField& x) const;
    /// Unique field of degree s in g_s with the given generating tuple.
    VectorField field_from_generating(int s, const std::vector<Polynomial>& tuple) const;

    /// theta^k([X, Y_i]) = 0 for i in the degree -1 block and k outside it.
    bool distribution_check(const VectorField& x) const;

    /// Operators vanishing exactly on h inside span(ambient). `warnings`
    /// receives a note when symmetrized words do not suffice.
    std::vector<DiffOperator> annihilator_operators(const std::vector<VectorField>& ambient,
                                                    const std::vector<VectorField>& h,
                                                    std::vector<std::string>* warnings = nullptr) const;

    /// Value of an operator on a field.
    Polynomial apply(const DiffOperator& op, const VectorField& x) const;
    /// S(Y^_word)(f)
    Polynomial apply_word(const std::vector<std::size_t>& word, const Polynomial& f, bool symmetrized) const;

    /// Fields in span(candidates) annihilated by every operator.
    ProlongComponent operator_component(int s, const std::vector<VectorField>& candidates,
                                        const std::vector<DiffOperator>& ops) const;

    /// Candidates from complete_component(s) cut by the operators.
    ProlongComponent partial_component(int s, const std::vector<DiffOperator>& ops) const;

    std::string operator_str(const DiffOperator& op) const;

private:
    struct LevelSystem {
        std::vector<std::size_t> rows_i;      // degree -1 index of each row
        std::vector<std::size_t> rows_k;      // level-L index of each row
        std::vector<std::size_t> columns;     // level L-1 indices
        RowEchelon echelon;                   // of the matrix with sign for even X
    };

    struct Propagation {
        std::vector<AffinePolynomial> f;
        std::vector<AffinePolynomial> residuals;
    };

    void setup();
    Propagation propagate(std::vector<AffinePolynomial> f, Parity pi) const;
    ProlongComponent complete_component_parity(int s, Parity pi) const;
    ProlongComponent make_component(int s, std::vector<VectorField> fields) const;

    Realization real_;
    Coframe cof_;
    std::vector<std::size_t> first_;
    std::vector<std::size_t> generating_;
    std::map<int, LevelSystem> levels_; // keyed by L >= 2
};

/// Prescribed beginning part h_0..h_K of a partial prolongation.
struct BeginningPart {
    std::map<int, std::vector<VectorField>> parts; ///< degree -> spanning fields
};

struct PartialDegree {
    int degree = 0;
    std::size_t complete_dim = 0;
    std::size_t partial_dim = 0;
    ProlongComponent component;
    bool defining = false;
    /// Result of the recurrence cross-check (true when not applicable).
    bool oracle_agrees = true;
};

struct PartialResult {
    int defining_degree = 0; ///< first degree where h differs from g; K + 1 when none
    std::vector<PartialDegree> degrees; ///< s = -depth .. s_max
    std::map<int, std::vector<DiffOperator>> operators; ///< by defining degree
    std::vector<std::string> warnings;
    bool stabilized_to_zero = false;
};

struct PartialOptions {
    int max_degree = 3;
    bool cross_check = true;
};

/// Iterative partial prolongation driver.
PartialResult reduce_defining_degree(const Prolongation& engine, const BeginningPart& beginning,
                                     const PartialOptions& options);

struct CompleteResult {
    std::vector<ProlongComponent> components; ///< s = -depth .. s_max
    std::vector<bool> oracle_agrees;          ///< empty when not checked
    /// First non-negative degree with a zero component; every later one vanishes too.
    std::optional<int> vanishes_from;
    /// Three consecutive zero components were computed (display only).
    bool stabilized_to_zero = false;
};

CompleteResult complete_prolong(const Prolongation& engine, int max_degree, bool cross_check);

/// True when three consecutive entries are zero.
bool stabilized_to_zero(const std::vector<std::size_t>& dims);

/// Span utilities on homogeneous fields.
std::size_t span_dimension(const std::vector<VectorField>& fields);
bool spans_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b);
bool span_contains(const std::vector<VectorField>& basis, const VectorField& x);
/// Coordinates of x in an independent list, or nullopt when outside the span.
std::optional<DenseVector> coordinates_in(const std::vector<VectorField>& basis, const VectorField& x);

} // namespace cartan
