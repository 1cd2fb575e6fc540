#include "cartan/prolong.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cartan {

namespace {

// Column index for (slot, monomial) coordinates of fields.
class FieldIndex {
public:
    std::size_t column(std::size_t slot, const Monomial& m)
    {
        auto [it, fresh] = index_.emplace(std::make_pair(slot, m), index_.size());
        (void)fresh;
        return it->second;
    }

    SparseRow row(const VectorField& x)
    {
        SparseRow r;
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (const auto& [m, c] : x.coefficient(a).terms()) {
                r.emplace(column(a, m), c);
            }
        }
        return r;
    }

    std::size_t size() const { return index_.size(); }

private:
    std::map<std::pair<std::size_t, Monomial>, std::size_t> index_;
};

Field field_of(const std::vector<VectorField>& xs)
{
    return xs.front().ring()->field();
}

VectorField combination(const RingPtr& ring, const std::vector<VectorField>& xs, const SparseRow& coeffs)
{
    VectorField out(ring);
    for (const auto& [c, v] : coeffs) {
        out += xs[c] * v;
    }
    return out;
}

// Independent combinations of `xs` spanning the kernel vectors' projections
// to the first `count` unknowns, reduced in natural order.
std::vector<VectorField> fields_from_kernel(const RingPtr& ring, const Field& field,
                                            const std::vector<VectorField>& xs,
                                            const std::vector<DenseVector>& kernel)
{
    std::vector<SparseRow> rows;
    for (const auto& v : kernel) {
        SparseRow r;
        for (std::size_t c = 0; c < xs.size(); ++c) {
            if (!v[c].is_zero()) {
                r.emplace(c, v[c]);
            }
        }
        if (!r.empty()) {
            rows.push_back(std::move(r));
        }
    }
    RowEchelon e = row_reduce(field, xs.size(), rows);
    std::vector<VectorField> out;
    for (const auto& r : e.rows) {
        out.push_back(combination(ring, xs, r));
    }
    return out;
}

// Multisets of letters with total weight w; odd letters appear at most once.
void words_of_weight(const Ring& ring, int w, std::size_t from, std::vector<std::size_t>& cur,
                     std::vector<std::vector<std::size_t>>& out)
{
    if (w == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t a = from; a < ring.size(); ++a) {
        int wa = ring.weight(a);
        if (wa > w) {
            continue;
        }
        if (ring.parity(a) == Parity::odd && !cur.empty() && cur.back() == a) {
            continue;
        }
        cur.push_back(a);
        words_of_weight(ring, w - wa, a, cur, out);
        cur.pop_back();
    }
}

} // namespace

// ---------------------------------------------------------------------------

Prolongation::Prolongation(Realization realization) : real_(std::move(realization))
{
    cof_ = centralize(real_);
    setup();
}

Prolongation::Prolongation(Realization realization, Coframe coframe)
    : real_(std::move(realization)), cof_(std::move(coframe))
{
    auto defects = coframe_defects(real_, cof_);
    if (!defects.empty()) {
        throw ValidationError(defects);
    }
    setup();
}

void Prolongation::setup()
{
    const GradedAlgebraSpec& spec = real_.spec;
    const Field& f = spec.field();
    first_ = spec.indices_of_degree(-1);
    const int d = spec.depth();
    std::vector<std::vector<std::size_t>> free_at(static_cast<std::size_t>(d + 1));
    for (int L = 2; L <= d; ++L) {
        LevelSystem ls;
        ls.columns = spec.indices_of_degree(-(L - 1));
        std::vector<SparseRow> rows;
        for (std::size_t i : first_) {
            for (std::size_t k : spec.indices_of_degree(-L)) {
                SparseRow r;
                for (std::size_t c = 0; c < ls.columns.size(); ++c) {
                    std::size_t j = ls.columns[c];
                    Scalar v = spec.c(i, j, k);
                    if (!v.is_zero()) {
                        r.emplace(c, v.signed_by(bit(spec.parity(i)) * bit(spec.parity(j))));
                    }
                }
                ls.rows_i.push_back(i);
                ls.rows_k.push_back(k);
                rows.push_back(std::move(r));
            }
        }
        ls.echelon = row_reduce(f, ls.columns.size(), rows, {}, true);
        std::vector<bool> pivot(ls.columns.size(), false);
        for (std::size_t c : ls.echelon.pivot_columns) {
            pivot[c] = true;
        }
        for (std::size_t c = 0; c < ls.columns.size(); ++c) {
            if (!pivot[c]) {
                free_at[static_cast<std::size_t>(L - 1)].push_back(ls.columns[c]);
            }
        }
        levels_.emplace(L, std::move(ls));
    }
    generating_ = spec.indices_of_degree(-d);
    for (int L = d - 1; L >= 1; --L) {
        for (std::size_t j : free_at[static_cast<std::size_t>(L)]) {
            generating_.push_back(j);
        }
    }
}

// Fills theta-values of all coordinates from the generating ones, level by
// level from the deepest, and collects the remaining constraints.
Prolongation::Propagation Prolongation::propagate(std::vector<AffinePolynomial> f, Parity pi) const
{
    const GradedAlgebraSpec& spec = real_.spec;
    Propagation out;
    for (int L = spec.depth(); L >= 2; --L) {
        const LevelSystem& ls = levels_.at(L);
        const RowEchelon& e = ls.echelon;
        std::vector<AffinePolynomial> b;
        b.reserve(ls.rows_i.size());
        for (std::size_t r = 0; r < ls.rows_i.size(); ++r) {
            const VectorField& y = cof_.fields[ls.rows_i[r]];
            AffinePolynomial v = f[ls.rows_k[r]].map([&](const Polynomial& p) { return y.apply(p); });
            if (pi == Parity::odd && spec.parity(ls.rows_i[r]) == Parity::odd) {
                v *= -Scalar::one(spec.field());
            }
            b.push_back(std::move(v));
        }
        std::vector<bool> pivot(ls.columns.size(), false);
        for (std::size_t c : e.pivot_columns) {
            pivot[c] = true;
        }
        for (std::size_t q = 0; q < e.rank(); ++q) {
            AffinePolynomial value(real_.ring);
            for (const auto& [r, t] : e.transforms[q]) {
                value += b[r] * t;
            }
            for (const auto& [c, v] : e.rows[q]) {
                if (!pivot[c]) {
                    value -= f[ls.columns[c]] * v;
                }
            }
            f[ls.columns[e.pivot_columns[q]]] = std::move(value);
        }
        for (const auto& kappa : e.left_kernel) {
            AffinePolynomial value(real_.ring);
            for (const auto& [r, t] : kappa) {
                value += b[r] * t;
            }
            out.residuals.push_back(std::move(value));
        }
    }
    out.f = std::move(f);
    return out;
}

ProlongComponent Prolongation::complete_component_parity(int s, Parity pi) const
{
    const RingPtr& ring = real_.ring;
    const GradedAlgebraSpec& spec = real_.spec;
    const std::size_t n = spec.size();
    std::vector<AffinePolynomial> f(n, AffinePolynomial(ring));
    std::size_t unknowns = 0;
    for (std::size_t g : generating_) {
        int w = s + spec.weight(g);
        if (w < 0) {
            continue;
        }
        for (const Monomial& m : ring->monomials_of_weight(w, pi + spec.parity(g))) {
            f[g] += AffinePolynomial::unknown(ring, unknowns++, Polynomial::term(ring, m, ring->one()));
        }
    }
    if (unknowns == 0) {
        return {s, {}, {}};
    }
    Propagation p = propagate(std::move(f), pi);
    LinearSystem sys{spec.field(), unknowns, {}, {}, {}};
    for (const auto& r : p.residuals) {
        r.append_equations(sys);
    }
    Solution sol = solve(sys, SolvePolicy::kernel_basis);
    std::vector<SparseRow> rows;
    for (const auto& v : sol.kernel) {
        rows.push_back(to_sparse(v));
    }
    RowEchelon e = row_reduce(spec.field(), unknowns, rows);
    ProlongComponent c{s, {}, {}};
    for (const auto& r : e.rows) {
        DenseVector lambda = to_dense(spec.field(), unknowns, r);
        VectorField x(ring);
        for (std::size_t j = 0; j < n; ++j) {
            Polynomial fj = p.f[j].evaluate(lambda);
            if (!fj.is_zero()) {
                x += cof_.fields[j].left_multiply(fj);
            }
        }
        std::vector<Polynomial> tuple;
        for (std::size_t g : generating_) {
            tuple.push_back(p.f[g].evaluate(lambda));
        }
        c.basis.push_back(std::move(x));
        c.generating.push_back(std::move(tuple));
    }
    return c;
}

ProlongComponent Prolongation::complete_component(int s) const
{
    ProlongComponent even = complete_component_parity(s, Parity::even);
    ProlongComponent odd = complete_component_parity(s, Parity::odd);
    for (std::size_t q = 0; q < odd.basis.size(); ++q) {
        even.basis.push_back(std::move(odd.basis[q]));
        even.generating.push_back(std::move(odd.generating[q]));
    }
    return even;
}

ProlongComponent Prolongation::make_component(int s, std::vector<VectorField> fields) const
{
    ProlongComponent c{s, std::move(fields), {}};
    for (const auto& x : c.basis) {
        c.generating.push_back(generating_tuple(x));
    }
    return c;
}

std::vector<Polynomial> Prolongation::generating_tuple(const VectorField& x) const
{
    std::vector<Polynomial> out;
    for (std::size_t g : generating_) {
        out.push_back(pair(cof_.forms[g], x));
    }
    return out;
}

VectorField Prolongation::field_from_generating(int s, const std::vector<Polynomial>& tuple) const
{
    const RingPtr& ring = real_.ring;
    const GradedAlgebraSpec& spec = real_.spec;
    if (tuple.size() != generating_.size()) {
        throw ValidationError({"generating tuple has " + std::to_string(tuple.size()) + " entries, expected " +
                               std::to_string(generating_.size())});
    }
    VectorField x(ring);
    for (Parity pi : {Parity::even, Parity::odd}) {
        std::vector<AffinePolynomial> f(spec.size(), AffinePolynomial(ring));
        bool any = false;
        for (std::size_t q = 0; q < generating_.size(); ++q) {
            std::size_t g = generating_[q];
            Polynomial part = tuple[q].parity_part(pi + spec.parity(g));
            if (part.is_zero()) {
                continue;
            }
            auto w = part.weighted_degree();
            if (!w || *w != s + spec.weight(g)) {
                throw ValidationError({"generating function " + tuple[q].str() + " for " +
                                       spec.generator(g).name + " is not of weight " +
                                       std::to_string(s + spec.weight(g))});
            }
            f[g] = AffinePolynomial(part);
            any = true;
        }
        if (!any) {
            continue;
        }
        Propagation p = propagate(std::move(f), pi);
        for (const auto& r : p.residuals) {
            if (!r.constant().is_zero()) {
                throw ValidationError({"generating tuple violates the compatibility condition " +
                                       r.constant().str() + " = 0"});
            }
        }
        for (std::size_t j = 0; j < spec.size(); ++j) {
            if (!p.f[j].constant().is_zero()) {
                x += cof_.fields[j].left_multiply(p.f[j].constant());
            }
        }
    }
    return x;
}

bool Prolongation::distribution_check(const VectorField& x) const
{
    std::set<std::size_t> first(first_.begin(), first_.end());
    for (std::size_t i : first_) {
        VectorField b = bracket(x, cof_.fields[i]);
        for (std::size_t k = 0; k < cof_.forms.size(); ++k) {
            if (!first.count(k) && !pair(cof_.forms[k], b).is_zero()) {
                return false;
            }
        }
    }
    return true;
}

ProlongComponent Prolongation::recurrence_component(int s, const std::vector<VectorField>& candidates,
                                                    const ProlongComponent& lower) const
{
    const RingPtr& ring = real_.ring;
    const Field& field = ring->field();
    if (candidates.empty()) {
        return {s, {}, {}};
    }
    const std::size_t nc = candidates.size();
    const std::size_t nl = lower.basis.size();
    const std::size_t unknowns = nc + first_.size() * nl;
    LinearSystem sys{field, unknowns, {}, {}, {}};
    for (std::size_t q = 0; q < first_.size(); ++q) {
        const VectorField& xi = real_.fields[first_[q]];
        FieldIndex index;
        std::map<std::size_t, SparseRow> rows;
        for (std::size_t c = 0; c < nc; ++c) {
            for (const auto& [col, v] : index.row(bracket(xi, candidates[c]))) {
                rows[col].emplace(c, v);
            }
        }
        for (std::size_t l = 0; l < nl; ++l) {
            for (const auto& [col, v] : index.row(lower.basis[l])) {
                rows[col].emplace(nc + q * nl + l, -v);
            }
        }
        for (auto& [col, r] : rows) {
            (void)col;
            sys.add_row(std::move(r));
        }
    }
    Solution sol = solve(sys, SolvePolicy::kernel_basis);
    return make_component(s, fields_from_kernel(ring, field, candidates, sol.kernel));
}

ProlongComponent Prolongation::oracle_component(int s, const ProlongComponent& lower) const
{
    const RingPtr& ring = real_.ring;
    const GradedAlgebraSpec& spec = real_.spec;
    if (s < 0) {
        std::vector<VectorField> xs;
        for (std::size_t i : spec.indices_of_degree(s)) {
            xs.push_back(real_.fields[i]);
        }
        return make_component(s, std::move(xs));
    }
    std::vector<VectorField> candidates;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        for (const Monomial& m : ring->monomials_of_weight(s + spec.weight(j))) {
            candidates.push_back(cof_.fields[j].left_multiply(Polynomial::term(ring, m, ring->one())));
        }
    }
    return recurrence_component(s, candidates, lower);
}

// ---------------------------------------------------------------------------

Polynomial Prolongation::apply_word(const std::vector<std::size_t>& word, const Polynomial& f,
                                    bool symmetrized) const
{
    auto run = [&](const std::vector<std::size_t>& w) {
        Polynomial g = f;
        for (auto it = w.rbegin(); it != w.rend() && !g.is_zero(); ++it) {
            g = apply_hat(cof_.fields[*it], g);
        }
        return g;
    };
    if (!symmetrized || word.size() < 2) {
        return run(word);
    }
    const Ring& ring = *real_.ring;
    std::vector<std::size_t> perm = word;
    std::sort(perm.begin(), perm.end());
    Polynomial out(f.ring());
    do {
        int inversions = 0;
        for (std::size_t a = 0; a < perm.size(); ++a) {
            if (ring.parity(perm[a]) != Parity::odd) {
                continue;
            }
            for (std::size_t b = a + 1; b < perm.size(); ++b) {
                if (ring.parity(perm[b]) == Parity::odd && perm[a] > perm[b]) {
                    ++inversions;
                }
            }
        }
        Polynomial g = run(perm);
        if (inversions % 2) {
            out -= g;
        } else {
            out += g;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Polynomial Prolongation::apply(const DiffOperator& op, const VectorField& x) const
{
    Polynomial out(real_.ring);
    std::map<std::size_t, Polynomial> theta;
    for (const auto& t : op.terms) {
        auto it = theta.find(t.target);
        if (it == theta.end()) {
            it = theta.emplace(t.target, pair(cof_.forms[t.target], x)).first;
        }
        out += apply_word(t.word, it->second, op.symmetrized) * t.coeff;
    }
    return out;
}

std::vector<DiffOperator> Prolongation::annihilator_operators(const std::vector<VectorField>& ambient,
                                                              const std::vector<VectorField>& h,
                                                              std::vector<std::string>* warnings) const
{
    if (ambient.empty()) {
        return {};
    }
    const Field& field = real_.ring->field();
    const GradedAlgebraSpec& spec = real_.spec;
    auto degree = ambient.front().weighted_degree();
    if (!degree) {
        throw ValidationError({"ambient fields are not homogeneous"});
    }
    const std::size_t nb = ambient.size();
    LinearSystem ann{field, nb, {}, {}, {}};
    for (const auto& y : h) {
        auto coords = coordinates_in(ambient, y);
        if (!coords) {
            throw ValidationError({"field " + y.str() + " does not lie in the ambient component of degree " +
                                   std::to_string(*degree)});
        }
        ann.add_row(to_sparse(*coords));
    }
    std::vector<SparseRow> alphas;
    for (const auto& v : solve(ann, SolvePolicy::kernel_basis).kernel) {
        alphas.push_back(to_sparse(v));
    }
    alphas = row_reduce(field, nb, alphas).rows;
    if (alphas.empty()) {
        return {};
    }

    struct Functional {
        std::size_t target;
        std::vector<std::size_t> word;
    };
    std::vector<Functional> fns;
    for (std::size_t g : generating_) {
        int w = *degree + spec.weight(g);
        if (w < 0) {
            continue;
        }
        std::vector<std::vector<std::size_t>> words;
        std::vector<std::size_t> cur;
        words_of_weight(*real_.ring, w, 0, cur, words);
        for (auto& word : words) {
            fns.push_back({g, std::move(word)});
        }
    }
    // shorter words first
    std::stable_sort(fns.begin(), fns.end(),
                     [](const Functional& a, const Functional& b) { return a.word.size() < b.word.size(); });

    std::vector<std::vector<Polynomial>> thetas;
    for (const auto& b : ambient) {
        std::vector<Polynomial> t;
        for (std::size_t k = 0; k < cof_.forms.size(); ++k) {
            t.push_back(pair(cof_.forms[k], b));
        }
        thetas.push_back(std::move(t));
    }

    for (bool symmetrized : {true, false}) {
        // matrix A[b][u] = value of functional u on ambient[b]
        std::vector<SparseRow> by_basis(nb);
        for (std::size_t u = 0; u < fns.size(); ++u) {
            for (std::size_t b = 0; b < nb; ++b) {
                Scalar v = apply_word(fns[u].word, thetas[b][fns[u].target], symmetrized).constant_term();
                if (!v.is_zero()) {
                    by_basis[b].emplace(u, v);
                }
            }
        }
        std::vector<DiffOperator> ops;
        bool ok = true;
        for (const auto& alpha : alphas) {
            LinearSystem sys{field, fns.size(), {}, {}, {}};
            for (std::size_t b = 0; b < nb; ++b) {
                auto it = alpha.find(b);
                sys.add_row(by_basis[b], it == alpha.end() ? Scalar::zero(field) : it->second);
            }
            Solution sol;
            try {
                sol = solve(sys, SolvePolicy::free_vars_zero);
            } catch (const InconsistentSystem&) {
                ok = false;
                break;
            }
            DiffOperator op;
            op.symmetrized = symmetrized;
            for (std::size_t u = 0; u < fns.size(); ++u) {
                if (!(*sol.particular)[u].is_zero()) {
                    op.terms.push_back({(*sol.particular)[u], fns[u].word, fns[u].target});
                }
            }
            // only the kernel matters; make the leading coefficient 1
            if (!op.terms.empty()) {
                Scalar lead = op.terms.front().coeff.inverse();
                for (auto& t : op.terms) {
                    t.coeff *= lead;
                }
            }
            ops.push_back(std::move(op));
        }
        if (ok) {
            return ops;
        }
        if (warnings) {
            warnings->push_back("symmetrized words do not span the dual of degree " + std::to_string(*degree) +
                                " over " + field.name() + "; using ordered words");
        }
    }
    throw std::logic_error("word functionals do not span the dual of the component of degree " +
                           std::to_string(*degree));
}

ProlongComponent Prolongation::operator_component(int s, const std::vector<VectorField>& candidates,
                                                  const std::vector<DiffOperator>& ops) const
{
    const RingPtr& ring = real_.ring;
    if (candidates.empty()) {
        return {s, {}, {}};
    }
    if (ops.empty()) {
        return make_component(s, candidates);
    }
    const Field& field = ring->field();
    LinearSystem sys{field, candidates.size(), {}, {}, {}};
    for (const auto& op : ops) {
        std::map<Monomial, SparseRow> rows;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            Polynomial value = apply(op, candidates[c]);
            for (const auto& [m, v] : value.terms()) {
                rows[m].emplace(c, v);
            }
        }
        for (auto& [m, r] : rows) {
            (void)m;
            sys.add_row(std::move(r));
        }
    }
    Solution sol = solve(sys, SolvePolicy::kernel_basis);
    return make_component(s, fields_from_kernel(ring, field, candidates, sol.kernel));
}

ProlongComponent Prolongation::partial_component(int s, const std::vector<DiffOperator>& ops) const
{
    return operator_component(s, complete_component(s).basis, ops);
}

std::string Prolongation::operator_str(const DiffOperator& op) const
{
    const Ring& ring = *real_.ring;
    std::vector<std::string> parts;
    for (const auto& t : op.terms) {
        std::string s = detail::coefficient_prefix(t.coeff);
        std::string theta = "theta^" + ring.variable(t.target).name;
        if (t.word.empty()) {
            parts.push_back(s + theta);
            continue;
        }
        std::string w;
        for (std::size_t a : t.word) {
            if (!w.empty()) {
                w += " ";
            }
            w += "Y^" + ring.variable(a).name;
        }
        if (op.symmetrized && t.word.size() > 1) {
            w = "S(" + w + ")";
        }
        parts.push_back(s + w + "(" + theta + ")");
    }
    if (parts.empty()) {
        return "0";
    }
    return detail::join_terms(parts);
}

// ---------------------------------------------------------------------------

std::size_t span_dimension(const std::vector<VectorField>& fields)
{
    if (fields.empty()) {
        return 0;
    }
    FieldIndex index;
    std::vector<SparseRow> rows;
    for (const auto& x : fields) {
        rows.push_back(index.row(x));
    }
    return rank_of(field_of(fields), index.size(), rows);
}

bool spans_equal(const std::vector<VectorField>& a, const std::vector<VectorField>& b)
{
    std::size_t da = span_dimension(a);
    if (da != span_dimension(b)) {
        return false;
    }
    std::vector<VectorField> both = a;
    both.insert(both.end(), b.begin(), b.end());
    return span_dimension(both) == da;
}

bool span_contains(const std::vector<VectorField>& basis, const VectorField& x)
{
    if (x.is_zero()) {
        return true;
    }
    std::vector<VectorField> both = basis;
    both.push_back(x);
    return span_dimension(both) == span_dimension(basis);
}

std::optional<DenseVector> coordinates_in(const std::vector<VectorField>& basis, const VectorField& x)
{
    const Field& field = x.ring()->field();
    FieldIndex index;
    std::map<std::size_t, SparseRow> rows;
    for (std::size_t b = 0; b < basis.size(); ++b) {
        for (const auto& [col, v] : index.row(basis[b])) {
            rows[col].emplace(b, v);
        }
    }
    SparseRow target = index.row(x);
    LinearSystem sys{field, basis.size(), {}, {}, {}};
    std::set<std::size_t> seen;
    for (auto& [col, r] : rows) {
        auto it = target.find(col);
        sys.rows.push_back(std::move(r));
        sys.rhs.push_back(it == target.end() ? Scalar::zero(field) : it->second);
        seen.insert(col);
    }
    for (const auto& [col, v] : target) {
        if (!seen.count(col)) {
            (void)v;
            return std::nullopt;
        }
    }
    try {
        return *solve(sys, SolvePolicy::free_vars_zero).particular;
    } catch (const InconsistentSystem&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<VectorField> independent_subset(const std::vector<VectorField>& xs)
{
    std::vector<VectorField> out;
    std::size_t rank = 0;
    for (const auto& x : xs) {
        out.push_back(x);
        std::size_t r = span_dimension(out);
        if (r == rank) {
            out.pop_back();
        } else {
            rank = r;
        }
    }
    return out;
}

} // namespace

PartialResult reduce_defining_degree(const Prolongation& engine, const BeginningPart& beginning,
                                     const PartialOptions& options)
{
    const int d = engine.spec().depth();
    int K = -1;
    for (const auto& [k, xs] : beginning.parts) {
        (void)xs;
        if (k < 0) {
            throw ValidationError({"beginning part given at negative degree " + std::to_string(k)});
        }
        K = std::max(K, k);
    }
    for (int k = 0; k <= K; ++k) {
        if (!beginning.parts.count(k)) {
            throw ValidationError({"beginning part is missing degree " + std::to_string(k)});
        }
    }
    const int top = std::max(K, options.max_degree);
    std::map<int, ProlongComponent> g;
    for (int s = -d; s <= top; ++s) {
        g.emplace(s, engine.complete_component(s));
    }

    std::map<int, std::vector<VectorField>> h;
    for (int s = -d; s < 0; ++s) {
        h[s] = g[s].basis;
    }
    for (int k = 0; k <= K; ++k) {
        std::vector<std::string> bad;
        for (const auto& x : beginning.parts.at(k)) {
            auto deg = x.weighted_degree();
            if (!x.is_zero() && (!deg || *deg != k)) {
                bad.push_back("field " + x.str() + " in h_" + std::to_string(k) + " is not of degree " +
                              std::to_string(k));
            } else if (!span_contains(g[k].basis, x)) {
                bad.push_back("field " + x.str() + " in h_" + std::to_string(k) +
                              " is not in the complete prolongation");
            }
        }
        if (!bad.empty()) {
            throw ValidationError(bad);
        }
        h[k] = independent_subset(beginning.parts.at(k));
    }
    // [h_i, h_j] in h_{i+j}
    {
        std::vector<std::string> bad;
        for (int i = -d; i <= K && bad.empty(); ++i) {
            for (int j = std::max(i, -d - i); j <= K && bad.empty(); ++j) {
                int sum = i + j;
                if (sum < -d || sum > K) {
                    continue;
                }
                for (const auto& x : h[i]) {
                    for (const auto& y : h[j]) {
                        VectorField b = bracket(x, y);
                        if (!span_contains(h[sum], b)) {
                            bad.push_back("bracket [" + x.str() + ", " + y.str() + "] is not in h_" +
                                          std::to_string(sum));
                            break;
                        }
                    }
                    if (!bad.empty()) {
                        break;
                    }
                }
            }
        }
        if (!bad.empty()) {
            throw ValidationError(bad);
        }
    }

    PartialResult res;
    res.defining_degree = K + 1;
    std::vector<DiffOperator> ops;
    bool have_defining = false;
    ProlongComponent previous;
    for (int s = -d; s <= top; ++s) {
        PartialDegree pd;
        pd.degree = s;
        pd.complete_dim = g[s].dim();
        if (s < 0) {
            pd.component = g[s];
        } else if (s <= K) {
            std::vector<VectorField> cand = g[s].basis;
            if (have_defining) {
                cand = engine.operator_component(s, cand, ops).basis;
                for (const auto& x : h[s]) {
                    if (!span_contains(cand, x)) {
                        throw ValidationError({"h_" + std::to_string(s) +
                                               " is not contained in the prolongation of the lower part: " +
                                               x.str()});
                    }
                }
            }
            if (h[s].size() < cand.size()) {
                auto more = engine.annihilator_operators(cand, h[s], &res.warnings);
                res.operators[s] = more;
                ops.insert(ops.end(), more.begin(), more.end());
                pd.defining = true;
                if (!have_defining) {
                    res.defining_degree = s;
                }
                have_defining = true;
            }
            pd.component = engine.operator_component(s, h[s], {});
        } else {
            pd.component = have_defining ? engine.operator_component(s, g[s].basis, ops) : g[s];
            if (options.cross_check && have_defining) {
                ProlongComponent rec = engine.recurrence_component(s, g[s].basis, previous);
                pd.oracle_agrees = spans_equal(rec.basis, pd.component.basis);
            }
        }
        pd.partial_dim = pd.component.dim();
        previous = pd.component;
        res.degrees.push_back(std::move(pd));
    }
    std::vector<std::size_t> dims;
    for (const auto& pd : res.degrees) {
        dims.push_back(pd.partial_dim);
    }
    res.stabilized_to_zero = stabilized_to_zero(dims);
    return res;
}

CompleteResult complete_prolong(const Prolongation& engine, int max_degree, bool cross_check)
{
    const int d = engine.spec().depth();
    CompleteResult res;
    ProlongComponent oracle_prev;
    for (int s = -d; s <= max_degree; ++s) {
        if (res.vanishes_from) {
            res.components.push_back({s, {}, {}});
            if (cross_check) {
                res.oracle_agrees.push_back(true);
            }
            continue;
        }
        ProlongComponent c = engine.complete_component(s);
        if (cross_check) {
            ProlongComponent o = engine.oracle_component(s, oracle_prev);
            res.oracle_agrees.push_back(spans_equal(o.basis, c.basis));
            oracle_prev = std::move(o);
        }
        if (s >= 0 && c.basis.empty()) {
            res.vanishes_from = s;
        }
        res.components.push_back(std::move(c));
    }
    std::vector<std::size_t> dims;
    for (const auto& c : res.components) {
        dims.push_back(c.dim());
    }
    res.stabilized_to_zero = stabilized_to_zero(dims);
    return res;
}

bool stabilized_to_zero(const std::vector<std::size_t>& dims)
{
    std::size_t run = 0;
    for (std::size_t d : dims) {
        run = d == 0 ? run + 1 : 0;
        if (run == 3) {
            return true;
        }
    }
    return false;
}

} // namespace cartan
