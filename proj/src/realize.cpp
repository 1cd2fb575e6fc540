#include "cartan/realize.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace cartan {

namespace {

struct Unknown {
    std::size_t slot;
    Monomial monomial;
};

std::vector<std::size_t> column_order_for(const GradedAlgebraSpec& spec, const RingPtr& handle,
                                          std::size_t k, const std::vector<Unknown>& unknowns,
                                          const RealizeOptions& options)
{
    const Ring& ring = *handle;
    std::vector<std::size_t> order(unknowns.size());
    for (std::size_t u = 0; u < order.size(); ++u) {
        order[u] = u;
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const Unknown& a = unknowns[x];
        const Unknown& b = unknowns[y];
        int wa = ring.weight(a.slot);
        int wb = ring.weight(b.slot);
        if (wa != wb) {
            return wa > wb;
        }
        if (a.slot != b.slot) {
            return a.slot < b.slot;
        }
        return a.monomial < b.monomial;
    });
    if (options.shuffle_seed) {
        std::mt19937_64 rng(*options.shuffle_seed + 0x9e3779b97f4a7c15ULL * (k + 1));
        std::shuffle(order.begin(), order.end(), rng);
    }
    if (options.column_preference.empty()) {
        return order;
    }
    std::vector<std::size_t> front;
    const std::string& own = spec.generator(k).name;
    for (const std::string& entry : options.column_preference) {
        std::string body = entry;
        auto colon = entry.find(':');
        if (colon != std::string::npos) {
            std::string name = entry.substr(0, colon);
            name.erase(std::remove(name.begin(), name.end(), ' '), name.end());
            if (name != own) {
                continue;
            }
            body = entry.substr(colon + 1);
        }
        OneForm w = OneForm::parse(handle, body);
        for (std::size_t a = 0; a < w.size(); ++a) {
            for (const auto& [m, c] : w.coefficient(a).terms()) {
                (void)c;
                for (std::size_t u = 0; u < unknowns.size(); ++u) {
                    if (unknowns[u].slot == a && unknowns[u].monomial == m &&
                        std::find(front.begin(), front.end(), u) == front.end()) {
                        front.push_back(u);
                    }
                }
            }
        }
    }
    std::vector<std::size_t> out = front;
    for (std::size_t u : order) {
        if (std::find(front.begin(), front.end(), u) == front.end()) {
            out.push_back(u);
        }
    }
    return out;
}

} // namespace

Realization solve_forms(const GradedAlgebraSpec& spec, const RealizeOptions& options)
{
    require_valid(spec);
    RingPtr ring = spec.coordinate_ring();
    const std::size_t n = spec.size();
    const Field& field = spec.field();
    std::vector<OneForm> forms(n, OneForm(ring));

    for (int s = 1; s <= spec.depth(); ++s) {
        for (std::size_t k : spec.indices_of_degree(-s)) {
            Parity pk = spec.parity(k);
            std::vector<Unknown> unknowns;
            std::vector<AffinePolynomial> vk(n, AffinePolynomial(ring));
            vk[k] = AffinePolynomial(Polynomial::constant(ring, ring->one()));
            for (std::size_t a = 0; a < n; ++a) {
                int w = s - ring->weight(a);
                if (w <= 0) {
                    continue;
                }
                for (const Monomial& m : ring->monomials_of_weight(w, pk + ring->parity(a))) {
                    vk[a] += AffinePolynomial::unknown(ring, unknowns.size(),
                                                       Polynomial::term(ring, m, ring->one()));
                    unknowns.push_back({a, m});
                }
            }
            LinearSystem sys{field, unknowns.size(), {}, {}, {}};
            for (std::size_t a = 0; a < n; ++a) {
                for (std::size_t b = a; b < n; ++b) {
                    AffinePolynomial e = vk[b].map([&](const Polynomial& p) { return partial(a, p); });
                    AffinePolynomial d = vk[a].map([&](const Polynomial& p) { return partial(b, p); });
                    if (ring->parity(a) == Parity::odd && ring->parity(b) == Parity::odd) {
                        e += d;
                    } else {
                        e -= d;
                    }
                    Polynomial quad(ring);
                    for (std::size_t i = 0; i < n; ++i) {
                        const Polynomial& via = forms[i].coefficient(a);
                        if (via.is_zero()) {
                            continue;
                        }
                        for (std::size_t j = 0; j < n; ++j) {
                            Scalar c = spec.c(i, j, k);
                            if (c.is_zero()) {
                                continue;
                            }
                            const Polynomial& vjb = forms[j].coefficient(b);
                            if (vjb.is_zero()) {
                                continue;
                            }
                            int sign = bit(spec.parity(i)) * (bit(ring->parity(b)) + bit(spec.parity(j)));
                            quad += mul(via, vjb) * c.signed_by(sign);
                        }
                    }
                    e += AffinePolynomial(quad);
                    e.append_equations(sys);
                }
            }
            sys.column_order = column_order_for(spec, ring, k, unknowns, options);
            Solution sol;
            try {
                sol = solve(sys, SolvePolicy::free_vars_zero);
            } catch (const InconsistentSystem& e) {
                throw std::logic_error("Maurer-Cartan system for " + spec.generator(k).name +
                                       " is inconsistent although the Jacobi identity holds");
            }
            OneForm w(ring);
            for (std::size_t a = 0; a < n; ++a) {
                w.set_coefficient(a, vk[a].evaluate(*sol.particular));
            }
            forms[k] = std::move(w);
        }
    }
    Realization r{spec, ring, forms, dualize(forms)};
    return r;
}

std::vector<VectorField> dualize(const std::vector<OneForm>& forms)
{
    if (forms.empty()) {
        return {};
    }
    const RingPtr& ring = forms[0].ring();
    const std::size_t n = forms.size();
    std::vector<std::vector<Polynomial>> vm(n, std::vector<Polynomial>(n, Polynomial(ring)));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t k = 0; k < n; ++k) {
            vm[a][k] = forms[k].coefficient(a);
        }
    }
    auto inv = unipotent_inverse(vm);
    std::vector<VectorField> fields;
    for (std::size_t j = 0; j < n; ++j) {
        fields.emplace_back(ring, inv[j]);
    }
    return fields;
}

std::vector<OneForm> dual_forms(const std::vector<VectorField>& fields)
{
    if (fields.empty()) {
        return {};
    }
    const RingPtr& ring = fields[0].ring();
    const std::size_t n = fields.size();
    std::vector<std::vector<Polynomial>> m(n, std::vector<Polynomial>(n, Polynomial(ring)));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t a = 0; a < n; ++a) {
            m[j][a] = fields[j].coefficient(a);
        }
    }
    auto inv = unipotent_inverse(m);
    std::vector<OneForm> forms;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Polynomial> coeffs(n, Polynomial(ring));
        for (std::size_t a = 0; a < n; ++a) {
            coeffs[a] = inv[a][k];
        }
        forms.emplace_back(ring, std::move(coeffs));
    }
    return forms;
}

std::vector<TwoForm> maurer_cartan_residual(const GradedAlgebraSpec& spec, const std::vector<OneForm>& forms)
{
    std::vector<TwoForm> out;
    for (std::size_t k = 0; k < forms.size(); ++k) {
        TwoForm r = exterior_d(forms[k]);
        for (std::size_t i = 0; i < forms.size(); ++i) {
            for (std::size_t j = 0; j < forms.size(); ++j) {
                Scalar c = spec.c(i, j, k);
                if (c.is_zero()) {
                    continue;
                }
                TwoForm t = tensor_part(forms[i], forms[j]);
                t *= c;
                r += t;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::string> realization_defects(const Realization& r)
{
    std::vector<std::string> w;
    const GradedAlgebraSpec& spec = r.spec;
    const std::size_t n = spec.size();
    if (r.forms.size() != n || r.fields.size() != n) {
        w.push_back("expected " + std::to_string(n) + " forms and fields");
        return w;
    }
    const Field& f = spec.field();
    auto name = [&](std::size_t i) { return spec.generator(i).name; };
    for (std::size_t i = 0; i < n; ++i) {
        auto deg = r.fields[i].weighted_degree();
        if (deg && *deg != spec.degree(i)) {
            w.push_back("field " + name(i) + " has weighted degree " + std::to_string(*deg) +
                        ", expected " + std::to_string(spec.degree(i)));
        } else if (!deg && !r.fields[i].is_zero()) {
            w.push_back("field " + name(i) + " is not homogeneous");
        }
        if (r.fields[i].parity() != spec.parity(i)) {
            w.push_back("field " + name(i) + " has the wrong parity");
        }
        auto at0 = r.fields[i].eval_at_origin();
        for (std::size_t a = 0; a < n; ++a) {
            bool want = a == i;
            if (want ? !at0[a].is_one() : !at0[a].is_zero()) {
                w.push_back("field " + name(i) + " at the origin differs from e_" + name(i) +
                            " in slot " + r.ring->variable(a).name);
                break;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            Polynomial p = pair(r.forms[k], r.fields[j]);
            Polynomial want = k == j ? Polynomial::constant(r.ring, Scalar::one(f)) : Polynomial(r.ring);
            if (!(p == want)) {
                w.push_back("duality fails: form " + name(k) + " on field " + name(j) + " gives " + p.str());
            }
        }
    }
    auto mc = maurer_cartan_residual(spec, r.forms);
    for (std::size_t k = 0; k < n; ++k) {
        if (auto ab = mc[k].first_nonzero()) {
            w.push_back("Maurer-Cartan fails for form " + name(k) + " on (" +
                        r.ring->variable(ab->first).name + ", " + r.ring->variable(ab->second).name +
                        "): residual " + mc[k].component(ab->first, ab->second).str());
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            VectorField lhs = bracket(r.fields[i], r.fields[j]);
            VectorField rhs(r.ring);
            for (const auto& [k, c] : spec.bracket(i, j)) {
                rhs += r.fields[k] * c;
            }
            if (!(lhs == rhs)) {
                VectorField diff = lhs - rhs;
                w.push_back("bracket [" + name(i) + ", " + name(j) + "] differs from the structure constants by " +
                            diff.str());
            }
        }
    }
    return w;
}

namespace {

void check_ring_matches(const GradedAlgebraSpec& spec, const RingPtr& ring)
{
    if (ring->size() != spec.size()) {
        throw ValidationError({"coordinate count differs from generator count"});
    }
    for (std::size_t i = 0; i < spec.size(); ++i) {
        const Variable& v = ring->variable(i);
        if (v.parity != spec.parity(i) || v.weight != spec.weight(i)) {
            throw ValidationError({"coordinate " + v.name + " has parity or weight inconsistent with generator " +
                                   spec.generator(i).name});
        }
    }
}

} // namespace

Realization ingest_forms(const GradedAlgebraSpec& spec, RingPtr ring, std::vector<OneForm> forms)
{
    require_valid(spec);
    check_ring_matches(spec, ring);
    if (forms.size() != spec.size()) {
        throw ValidationError({"expected " + std::to_string(spec.size()) + " forms, got " +
                               std::to_string(forms.size())});
    }
    std::vector<VectorField> fields;
    try {
        fields = dualize(forms);
    } catch (const Error& e) {
        throw ValidationError({std::string("forms cannot be dualized: ") + e.what()});
    }
    Realization r{spec, ring, std::move(forms), std::move(fields)};
    auto defects = realization_defects(r);
    if (!defects.empty()) {
        throw ValidationError(defects);
    }
    return r;
}

Realization ingest_fields(const GradedAlgebraSpec& spec, RingPtr ring, std::vector<VectorField> fields)
{
    require_valid(spec);
    check_ring_matches(spec, ring);
    if (fields.size() != spec.size()) {
        throw ValidationError({"expected " + std::to_string(spec.size()) + " fields, got " +
                               std::to_string(fields.size())});
    }
    std::vector<OneForm> forms;
    try {
        forms = dual_forms(fields);
    } catch (const Error& e) {
        throw ValidationError({std::string("fields cannot be dualized: ") + e.what()});
    }
    Realization r{spec, ring, std::move(forms), std::move(fields)};
    auto defects = realization_defects(r);
    if (!defects.empty()) {
        throw ValidationError(defects);
    }
    return r;
}

} // namespace cartan
