#include "cartan/centralize.hpp"

#include <stdexcept>

namespace cartan {

namespace {

/// g with d_i g = grad[i] for every i, assuming such g exists with no constant term.
Polynomial integrate_gradient(const RingPtr& ring, const std::vector<Polynomial>& grad)
{
    Polynomial g(ring);
    for (std::size_t i = 0; i < grad.size(); ++i) {
        for (const auto& [m, c] : grad[i].terms()) {
            bool lowest = true;
            for (std::size_t j = 0; j < i; ++j) {
                if (m.exponent(j)) {
                    lowest = false;
                    break;
                }
            }
            if (!lowest) {
                continue;
            }
            auto a = ring->antiderive(i, m);
            if (!a) {
                continue;
            }
            g.add_term(a->second, a->first * c);
        }
    }
    return g;
}

} // namespace

std::vector<VectorField> centralizer_fields(const Realization& r)
{
    const RingPtr& ring = r.ring;
    const std::size_t n = r.fields.size();
    int top = 0;
    for (std::size_t a = 0; a < n; ++a) {
        top = std::max(top, ring->weight(a));
    }
    std::vector<std::vector<VectorField>> xparts(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (int q = -1; q <= top; ++q) {
            xparts[i].push_back(r.fields[i].standard_part(q));
        }
    }
    std::vector<VectorField> out;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<VectorField> yparts{VectorField::coordinate(ring, j)};
        for (int p = 0; p <= top; ++p) {
            // [d_i, Y_(p)] = -sum_{s=-1}^{p-1} [(X_i)_(p-1-s), Y_(s)]
            std::vector<VectorField> rhs;
            for (std::size_t i = 0; i < n; ++i) {
                VectorField acc(ring);
                for (int s = -1; s <= p - 1; ++s) {
                    const VectorField& xs = xparts[i][static_cast<std::size_t>(p - 1 - s + 1)];
                    const VectorField& ys = yparts[static_cast<std::size_t>(s + 1)];
                    if (!xs.is_zero() && !ys.is_zero()) {
                        acc -= bracket(xs, ys);
                    }
                }
                rhs.push_back(std::move(acc));
            }
            VectorField yp(ring);
            for (std::size_t a = 0; a < n; ++a) {
                std::vector<Polynomial> grad;
                for (std::size_t i = 0; i < n; ++i) {
                    grad.push_back(rhs[i].coefficient(a));
                }
                Polynomial g = integrate_gradient(ring, grad);
                for (std::size_t i = 0; i < n; ++i) {
                    if (!(partial(i, g) == grad[i])) {
                        throw std::logic_error("centralizer recurrence is inconsistent for Y_" +
                                               std::to_string(j + 1));
                    }
                }
                yp.set_coefficient(a, std::move(g));
            }
            yparts.push_back(std::move(yp));
        }
        VectorField y(ring);
        for (const auto& part : yparts) {
            y += part;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!bracket(r.fields[i], y).is_zero()) {
                throw std::logic_error("centralizer field Y_" + std::to_string(j + 1) +
                                       " does not commute with X_" + std::to_string(i + 1));
            }
        }
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<OneForm> dual_coframe(const std::vector<VectorField>& y)
{
    return dual_forms(y);
}

Coframe centralize(const Realization& r)
{
    Coframe c;
    c.fields = centralizer_fields(r);
    c.forms = dual_coframe(c.fields);
    return c;
}

std::vector<std::string> coframe_defects(const Realization& r, const Coframe& c)
{
    std::vector<std::string> w;
    const auto& spec = r.spec;
    const std::size_t n = spec.size();
    auto name = [&](std::size_t i) { return spec.generator(i).name; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!bracket(r.fields[i], c.fields[j]).is_zero()) {
                w.push_back("[X_" + name(i) + ", Y_" + name(j) + "] != 0");
            }
            Polynomial p = pair(c.forms[i], c.fields[j]);
            if (!(p == (i == j ? Polynomial::constant(r.ring, r.ring->one()) : Polynomial(r.ring)))) {
                w.push_back("theta_" + name(i) + "(Y_" + name(j) + ") = " + p.str());
            }
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            VectorField lhs = bracket(c.fields[i], c.fields[j]);
            for (const auto& [k, v] : spec.bracket(i, j)) {
                lhs += c.fields[k] * v;
            }
            if (!lhs.is_zero()) {
                w.push_back("[Y_" + name(i) + ", Y_" + name(j) + "] + sum c Y_k = " + lhs.str());
            }
        }
    }
    return w;
}

} // namespace cartan
