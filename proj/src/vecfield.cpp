#include "cartan/vecfield.hpp"

#include <algorithm>
#include <tuple>

namespace cartan {

namespace {

std::vector<Polynomial> zeros(const RingPtr& ring)
{
    return std::vector<Polynomial>(ring->size(), Polynomial(ring));
}

void check_same(const RingPtr& a, const RingPtr& b)
{
    if (a != b) {
        throw Error("objects over different rings");
    }
}

std::string render_slotted(const Ring& ring, const std::vector<Polynomial>& coeffs,
                           const std::function<std::string(std::size_t)>& symbol)
{
    // lighter coefficients first, then by slot: "dx5 - x2*dx3 - x2^(2)*dx1"
    std::vector<std::tuple<int, std::size_t, std::string>> terms;
    for (std::size_t a = 0; a < coeffs.size(); ++a) {
        for (const auto& [m, c] : coeffs[a].terms()) {
            std::string t = detail::coefficient_prefix(c);
            if (!m.is_one()) {
                t += ring.monomial_str(m) + "*";
            }
            terms.emplace_back(m.weight(), a, t + symbol(a));
        }
    }
    std::stable_sort(terms.begin(), terms.end(), [](const auto& u, const auto& v) {
        return std::tie(std::get<0>(u), std::get<1>(u)) < std::tie(std::get<0>(v), std::get<1>(v));
    });
    std::vector<std::string> parts;
    for (auto& t : terms) {
        parts.push_back(std::move(std::get<2>(t)));
    }
    return detail::join_terms(parts);
}

std::vector<Polynomial> parse_slots(const RingPtr& ring, std::string_view text,
                                    const std::function<std::string(std::size_t)>& symbol,
                                    const char* what)
{
    auto slot_of = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t a = 0; a < ring->size(); ++a) {
            if (symbol(a) == name) {
                return a;
            }
        }
        return std::nullopt;
    };
    std::string trimmed(text);
    if (trimmed.find_first_not_of(" \t\n") == std::string::npos || trimmed == "0") {
        return zeros(ring);
    }
    auto [rest, slots] = detail::parse_slotted(ring, text, ring->size(), slot_of);
    if (!rest.is_zero()) {
        throw ParseError(std::string(what) + " '" + std::string(text) + "' has a term without a " +
                         (std::string(what) == "field" ? "derivation" : "differential"));
    }
    return slots;
}

} // namespace

// ---------------------------------------------------------------------------

VectorField::VectorField(RingPtr ring) : ring_(ring), coeffs_(zeros(ring)) {}

VectorField::VectorField(RingPtr ring, std::vector<Polynomial> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != ring_->size()) {
        throw Error("vector field has wrong number of coefficients");
    }
}

VectorField VectorField::coordinate(RingPtr ring, std::size_t i)
{
    VectorField x(ring);
    x.coeffs_.at(i) = Polynomial::constant(ring, ring->one());
    return x;
}

VectorField VectorField::parse(RingPtr ring, std::string_view text)
{
    const Ring& r = *ring;
    return VectorField(ring, parse_slots(ring, text, [&](std::size_t a) { return r.derivation_symbol(a); }, "field"));
}

void VectorField::set_coefficient(std::size_t a, Polynomial p)
{
    coeffs_.at(a) = std::move(p);
}

bool VectorField::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<Parity> VectorField::parity() const
{
    std::optional<Parity> p;
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        for (const auto& [m, c] : coeffs_[a].terms()) {
            (void)c;
            Parity q = m.parity() + ring_->parity(a);
            if (p && *p != q) {
                return std::nullopt;
            }
            p = q;
        }
    }
    return p.value_or(Parity::even);
}

std::optional<int> VectorField::weighted_degree() const
{
    std::optional<int> d;
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        for (const auto& [m, c] : coeffs_[a].terms()) {
            (void)c;
            int q = m.weight() - ring_->weight(a);
            if (d && *d != q) {
                return std::nullopt;
            }
            d = q;
        }
    }
    return d;
}

VectorField VectorField::standard_part(int p) const
{
    VectorField r(ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        r.coeffs_[a] = coeffs_[a].standard_part(p + 1);
    }
    return r;
}

int VectorField::max_standard_degree() const
{
    int best = -2;
    for (const auto& c : coeffs_) {
        for (const auto& [m, v] : c.terms()) {
            (void)v;
            best = std::max(best, m.standard_degree() - 1);
        }
    }
    return best;
}

VectorField VectorField::parity_part(Parity p) const
{
    VectorField r(ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        r.coeffs_[a] = coeffs_[a].parity_part(p + ring_->parity(a));
    }
    return r;
}

VectorField VectorField::weighted_part(int degree) const
{
    VectorField r(ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        r.coeffs_[a] = coeffs_[a].weighted_part(degree + ring_->weight(a));
    }
    return r;
}

Polynomial VectorField::apply(const Polynomial& f) const
{
    check_same(ring_, f.ring());
    Polynomial r(ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        if (coeffs_[a].is_zero()) {
            continue;
        }
        Polynomial d = partial(a, f);
        if (!d.is_zero()) {
            r += mul(coeffs_[a], d);
        }
    }
    return r;
}

std::vector<Scalar> VectorField::eval_at_origin() const
{
    std::vector<Scalar> v;
    v.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        v.push_back(c.constant_term());
    }
    return v;
}

VectorField& VectorField::operator+=(const VectorField& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        coeffs_[a] += rhs.coeffs_[a];
    }
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        coeffs_[a] -= rhs.coeffs_[a];
    }
    return *this;
}

VectorField& VectorField::operator*=(const Scalar& c)
{
    for (auto& p : coeffs_) {
        p *= c;
    }
    return *this;
}

VectorField VectorField::operator-() const
{
    VectorField r = *this;
    for (auto& p : r.coeffs_) {
        p = -p;
    }
    return r;
}

bool operator==(const VectorField& a, const VectorField& b)
{
    return a.coeffs_ == b.coeffs_;
}

VectorField VectorField::left_multiply(const Polynomial& f) const
{
    VectorField r(ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        r.coeffs_[a] = mul(f, coeffs_[a]);
    }
    return r;
}

std::string VectorField::str() const
{
    const Ring& r = *ring_;
    return render_slotted(r, coeffs_, [&](std::size_t a) { return r.derivation_symbol(a); });
}

namespace {

VectorField homogeneous_bracket(const VectorField& x, Parity px, const VectorField& y, Parity py)
{
    VectorField r(x.ring());
    bool swap_sign = px == Parity::odd && py == Parity::odd;
    for (std::size_t k = 0; k < x.size(); ++k) {
        Polynomial c = x.apply(y.coefficient(k));
        Polynomial d = y.apply(x.coefficient(k));
        if (swap_sign) {
            c += d;
        } else {
            c -= d;
        }
        r.set_coefficient(k, std::move(c));
    }
    return r;
}

} // namespace

VectorField bracket(const VectorField& x, const VectorField& y)
{
    check_same(x.ring(), y.ring());
    auto px = x.parity();
    auto py = y.parity();
    if (px && py) {
        return homogeneous_bracket(x, *px, y, *py);
    }
    VectorField r(x.ring());
    for (Parity a : {Parity::even, Parity::odd}) {
        VectorField xa = x.parity_part(a);
        if (xa.is_zero()) {
            continue;
        }
        for (Parity b : {Parity::even, Parity::odd}) {
            VectorField yb = y.parity_part(b);
            if (!yb.is_zero()) {
                r += homogeneous_bracket(xa, a, yb, b);
            }
        }
    }
    return r;
}

Polynomial apply_hat(const VectorField& y, const Polynomial& f)
{
    auto p = y.parity();
    if (p == Parity::even) {
        return y.apply(f);
    }
    if (p == Parity::odd) {
        return y.apply(f.parity_twist());
    }
    return y.parity_part(Parity::even).apply(f) + y.parity_part(Parity::odd).apply(f.parity_twist());
}

// ---------------------------------------------------------------------------

OneForm::OneForm(RingPtr ring) : ring_(ring), coeffs_(zeros(ring)) {}

OneForm::OneForm(RingPtr ring, std::vector<Polynomial> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients))
{
    if (coeffs_.size() != ring_->size()) {
        throw Error("one-form has wrong number of coefficients");
    }
}

OneForm OneForm::coordinate(RingPtr ring, std::size_t a)
{
    OneForm w(ring);
    w.coeffs_.at(a) = Polynomial::constant(ring, ring->one());
    return w;
}

OneForm OneForm::parse(RingPtr ring, std::string_view text)
{
    const Ring& r = *ring;
    return OneForm(ring, parse_slots(ring, text, [&](std::size_t a) { return r.differential_symbol(a); }, "form"));
}

void OneForm::set_coefficient(std::size_t a, Polynomial p)
{
    coeffs_.at(a) = std::move(p);
}

bool OneForm::is_zero() const
{
    for (const auto& c : coeffs_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<Parity> OneForm::parity() const
{
    std::optional<Parity> p;
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        for (const auto& [m, c] : coeffs_[a].terms()) {
            (void)c;
            Parity q = m.parity() + ring_->parity(a);
            if (p && *p != q) {
                return std::nullopt;
            }
            p = q;
        }
    }
    return p.value_or(Parity::even);
}

OneForm& OneForm::operator+=(const OneForm& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        coeffs_[a] += rhs.coeffs_[a];
    }
    return *this;
}

OneForm& OneForm::operator-=(const OneForm& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t a = 0; a < coeffs_.size(); ++a) {
        coeffs_[a] -= rhs.coeffs_[a];
    }
    return *this;
}

OneForm& OneForm::operator*=(const Scalar& c)
{
    for (auto& p : coeffs_) {
        p *= c;
    }
    return *this;
}

bool operator==(const OneForm& a, const OneForm& b)
{
    return a.coeffs_ == b.coeffs_;
}

std::string OneForm::str() const
{
    const Ring& r = *ring_;
    return render_slotted(r, coeffs_, [&](std::size_t a) { return r.differential_symbol(a); });
}

Polynomial pair(const OneForm& w, const VectorField& x)
{
    check_same(w.ring(), x.ring());
    Polynomial r(w.ring());
    for (std::size_t a = 0; a < w.size(); ++a) {
        if (!x.coefficient(a).is_zero() && !w.coefficient(a).is_zero()) {
            r += mul(x.coefficient(a), w.coefficient(a));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

TwoForm::TwoForm(RingPtr ring)
    : ring_(ring), n_(ring->size()), comps_(n_ * (n_ + 1) / 2, Polynomial(ring))
{
}

std::size_t TwoForm::index(std::size_t a, std::size_t b) const
{
    if (a > b || b >= n_) {
        throw Error("two-form component index out of range");
    }
    // row-major upper triangle
    return a * n_ - a * (a + 1) / 2 + b;
}

const Polynomial& TwoForm::component(std::size_t a, std::size_t b) const
{
    return comps_[index(a, b)];
}

void TwoForm::add_to(std::size_t a, std::size_t b, const Polynomial& p)
{
    comps_[index(a, b)] += p;
}

bool TwoForm::is_zero() const
{
    for (const auto& c : comps_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

std::optional<std::pair<std::size_t, std::size_t>> TwoForm::first_nonzero() const
{
    for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = a; b < n_; ++b) {
            if (!component(a, b).is_zero()) {
                return std::make_pair(a, b);
            }
        }
    }
    return std::nullopt;
}

TwoForm& TwoForm::operator+=(const TwoForm& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        comps_[k] += rhs.comps_[k];
    }
    return *this;
}

TwoForm& TwoForm::operator-=(const TwoForm& rhs)
{
    check_same(ring_, rhs.ring_);
    for (std::size_t k = 0; k < comps_.size(); ++k) {
        comps_[k] -= rhs.comps_[k];
    }
    return *this;
}

TwoForm& TwoForm::operator*=(const Scalar& c)
{
    for (auto& p : comps_) {
        p *= c;
    }
    return *this;
}

bool operator==(const TwoForm& a, const TwoForm& b)
{
    return a.comps_ == b.comps_;
}

std::string TwoForm::str() const
{
    std::vector<std::string> parts;
    for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = a; b < n_; ++b) {
            const Polynomial& p = component(a, b);
            std::string sym = ring_->differential_symbol(a) + "^" + ring_->differential_symbol(b);
            for (const auto& [m, c] : p.terms()) {
                std::string t = detail::coefficient_prefix(c);
                if (!m.is_one()) {
                    t += ring_->monomial_str(m) + "*";
                }
                parts.push_back(t + sym);
            }
        }
    }
    return detail::join_terms(parts);
}

TwoForm exterior_d(const OneForm& w)
{
    const RingPtr& ring = w.ring();
    TwoForm r(ring);
    for (std::size_t a = 0; a < w.size(); ++a) {
        for (std::size_t b = a; b < w.size(); ++b) {
            Polynomial c = partial(a, w.coefficient(b));
            Polynomial d = partial(b, w.coefficient(a));
            if (ring->parity(a) == Parity::odd && ring->parity(b) == Parity::odd) {
                c += d;
            } else {
                c -= d;
            }
            r.add_to(a, b, c);
        }
    }
    return r;
}

TwoForm tensor_part(const OneForm& u, const OneForm& v)
{
    check_same(u.ring(), v.ring());
    auto pu = u.parity();
    auto pv = v.parity();
    if (!pu || !pv) {
        throw Error("tensor_part needs forms of definite parity");
    }
    const RingPtr& ring = u.ring();
    TwoForm r(ring);
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (u.coefficient(a).is_zero()) {
            continue;
        }
        for (std::size_t b = a; b < u.size(); ++b) {
            if (v.coefficient(b).is_zero()) {
                continue;
            }
            Polynomial p = mul(u.coefficient(a), v.coefficient(b));
            if (bit(*pu) && (bit(ring->parity(b)) + bit(*pv)) % 2) {
                p = -p;
            }
            r.add_to(a, b, p);
        }
    }
    return r;
}

TwoForm wedge(const OneForm& u, const OneForm& v)
{
    TwoForm r = tensor_part(u, v);
    TwoForm s = tensor_part(v, u);
    if (u.parity() == Parity::odd && v.parity() == Parity::odd) {
        r += s;
    } else {
        r -= s;
    }
    return r;
}

std::vector<std::vector<Polynomial>> unipotent_inverse(const std::vector<std::vector<Polynomial>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) {
        return {};
    }
    const RingPtr& ring = m[0][0].ring();
    std::vector<std::vector<Polynomial>> nil = m;
    std::vector<std::vector<Polynomial>> id(n, std::vector<Polynomial>(n, Polynomial(ring)));
    for (std::size_t i = 0; i < n; ++i) {
        id[i][i] = Polynomial::constant(ring, ring->one());
        nil[i][i] -= id[i][i];
    }
    auto inv = id;
    for (std::size_t iter = 0; iter <= n + 1; ++iter) {
        // next = I - N * inv
        auto next = id;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                if (nil[i][k].is_zero()) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    if (!inv[k][j].is_zero()) {
                        next[i][j] -= mul(nil[i][k], inv[k][j]);
                    }
                }
            }
        }
        if (next == inv) {
            return inv;
        }
        inv = std::move(next);
    }
    throw Error("matrix is not unipotent with nilpotent off-diagonal part");
}

} // namespace cartan
