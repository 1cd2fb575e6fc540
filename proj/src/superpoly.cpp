#include "cartan/superpoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace cartan {

Ring::Ring(Field field, std::vector<Variable> variables) : field_(field), vars_(std::move(variables))
{
    field_.validate();
    std::set<std::string> seen;
    for (const auto& v : vars_) {
        if (v.name.empty()) {
            throw ParseError("empty variable name");
        }
        if (!std::isalpha(static_cast<unsigned char>(v.name[0])) && v.name[0] != '_') {
            throw ParseError("variable name '" + v.name + "' must start with a letter");
        }
        for (char c : v.name) {
            if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') {
                throw ParseError("variable name '" + v.name + "' has invalid characters");
            }
        }
        if (v.name[0] == 'd') {
            throw ParseError("variable name '" + v.name + "' clashes with derivation symbols");
        }
        if (v.name == "i") {
            throw ParseError("variable name 'i' is reserved for the imaginary unit");
        }
        if (!seen.insert(v.name).second) {
            throw ParseError("duplicate variable name '" + v.name + "'");
        }
    }
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

Monomial Ring::monomial(std::vector<std::uint16_t> exps) const
{
    if (exps.size() != vars_.size()) {
        throw Error("monomial has " + std::to_string(exps.size()) + " exponents, ring has " +
                    std::to_string(vars_.size()) + " variables");
    }
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (vars_[i].parity == Parity::odd) {
            if (exps[i] > 1) {
                throw Error("odd variable " + vars_[i].name + " raised to power " +
                            std::to_string(exps[i]));
            }
            m.odd_count_ += exps[i];
        }
        m.weight_ += vars_[i].weight * exps[i];
        m.standard_degree_ += exps[i];
    }
    m.exps_ = std::move(exps);
    return m;
}

Monomial Ring::generator(std::size_t i) const
{
    std::vector<std::uint16_t> e(size(), 0);
    e.at(i) = 1;
    return monomial(std::move(e));
}

std::optional<std::pair<Scalar, Monomial>> Ring::multiply(const Monomial& a, const Monomial& b) const
{
    Scalar c = one();
    std::vector<std::uint16_t> e(size(), 0);
    int sign = 0;
    int a_odd_after = a.odd_count_; // odd factors of a with index > current
    for (std::size_t i = 0; i < size(); ++i) {
        unsigned ai = a.exps_[i];
        unsigned bi = b.exps_[i];
        if (vars_[i].parity == Parity::odd) {
            if (ai && bi) {
                return std::nullopt;
            }
            a_odd_after -= static_cast<int>(ai);
            if (bi) {
                sign += a_odd_after;
            }
            e[i] = static_cast<std::uint16_t>(ai + bi);
        } else {
            if (ai && bi) {
                c *= binomial(field_, ai + bi, ai);
                if (c.is_zero()) {
                    return std::nullopt;
                }
            }
            e[i] = static_cast<std::uint16_t>(ai + bi);
        }
    }
    return std::make_pair(c.signed_by(sign), monomial(std::move(e)));
}

std::optional<std::pair<Scalar, Monomial>> Ring::derive(std::size_t i, const Monomial& m) const
{
    if (m.exps_.at(i) == 0) {
        return std::nullopt;
    }
    std::vector<std::uint16_t> e = m.exps_;
    --e[i];
    int sign = 0;
    if (vars_[i].parity == Parity::odd) {
        for (std::size_t j = 0; j < i; ++j) {
            if (vars_[j].parity == Parity::odd) {
                sign += e[j];
            }
        }
    }
    return std::make_pair(one().signed_by(sign), monomial(std::move(e)));
}

std::optional<std::pair<Scalar, Monomial>> Ring::antiderive(std::size_t i, const Monomial& m) const
{
    std::vector<std::uint16_t> e = m.exps_;
    int sign = 0;
    if (vars_.at(i).parity == Parity::odd) {
        if (e[i]) {
            return std::nullopt;
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (vars_[j].parity == Parity::odd) {
                sign += e[j];
            }
        }
    }
    ++e[i];
    return std::make_pair(one().signed_by(sign), monomial(std::move(e)));
}

std::vector<Monomial> Ring::monomials_of_weight(int weight, std::optional<Parity> parity,
                                                const std::vector<bool>& allowed) const
{
    std::vector<Monomial> out;
    if (weight < 0) {
        return out;
    }
    std::vector<std::uint16_t> e(size(), 0);
    auto usable = [&](std::size_t i) {
        return (allowed.empty() || allowed[i]) && vars_[i].weight > 0;
    };
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i == size()) {
            if (left == 0) {
                Monomial m = monomial(e);
                if (!parity || m.parity() == *parity) {
                    out.push_back(std::move(m));
                }
            }
            return;
        }
        unsigned cap = 0;
        if (usable(i)) {
            cap = static_cast<unsigned>(left / vars_[i].weight);
            if (vars_[i].parity == Parity::odd) {
                cap = std::min(cap, 1u);
            }
        }
        for (unsigned k = 0; k <= cap; ++k) {
            e[i] = static_cast<std::uint16_t>(k);
            rec(i + 1, left - static_cast<int>(k) * vars_[i].weight);
        }
        e[i] = 0;
    };
    rec(0, weight);
    std::sort(out.begin(), out.end());
    return out;
}

std::string Ring::monomial_str(const Monomial& m) const
{
    std::string out;
    for (std::size_t i = 0; i < size(); ++i) {
        unsigned k = m.exps_[i];
        if (k == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += vars_[i].name;
        if (k > 1) {
            out += "^(" + std::to_string(k) + ")";
        }
    }
    return out.empty() ? "1" : out;
}

std::string Ring::derivation_symbol(std::size_t i) const
{
    const std::string& name = vars_.at(i).name;
    if (name.size() > 1 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        return "d" + name.substr(1);
    }
    return "d" + name;
}

std::string Ring::differential_symbol(std::size_t i) const
{
    return "d" + vars_.at(i).name;
}

RingPtr make_ring(Field field, std::vector<Variable> variables)
{
    return std::make_shared<const Ring>(field, std::move(variables));
}

// ---------------------------------------------------------------------------

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c)
{
    Polynomial p(ring);
    p.add_term(ring->one_monomial(), c);
    return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i)
{
    Polynomial p(ring);
    p.add_term(ring->generator(i), ring->one());
    return p;
}

Polynomial Polynomial::term(RingPtr ring, const Monomial& m, const Scalar& c)
{
    Polynomial p(std::move(ring));
    p.add_term(m, c);
    return p;
}

Scalar Polynomial::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? ring_->zero() : it->second;
}

Scalar Polynomial::constant_term() const
{
    return coefficient(ring_->one_monomial());
}

std::optional<Parity> Polynomial::parity() const
{
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
        (void)c;
        if (p && *p != m.parity()) {
            return std::nullopt;
        }
        p = m.parity();
    }
    return p.value_or(Parity::even);
}

std::optional<int> Polynomial::weighted_degree() const
{
    if (terms_.empty() || terms_.begin()->first.weight() != terms_.rbegin()->first.weight()) {
        return std::nullopt;
    }
    return terms_.begin()->first.weight();
}

void Polynomial::add_term(const Monomial& m, const Scalar& c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

void Polynomial::check_ring(const Polynomial& rhs) const
{
    if (ring_ != rhs.ring_ && ring_ && rhs.ring_) {
        throw Error("polynomials from different rings");
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs)
{
    check_ring(rhs);
    if (!ring_) {
        ring_ = rhs.ring_;
    }
    for (const auto& [m, c] : rhs.terms_) {
        add_term(m, c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs)
{
    check_ring(rhs);
    if (!ring_) {
        ring_ = rhs.ring_;
    }
    for (const auto& [m, c] : rhs.terms_) {
        add_term(m, -c);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) {
        (void)m;
        v *= c;
    }
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& [m, v] : r.terms_) {
        (void)m;
        v = -v;
    }
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b)
{
    return mul(a, b);
}

bool operator==(const Polynomial& a, const Polynomial& b)
{
    return a.terms_ == b.terms_;
}

Polynomial Polynomial::parity_part(Parity p) const
{
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.parity() == p) {
            r.terms_.emplace(m, c);
        }
    }
    return r;
}

Polynomial Polynomial::parity_twist() const
{
    Polynomial r = *this;
    for (auto& [m, c] : r.terms_) {
        if (m.parity() == Parity::odd) {
            c = -c;
        }
    }
    return r;
}

Polynomial Polynomial::standard_part(int degree) const
{
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.standard_degree() == degree) {
            r.terms_.emplace(m, c);
        }
    }
    return r;
}

Polynomial Polynomial::weighted_part(int degree) const
{
    Polynomial r(ring_);
    for (const auto& [m, c] : terms_) {
        if (m.weight() == degree) {
            r.terms_.emplace(m, c);
        }
    }
    return r;
}

namespace detail {

std::string coefficient_prefix(const Scalar& c)
{
    if (c.is_one()) {
        return "";
    }
    if (c.is_minus_one()) {
        return "-";
    }
    if (c.is_compound()) {
        return "(" + c.str() + ")*";
    }
    return c.str() + "*";
}

std::string join_terms(const std::vector<std::string>& terms)
{
    if (terms.empty()) {
        return "0";
    }
    std::string out;
    for (const auto& t : terms) {
        if (out.empty()) {
            out = t;
        } else if (!t.empty() && t[0] == '-') {
            out += " - " + t.substr(1);
        } else {
            out += " + " + t;
        }
    }
    return out;
}

} // namespace detail

std::string Polynomial::str() const
{
    std::vector<std::string> parts;
    for (const auto& [m, c] : terms_) {
        if (m.is_one()) {
            parts.push_back(c.is_compound() ? "(" + c.str() + ")" : c.str());
        } else {
            parts.push_back(detail::coefficient_prefix(c) + ring_->monomial_str(m));
        }
    }
    return detail::join_terms(parts);
}

// ---------------------------------------------------------------------------

Polynomial mul(const Polynomial& f, const Polynomial& g)
{
    const RingPtr& ring = f.ring() ? f.ring() : g.ring();
    if (f.ring() && g.ring() && f.ring() != g.ring()) {
        throw Error("polynomials from different rings");
    }
    Polynomial r(ring);
    for (const auto& [ma, ca] : f.terms()) {
        for (const auto& [mb, cb] : g.terms()) {
            if (auto prod = ring->multiply(ma, mb)) {
                r.add_term(prod->second, prod->first * ca * cb);
            }
        }
    }
    return r;
}

Polynomial partial(std::size_t i, const Polynomial& f)
{
    Polynomial r(f.ring());
    for (const auto& [m, c] : f.terms()) {
        if (auto d = f.ring()->derive(i, m)) {
            r.add_term(d->second, d->first * c);
        }
    }
    return r;
}

Polynomial nabla(std::size_t i, const Polynomial& f)
{
    auto p = f.parity();
    if (!p) {
        throw Error("nabla needs a polynomial of definite parity");
    }
    Polynomial r = partial(i, f);
    if (bit(*p) && bit(f.ring()->parity(i))) {
        r = -r;
    }
    return r;
}

Polynomial antiderivative(std::size_t i, const Polynomial& f)
{
    Polynomial r(f.ring());
    for (const auto& [m, c] : f.terms()) {
        auto a = f.ring()->antiderive(i, m);
        if (!a) {
            throw Error("antiderivative in odd variable " + f.ring()->variable(i).name +
                        " of a term already containing it");
        }
        r.add_term(a->second, a->first * c);
    }
    return r;
}

Polynomial hodge_star(const Polynomial& f, const std::vector<std::size_t>& parameters)
{
    const Ring& ring = *f.ring();
    std::vector<std::size_t> odd;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        if (ring.parity(i) == Parity::odd) {
            odd.push_back(i);
        } else if (std::find(parameters.begin(), parameters.end(), i) == parameters.end()) {
            throw Error("hodge star: even variable " + ring.variable(i).name +
                        " is not a declared parameter");
        }
    }
    Polynomial r(f.ring());
    for (const auto& [m, c] : f.terms()) {
        std::vector<std::uint16_t> e(ring.size(), 0);
        for (std::size_t i = 0; i < ring.size(); ++i) {
            if (ring.parity(i) == Parity::even) {
                e[i] = static_cast<std::uint16_t>(m.exponent(i));
            }
        }
        // sign of the shuffle (I, I^c): pairs a in I, b in I^c with a > b,
        // times (-1)^{k(k-1)/2 + k(m-k)} for k = |I^c| from the Fourier kernel
        int sign = 0;
        int complement_before = 0;
        for (std::size_t i : odd) {
            if (m.exponent(i)) {
                sign += complement_before;
            } else {
                ++complement_before;
                e[i] = 1;
            }
        }
        const int k = complement_before;
        sign += k * (k - 1) / 2 + k * (static_cast<int>(odd.size()) - k);
        r.add_term(ring.monomial(std::move(e)), c.signed_by(sign));
    }
    return r;
}

// ---------------------------------------------------------------------------

AffinePolynomial AffinePolynomial::unknown(RingPtr ring, std::size_t u, const Polynomial& part)
{
    AffinePolynomial a(std::move(ring));
    if (!part.is_zero()) {
        a.parts_.emplace(u, part);
    }
    return a;
}

AffinePolynomial& AffinePolynomial::operator+=(const AffinePolynomial& rhs)
{
    if (!ring_) {
        ring_ = rhs.ring_;
        constant_ = Polynomial(ring_);
    }
    constant_ += rhs.constant_;
    for (const auto& [u, p] : rhs.parts_) {
        auto [it, fresh] = parts_.emplace(u, p);
        if (!fresh) {
            it->second += p;
            if (it->second.is_zero()) {
                parts_.erase(it);
            }
        }
    }
    return *this;
}

AffinePolynomial& AffinePolynomial::operator-=(const AffinePolynomial& rhs)
{
    AffinePolynomial neg = rhs;
    neg *= Scalar(rhs.ring_ ? rhs.ring_->field() : ring_->field(), -1L);
    return *this += neg;
}

AffinePolynomial& AffinePolynomial::operator*=(const Scalar& c)
{
    if (c.is_zero()) {
        constant_ = Polynomial(ring_);
        parts_.clear();
        return *this;
    }
    constant_ *= c;
    for (auto& [u, p] : parts_) {
        (void)u;
        p *= c;
    }
    return *this;
}

AffinePolynomial AffinePolynomial::map(const std::function<Polynomial(const Polynomial&)>& f) const
{
    AffinePolynomial r(ring_);
    r.constant_ = constant_.is_zero() ? Polynomial(ring_) : f(constant_);
    for (const auto& [u, p] : parts_) {
        Polynomial q = f(p);
        if (!q.is_zero()) {
            r.parts_.emplace(u, std::move(q));
        }
    }
    return r;
}

AffinePolynomial AffinePolynomial::left_multiply(const Polynomial& g) const
{
    return map([&](const Polynomial& p) { return mul(g, p); });
}

AffinePolynomial AffinePolynomial::right_multiply(const Polynomial& g) const
{
    return map([&](const Polynomial& p) { return mul(p, g); });
}

Polynomial AffinePolynomial::evaluate(const DenseVector& values) const
{
    Polynomial r = constant_;
    for (const auto& [u, p] : parts_) {
        r += p * values.at(u);
    }
    return r;
}

void AffinePolynomial::append_equations(LinearSystem& system) const
{
    std::map<Monomial, SparseRow> rows;
    for (const auto& [u, p] : parts_) {
        for (const auto& [m, c] : p.terms()) {
            rows[m][u] = c;
        }
    }
    for (const auto& [m, c] : constant_.terms()) {
        (void)c;
        rows[m];
    }
    for (auto& [m, row] : rows) {
        system.add_row(std::move(row), -constant_.coefficient(m));
    }
}

// ---------------------------------------------------------------------------
// Text parsing.

namespace {

class Parser {
public:
    using SlotOf = std::function<std::optional<std::size_t>(std::string_view)>;

    Parser(const RingPtr& ring, std::string_view text, std::size_t slots, const SlotOf& slot_of)
        : ring_(ring), text_(text), slots_(slots), slot_of_(slot_of)
    {
    }

    std::pair<Polynomial, std::vector<Polynomial>> run()
    {
        Polynomial rest(ring_);
        std::vector<Polynomial> slotted(slots_, Polynomial(ring_));
        skip();
        if (at_end()) {
            fail("empty expression");
        }
        bool first = true;
        while (!at_end()) {
            bool negative = false;
            if (peek() == '+' || peek() == '-') {
                negative = get() == '-';
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [value, slot] = product(true);
            if (negative) {
                value = -value;
            }
            if (slot) {
                slotted[*slot] += value;
            } else {
                rest += value;
            }
            skip();
        }
        return {std::move(rest), std::move(slotted)};
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char get() { return text_[pos_++]; }

    void skip()
    {
        while (!at_end()) {
            if (!std::isspace(static_cast<unsigned char>(peek()))) {
                break;
            }
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                         std::string(text_) + "'");
    }

    std::pair<Polynomial, std::optional<std::size_t>> product(bool allow_slot)
    {
        Polynomial value = Polynomial::constant(ring_, ring_->one());
        std::optional<std::size_t> slot;
        while (true) {
            skip();
            if (slot) {
                fail("derivation symbol must be the last factor");
            }
            char c = peek();
            if (c == '(') {
                get();
                Polynomial sub = parenthesized();
                value = mul(value, sub);
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                value = value * number();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = identifier();
                if (allow_slot && slot_of_) {
                    if (auto s = slot_of_(name)) {
                        slot = s;
                        skip();
                        if (peek() == '*') {
                            fail("derivation symbol must be the last factor");
                        }
                        break;
                    }
                }
                if (name == "i") {
                    value = value * Scalar::imaginary_unit(ring_->field());
                } else {
                    auto idx = ring_->index_of(name);
                    if (!idx) {
                        fail("unknown symbol '" + name + "'");
                    }
                    value = mul(value, power(*idx));
                }
            } else {
                fail("expected a factor");
            }
            skip();
            if (peek() == '*') {
                get();
                continue;
            }
            // implicit product for "2i" and "2x" forms
            if (!at_end() && (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '(') &&
                prev_was_number_) {
                continue;
            }
            break;
        }
        return {std::move(value), slot};
    }

    Polynomial parenthesized()
    {
        std::size_t depth = 1;
        std::size_t start = pos_;
        while (!at_end() && depth > 0) {
            char c = get();
            if (c == '(') {
                ++depth;
            } else if (c == ')') {
                --depth;
            }
        }
        if (depth != 0) {
            fail("unbalanced parenthesis");
        }
        std::string_view inner = text_.substr(start, pos_ - start - 1);
        Parser sub(ring_, inner, 0, nullptr);
        auto [rest, slotted] = sub.run();
        (void)slotted;
        prev_was_number_ = false;
        return rest;
    }

    Scalar number()
    {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) {
            get();
        }
        std::string digits(text_.substr(start, pos_ - start));
        prev_was_number_ = true;
        try {
            return Scalar::parse(ring_->field(), digits);
        } catch (const ParseError&) {
            fail("malformed number '" + digits + "'");
        }
    }

    std::string identifier()
    {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
            get();
        }
        prev_was_number_ = false;
        return std::string(text_.substr(start, pos_ - start));
    }

    // x, x^(k) (divided power) or x^k (ordinary power)
    Polynomial power(std::size_t idx)
    {
        Polynomial x = Polynomial::variable(ring_, idx);
        skip();
        if (peek() != '^') {
            return x;
        }
        get();
        skip();
        bool divided = false;
        if (peek() == '(') {
            divided = true;
            get();
            skip();
        }
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            get();
        }
        if (start == pos_) {
            fail("expected exponent");
        }
        unsigned long k = std::stoul(std::string(text_.substr(start, pos_ - start)));
        if (divided) {
            skip();
            if (peek() != ')') {
                fail("expected ')'");
            }
            get();
        }
        if (k > 60000) {
            fail("exponent too large");
        }
        if (k == 0) {
            return Polynomial::constant(ring_, ring_->one());
        }
        if (ring_->parity(idx) == Parity::odd) {
            return k == 1 ? x : Polynomial(ring_);
        }
        if (divided) {
            std::vector<std::uint16_t> e(ring_->size(), 0);
            e[idx] = static_cast<std::uint16_t>(k);
            return Polynomial::term(ring_, ring_->monomial(std::move(e)), ring_->one());
        }
        Polynomial r = Polynomial::constant(ring_, ring_->one());
        for (unsigned long j = 0; j < k; ++j) {
            r = mul(r, x);
        }
        return r;
    }

    const RingPtr& ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t slots_;
    SlotOf slot_of_;
    bool prev_was_number_ = false;
};

std::string normalize_minus(std::string_view text)
{
    std::string s(text);
    for (std::size_t pos; (pos = s.find("\xe2\x88\x92")) != std::string::npos;) {
        s.replace(pos, 3, "-");
    }
    return s;
}

} // namespace

namespace detail {

std::pair<Polynomial, std::vector<Polynomial>>
parse_slotted(const RingPtr& ring, std::string_view text, std::size_t slots,
              const std::function<std::optional<std::size_t>(std::string_view)>& slot_of)
{
    std::string s = normalize_minus(text);
    return Parser(ring, s, slots, slot_of).run();
}

} // namespace detail

Polynomial Polynomial::parse(RingPtr ring, std::string_view text)
{
    std::string s = normalize_minus(text);
    return Parser(ring, s, 0, nullptr).run().first;
}

} // namespace cartan
