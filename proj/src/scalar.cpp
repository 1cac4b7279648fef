#include "pluri/scalar.hpp"

#include <cctype>
#include <sstream>

namespace pluri {

std::string to_string(FieldTag t) {
    switch (t) {
        case FieldTag::Q: return "Q";
        case FieldTag::Qi: return "Qi";
        case FieldTag::Qlambda: return "Qlambda";
        case FieldTag::Qilambda: return "Qilambda";
    }
    return "?";
}

FieldTag parse_field_tag(const std::string& s) {
    if (s == "Q") return FieldTag::Q;
    if (s == "Qi") return FieldTag::Qi;
    if (s == "Qlambda") return FieldTag::Qlambda;
    if (s == "Qilambda") return FieldTag::Qilambda;
    throw std::invalid_argument("unknown field tag '" + s + "'");
}

GaussRat GaussRat::inv() const {
    mpq_class n = re * re + im * im;
    if (sgn(n) == 0) throw DivisionByZero();
    return {re / n, -im / n};
}

namespace poly {

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] = a[k];
        if (k < b.size()) r[k] = r[k] + b[k];
    }
    trim(r);
    return r;
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t k = 0; k < r.size(); ++k) {
        if (k < a.size()) r[k] = a[k];
        if (k < b.size()) r[k] = r[k] - b[k];
    }
    trim(r);
    return r;
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    trim(r);
    return r;
}

Poly scale(const Poly& a, const GaussRat& c) {
    if (c.is_zero()) return {};
    Poly r(a.size());
    for (size_t k = 0; k < a.size(); ++k) r[k] = a[k] * c;
    return r;
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
    if (b.empty()) throw DivisionByZero();
    r = a;
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, GaussRat());
    GaussRat lead_inv = b.back().inv();
    while (!r.empty() && r.size() >= b.size()) {
        size_t shift = r.size() - b.size();
        GaussRat c = r.back() * lead_inv;
        q[shift] = c;
        for (size_t k = 0; k < b.size(); ++k) r[shift + k] = r[shift + k] - c * b[k];
        r.back() = GaussRat();
        trim(r);
    }
    trim(q);
}

Poly monic(const Poly& a) {
    if (a.empty()) return a;
    return scale(a, a.back().inv());
}

Poly gcd(Poly a, Poly b) {
    while (!b.empty()) {
        Poly q, r;
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

}  // namespace poly

Scalar::Scalar(long num, long den) : tag_(FieldTag::Q) {
    if (den == 0) throw DivisionByZero();
    c_.re = mpq_class(num, den);
    c_.re.canonicalize();
}

Scalar Scalar::gaussian(const mpq_class& re, const mpq_class& im) {
    Scalar s;
    s.c_ = GaussRat(re, im);
    s.tag_ = sgn(im) == 0 ? FieldTag::Q : FieldTag::Qi;
    return s;
}

Scalar Scalar::imag_unit() { return gaussian(0, 1); }

Scalar Scalar::lambda() {
    return make({GaussRat(0), GaussRat(1)}, {GaussRat(1)}, FieldTag::Qlambda);
}

Scalar Scalar::from_fraction(Poly num, Poly den, FieldTag tag) {
    return make(std::move(num), std::move(den), tag);
}

Scalar Scalar::make(Poly num, Poly den, FieldTag tag) {
    poly::trim(num);
    poly::trim(den);
    if (den.empty()) throw DivisionByZero();
    Scalar s;
    s.tag_ = tag;
    if (num.empty()) return s;
    if (den.size() > 1) {
        Poly g = poly::gcd(num, den);
        if (g.size() > 1) {
            Poly q, r;
            poly::divmod(num, g, q, r);
            num = std::move(q);
            poly::divmod(den, g, q, r);
            den = std::move(q);
        }
    }
    GaussRat li = den.back().inv();
    num = poly::scale(num, li);
    den = poly::scale(den, li);
    if (num.size() == 1 && den.size() == 1) {
        s.c_ = num[0];
        return s;
    }
    s.f_ = std::make_shared<Frac>(Frac{std::move(num), std::move(den)});
    return s;
}

Scalar Scalar::with_tag(FieldTag t) const {
    Scalar s = *this;
    s.tag_ = t;
    return s;
}

Poly Scalar::numerator() const {
    if (f_) return f_->num;
    if (c_.is_zero()) return {};
    return {c_};
}

Poly Scalar::denominator() const {
    if (f_) return f_->den;
    return {GaussRat(1)};
}

Scalar Scalar::conjugate() const {
    if (!f_) {
        Scalar s = *this;
        s.c_.im = -s.c_.im;
        return s;
    }
    Poly n = f_->num, d = f_->den;
    for (auto& c : n) c = c.conj();
    for (auto& c : d) c = c.conj();
    return make(std::move(n), std::move(d), tag_);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (!f_) {
        Scalar s = *this;
        s.c_ = c_.inv();
        return s;
    }
    return make(f_->den, f_->num, tag_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    FieldTag t = join(a.tag_, b.tag_);
    if (!a.f_ && !b.f_) {
        Scalar s;
        s.tag_ = t;
        s.c_ = a.c_ + b.c_;
        return s;
    }
    Poly an = a.numerator(), ad = a.denominator(), bn = b.numerator(), bd = b.denominator();
    if (ad == bd) return Scalar::make(poly::add(an, bn), ad, t);
    return Scalar::make(poly::add(poly::mul(an, bd), poly::mul(bn, ad)), poly::mul(ad, bd), t);
}

Scalar operator-(const Scalar& a) {
    Scalar s = a;
    if (!a.f_) {
        s.c_ = -a.c_;
        return s;
    }
    Poly n = a.f_->num;
    for (auto& c : n) c = -c;
    s.f_ = std::make_shared<Scalar::Frac>(Scalar::Frac{std::move(n), a.f_->den});
    return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    FieldTag t = join(a.tag_, b.tag_);
    if (!a.f_ && !b.f_) {
        Scalar s;
        s.tag_ = t;
        s.c_ = a.c_ * b.c_;
        return s;
    }
    if (a.is_zero() || b.is_zero()) return Scalar().with_tag(t);
    return Scalar::make(poly::mul(a.numerator(), b.numerator()),
                        poly::mul(a.denominator(), b.denominator()), t);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (!a.f_ && !b.f_) return a.c_ == b.c_;
    if (!a.f_ || !b.f_) return false;
    return a.f_->num == b.f_->num && a.f_->den == b.f_->den;
}

FieldTag Scalar::minimal_tag() const {
    bool has_i = false;
    for (const auto& c : numerator()) has_i |= !c.is_real();
    for (const auto& c : denominator()) has_i |= !c.is_real();
    unsigned t = (has_i ? 1u : 0u) | (f_ ? 2u : 0u);
    return static_cast<FieldTag>(t);
}

std::optional<Scalar> Scalar::in_subfield(FieldTag t) const {
    if (!contains(t, minimal_tag())) return std::nullopt;
    return with_tag(t);
}

std::optional<Scalar> arith(const Scalar& a, const Scalar& b, ArithOp op) {
    switch (op) {
        case ArithOp::Add: return a + b;
        case ArithOp::Sub: return a - b;
        case ArithOp::Mul: return a * b;
        case ArithOp::Div:
            if (b.is_zero()) return std::nullopt;
            return a / b;
    }
    return std::nullopt;
}

SubfieldResult is_in_subfield(const Scalar& a, FieldTag t) {
    auto w = a.in_subfield(t);
    return {w.has_value(), w};
}

/* ---- printing ---- */

namespace {

std::string q_str(const mpq_class& q) { return q.get_str(); }

/* Gaussian rational as a self-contained factor; `paren` wraps sums */
std::string gauss_str(const GaussRat& c, bool paren) {
    if (c.is_real()) return q_str(c.re);
    std::string im;
    if (c.im == 1) im = "i";
    else if (c.im == -1) im = "-i";
    else im = q_str(c.im) + "*i";
    if (sgn(c.re) == 0) return im;
    std::string s = q_str(c.re);
    if (sgn(c.im) < 0) {
        s += " - ";
        mpq_class a = -c.im;
        s += (a == 1) ? "i" : q_str(a) + "*i";
    } else {
        s += " + " + (c.im == 1 ? std::string("i") : q_str(c.im) + "*i");
    }
    return paren ? "(" + s + ")" : s;
}

std::string lam_pow(size_t k) {
    if (k == 1) return "lambda";
    return "lambda^" + std::to_string(k);
}

std::string poly_str(const Poly& p) {
    if (p.empty()) return "0";
    std::string out;
    bool first = true;
    for (size_t k = p.size(); k-- > 0;) {
        const GaussRat& c = p[k];
        if (c.is_zero()) continue;
        std::string term;
        bool neg = false;
        if (k == 0) {
            if (c.is_real()) {
                neg = sgn(c.re) < 0;
                term = q_str(neg ? mpq_class(-c.re) : c.re);
            } else if (sgn(c.re) == 0) {
                neg = sgn(c.im) < 0;
                term = gauss_str(neg ? -c : c, false);
            } else {
                term = gauss_str(c, true);
            }
        } else {
            GaussRat cc = c;
            if (c.is_real() && sgn(c.re) < 0) {
                neg = true;
                cc = -c;
            } else if (sgn(c.re) == 0 && sgn(c.im) < 0) {
                neg = true;
                cc = -c;
            }
            if (cc.is_real() && cc.re == 1) term = lam_pow(k);
            else term = gauss_str(cc, true) + "*" + lam_pow(k);
        }
        if (first) out = neg ? "-" + term : term;
        else out += neg ? " - " + term : " + " + term;
        first = false;
    }
    return out;
}

bool is_single_term(const Poly& p) {
    int n = 0;
    for (const auto& c : p) n += c.is_zero() ? 0 : 1;
    return n == 1;
}

}  // namespace

std::string Scalar::str() const {
    if (!f_) return gauss_str(c_, false);
    std::string n = poly_str(f_->num);
    if (f_->den.size() == 1) return n;
    std::string d = poly_str(f_->den);
    if (!is_single_term(f_->num)) n = "(" + n + ")";
    if (!is_single_term(f_->den) || (f_->den.size() > 1 && !f_->den.back().is_real())) d = "(" + d + ")";
    else if (d.find('*') != std::string::npos || d.find('^') != std::string::npos) d = "(" + d + ")";
    return n + "/" + d;
}

/* ---- parsing ---- */

namespace {

struct ScalarParser {
    const std::string& s;
    size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& m) { throw ParseError(m, pos); }

    Scalar expr() {
        Scalar v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    Scalar term() {
        Scalar v = unary();
        for (;;) {
            if (eat('*')) v = v * unary();
            else if (eat('/')) {
                size_t at = pos;
                Scalar d = unary();
                if (d.is_zero()) throw ParseError("division by zero", at);
                v = v / d;
            } else return v;
        }
    }
    Scalar unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    Scalar power() {
        Scalar b = atom();
        if (eat('^')) {
            skip();
            size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (st == pos) fail("expected exponent");
            unsigned long e = std::stoul(s.substr(st, pos - st));
            Scalar r(1);
            r = r.with_tag(b.tag());
            for (unsigned long k = 0; k < e; ++k) r = r * b;
            return r;
        }
        return b;
    }
    Scalar atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Scalar v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return Scalar(mpq_class(mpz_class(s.substr(st, pos - st))));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t st = pos;
            while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string w = s.substr(st, pos - st);
            if (w == "i") return Scalar::imag_unit();
            if (w == "lambda") return Scalar::lambda();
            pos = st;
            fail("unknown symbol '" + w + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Scalar Scalar::parse(const std::string& text) {
    ScalarParser p{text};
    Scalar v = p.expr();
    p.skip();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return v;
}

}  // namespace pluri
