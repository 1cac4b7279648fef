#include "pluri/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <functional>

namespace pluri {

/* ---- Element ---- */

void Element::add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
}

Element Element::operator+(const Element& o) const {
    Element r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

Element Element::operator-(const Element& o) const {
    Element r = *this;
    for (const auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

Element Element::operator-() const { return scaled(Scalar(-1)); }

Element Element::scaled(const Scalar& c) const {
    Element r;
    if (c.is_zero()) return r;
    for (const auto& [m, x] : terms) r.terms.emplace(m, x * c);
    return r;
}

Element Element::conj_coeffs() const {
    Element r;
    for (const auto& [m, x] : terms) r.terms.emplace(m, x.conjugate());
    return r;
}

std::optional<Bideg> Element::bideg() const {
    if (terms.empty() || !homogeneous()) return std::nullopt;
    return terms.begin()->first.bideg();
}

bool Element::homogeneous() const {
    if (terms.empty()) return true;
    Bideg b = terms.begin()->first.bideg();
    for (const auto& [m, c] : terms)
        if (m.bideg() != b) return false;
    return true;
}

FieldTag Element::tag() const {
    FieldTag t = FieldTag::Q;
    for (const auto& [m, c] : terms) t = join(t, c.minimal_tag());
    return t;
}

/* ---- generators ---- */

namespace {

void trim(std::vector<uint8_t>& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

Element of(const Mono& m, const Scalar& c = Scalar(1)) {
    Element r;
    r.add_term(m, c);
    return r;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

void Algebra::set_truncation(int n) {
    N_ = n;
    invalidate();
}

int Algebra::add_generator(const std::string& name, int p, int q, int weight) {
    if (name.empty() || !is_ident_start(name[0]) || name == "i" || name == "lambda")
        throw AlgebraError("invalid generator name '" + name + "'");
    for (char c : name)
        if (!is_ident_char(c)) throw AlgebraError("invalid generator name '" + name + "'");
    if (by_name_.count(name)) throw AlgebraError("duplicate generator '" + name + "'");
    if (p < 0 || q < 0) throw AlgebraError("negative degree for generator '" + name + "'");
    if (!bigraded_ && q != 0) throw AlgebraError("bidegree given in a singly graded algebra");
    if (weight <= 0) weight = p + q;
    if (weight <= 0) throw AlgebraError("generator '" + name + "' of degree 0 needs a positive weight");
    Generator g;
    g.name = name;
    g.p = p;
    g.q = q;
    g.weight = weight;
    gens_.push_back(g);
    int i = ngens() - 1;
    by_name_[name] = i;
    del_.emplace_back();
    delbar_.emplace_back();
    invalidate();
    return i;
}

void Algebra::pair_generators(int a, int b) {
    gens_.at(a).partner = b;
    gens_.at(b).partner = a;
    real_ = true;
}

int Algebra::index(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw AlgebraError("unknown generator '" + name + "'");
    return it->second;
}

std::optional<int> Algebra::find(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

void Algebra::set_del(int g, Element v) { del_.at(g) = std::move(v); }
void Algebra::set_delbar(int g, Element v) { delbar_.at(g) = std::move(v); }

void Algebra::add_relation(Element r) {
    relations_.push_back(std::move(r));
    invalidate();
}

int Algebra::weight_of(const std::vector<uint8_t>& e) const {
    int w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += e[i] * gens_[i].weight;
    return w;
}

Mono make_mono(const Algebra& a, const std::vector<std::pair<int, int>>& gen_exp) {
    Mono m;
    for (const auto& [g, k] : gen_exp) {
        if (k <= 0) continue;
        if (static_cast<int>(m.e.size()) <= g) m.e.resize(g + 1, 0);
        m.e[g] = static_cast<uint8_t>(m.e[g] + k);
        m.p += a.gen(g).p * k;
        m.q += a.gen(g).q * k;
        m.w += a.gen(g).weight * k;
    }
    trim(m.e);
    return m;
}

Element Algebra::one() const { return of(Mono{}); }

Element Algebra::constant(const Scalar& s) const { return of(Mono{}, s); }

Element Algebra::g(int i) const {
    if (i < 0 || i >= ngens()) throw AlgebraError("generator index out of range");
    return of(make_mono(*this, {{i, 1}}));
}

Mono Algebra::mono_mul(const Mono& a, const Mono& b, int& sign) const {
    Mono r;
    size_t n = std::max(a.e.size(), b.e.size());
    r.e.assign(n, 0);
    int parity = 0, count = 0;
    for (size_t k = n; k-- > 0;) {
        int ea = k < a.e.size() ? a.e[k] : 0;
        int eb = k < b.e.size() ? b.e[k] : 0;
        bool odd = gens_[k].odd();
        if (odd) {
            if (ea + eb > 1) {
                sign = 0;
                return r;
            }
            if (eb) parity ^= (count & 1);
            if (ea) ++count;
        }
        r.e[k] = static_cast<uint8_t>(ea + eb);
    }
    trim(r.e);
    r.p = a.p + b.p;
    r.q = a.q + b.q;
    r.w = a.w + b.w;
    sign = parity ? -1 : 1;
    return r;
}

Element Algebra::mul(const Element& a, const Element& b, bool* truncated) const {
    Element r;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            int s;
            Mono m = mono_mul(ma, mb, s);
            if (s == 0) continue;
            if (m.w > N_) {
                if (truncated) *truncated = true;
                continue;
            }
            r.add_term(m, s > 0 ? ca * cb : -(ca * cb));
        }
    return r;
}

Element Algebra::pow(const Element& a, int k) const {
    Element r = one();
    for (int i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

Element Algebra::leibniz(const Element& x, const std::vector<Element>& dg) const {
    Element out;
    for (const auto& [m, c] : x.terms) {
        int parity = 0;
        for (size_t gi = 0; gi < m.e.size(); ++gi) {
            int e = m.e[gi];
            if (e == 0) continue;
            const Element& d = dg[gi];
            if (!d.is_zero()) {
                std::vector<std::pair<int, int>> pre, post;
                for (size_t j = 0; j < gi; ++j) pre.emplace_back(static_cast<int>(j), m.e[j]);
                post.emplace_back(static_cast<int>(gi), e - 1);
                for (size_t j = gi + 1; j < m.e.size(); ++j) post.emplace_back(static_cast<int>(j), m.e[j]);
                Element t = mul(mul(of(make_mono(*this, pre)), d), of(make_mono(*this, post)));
                Scalar coef = c * Scalar(long(e));
                if (parity) coef = -coef;
                for (const auto& [mm, cc] : t.terms) out.add_term(mm, cc * coef);
            }
            if (gens_[gi].odd() && (e & 1)) parity ^= 1;
        }
    }
    return out;
}

Element Algebra::del(const Element& x) const { return leibniz(x, del_); }
Element Algebra::delbar(const Element& x) const { return leibniz(x, delbar_); }
Element Algebra::d(const Element& x) const { return del(x) + delbar(x); }

Element Algebra::sigma(const Element& x) const {
    Element out;
    for (const auto& [m, c] : x.terms) {
        Mono r;
        int sign = 1;
        for (size_t gi = 0; gi < m.e.size() && sign != 0; ++gi) {
            int partner = gens_[gi].partner < 0 ? static_cast<int>(gi) : gens_[gi].partner;
            Mono pg = make_mono(*this, {{partner, 1}});
            for (int k = 0; k < m.e[gi] && sign != 0; ++k) {
                int s;
                r = mono_mul(r, pg, s);
                sign *= s;
            }
        }
        if (sign == 0) continue;
        out.add_term(r, sign > 0 ? c.conjugate() : -c.conjugate());
    }
    return out;
}

/* ---- per-degree data ---- */

void Algebra::enumerate(Bideg b, std::vector<Mono>& out) const {
    int n = ngens();
    std::vector<uint8_t> e(n, 0);
    std::function<void(int, int, int, int)> rec = [&](int gi, int rp, int rq, int rw) {
        if (gi == n) {
            if (rp == 0 && rq == 0) {
                Mono m;
                m.e = e;
                trim(m.e);
                m.p = b.first;
                m.q = b.second;
                m.w = N_ - rw;
                out.push_back(std::move(m));
            }
            return;
        }
        const Generator& g = gens_[gi];
        int maxk = g.odd() ? 1 : INT_MAX;
        if (g.p > 0) maxk = std::min(maxk, rp / g.p);
        if (g.q > 0) maxk = std::min(maxk, rq / g.q);
        maxk = std::min(maxk, rw / g.weight);
        for (int k = 0; k <= maxk; ++k) {
            e[gi] = static_cast<uint8_t>(k);
            rec(gi + 1, rp - k * g.p, rq - k * g.q, rw - k * g.weight);
        }
        e[gi] = 0;
    };
    if (b.first < 0 || b.second < 0) return;
    rec(0, b.first, b.second, N_);
}

const Algebra::DegreeData& Algebra::data(Bideg b) const {
    auto it = cache_.find(b);
    if (it != cache_.end()) return *it->second;
    auto dd = std::make_shared<DegreeData>();
    enumerate(b, dd->monos);
    std::sort(dd->monos.begin(), dd->monos.end(), [](const Mono& x, const Mono& y) { return y < x; });
    for (size_t i = 0; i < dd->monos.size(); ++i) dd->index[dd->monos[i].e] = static_cast<int>(i);
    for (const auto& r : relations_) {
        auto rb = r.bideg();
        if (!rb) continue;
        Bideg mb{b.first - rb->first, b.second - rb->second};
        if (mb.first < 0 || mb.second < 0) continue;
        std::vector<Mono> ms;
        enumerate(mb, ms);
        for (const auto& m : ms) {
            Element prod = mul(of(m), r);
            if (prod.is_zero()) continue;
            dd->ideal.insert(full_coords(prod, *dd));
        }
    }
    dd->std_of.assign(dd->monos.size(), -1);
    std::vector<bool> piv(dd->monos.size(), false);
    for (int pv : dd->ideal.pivots()) piv[pv] = true;
    for (size_t i = 0; i < dd->monos.size(); ++i)
        if (!piv[i]) {
            dd->std_of[i] = static_cast<int>(dd->standard.size());
            dd->standard.push_back(dd->monos[i]);
        }
    auto [pos, ok] = cache_.emplace(b, std::move(dd));
    return *pos->second;
}

SparseVec Algebra::full_coords(const Element& x, const DegreeData& dd) const {
    SparseVec v;
    for (const auto& [m, c] : x.terms) {
        if (m.w > N_) continue;
        auto it = dd.index.find(m.e);
        if (it == dd.index.end()) continue;
        v.emplace_back(it->second, c);
    }
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
}

const std::vector<Mono>& Algebra::basis(Bideg b) const { return data(b).standard; }
const std::vector<Mono>& Algebra::monomials(Bideg b) const { return data(b).monos; }

SparseVec Algebra::coords(const Element& x, Bideg b) const {
    const DegreeData& dd = data(b);
    Element xb;
    for (const auto& [m, c] : x.terms)
        if (m.bideg() == b) xb.terms.emplace(m, c);
    SparseVec v = full_coords(xb, dd);
    dd.ideal.reduce(v);
    SparseVec out;
    out.reserve(v.size());
    for (const auto& [i, c] : v) out.emplace_back(dd.std_of[i], c);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Element Algebra::from_coords(const SparseVec& v, Bideg b) const {
    const auto& bs = basis(b);
    Element r;
    for (const auto& [i, c] : v) r.add_term(bs.at(i), c);
    return r;
}

Element Algebra::reduce(const Element& x) const {
    std::map<Bideg, Element> parts;
    for (const auto& [m, c] : x.terms)
        if (m.w <= N_) parts[m.bideg()].terms.emplace(m, c);
    Element r;
    for (const auto& [b, e] : parts) {
        if (relations_.empty()) {
            r = r + e;
            continue;
        }
        r = r + from_coords(coords(e, b), b);
    }
    return r;
}

LinearMap Algebra::del_matrix(Bideg b) const {
    const auto& bs = basis(b);
    Bideg t{b.first + 1, b.second};
    LinearMap m(static_cast<int>(bs.size()), dim(t));
    for (size_t j = 0; j < bs.size(); ++j) m.cols[j] = coords(del(of(bs[j])), t);
    return m;
}

LinearMap Algebra::delbar_matrix(Bideg b) const {
    const auto& bs = basis(b);
    Bideg t{b.first, b.second + 1};
    LinearMap m(static_cast<int>(bs.size()), dim(t));
    for (size_t j = 0; j < bs.size(); ++j) m.cols[j] = coords(delbar(of(bs[j])), t);
    return m;
}

LinearMap Algebra::sigma_matrix(Bideg b) const {
    const auto& bs = basis(b);
    Bideg t{b.second, b.first};
    LinearMap m(static_cast<int>(bs.size()), dim(t));
    for (size_t j = 0; j < bs.size(); ++j) m.cols[j] = coords(sigma(of(bs[j])), t);
    return m;
}

std::vector<Bideg> Algebra::bidegrees(int total) const {
    std::vector<Bideg> out;
    if (!bigraded_) {
        if (dim({total, 0}) > 0) out.push_back({total, 0});
        return out;
    }
    for (int p = 0; p <= total; ++p)
        if (dim({p, total - p}) > 0) out.push_back({p, total - p});
    return out;
}

bool Algebra::weight_homogeneous() const {
    auto homog = [&](const Element& e, int w) {
        for (const auto& [m, c] : e.terms)
            if (m.w != w) return false;
        return true;
    };
    for (int gi = 0; gi < ngens(); ++gi)
        if (!homog(del_[gi], gens_[gi].weight) || !homog(delbar_[gi], gens_[gi].weight)) return false;
    for (const auto& r : relations_) {
        if (r.is_zero()) continue;
        if (!homog(r, r.terms.begin()->first.w)) return false;
    }
    return true;
}

bool Algebra::degree_weights() const {
    for (const auto& g : gens_)
        if (g.weight != g.degree()) return false;
    return true;
}

std::optional<int> Algebra::max_window() const {
    if (weight_homogeneous()) {
        /* every degree is exact for weights <= N; bound the total degree */
        int best = 0;
        for (const auto& g : gens_) best = std::max(best, (N_ * g.degree() + g.weight - 1) / g.weight);
        return std::max(best, N_);
    }
    if (degree_weights()) return N_ - 2;
    return std::nullopt;
}

Bicomplex Algebra::underlying_bicomplex(int window) const {
    auto mw = max_window();
    if (!mw || window > *mw)
        throw AlgebraError("window " + std::to_string(window) + " exceeds the certified range of the truncation");
    Bicomplex bc;
    int top = window + 2;
    for (int k = 0; k <= top; ++k)
        for (const auto& b : bidegrees(k)) bc.dims[b] = dim(b);
    for (int k = 0; k < top; ++k)
        for (const auto& b : bidegrees(k)) {
            bc.del[b] = del_matrix(b);
            if (bigraded_) bc.delbar[b] = delbar_matrix(b);
        }
    if (real_ && bigraded_) {
        std::map<Bideg, LinearMap> s;
        for (int k = 0; k <= top; ++k)
            for (const auto& b : bidegrees(k)) s[b] = sigma_matrix(b);
        bc.sigma = std::move(s);
    }
    return bc;
}

ValidationReport Algebra::validate() const {
    ValidationReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        rep.witness = msg;
        return rep;
    };
    for (int gi = 0; gi < ngens(); ++gi) {
        const Generator& g = gens_[gi];
        if (g.partner >= 0) {
            const Generator& h = gens_.at(g.partner);
            if (h.partner != gi) return fail("generator " + g.name + ": partner is not mutual");
            if (h.p != g.q || h.q != g.p) return fail("generator " + g.name + ": partner bidegree is not mirrored");
            if (h.weight != g.weight) return fail("generator " + g.name + ": partner weight differs");
        }
        auto check_deg = [&](const Element& e, Bideg want, const char* what) -> bool {
            for (const auto& [m, c] : e.terms)
                if (m.bideg() != want) return false;
            (void)what;
            return true;
        };
        if (!check_deg(del_[gi], {g.p + 1, g.q}, "del"))
            return fail("generator " + g.name + ": " + (bigraded_ ? "del" : "d") + " has the wrong degree");
        if (!bigraded_ && !delbar_[gi].is_zero()) return fail("generator " + g.name + ": delbar in a singly graded algebra");
        if (!check_deg(delbar_[gi], {g.p, g.q + 1}, "delbar"))
            return fail("generator " + g.name + ": delbar has the wrong bidegree");
        for (const auto& e : {del_[gi], delbar_[gi]})
            for (const auto& [m, c] : e.terms)
                if (m.w < g.weight) return fail("generator " + g.name + ": differential lowers the weight");
        for (const auto& e : {del_[gi], delbar_[gi]})
            if (!contains(field_, e.tag())) return fail("generator " + g.name + ": coefficient outside the declared field");
    }
    for (size_t ri = 0; ri < relations_.size(); ++ri)
        if (!relations_[ri].homogeneous())
            return fail("relation " + std::to_string(ri + 1) + " is not homogeneous");
    for (int gi = 0; gi < ngens(); ++gi) {
        const Generator& g = gens_[gi];
        Element x = this->g(gi);
        Element dx = del(x), bx = delbar(x);
        if (!reduce(del(dx)).is_zero()) return fail("generator " + g.name + (bigraded_ ? ": del^2 != 0" : ": d^2 != 0"));
        if (bigraded_) {
            if (!reduce(delbar(bx)).is_zero()) return fail("generator " + g.name + ": delbar^2 != 0");
            if (!reduce(del(bx) + delbar(dx)).is_zero())
                return fail("generator " + g.name + ": del delbar + delbar del != 0");
            if (real_) {
                Element lhs = sigma(del(sigma(x)));
                if (!reduce(lhs - bx).is_zero()) return fail("generator " + g.name + ": sigma del sigma != delbar");
            }
        }
    }
    for (size_t ri = 0; ri < relations_.size(); ++ri) {
        const Element& r = relations_[ri];
        if (!reduce(del(r)).is_zero() || !reduce(delbar(r)).is_zero())
            return fail("relation " + std::to_string(ri + 1) + ": ideal is not closed under the differential");
        if (real_ && !reduce(sigma(r)).is_zero())
            return fail("relation " + std::to_string(ri + 1) + ": ideal is not sigma-stable");
    }
    return rep;
}

/* ---- text ---- */

std::string Algebra::mono_str(const Mono& m) const {
    std::string s;
    for (size_t gi = 0; gi < m.e.size(); ++gi) {
        if (m.e[gi] == 0) continue;
        if (!s.empty()) s += "*";
        s += gens_[gi].name;
        if (m.e[gi] > 1) s += "^" + std::to_string(m.e[gi]);
    }
    return s.empty() ? "1" : s;
}

std::string Algebra::str(const Element& x) const {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = x.terms.rbegin(); it != x.terms.rend(); ++it) {
        const Mono& m = it->first;
        Scalar c = it->second;
        bool neg = false;
        if (c.is_constant()) {
            const GaussRat& g = c.constant();
            if ((g.is_real() && sgn(g.re) < 0) || (sgn(g.re) == 0 && sgn(g.im) < 0)) {
                neg = true;
                c = -c;
            }
        }
        std::string cs = c.str();
        bool compound = cs.find_first_of("+-/ ") != std::string::npos;
        std::string term;
        if (m.e.empty()) term = compound ? "(" + cs + ")" : cs;
        else if (c.is_one()) term = mono_str(m);
        else term = (compound ? "(" + cs + ")" : cs) + "*" + mono_str(m);
        if (first) out = neg ? "-" + term : term;
        else out += neg ? " - " + term : " + " + term;
        first = false;
    }
    return out;
}

namespace {

struct ElementParser {
    const Algebra& a;
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
    bool at_atom() {
        skip();
        if (pos >= s.size()) return false;
        char c = s[pos];
        return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || is_ident_start(c);
    }
    [[noreturn]] void fail(const std::string& m) { throw ParseError(m, pos); }

    Element expr() {
        Element v = term();
        for (;;) {
            if (eat('+')) v = v + term();
            else if (eat('-')) v = v - term();
            else return v;
        }
    }
    Element term() {
        Element v = unary();
        for (;;) {
            if (eat('*')) v = a.mul(v, unary());
            else if (eat('/')) {
                size_t at = pos;
                Element d = unary();
                if (d.terms.size() != 1 || !d.terms.begin()->first.e.empty())
                    throw ParseError("division by a non-scalar", at);
                Scalar c = d.terms.begin()->second;
                v = v.scaled(c.inverse());
            } else if (at_atom()) {
                v = a.mul(v, power());
            } else return v;
        }
    }
    Element unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    Element power() {
        Element b = atom();
        if (eat('^')) {
            skip();
            size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (st == pos) fail("expected exponent");
            return a.pow(b, std::stoi(s.substr(st, pos - st)));
        }
        return b;
    }
    Element atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of expression");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Element v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return a.constant(Scalar(mpq_class(mpz_class(s.substr(st, pos - st)))));
        }
        if (is_ident_start(c)) {
            size_t st = pos;
            while (pos < s.size() && is_ident_char(s[pos])) ++pos;
            std::string w = s.substr(st, pos - st);
            if (w == "i") return a.constant(Scalar::imag_unit());
            if (w == "lambda") return a.constant(Scalar::lambda());
            auto gi = a.find(w);
            if (!gi) {
                pos = st;
                fail("unknown generator '" + w + "'");
            }
            return a.g(*gi);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Element Algebra::parse(const std::string& text) const {
    ElementParser p{*this, text};
    Element v = p.expr();
    p.skip();
    if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
    return v;
}

/* ---- morphisms ---- */

Element Morphism::apply(const Element& x) const {
    Element out;
    for (const auto& [m, c] : x.terms) {
        Element t = dst->one();
        for (size_t gi = 0; gi < m.e.size(); ++gi)
            for (int k = 0; k < m.e[gi]; ++k) t = dst->mul(t, images.at(gi));
        out = out + t.scaled(c);
    }
    return out;
}

BicomplexMap Morphism::bicomplex_map(const Bicomplex& s, const Bicomplex& t, int window) const {
    BicomplexMap f;
    for (const auto& [b, n] : s.dims) {
        if (b.first + b.second > window + 2 || n == 0) continue;
        int tn = t.dim(b);
        LinearMap m(n, tn);
        const auto& bs = src->basis(b);
        for (int j = 0; j < n; ++j) {
            Element x;
            x.add_term(bs[j], Scalar(1));
            Element y = apply(x);
            if (tn == 0) continue;
            m.cols[j] = dst->coords(y, b);
        }
        f.blocks[b] = std::move(m);
    }
    return f;
}

MorphismReport check_morphism(const Morphism& f, bool check_sigma) {
    MorphismReport rep;
    const Algebra& s = *f.src;
    const Algebra& t = *f.dst;
    auto fail = [&](const std::string& m) {
        rep.ok = false;
        rep.witness = m;
        return rep;
    };
    if (static_cast<int>(f.images.size()) != s.ngens()) return fail("image count does not match generator count");
    for (int gi = 0; gi < s.ngens(); ++gi) {
        const Element& img = f.images[gi];
        Bideg want = s.gen(gi).bideg();
        if (!t.bigraded() && s.bigraded()) want = {want.first + want.second, 0};
        for (const auto& [m, c] : img.terms)
            if (m.bideg() != want) return fail("generator " + s.gen(gi).name + ": image has the wrong degree");
    }
    for (int gi = 0; gi < s.ngens(); ++gi) {
        Element x = s.g(gi);
        const std::string& nm = s.gen(gi).name;
        if (s.bigraded() && t.bigraded()) {
            if (!t.reduce(f.apply(s.del(x)) - t.del(f.images[gi])).is_zero())
                return fail("generator " + nm + ": f del != del f");
            if (!t.reduce(f.apply(s.delbar(x)) - t.delbar(f.images[gi])).is_zero())
                return fail("generator " + nm + ": f delbar != delbar f");
        } else {
            if (!t.reduce(f.apply(s.d(x)) - t.d(f.images[gi])).is_zero())
                return fail("generator " + nm + ": f d != d f");
        }
        if (check_sigma && !t.reduce(f.apply(s.sigma(x)) - t.sigma(f.images[gi])).is_zero())
            return fail("generator " + nm + ": f sigma != sigma f");
    }
    for (size_t ri = 0; ri < s.relations().size(); ++ri)
        if (!t.reduce(f.apply(s.relations()[ri])).is_zero())
            return fail("relation " + std::to_string(ri + 1) + " is not killed");
    return rep;
}

/* ---- totalization and real points ---- */

namespace {

Element regrade(const Element& x) {
    Element r;
    for (const auto& [m, c] : x.terms) {
        Mono mm = m;
        mm.p = m.p + m.q;
        mm.q = 0;
        r.add_term(mm, c);
    }
    return r;
}

}  // namespace

Algebra totalize(const Algebra& a) {
    Algebra t(false, a.truncation());
    t.set_field(a.field());
    for (const auto& g : a.gens()) t.add_generator(g.name, g.degree(), 0, g.weight);
    for (int gi = 0; gi < a.ngens(); ++gi) {
        int pt = a.gen(gi).partner;
        if (pt > gi) t.pair_generators(gi, pt);
    }
    t.set_real_structure(a.has_real_structure());
    for (int gi = 0; gi < a.ngens(); ++gi) t.set_d(gi, regrade(a.del_of(gi) + a.delbar_of(gi)));
    for (const auto& r : a.relations()) t.add_relation(regrade(r));
    return t;
}

namespace {

FieldTag drop_i(FieldTag t) { return static_cast<FieldTag>(static_cast<unsigned>(t) & 2u); }

}  // namespace

Algebra real_points(const Algebra& a) {
    if (!a.has_real_structure()) throw AlgebraError("real_points: algebra has no real structure");
    Algebra tot = totalize(a);
    Algebra rp(false, a.truncation());
    rp.set_field(drop_i(a.field()));
    /* substitution tot -> rp */
    std::vector<Element> subst(tot.ngens());
    std::vector<int> new_index(tot.ngens(), -1);
    for (int gi = 0; gi < tot.ngens(); ++gi) {
        const Generator& g = tot.gen(gi);
        if (g.partner < 0) new_index[gi] = rp.add_generator(g.name, g.p, 0, g.weight);
        else if (g.partner > gi) {
            new_index[gi] = rp.add_generator("re_" + g.name, g.p, 0, g.weight);
            rp.add_generator("im_" + g.name, g.p, 0, g.weight);
        }
    }
    Scalar half(1, 2), ihalf = Scalar::imag_unit() * Scalar(1, 2);
    for (int gi = 0; gi < tot.ngens(); ++gi) {
        const Generator& g = tot.gen(gi);
        if (g.partner < 0) subst[gi] = rp.g(new_index[gi]);
        else {
            int lo = std::min(gi, g.partner);
            Element re = rp.g(new_index[lo]), im = rp.g(new_index[lo] + 1);
            if (gi == lo) subst[gi] = re.scaled(half) - im.scaled(ihalf);
            else subst[gi] = re.scaled(half) + im.scaled(ihalf);
        }
    }
    Morphism phi{&tot, &rp, subst};
    auto check_real = [&](const Element& e, const std::string& what) {
        if (contains(FieldTag::Qlambda, e.tag())) return;
        throw AlgebraError("real_points: " + what + " has non-real coefficients");
    };
    for (int gi = 0; gi < tot.ngens(); ++gi) {
        const Generator& g = tot.gen(gi);
        if (g.partner < 0) {
            Element dv = phi.apply(tot.d(tot.g(gi)));
            check_real(dv, "d(" + g.name + ")");
            rp.set_d(new_index[gi], dv);
        } else if (g.partner > gi) {
            Element x = tot.g(gi), y = tot.g(g.partner);
            Element dre = phi.apply(tot.d(x + y));
            Element dim = phi.apply(tot.d((x - y).scaled(Scalar::imag_unit())));
            check_real(dre, "d(re_" + g.name + ")");
            check_real(dim, "d(im_" + g.name + ")");
            rp.set_d(new_index[gi], dre);
            rp.set_d(new_index[gi] + 1, dim);
        }
    }
    for (const auto& r : tot.relations()) {
        Element rr = phi.apply(r);
        check_real(rr, "a relation");
        rp.add_relation(rr);
    }
    return rp;
}

Morphism real_points_inclusion(const Algebra& rp, const Algebra& tot) {
    Morphism m{&rp, &tot, std::vector<Element>(rp.ngens())};
    for (int gi = 0; gi < rp.ngens(); ++gi) {
        const std::string& nm = rp.gen(gi).name;
        if (auto j = tot.find(nm)) {
            m.images[gi] = tot.g(*j);
            continue;
        }
        std::string base = nm.substr(3);
        int x = tot.index(base), y = tot.gen(x).partner;
        if (nm.rfind("re_", 0) == 0) m.images[gi] = tot.g(x) + tot.g(y);
        else m.images[gi] = (tot.g(x) - tot.g(y)).scaled(Scalar::imag_unit());
    }
    return m;
}

}  // namespace pluri
