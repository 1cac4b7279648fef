#include "pluri/cartan.hpp"

namespace pluri {

namespace {

Element from_mono(const Mono& m, const Scalar& c) {
    Element e;
    e.add_term(m, c);
    return e;
}

/* the bidegree components of x, keyed by bidegree */
std::map<Bideg, Element> split(const Element& x) {
    std::map<Bideg, Element> out;
    for (const auto& [m, c] : x.terms) out[m.bideg()].add_term(m, c);
    return out;
}

std::string gname(const Algebra& a, int g) { return a.gen(g).name; }

}  // namespace

void TCbba::resize() {
    iota10.assign(rank, std::vector<Element>(A.ngens()));
    iota01.assign(rank, std::vector<Element>(A.ngens()));
}

Element TCbba::contract(int a, const Element& x, int part) const {
    if (part == 10) return A.derivation(x, iota10.at(a));
    if (part == 1) return A.derivation(x, iota01.at(a));
    if (part == 0) return A.derivation(x, iota10.at(a)) + A.derivation(x, iota01.at(a));
    throw std::invalid_argument("contraction part is 10, 1 or 0");
}

ValidationReport TCbba::validate() const {
    ValidationReport rep = A.validate();
    if (!rep.ok) return rep;
    auto fail = [&](const std::string& m) {
        rep.ok = false;
        rep.witness = m;
        return rep;
    };
    if (static_cast<int>(iota10.size()) != rank || static_cast<int>(iota01.size()) != rank)
        return fail("contraction tables do not match the torus rank");
    for (int a = 0; a < rank; ++a)
        for (int g = 0; g < A.ngens(); ++g) {
            const Generator& G = A.gen(g);
            for (const auto& [m, c] : iota10[a][g].terms)
                if (m.bideg() != Bideg{G.p - 1, G.q}) return fail("generator " + G.name + ": (-1,0) contraction has the wrong bidegree");
            for (const auto& [m, c] : iota01[a][g].terms)
                if (m.bideg() != Bideg{G.p, G.q - 1}) return fail("generator " + G.name + ": (0,-1) contraction has the wrong bidegree");
        }
    // Both commutators below are derivations, so checking generators suffices.
    // Bidegree components are compared separately: together they are d iota + iota d = 0
    // and iota iota + iota iota = 0, and separately they give the bigraded identities.
    for (int a = 0; a < rank; ++a)
        for (int g = 0; g < A.ngens(); ++g) {
            Element x = A.g(g);
            Element lie = A.d(contract(a, x, 0)) + contract(a, A.d(x), 0);
            for (const auto& [b, part] : split(A.reduce(lie)))
                if (!part.is_zero())
                    return fail("generator " + gname(A, g) + ": d iota_" + std::to_string(a + 1) + " + iota_" +
                                std::to_string(a + 1) + " d != 0 (invariance fails)");
            for (int b = a; b < rank; ++b) {
                Element ii = contract(a, contract(b, x, 0), 0) + contract(b, contract(a, x, 0), 0);
                if (!A.reduce(ii).is_zero())
                    return fail("generator " + gname(A, g) + ": iota_" + std::to_string(a + 1) + " iota_" +
                                std::to_string(b + 1) + " + iota_" + std::to_string(b + 1) + " iota_" +
                                std::to_string(a + 1) + " != 0");
            }
            if (A.has_real_structure()) {
                Element lhs = A.sigma(contract(a, A.sigma(x), 10));
                if (!A.reduce(lhs - contract(a, x, 1)).is_zero())
                    return fail("generator " + gname(A, g) + ": contraction is not real (sigma iota10 sigma != iota01)");
            }
        }
    for (size_t ri = 0; ri < A.relations().size(); ++ri)
        for (int a = 0; a < rank; ++a)
            if (!A.reduce(contract(a, A.relations()[ri], 0)).is_zero())
                return fail("relation " + std::to_string(ri + 1) + ": ideal is not stable under contraction");
    return rep;
}

/* ---- Cartan model ---- */

namespace {

Mono shift_mono(const Mono& m, int k) {
    Mono r = m;
    if (!m.e.empty()) r.e.insert(r.e.begin(), k, 0);
    return r;
}

Element shift(const Element& x, int k) {
    Element out;
    for (const auto& [m, c] : x.terms) out.add_term(shift_mono(m, k), c);
    return out;
}

}  // namespace

Element CartanModel::lift(const Algebra&, const Element& x) const { return shift(x, offset); }

Element CartanModel::restrict_to(const Algebra& A, const Element& x) const {
    Element out;
    for (const auto& [m, c] : x.terms) {
        bool pure = true;
        for (int j = 0; j < offset && j < static_cast<int>(m.e.size()); ++j)
            if (m.e[j]) pure = false;
        if (!pure) continue;
        Mono r = m;
        if (static_cast<int>(r.e.size()) >= offset) r.e.erase(r.e.begin(), r.e.begin() + offset);
        else r.e.clear();
        r.w = A.weight_of(r.e);
        out.add_term(r, c);
    }
    return out;
}

Morphism CartanModel::restriction(const Algebra& A) const {
    Morphism f;
    f.src = &C;
    f.dst = &A;
    for (int j = 0; j < offset; ++j) f.images.emplace_back();
    for (int g = 0; g < A.ngens(); ++g) f.images.push_back(A.g(g));
    return f;
}

CartanModel cartan_model(const TCbba& t) {
    auto rep = t.validate();
    if (!rep.ok) throw AlgebraError(rep.witness);
    const Algebra& A = t.A;
    CartanModel cm;
    cm.rank = t.rank;
    cm.offset = t.rank;
    Algebra C(true, A.truncation());
    C.set_field(A.field());
    C.set_real_structure(A.has_real_structure());
    for (int a = 0; a < t.rank; ++a) {
        std::string nm = t.rank == 1 ? "xi" : "xi" + std::to_string(a + 1);
        while (A.find(nm)) nm += "_";
        C.add_generator(nm, 1, 1, 2);
    }
    const int k = t.rank;
    for (const auto& g : A.gens()) C.add_generator(g.name, g.p, g.q, g.weight);
    for (int g = 0; g < A.ngens(); ++g) {
        if (A.gen(g).partner > g) C.pair_generators(g + k, A.gen(g).partner + k);
        Element dl = shift(A.del_of(g), k), db = shift(A.delbar_of(g), k);
        for (int a = 0; a < k; ++a) {
            Element xi = C.g(a);
            dl = dl - C.mul(xi, shift(t.iota01[a][g], k));
            db = db - C.mul(xi, shift(t.iota10[a][g], k));
        }
        C.set_del(g + k, dl);
        C.set_delbar(g + k, db);
    }
    for (const auto& r : A.relations()) C.add_relation(shift(r, k));
    auto crep = C.validate();
    if (!crep.ok) throw AlgebraError("Cartan model failed validation: " + crep.witness);
    cm.C = std::move(C);
    return cm;
}

/* ---- equivariant extension ---- */

ExtensionResult extend_to_equivariant(const TCbba& t, const CartanModel& cm, const Element& theta, int window) {
    const Algebra& A = t.A;
    const Algebra& C = cm.C;
    ExtensionResult res;
    Element th = A.reduce(theta);
    if (th.is_zero()) {
        res.ok = true;
        return res;
    }
    auto bd = th.bideg();
    if (!bd) throw AlgebraError("theta is not of pure type");
    if (!A.reduce(A.d(th)).is_zero()) throw AlgebraError("theta is not d-closed");
    auto [p, q] = *bd;
    if (window < p + q) throw AlgebraError("window must reach the degree of theta");

    std::optional<Bicomplex> B;
    bool ddbar_checked = false;
    Element ext = cm.lift(A, th);
    const int bound = (p + q + 1) / 2;
    for (int k = 1; k <= bound + 1; ++k) {
        Element r = C.reduce(C.d(ext));
        if (r.is_zero()) {
            res.ok = true;
            res.extension = ext;
            res.stages = k - 1;
            return res;
        }
        if (k > bound) break;
        // group d_T(ext) by the xi-monomial f_i
        std::map<std::vector<uint8_t>, Element> by_f;
        for (const auto& [m, c] : r.terms) {
            std::vector<uint8_t> f(m.e.begin(), m.e.begin() + std::min<size_t>(cm.offset, m.e.size()));
            int deg = 0;
            for (auto e : f) deg += e;
            if (deg != k) {
                res.failure = "stage " + std::to_string(k) + ": d_T of the partial extension has xi-degree " +
                              std::to_string(deg) + " (expected " + std::to_string(k) + ")";
                res.failed_stage = k;
                return res;
            }
            Mono fm;
            fm.e = f;
            while (!fm.e.empty() && fm.e.back() == 0) fm.e.pop_back();
            Mono rest = m;
            rest.e.assign(m.e.begin() + std::min<size_t>(cm.offset, m.e.size()), m.e.end());
            rest.p = m.p - k;  // xi^f has bidegree (k,k)
            rest.q = m.q - k;
            rest.w = A.weight_of(rest.e);
            by_f[fm.e].add_term(rest, c);
        }
        Bideg at{p - k, q - k};
        Element step;
        for (const auto& [fe, eta_all] : by_f) {
            Element eta, eta_p;
            for (const auto& [m, c] : eta_all.terms) {
                if (m.bideg() == Bideg{at.first + 1, at.second}) eta.add_term(m, c);
                else if (m.bideg() == Bideg{at.first, at.second + 1}) eta_p.add_term(m, c);
                else {
                    res.failure = "stage " + std::to_string(k) + ": component of unexpected bidegree";
                    res.failed_stage = k;
                    return res;
                }
            }
            if (at.first < 0 || at.second < 0) {
                res.failure = "stage " + std::to_string(k) + ": class " + A.str(eta + eta_p) +
                              " is not d-exact (no room below it)";
                res.failed_stage = k;
                return res;
            }
            if (!B) B = A.underlying_bicomplex(window);
            if (!ddbar_checked) {
                auto cert = ddbar_property(*B, window);
                if (!cert.verdict) {
                    res.failure = "the window of A fails the ddbar-property in degree " +
                                  std::to_string(cert.witness_degree.value_or(-1));
                    res.failed_stage = k;
                    return res;
                }
                ddbar_checked = true;
            }
            SparseVec va = A.coords(eta, {at.first + 1, at.second});
            SparseVec vb = A.coords(eta_p, {at.first, at.second + 1});
            DSolve s = solve_d_bidegree(*B, at, va, vb, false, window);
            if (!s.ok) {
                res.failure = "stage " + std::to_string(k) + ": class " + A.str(eta + eta_p) + " is not d-exact (" +
                              s.failure + ")";
                res.failed_stage = k;
                return res;
            }
            Element beta = A.from_coords(s.beta, at);
            Mono fm;
            fm.e = fe;
            fm.p = fm.q = k;
            fm.w = C.weight_of(fm.e);
            step = step - C.mul(from_mono(fm, Scalar(1)), cm.lift(A, beta));
        }
        ext = ext + step;
    }
    res.failure = "d_T of the extension is nonzero after " + std::to_string(bound) + " stages";
    res.failed_stage = bound;
    return res;
}

CartanDdbarReport cartan_ddbar_check(const TCbba& t, const CartanModel& cm, int window) {
    CartanDdbarReport rep;
    Bicomplex bc = cm.C.underlying_bicomplex(window);
    Bicomplex ba = t.A.underlying_bicomplex(window);
    auto cert = ddbar_property(bc, window);
    rep.verdict = cert.verdict;
    rep.table = cert.table;
    Morphism r = cm.restriction(t.A);
    BicomplexMap f = r.bicomplex_map(bc, ba, window);
    auto ind = induced_map(bc, ba, f, Flavor::dR, window);
    auto ha = cohomology(ba, Flavor::dR, window);
    rep.surjective = true;
    for (int k = 0; k <= window; ++k) {
        int target = ha.dim_total(k);
        auto it = ind.find({k, 0});
        int rk = it == ind.end() ? 0 : rank(it->second);
        if (rk != target) rep.surjective = false;
    }
    return rep;
}

}  // namespace pluri
