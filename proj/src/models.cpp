#include "pluri/models.hpp"

#include <algorithm>

namespace pluri {

namespace {

std::shared_ptr<Algebra> widened(const Algebra& a, int trunc) {
    auto c = std::make_shared<Algebra>(a);
    if (c->truncation() < trunc) c->set_truncation(trunc);
    return c;
}

std::vector<long> series_mul(const std::vector<long>& a, const std::vector<long>& b, int N) {
    std::vector<long> out(N + 1, 0);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) out[i + j] += a[i] * b[j];
    return out;
}

}  // namespace

/* degree -> dimension of the cohomology of a singly graded (or totalized) algebra */
Quotient dga_cohomology(const Algebra& a, int k) {
    Bicomplex b = a.underlying_bicomplex(k);
    auto h = cohomology(b, Flavor::dR, k);
    auto it = h.spaces.find({k, 0});
    return it == h.spaces.end() ? Quotient() : it->second;
}

/* induced map on H^k of a dga morphism, in representative coordinates */
LinearMap dga_induced(const Morphism& f, int k) {
    Bicomplex bs = f.src->underlying_bicomplex(k), bt = f.dst->underlying_bicomplex(k);
    BicomplexMap m = f.bicomplex_map(bs, bt, k);
    auto ind = induced_map(bs, bt, m, Flavor::dR, k);
    auto hs = cohomology(bs, Flavor::dR, k), ht = cohomology(bt, Flavor::dR, k);
    auto it = ind.find({k, 0});
    if (it != ind.end()) return it->second;
    return LinearMap(hs.dim_total(k), ht.dim_total(k));
}

/* first degree <= through where H(f) is not bijective; nullopt if none */
std::optional<int> dga_qiso_failure(const Morphism& f, int through) {
    for (int k = 0; k <= through; ++k) {
        LinearMap m = dga_induced(f, k);
        if (m.src != m.dst || rank(m) != m.src) return k;
    }
    return std::nullopt;
}

bool decomposable(const Element& x) {
    for (const auto& [m, c] : x.terms) {
        int len = 0;
        for (auto e : m.e) len += e;
        if (len <= 1) return false;
    }
    return true;
}

Element linear_part(const Element& x) {
    Element out;
    for (const auto& [m, c] : x.terms) {
        int len = 0;
        for (auto e : m.e) len += e;
        if (len == 1) out.add_term(m, c);
    }
    return out;
}

/* ---- minimal model ---- */

MinimalModel minimal_model(const Algebra& a0, int N) {
    if (a0.bigraded()) throw AlgebraError("minimal_model expects a singly graded cdga");
    MinimalModel mm;
    mm.target = widened(a0, N + 2);
    const Algebra& A = *mm.target;
    auto M = std::make_shared<Algebra>(false, N + 2);
    M->set_field(A.field());
    mm.model = M;

    auto h0 = dga_cohomology(A, 0);
    if (h0.dim() != 1) throw AlgebraError("H^0 is not one-dimensional");
    auto h1 = dga_cohomology(A, 1);
    if (h1.dim() != 0)
        throw AlgebraError("not simply connected: H^1 contains the class of " + A.str(A.from_coords(h1.reps()[0], {1, 0})));

    auto add = [&](int k, const Element& dv, const Element& img, const char* why) {
        int idx = M->add_generator("v" + std::to_string(k) + "_" + std::to_string(mm.by_degree[k].size() + 1), k);
        M->set_d(idx, dv);
        mm.images.push_back(img);
        mm.by_degree[k].push_back(idx);
        mm.log.push_back(std::string(why) + " " + M->gen(idx).name + ": d = " + M->str(dv) + ", image " + A.str(img));
    };

    for (int k = 2; k < N; ++k) {
        // (a) closed generators onto the cokernel of H^k
        {
            auto hk = dga_cohomology(A, k);
            LinearMap ind = dga_induced(mm.morphism(), k);
            Echelon img;
            for (const auto& c : ind.cols) img.insert(c);
            for (int j = 0; j < hk.dim(); ++j)
                if (img.insert(vec::unit(j))) add(k, Element{}, A.from_coords(hk.reps()[j], {k, 0}), "closed");
        }
        // (b) kill the kernel of H^{k+1}
        {
            Morphism f = mm.morphism();
            auto hs = dga_cohomology(*M, k + 1);
            LinearMap ind = dga_induced(f, k + 1);
            LinearMap dA = A.del_matrix({k, 0});
            std::vector<std::pair<Element, Element>> kills;
            for (const auto& c : kernel(ind)) {
                SparseVec z;
                for (const auto& [j, s] : c) z = vec::axpy(z, s, hs.reps()[j]);
                Element ze = M->from_coords(z, {k + 1, 0});
                SparseVec fz = A.coords(f.apply(ze), {k + 1, 0});
                auto sol = solve(dA, fz);
                if (!sol.solution) throw AlgebraError("internal: kernel class with non-exact image in degree " + std::to_string(k + 1));
                kills.emplace_back(ze, A.from_coords(*sol.solution, {k, 0}));
            }
            for (const auto& [z, a] : kills) add(k, z, a, "kill");
        }
    }
    auto fail = dga_qiso_failure(mm.morphism(), N - 1);
    mm.certified = fail ? *fail - 1 : N - 1;
    if (!fail) {
        LinearMap top = dga_induced(mm.morphism(), N);
        if (rank(top) != top.src) mm.certified = N - 2;
    }
    for (int g = 0; g < M->ngens(); ++g)
        if (!decomposable(M->del_of(g))) throw AlgebraError("internal: non-decomposable differential on " + M->gen(g).name);
    return mm;
}

/* ---- regular sequences and Koszul models ---- */

RegularSequenceReport is_regular_sequence(const Algebra& a, int N) {
    RegularSequenceReport rep;
    rep.N = N;
    for (const auto& g : a.gens())
        if (g.odd()) throw AlgebraError("generator " + g.name + " is odd; a polynomial ring is required");
    for (const auto& r : a.relations()) {
        auto b = r.bideg();
        if (!b) throw AlgebraError("relation is not homogeneous");
        rep.degrees.push_back(b->first + b->second);
    }
    auto q = widened(a, N);
    for (int k = 0; k <= N; ++k) {
        long s = 0;
        for (const auto& b : q->bidegrees(k)) s += q->dim(b);
        rep.quotient.push_back(s);
    }
    std::vector<long> poly(N + 1, 0);
    poly[0] = 1;
    for (const auto& g : a.gens()) {
        std::vector<long> geo(N + 1, 0);
        for (int k = 0; k <= N; k += g.degree()) geo[k] = 1;
        poly = series_mul(poly, geo, N);
    }
    for (int d : rep.degrees) {
        std::vector<long> f(N + 1, 0);
        f[0] = 1;
        if (d <= N) f[d] = -1;
        poly = series_mul(poly, f, N);
    }
    rep.product = poly;
    rep.verdict = true;
    for (int k = 0; k <= N; ++k)
        if (rep.quotient[k] != rep.product[k]) {
            rep.verdict = false;
            rep.first_mismatch = k;
            break;
        }
    return rep;
}

KoszulModel koszul_model(const Algebra& h, int N) {
    KoszulModel km;
    const int through = N - 1;
    if (h.bigraded()) throw AlgebraError("koszul_model expects a singly graded algebra");
    auto rs = is_regular_sequence(h, through + 2);
    if (!rs.verdict)
        throw AlgebraError("relations are not a regular sequence (Hilbert series differ in degree " +
                           std::to_string(*rs.first_mismatch) + ")");
    km.target = widened(h, through + 2);
    auto K = std::make_shared<Algebra>(false, through + 2);
    K->set_field(h.field());
    for (const auto& g : h.gens()) {
        K->add_generator(g.name, g.p);
        km.images.push_back(km.target->g(g.name));
    }
    for (size_t j = 0; j < h.relations().size(); ++j) {
        const Element& r = h.relations()[j];
        int idx = K->add_generator("p" + std::to_string(j + 1), r.bideg()->first - 1);
        K->set_d(idx, r);  // generator indices of K agree with those of h
        km.images.emplace_back();
    }
    km.model = K;
    auto v = K->validate();
    if (!v.ok) throw AlgebraError("Koszul model invalid: " + v.witness);
    auto fail = dga_qiso_failure(km.morphism(), through);
    km.through = through;
    km.verified = !fail;
    if (fail) km.failure = "H(K) -> H is not bijective in degree " + std::to_string(*fail);
    return km;
}

KoszulModel bigraded_koszul_model(const Algebra& h, int N) {
    KoszulModel km;
    const int through = N - 1;
    if (!h.bigraded()) throw AlgebraError("bigraded_koszul_model expects a bigraded algebra");
    for (const auto& g : h.gens())
        if (g.p != g.q) throw AlgebraError("generator " + g.name + " is not of diagonal bidegree");
    for (const auto& r : h.relations()) {
        auto b = r.bideg();
        if (!b || b->first != b->second) throw AlgebraError("relation " + h.str(r) + " is not of pure diagonal bidegree");
        if (!h.reduce(h.sigma(r) - r).is_zero() && h.has_real_structure())
            throw AlgebraError("relation " + h.str(r) + " is not real");
    }
    // singly graded shadow for the regularity test
    Algebra flat(false, through + 2);
    for (const auto& g : h.gens()) flat.add_generator(g.name, g.degree());
    for (const auto& r : h.relations()) {
        Element fr;
        for (const auto& [m, c] : r.terms) {
            Mono fm = m;
            fm.p = m.p + m.q;
            fm.q = 0;
            fr.add_term(fm, c);
        }
        flat.add_relation(fr);
    }
    auto rs = is_regular_sequence(flat, through + 2);
    if (!rs.verdict)
        throw AlgebraError("relations are not a regular sequence (Hilbert series differ in degree " +
                           std::to_string(*rs.first_mismatch) + ")");
    km.target = widened(h, through + 2);
    auto K = std::make_shared<Algebra>(true, through + 2);
    K->set_field(join(h.field(), FieldTag::Qi));
    K->set_real_structure(true);
    for (const auto& g : h.gens()) {
        K->add_generator(g.name, g.p, g.q, g.weight);
        km.images.push_back(km.target->g(g.name));
    }
    const Scalar I = Scalar::imag_unit();
    for (size_t j = 0; j < h.relations().size(); ++j) {
        const Element& r = h.relations()[j];
        auto [a, b] = *r.bideg();
        int w = 0;
        for (const auto& [m, c] : r.terms) w = std::max(w, m.w);
        std::string n = "P" + std::to_string(j + 1);
        int P = K->add_generator(n, a - 1, b - 1, w);
        int dP = K->add_generator("d" + n, a, b - 1, w);
        int dbP = K->add_generator("db" + n, a - 1, b, w);
        K->pair_generators(dP, dbP);
        K->set_del(P, K->g(dP));
        K->set_delbar(P, K->g(dbP));
        // i del delbar P = R: del(dbP) = -i R, delbar(dP) = i R
        K->set_del(dbP, r.scaled(-I));
        K->set_delbar(dP, r.scaled(I));
        for (int k = 0; k < 3; ++k) km.images.emplace_back();
    }
    km.model = K;
    auto v = K->validate();
    if (!v.ok) throw AlgebraError("bigraded Koszul model invalid: " + v.witness);
    Bicomplex bs = K->underlying_bicomplex(through), bt = km.target->underlying_bicomplex(through);
    auto q = is_pluripotential_qiso(bs, bt, km.morphism().bicomplex_map(bs, bt, through), through);
    km.through = through;
    km.verified = q.verdict;
    if (!q.verdict) {
        km.failure = "not a pluripotential quasi-isomorphism at";
        for (const auto& [fl, b] : q.failures)
            km.failure += " " + to_string(fl) + "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
    }
    return km;
}

/* ---- homotopy ---- */

namespace {

HomotopyData linear_data(const Algebra& w, bool bigraded) {
    HomotopyData hd;
    hd.bigraded = bigraded;
    std::map<int, int> pos;  // generator -> index inside its bidegree
    for (int g = 0; g < w.ngens(); ++g) {
        Bideg b = w.gen(g).bideg();
        pos[g] = static_cast<int>(hd.basis[b].size());
        hd.basis[b].push_back(g);
    }
    for (const auto& [b, gs] : hd.basis) {
        hd.linear.dims[b] = static_cast<int>(gs.size());
        for (int g : gs) hd.generators.push_back(g);
    }
    auto fill = [&](std::map<Bideg, LinearMap>& tab, Bideg src, Bideg dst, int col, const Element& lin) {
        if (lin.is_zero()) return;
        auto it = tab.find(src);
        if (it == tab.end()) it = tab.emplace(src, LinearMap(hd.linear.dim(src), hd.linear.dim(dst))).first;
        for (const auto& [m, c] : lin.terms) {
            int g = static_cast<int>(std::find(m.e.begin(), m.e.end(), 1) - m.e.begin());
            it->second.cols[col] = vec::add(it->second.cols[col], SparseVec{{pos.at(g), c}});
        }
    };
    for (int g = 0; g < w.ngens(); ++g) {
        Bideg b = w.gen(g).bideg();
        fill(hd.linear.del, b, {b.first + 1, b.second}, pos[g], linear_part(w.del_of(g)));
        if (bigraded) fill(hd.linear.delbar, b, {b.first, b.second + 1}, pos[g], linear_part(w.delbar_of(g)));
    }
    if (bigraded && w.has_real_structure()) {
        std::map<Bideg, LinearMap> s;
        for (const auto& [b, gs] : hd.basis) {
            Bideg t{b.second, b.first};
            LinearMap m(static_cast<int>(gs.size()), hd.linear.dim(t));
            for (size_t j = 0; j < gs.size(); ++j) {
                int partner = w.gen(gs[j]).partner < 0 ? gs[j] : w.gen(gs[j]).partner;
                m.cols[j] = {{pos.at(partner), Scalar(1)}};
            }
            s[b] = m;
        }
        hd.linear.sigma = s;
    }
    return hd;
}

}  // namespace

HomotopyData homotopy(const Algebra& m) {
    if (m.bigraded()) throw AlgebraError("homotopy expects a singly graded minimal algebra");
    if (!m.relations().empty()) throw AlgebraError("homotopy expects a free algebra");
    for (int g = 0; g < m.ngens(); ++g)
        if (!decomposable(m.del_of(g))) throw AlgebraError("not minimal: d(" + m.gen(g).name + ") has a linear term");
    return linear_data(m, false);
}

HomotopyData homotopy_bicomplex(const Algebra& w) {
    if (!w.bigraded()) throw AlgebraError("homotopy_bicomplex expects a bigraded algebra");
    if (!w.relations().empty()) throw AlgebraError("homotopy_bicomplex expects a free algebra");
    for (int g = 0; g < w.ngens(); ++g) {
        Element x = w.g(g);
        if (!decomposable(w.del(w.delbar(x))))
            throw AlgebraError("not minimal: del delbar(" + w.gen(g).name + ") has a linear term");
    }
    HomotopyData hd = linear_data(w, true);
    if (auto err = hd.linear.check()) throw AlgebraError("linear parts do not form a bicomplex: " + *err);
    return hd;
}

/* ---- Massey products ---- */

MasseyResult triple_massey(const Algebra& a0, const Element& u, const Element& v, const Element& w) {
    MasseyResult res;
    auto deg = [](const Element& x) -> int {
        auto b = x.bideg();
        return b ? b->first + b->second : -1;
    };
    int du = deg(u), dv = deg(v), dw = deg(w);
    if (u.is_zero() || v.is_zero() || w.is_zero()) {
        res.defined = true;
        res.vanishes = true;
        return res;
    }
    if (du < 0 || dv < 0 || dw < 0) throw AlgebraError("Massey product arguments must be homogeneous");
    int n = du + dv + dw - 1;
    Algebra a = a0.bigraded() ? totalize(a0) : a0;
    if (a.truncation() < n + 2) a.set_truncation(n + 2);
    auto conv = [&](const Element& x) {
        if (!a0.bigraded()) return x;
        Element y;
        for (const auto& [m, c] : x.terms) {
            Mono t = m;
            t.p = m.p + m.q;
            t.q = 0;
            y.add_term(t, c);
        }
        return y;
    };
    Element U = conv(u), V = conv(v), W = conv(w);
    for (const auto* x : {&U, &V, &W})
        if (!a.reduce(a.d(*x)).is_zero()) throw AlgebraError("Massey product arguments must be closed");
    auto bound = [&](const Element& x, int k) -> std::optional<Element> {
        if (a.reduce(x).is_zero()) return Element{};
        auto sol = solve(a.del_matrix({k - 1, 0}), a.coords(x, {k, 0}));
        if (!sol.solution) return std::nullopt;
        return a.from_coords(*sol.solution, {k - 1, 0});
    };
    auto s = bound(a.mul(U, V), du + dv);
    if (!s) {
        res.failure = "the product of the first two classes is not exact: " + a.str(a.reduce(a.mul(U, V)));
        return res;
    }
    auto t = bound(a.mul(V, W), dv + dw);
    if (!t) {
        res.failure = "the product of the last two classes is not exact: " + a.str(a.reduce(a.mul(V, W)));
        return res;
    }
    res.defined = true;
    Element rep = a.mul(*s, W);
    Element ut = a.mul(U, *t);
    rep = du % 2 ? rep + ut : rep - ut;
    rep = a.reduce(rep);
    // indeterminacy u H^{|v|+|w|-1} + H^{|u|+|v|-1} w
    std::vector<Element> ind;
    Quotient hvw = dga_cohomology(a, dv + dw - 1), huv = dga_cohomology(a, du + dv - 1);
    for (const auto& r : hvw.reps()) ind.push_back(a.reduce(a.mul(U, a.from_coords(r, {dv + dw - 1, 0}))));
    for (const auto& r : huv.reps()) ind.push_back(a.reduce(a.mul(a.from_coords(r, {du + dv - 1, 0}), W)));
    // vanishing: rep in span(indeterminacy) + exact
    LinearMap dm = a.del_matrix({n - 1, 0});
    LinearMap span(dm.src + static_cast<int>(ind.size()), a.dim({n, 0}));
    for (int j = 0; j < dm.src; ++j) span.cols[j] = dm.cols[j];
    for (size_t j = 0; j < ind.size(); ++j) span.cols[dm.src + j] = a.coords(ind[j], {n, 0});
    res.vanishes = solve(span, a.coords(rep, {n, 0})).solution.has_value();
    auto back = [&](const Element& x) {
        if (!a0.bigraded()) return x;
        Element y;  // total degree only; bidegree information is not recoverable in general
        for (const auto& [m, c] : x.terms) {
            Mono t = m;
            int p = 0, q = 0;
            for (size_t g = 0; g < m.e.size(); ++g) p += a0.gen(g).p * m.e[g], q += a0.gen(g).q * m.e[g];
            t.p = p;
            t.q = q;
            y.add_term(t, c);
        }
        return y;
    };
    res.representative = back(rep);
    for (auto& x : ind) res.indeterminacy.push_back(back(x));
    return res;
}

}  // namespace pluri
