#include "pluri/replication.hpp"

#include <cstdlib>

#include "pluri/io.hpp"
#include "pluri/toric.hpp"

namespace pluri {

namespace {

const Scalar I = Scalar::imag_unit();
const Scalar HALF(1, 2);

void check(std::vector<CheckLine>& cs, const std::string& name, bool ok, const std::string& detail = "") {
    cs.push_back({name, ok, detail});
}

void add_H_relations(Algebra& h) {
    for (const char* r : {"alpha^2", "x*alpha", "y*alpha", "x*y", "x*beta", "y*beta", "beta^2", "alpha*beta - x^3",
                          "x^3 - y^3"})
        h.add_relation(h.parse(r));
}

/* generators of degree <= maxdeg with their differentials (generators are ordered by degree) */
Algebra prefix_algebra(const Algebra& a, int maxdeg, FieldTag field) {
    Algebra out(a.bigraded(), a.truncation());
    out.set_field(join(a.field(), field));
    out.set_real_structure(a.has_real_structure());
    int n = 0;
    for (const auto& g : a.gens()) {
        if (g.degree() > maxdeg) break;
        out.add_generator(g.name, g.p, g.q, g.weight);
        ++n;
    }
    for (int g = 0; g < n; ++g) {
        if (a.gen(g).partner >= 0 && a.gen(g).partner > g) out.pair_generators(g, a.gen(g).partner);
        out.set_del(g, a.del_of(g));
        if (a.bigraded()) out.set_delbar(g, a.delbar_of(g));
    }
    return out;
}

/* morphism sending the named generators to the same names in dst, the rest to 0 */
std::vector<Element> by_name(const Algebra& src, const Algebra& dst, const std::vector<std::string>& names) {
    std::vector<Element> im(src.ngens());
    for (const auto& n : names)
        if (auto j = src.find(n)) im[*j] = dst.g(n);
    return im;
}

const std::vector<std::string> kHGens{"alpha", "x", "y", "beta"};

/* rank of the union equals both ranks */
bool same_span(const std::vector<SparseVec>& a, const std::vector<SparseVec>& b) {
    std::vector<SparseVec> u = a;
    u.insert(u.end(), b.begin(), b.end());
    int r = rank_of(u);
    return r == rank_of(a) && r == rank_of(b);
}


}  // namespace

bool all_ok(const std::vector<CheckLine>& cs) {
    for (const auto& c : cs)
        if (!c.ok) return false;
    return true;
}

std::string fixture_dir() {
    if (const char* e = std::getenv("PLURI_FIXTURES")) return e;
    return PLURI_FIXTURE_DIR;
}

Algebra build_H(int truncation) {
    Algebra h(false, truncation);
    for (const char* n : {"alpha", "x", "y"}) h.add_generator(n, 2);
    h.add_generator("beta", 4);
    add_H_relations(h);
    return h;
}

Algebra build_H_complex(int truncation) {
    Algebra h(true, truncation);
    h.set_field(FieldTag::Qi);
    h.set_real_structure(true);
    for (const char* n : {"alpha", "x", "y"}) h.add_generator(n, 1, 1);
    h.add_generator("beta", 2, 2);
    add_H_relations(h);
    return h;
}

Algebra load_lambda_V() { return load_algebra(fixture_dir() + "/lambda_V.alg"); }
Algebra load_lambda_W() { return load_algebra(fixture_dir() + "/lambda_W.alg"); }

std::vector<Element> listed_cocycles(const Algebra& V) {
    std::vector<Element> out;
    for (int i = 1; i <= 11; ++i) out.push_back(V.del_of(V.index("q" + std::to_string(i))));
    return out;
}

/* ---- Lambda V ---- */

VReport build_V(int N) {
    VReport rep;
    auto& cs = rep.checks;
    Algebra H = build_H(N + 2);
    rep.computed = minimal_model(H, N);
    const Algebra& M = *rep.computed.model;
    const Algebra& Ht = *rep.computed.target;
    for (int k = 2; k < N; ++k) rep.dims[k] = static_cast<int>(rep.computed.by_degree[k].size());
    const std::map<int, int> expect{{2, 3}, {3, 4}, {4, 5}, {5, 11}};
    for (const auto& [k, d] : expect)
        if (k < N) check(cs, "dim V^" + std::to_string(k) + " = " + std::to_string(d), rep.dims[k] == d,
                         "computed " + std::to_string(rep.dims[k]));

    const auto& v2 = rep.computed.by_degree[2];
    const auto& v3 = rep.computed.by_degree[3];
    const auto& v4 = rep.computed.by_degree[4];
    bool closed2 = true;
    for (int g : v2) closed2 = closed2 && M.del_of(g).is_zero();
    check(cs, "V^2 consists of closed generators", closed2);

    // model elements mapping to alpha, x, y
    LinearMap T(static_cast<int>(v2.size()), Ht.dim({2, 0}));
    for (size_t j = 0; j < v2.size(); ++j) T.cols[j] = Ht.coords(rep.computed.images[v2[j]], {2, 0});
    std::map<std::string, Element> hat;
    for (const char* n : {"alpha", "x", "y"}) {
        auto sol = solve(T, Ht.coords(Ht.g(n), {2, 0}));
        Element e;
        if (sol.solution)
            for (const auto& [j, c] : *sol.solution) e = e + M.g(v2[j]).scaled(c);
        hat[n] = e;
    }
    auto cM = [&](const Element& x, int k) { return M.coords(x, {k, 0}); };
    const Element &al = hat["alpha"], &xx = hat["x"], &yy = hat["y"];
    std::vector<SparseVec> d3, quad{cM(M.mul(al, al), 4), cM(M.mul(xx, al), 4), cM(M.mul(yy, al), 4), cM(M.mul(xx, yy), 4)};
    for (int g : v3) d3.push_back(cM(M.del_of(g), 4));
    check(cs, "d(V^3) spans <alpha^2, x alpha, y alpha, x y>", same_span(d3, quad));

    // a, b, c, e with da = alpha^2, db = x alpha, dc = y alpha, de = x y
    LinearMap d3m = M.del_matrix({3, 0});
    std::vector<Element> abce;
    for (const auto& q : quad) {
        auto sol = solve(d3m, q);
        abce.push_back(sol.solution ? M.from_coords(*sol.solution, {3, 0}) : Element{});
    }
    const Element &a = abce[0], &b = abce[1], &c = abce[2], &e = abce[3];
    std::vector<SparseVec> ms{cM(M.mul(xx, a) - M.mul(al, b), 5), cM(M.mul(yy, a) - M.mul(al, c), 5),
                              cM(M.mul(yy, b) - M.mul(al, e), 5), cM(M.mul(xx, c) - M.mul(al, e), 5)};
    std::vector<SparseVec> d4;
    int closed4 = 0;
    for (int g : v4) {
        if (M.del_of(g).is_zero()) ++closed4;
        else d4.push_back(cM(M.del_of(g), 5));
    }
    check(cs, "V^4 has exactly one closed generator", closed4 == 1, std::to_string(closed4) + " closed");
    check(cs, "d(V^4) spans <m_1, m_2, m_3, m_4>", same_span(d4, ms));

    // the shipped model: listed cocycles against the kernel of H^6(phi) on Lambda V^{<=4}
    Algebra V = load_lambda_V();
    Algebra V4 = prefix_algebra(V, 4, FieldTag::Q);
    V4.set_truncation(8);
    Algebra H8 = build_H(8);
    Morphism phi{&V4, &H8, by_name(V4, H8, kHGens)};
    auto mr = check_morphism(phi);
    check(cs, "shipped phi: Lambda V^{<=4} -> H is a cdga morphism", mr.ok, mr.witness);
    auto vs = listed_cocycles(V);
    bool closed = true, in_prefix = true;
    for (const auto& v : vs) {
        for (const auto& [m, c] : v.terms)
            if (m.e.size() > static_cast<size_t>(V4.ngens())) in_prefix = false;
        closed = closed && V4.reduce(V4.d(v)).is_zero();
    }
    check(cs, "v_1..v_11 lie in Lambda V^{<=4}", in_prefix);
    check(cs, "v_1..v_11 are closed", closed);
    Quotient h6 = dga_cohomology(V4, 6);
    LinearMap ind = dga_induced(phi, 6);
    rep.kernel_dim = static_cast<int>(kernel(ind).size());
    std::vector<SparseVec> cls;
    bool in_kernel = true, nonexact = true;
    for (const auto& v : vs) {
        auto cc = h6.coords(V4.coords(v, {6, 0}));
        if (!cc) continue;
        if (cc->empty()) nonexact = false;
        if (!ind.apply(*cc).empty()) in_kernel = false;
        cls.push_back(*cc);
    }
    check(cs, "v_1..v_11 are non-exact", nonexact && cls.size() == 11);
    check(cs, "[v_1..v_11] are linearly independent", rank_of(cls) == 11, "rank " + std::to_string(rank_of(cls)));
    check(cs, "[v_1..v_11] lie in ker H^6(phi)", in_kernel);
    check(cs, "dim ker H^6(phi) = 11", rep.kernel_dim == 11, "computed " + std::to_string(rep.kernel_dim));

    // the computed model agrees with the shipped one in cohomology of the degree <= 4 part
    Algebra M4 = prefix_algebra(M, 4, FieldTag::Q);
    M4.set_truncation(8);
    bool same = true;
    for (int k = 0; k <= 6; ++k) same = same && dga_cohomology(M4, k).dim() == dga_cohomology(V4, k).dim();
    check(cs, "computed and shipped Lambda V^{<=4} have equal cohomology through degree 6", same);

    // the shipped model is a quasi-isomorphism through degree 5, injective in degree 6
    Algebra V8 = V;
    V8.set_truncation(8);
    Morphism phi_full{&V8, &H8, by_name(V8, H8, kHGens)};
    auto qf = dga_qiso_failure(phi_full, 5);
    LinearMap top = dga_induced(phi_full, 6);
    check(cs, "shipped phi is a quasi-isomorphism through degree 5", !qf,
          qf ? "fails in degree " + std::to_string(*qf) : "");
    check(cs, "shipped phi is injective on H^6", rank(top) == top.src);
    rep.ok = all_ok(cs);
    return rep;
}

Morphism build_psi(const Algebra& V, const Algebra& H, const Scalar& lambda, bool mutate_xi) {
    Morphism f{&V, &H, by_name(V, H, kHGens)};
    auto set = [&](const char* g, const Element& x) {
        if (auto j = V.find(g)) f.images[*j] = x.scaled(lambda);
    };
    Element y2 = H.pow(H.g("y"), 2), x2 = H.pow(H.g("x"), 2), be = H.g("beta");
    set("p1", mutate_xi ? y2 : -y2);
    set("p2", -x2);
    set("p3", be);
    set("p4", be);
    return f;
}

/* ---- Lambda W ---- */

WReport build_W(int window) {
    WReport rep;
    auto& cs = rep.checks;
    Algebra W = load_lambda_W();
    auto v = W.validate();
    check(cs, "Lambda W is a valid real cbba", v.ok, v.witness);
    auto Hc = build_H_complex(std::max(8, window + 2));
    if (W.truncation() < window + 2) W.set_truncation(window + 2);
    Morphism Phi{&W, &Hc, by_name(W, Hc, kHGens)};
    auto mr = check_morphism(Phi, true);
    check(cs, "Phi: Lambda W -> H (x) C commutes with del, delbar and sigma", mr.ok, mr.witness);
    if (!v.ok || !mr.ok) return rep;
    Bicomplex bs = W.underlying_bicomplex(window), bt = Hc.underlying_bicomplex(window);
    auto q = is_pluripotential_qiso(bs, bt, Phi.bicomplex_map(bs, bt, window), window);
    for (int w = 0; w <= window; ++w) rep.qiso_by_window[w] = true;
    std::string where;
    for (const auto& [fl, b] : q.failures) {
        for (int w = b.first + b.second; w <= window; ++w) rep.qiso_by_window[w] = false;
        where += " " + to_string(fl) + "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
    }
    check(cs, "Phi is a pluripotential quasi-isomorphism on the window of total degree <= " + std::to_string(window),
          q.verdict, q.verdict ? "" : "fails at" + where);
    rep.ok = all_ok(cs);
    return rep;
}

ModelCompletion complete_lambda_W(int window) {
    Algebra W = load_lambda_W();
    Algebra Hc = build_H_complex(std::max(8, window + 2));
    return complete_pluripotential_model(W, Hc, by_name(W, Hc, kHGens), window);
}

PsiTilde build_psi_tilde(const Scalar& lambda) {
    PsiTilde pt;
    pt.source = prefix_algebra(load_lambda_V(), 4, join(FieldTag::Q, lambda.tag()));
    pt.source.set_truncation(8);
    pt.target = totalize(load_lambda_W());
    pt.target.set_field(join(FieldTag::Qi, lambda.tag()));
    const Algebra& S = pt.source;
    const Algebra& T = pt.target;
    pt.images = by_name(S, T, kHGens);
    auto dc = [&](const std::string& n) { return (T.g("db" + n) - T.g("d" + n)).scaled(I * HALF); };
    const char* up[] = {"A", "B", "C", "E"};
    const char* low[] = {"a", "b", "c", "e"};
    for (int j = 0; j < 4; ++j) pt.images[S.index(low[j])] = dc(up[j]);
    Element y2 = T.pow(T.g("y"), 2), x2 = T.pow(T.g("x"), 2), be = T.g("beta");
    pt.images[S.index("p1")] = T.g("R1").scaled(HALF) - y2.scaled(lambda);
    pt.images[S.index("p2")] = T.g("R2").scaled(HALF) - x2.scaled(lambda);
    pt.images[S.index("p3")] = T.g("R3").scaled(HALF) + be.scaled(lambda);
    pt.images[S.index("p4")] = T.g("R4").scaled(HALF) + be.scaled(lambda);
    return pt;
}

/* ---- obstruction ---- */

namespace {

struct Pi4W {
    HomotopyData hd;
    Quotient dr;                         // dR classes in total degree 4 with reps beta, R1..R4 first
    std::vector<std::string> names;      // of the reps
    std::map<int, std::pair<Bideg, int>> where;  // generator -> (bidegree, position)
};

Pi4W pi4_of_W(const Algebra& W, std::vector<CheckLine>& cs) {
    Pi4W p;
    p.hd = homotopy_bicomplex(W);
    const Bicomplex& L = p.hd.linear;
    for (const auto& [b, gs] : p.hd.basis)
        for (size_t j = 0; j < gs.size(); ++j) p.where[gs[j]] = {b, static_cast<int>(j)};
    auto total = [&](int g) { return L.embed(p.where.at(g).first, vec::unit(p.where.at(g).second)); };
    std::vector<SparseVec> num;
    for (const char* n : {"beta", "R1", "R2", "R3", "R4"}) {
        num.push_back(total(W.index(n)));
        p.names.push_back(n);
    }
    for (const auto& z : kernel(L.d_total(4))) num.push_back(z);
    LinearMap d3 = L.d_total(3);
    p.dr = Quotient(num, d3.cols);
    bool first = p.dr.dim() == 5;
    for (int j = 0; first && j < 5; ++j) first = p.dr.reps()[j] == num[j];
    check(cs, "pi^4_dR(Lambda W) = <[beta], [R_1], .., [R_4]>", first, "dim " + std::to_string(p.dr.dim()));
    return p;
}

}  // namespace

ObstructionReport obstruction(const Scalar& lambda) {
    ObstructionReport rep;
    rep.lambda = lambda;
    auto& cs = rep.checks;
    PsiTilde pt = build_psi_tilde(lambda);
    auto mr = check_morphism(pt.map());
    check(cs, "psi-tilde is a cdga morphism on Lambda V^{<=4}", mr.ok, mr.witness);

    // H(Phi o psi-tilde) = H(phi) through degree 5, for this lambda and for lambda = 0
    Algebra Ht = build_H(8);
    Ht.set_field(join(FieldTag::Qi, lambda.tag()));
    auto compose = [&](const PsiTilde& p) {
        Morphism Phi{&p.target, &Ht, by_name(p.target, Ht, kHGens)};
        std::vector<Element> im;
        for (const auto& x : p.images) im.push_back(Phi.apply(x));
        return im;
    };
    auto im_l = compose(pt);
    PsiTilde p0 = build_psi_tilde(Scalar(0));
    auto im_0 = compose(p0);
    Morphism comp{&pt.source, &Ht, im_l}, comp0{&pt.source, &Ht, im_0}, phi{&pt.source, &Ht, by_name(pt.source, Ht, kHGens)};
    bool ident = true, same0 = true;
    for (int k = 0; k <= 5; ++k) {
        LinearMap a = dga_induced(comp, k), b = dga_induced(phi, k), c = dga_induced(comp0, k);
        ident = ident && a.cols == b.cols;
        same0 = same0 && a.cols == c.cols;
    }
    check(cs, "H(psi-tilde) is the identity through degree 5", ident);
    check(cs, "psi-tilde at lambda and at 0 induce the same map on H", same0);

    // pi^4 of Lambda V: the indecomposables of degree 4
    const Algebra& V = pt.source;
    HomotopyData hv = homotopy(V);
    for (int g : hv.basis[{4, 0}]) rep.pi4_V_basis.push_back(V.gen(g).name);
    check(cs, "pi^4(Lambda V) = <beta, p_1, .., p_4>",
          rep.pi4_V_basis == std::vector<std::string>{"beta", "p1", "p2", "p3", "p4"});

    Algebra W = load_lambda_W();
    Pi4W pw = pi4_of_W(W, cs);
    rep.pi4_W_basis = pw.names;

    // induced map on pi^4: linear parts of the images, read in the W basis
    for (int g : hv.basis[{4, 0}]) {
        Element lin = linear_part(pt.images[g]);
        SparseVec tot;
        for (const auto& [m, c] : lin.terms) {
            int gen = 0;
            while (m.e[gen] == 0) ++gen;
            auto [b, pos] = pw.where.at(gen);
            tot = vec::axpy(tot, c, pw.hd.linear.embed(b, vec::unit(pos)));
        }
        auto cc = pw.dr.coords(tot);
        std::vector<Scalar> col(5);
        if (cc)
            for (const auto& [j, c] : *cc) col[j] = c;
        rep.pi4_matrix.push_back(col);
    }
    rep.coeff_p3 = rep.pi4_matrix[3][0];
    rep.coeff_p4 = rep.pi4_matrix[4][0];
    check(cs, "[beta] maps to [beta]", rep.pi4_matrix[0][0] == Scalar(1));

    // kernel of pi^4_dR -> pi^4_A: components of each class in Aeppli cohomology
    const Bicomplex& L = pw.hd.linear;
    auto ha = cohomology(L, Flavor::A, 4);
    auto layout = L.total_layout(4);
    LinearMap toA(5, 0);
    int off = 0;
    std::vector<std::pair<Bideg, int>> aoff;
    for (const auto& [b, o] : layout) {
        aoff.emplace_back(b, off);
        off += ha.dim(b);
    }
    toA.dst = off;
    for (int j = 0; j < 5; ++j) {
        const SparseVec& r = pw.dr.reps()[j];
        SparseVec img;
        for (size_t t = 0; t < layout.size(); ++t) {
            auto [b, o] = layout[t];
            SparseVec comp = vec::slice(r, o, o + L.dim(b), o);
            auto it = ha.spaces.find(b);
            if (it == ha.spaces.end()) continue;
            auto cc = it->second.coords(comp);
            if (cc) img = vec::add(img, vec::shift(*cc, aoff[t].second));
        }
        toA.cols[j] = img;
    }
    auto ker = kernel(toA);
    std::vector<SparseVec> rs;
    for (int j = 1; j <= 4; ++j) rs.push_back(vec::unit(j));
    bool kr = ker.size() == 4 && same_span(ker, rs);
    for (int j = 1; j <= 4; ++j) rep.kernel_basis.push_back("R" + std::to_string(j));
    check(cs, "ker(pi^4_dR -> pi^4_A) = <[R_1], .., [R_4]>", kr, std::to_string(ker.size()) + "-dimensional");

    check(cs, "Lambda V is defined over Q", V.field() == FieldTag::Q || load_lambda_V().field() == FieldTag::Q);
    rep.obstructed = !is_in_subfield(rep.coeff_p3, FieldTag::Q).member || !is_in_subfield(rep.coeff_p4, FieldTag::Q).member;
    return rep;
}

/* ---- mixed Hodge extension ---- */

MhsReport mhs_extension(const Scalar& lambda) {
    MhsReport rep;
    rep.lambda = lambda;
    auto& cs = rep.checks;
    Algebra H = build_H(8);
    const Bideg d4{4, 0};
    std::vector<SparseVec> all, prods;
    for (int j = 0; j < H.dim(d4); ++j) all.push_back(vec::unit(j));
    for (const char* u : {"alpha", "x", "y"})
        for (const char* w : {"alpha", "x", "y"}) prods.push_back(H.coords(H.mul(H.g(u), H.g(w)), d4));
    Quotient coker(all, prods);
    check(cs, "coker(H^2 (x) H^2 -> H^4) is one-dimensional", coker.dim() == 1);
    auto pr = [&](const Element& x) {
        auto c = coker.coords(H.coords(x, d4));
        return c && !c->empty() ? (*c)[0].second : Scalar(0);
    };
    Scalar pb = pr(H.g("beta"));
    check(cs, "beta is nonzero in the cokernel", !pb.is_zero());
    if (pb.is_zero()) return rep;
    Algebra V = load_lambda_V();
    Morphism xi = build_psi(V, H, Scalar(1));
    for (const char* p : {"p1", "p2", "p3", "p4"}) {
        Element img = xi.images[V.index(p)];
        Scalar c = lambda * (pr(img) / pb);
        rep.cls.push_back(c);
        rep.residue.push_back(is_in_subfield(c, FieldTag::Q).member ? Scalar(0) : c);
    }
    check(cs, "pr xi(p_3) is the class of beta", pr(xi.images[V.index("p3")]) == pb);
    rep.trivial = true;
    for (const auto& r : rep.residue) rep.trivial = rep.trivial && r.is_zero();
    return rep;
}

/* ---- flag manifold ---- */

FlagReport flag_certificate(int N) {
    FlagReport rep;
    auto& cs = rep.checks;
    const int T = N + 2;
    Algebra hq(false, T);
    for (const char* n : {"x1", "x2", "x3"}) hq.add_generator(n, 2);
    Algebra hc(true, T);
    hc.set_field(FieldTag::Qi);
    hc.set_real_structure(true);
    for (const char* n : {"x1", "x2", "x3"}) hc.add_generator(n, 1, 1);
    for (const char* r : {"x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3", "x1*x2*x3"}) {
        hq.add_relation(hq.parse(r));
        hc.add_relation(hc.parse(r));
    }
    auto hs = hilbert_series(hq, 6);
    for (int k = 0; k <= 6; k += 2) rep.betti.push_back(hs[k]);
    check(cs, "Betti numbers 1, 2, 2, 1", rep.betti == std::vector<int>{1, 2, 2, 1});
    bool odd0 = true;
    for (int k = 1; k <= 6; k += 2) odd0 = odd0 && hs[k] == 0;
    check(cs, "odd cohomology vanishes", odd0);

    rep.rational = koszul_model(hq, N);
    check(cs, "rational Koszul model is a quasi-isomorphism through degree " + std::to_string(N - 1),
          rep.rational.verified, rep.rational.failure);
    rep.complex = bigraded_koszul_model(hc, N);
    check(cs, "bigraded Koszul model is a pluripotential quasi-isomorphism through degree " + std::to_string(N - 1),
          rep.complex.verified, rep.complex.failure);
    const Algebra& Kq = *rep.rational.model;
    const Algebra& Kc = *rep.complex.model;
    auto dd = ddbar_property(Kc.underlying_bicomplex(N - 1), N - 1);
    check(cs, "bigraded Koszul model satisfies the ddbar-property through degree " + std::to_string(N - 1), dd.verdict);

    // kappa: K_Q -> totalize(K_C), x_i -> X_i, p_j -> 1/2 d^c P_j
    Algebra Kt = totalize(Kc);
    std::vector<Element> kim(Kq.ngens());
    for (int g = 0; g < Kq.ngens(); ++g) {
        const std::string& n = Kq.gen(g).name;
        if (n[0] == 'x') kim[g] = Kt.g(n);
        else {
            std::string P = "P" + n.substr(1);
            kim[g] = (Kt.g("db" + P) - Kt.g("d" + P)).scaled(I * HALF);
        }
    }
    Morphism kappa{&Kq, &Kt, kim};
    auto mr = check_morphism(kappa);
    check(cs, "K_Q -> K_C is a cdga morphism", mr.ok, mr.witness);

    // the square K_Q -> H_Q -> H_C versus K_Q -> K_C -> H_C, generator by generator
    Algebra Ht = totalize(*rep.complex.target);
    Morphism incl{rep.rational.target.get(), &Ht, by_name(*rep.rational.target, Ht, {"x1", "x2", "x3"})};
    Morphism proj{&Kt, &Ht, by_name(Kt, Ht, {"x1", "x2", "x3"})};
    std::string bad;
    for (int g = 0; g < Kq.ngens(); ++g) {
        Element lhs = incl.apply(rep.rational.images[g]);
        Element rhs = proj.apply(kim[g]);
        if (!Ht.reduce(lhs - rhs).is_zero() && bad.empty()) bad = Kq.gen(g).name;
    }
    check(cs, "the square commutes on generators", bad.empty(), bad.empty() ? "" : "fails on " + bad);
    rep.ok = all_ok(cs);
    return rep;
}

}  // namespace pluri
