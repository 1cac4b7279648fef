// One line per acceptance criterion: "[PASS] criterion N: ..." or "[FAIL] ...".
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "pluri/models.hpp"
#include "pluri/toric.hpp"
#include "support/alg.hpp"

using namespace pluri;

namespace {

struct Verdict {
    bool ok = true;
    std::string detail;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) detail = what;
            ok = false;
        }
    }
};

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<Verdict()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v.ok = false;
        v.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && s > budget_s) v.require(false, "runtime " + std::to_string(s) + " s over budget");
    std::printf("[%s] criterion %d: %s (%.2f s%s)%s%s\n", v.ok ? "PASS" : "FAIL", n, name.c_str(), s,
                budget_s > 0 ? (", budget " + std::to_string(static_cast<int>(budget_s)) + " s").c_str() : "",
                v.detail.empty() ? "" : ": ", v.detail.c_str());
    std::fflush(stdout);
    if (!v.ok) ++failures;
}

void add_checks(Verdict& v, const std::vector<CheckLine>& cs) {
    for (const auto& c : cs) v.require(c.ok, c.name + (c.detail.empty() ? "" : " (" + c.detail + ")"));
}

SparseVec random_vec(gen::Rng& r, int n, bool dense) {
    SparseVec v;
    for (int j = 0; j < n; ++j)
        if (dense || r.coin(0.6)) v.emplace_back(j, gen::nonzero_rational(r, 4));
    return v;
}

/* the same ring presented with generators of type (1,1) over Q(i) */
Algebra diagonal_copy(const Algebra& h) {
    Algebra c(true, h.truncation());
    c.set_field(FieldTag::Qi);
    c.set_real_structure(true);
    for (const auto& g : h.gens()) c.add_generator(g.name, g.p / 2, g.p / 2);
    for (const auto& r : h.relations()) c.add_relation(c.parse(h.str(r)));
    return c;
}

Verdict c1() {
    Verdict v;
    auto rep = build_V(6);
    add_checks(v, rep.checks);
    std::map<int, int> want{{2, 3}, {3, 4}, {4, 5}, {5, 11}};
    for (const auto& [k, n] : want) v.require(rep.dims[k] == n, "dim V^" + std::to_string(k) + " = " + std::to_string(rep.dims[k]));
    v.require(rep.kernel_dim == 11, "degree-6 kernel has dimension " + std::to_string(rep.kernel_dim));
    if (v.ok) v.detail = "V dims 3/4/5/11, v_1..v_11 closed, independent, spanning the 11-dimensional kernel";
    return v;
}

Verdict c2() {
    Verdict v;
    Scalar l = Scalar::lambda();
    auto ob = obstruction(l);
    add_checks(v, ob.checks);
    v.require(ob.coeff_p3 == l, "[beta]-coefficient is " + ob.coeff_p3.str());
    v.require(ob.obstructed, "lambda formal not obstructed");
    for (Scalar x : {Scalar(0), Scalar(7), Scalar(-3, 2)}) {
        auto o = obstruction(x);
        add_checks(v, o.checks);
        v.require(o.coeff_p3 == x, "coefficient at " + x.str() + " is " + o.coeff_p3.str());
        v.require(!o.obstructed, "lambda = " + x.str() + " reported obstructed");
    }
    if (v.ok) v.detail = "coefficient = lambda; obstructed for lambda formal, unobstructed for 0, 7, -3/2";
    return v;
}

Verdict c3() {
    Verdict v;
    std::string row;
    for (Scalar x : {Scalar(0), Scalar(1), Scalar(7), Scalar(-3, 2), Scalar::lambda(),
                     Scalar(2) * Scalar::lambda() + Scalar(1)}) {
        auto m = mhs_extension(x);
        auto o = obstruction(x);
        add_checks(v, m.checks);
        v.require(m.trivial == !o.obstructed, "disagreement at lambda = " + x.str());
        row += (row.empty() ? "" : ", ") + x.str() + (o.obstructed ? ":obstructed" : ":split");
    }
    if (v.ok) v.detail = row;
    return v;
}

Verdict c4() {
    Verdict v;
    auto rep = build_W(6);
    add_checks(v, rep.checks);
    std::string s;
    for (const auto& [w, ok] : rep.qiso_by_window) s += (s.empty() ? "" : " ") + std::to_string(w) + (ok ? ":ok" : ":fail");
    bool six = rep.qiso_by_window.count(6) && rep.qiso_by_window.at(6);
    std::string extra;
    if (!six) {
        auto c = complete_lambda_W(6);
        extra = c.ok ? "; completed model reaches window 6 with " + std::to_string(c.model->ngens()) + " generators"
                     : "; completion also fails: " + c.failure;
    }
    v.require(six, "qiso by window " + s);
    v.detail += extra;
    if (v.ok) v.detail = "valid real cbba; Phi is a pluripotential quasi-isomorphism on windows " + s;
    return v;
}

Verdict c5() {
    Verdict v;
    gen::Rng r(20250505);
    int zig = 0;
    for (int trial = 0; trial < 200; ++trial) {
        auto s = gen::random_sample(r);
        std::string tag = "sample " + std::to_string(trial);
        v.require(!s.b.check(), tag + ": invalid bicomplex");
        auto c = ddbar_property(s.b);
        v.require(c.verdict == c.count_verdict, tag + ": injectivity and counting methods disagree");
        for (Flavor fl : {Flavor::BC, Flavor::A, Flavor::Del, Flavor::Delbar}) {
            auto got = cohomology(s.b, fl).table();
            std::map<Bideg, int> nz;
            for (const auto& [b, n] : got)
                if (n) nz[b] = n;
            auto want = s.expected.bideg.count(fl) ? s.expected.bideg.at(fl) : std::map<Bideg, int>{};
            v.require(nz == want, tag + ": " + to_string(fl) + " table differs from the indecomposable count");
        }
        std::map<int, int> dr;
        for (const auto& [b, n] : cohomology(s.b, Flavor::dR).table())
            if (n) dr[b.first] = n;
        v.require(dr == s.expected.dR, tag + ": de Rham table differs from the indecomposable count");
        for (const auto& sh : s.shapes)
            if (sh.kind == "zigzag") {
                ++zig;
                break;
            }
    }
    if (v.ok) v.detail = "200 samples (" + std::to_string(zig) + " containing zigzags): methods agree, tables match";
    return v;
}

Verdict c6() {
    Verdict v;
    std::string row;
    for (const char* f : {"cp1.fan", "cp2.fan", "cp1xcp1.fan", "cp3.fan", "hirzebruch_F0.fan", "hirzebruch_F1.fan"}) {
        Fan fan = parse_fan(read_file(gen::fixture(f)));
        auto b = betti_numbers(fan);
        auto h = h_vector(fan);
        v.require(std::vector<long>(b.begin(), b.end()) == h, std::string(f) + ": Betti numbers differ from the h-vector");
        v.require(std::equal(b.begin(), b.end(), b.rbegin()), std::string(f) + ": not palindromic");
        auto fr = freeness_check(fan, 20);
        v.require(fr.verdict, std::string(f) + ": freeness fails at degree " + std::to_string(fr.first_mismatch.value_or(-1)));
        std::string bs;
        for (int x : b) bs += (bs.empty() ? "" : ",") + std::to_string(x);
        row += (row.empty() ? "" : "; ") + fan.name + " (" + bs + ")";
    }
    if (v.ok) v.detail = row;
    return v;
}

Verdict c7() {
    Verdict v;
    std::vector<std::pair<std::string, Algebra>> cases;
    for (int k = 1; k <= 3; ++k) {
        Algebra h(false, 12);
        h.add_generator("x", 2);
        h.add_relation(h.pow(h.g("x"), k + 1));
        cases.emplace_back("Q[x]/(x^" + std::to_string(k + 1) + ")", h);
    }
    cases.emplace_back("flag", gen::load("flag_Q.alg"));
    int windows = 0;
    for (const auto& [name, h] : cases) {
        auto kr = koszul_model(h, 9);
        v.require(kr.verified && kr.through >= 8, name + ": rational Koszul model fails (" + kr.failure + ")");
        auto kc = bigraded_koszul_model(diagonal_copy(h), 9);
        v.require(kc.verified && kc.through >= 8, name + ": bigraded Koszul model fails (" + kc.failure + ")");
        if (!kc.verified) continue;
        auto mw = kc.model->max_window();
        int top = std::min(mw.value_or(8), 8);
        for (int w = 0; w <= top; ++w) {
            v.require(ddbar_property(kc.model->underlying_bicomplex(w), w).verdict,
                      name + ": ddbar property fails on window " + std::to_string(w));
            ++windows;
        }
    }
    if (v.ok) v.detail = "4 rings, both models verified through degree 8, ddbar on " + std::to_string(windows) + " windows";
    return v;
}

Verdict c8() {
    Verdict v;
    Algebra a = gen::load("c_t.alg");
    Algebra s = adjoin_contractible(a, {a.g("t")});
    int w = s.max_window().value_or(0);
    v.require(w >= 4, "window of C[t] (x) S is only " + std::to_string(w));
    Bicomplex b = s.underlying_bicomplex(w);
    for (Flavor fl : kAllFlavors)
        for (const auto& [bd, n] : cohomology(b, fl, w).table())
            if (bd != Bideg{0, 0}) v.require(n == 0, to_string(fl) + " nonzero in positive degree");
    Fan f = parse_fan(read_file(gen::fixture("cp2.fan")));
    Algebra ht = equivariant_cohomology(f, 8);
    Algebra hs = adjoin_contractible(ht, linear_forms(f, ht));
    Algebra h = ordinary_cohomology(f, 8);
    std::vector<Element> im;
    for (const auto& g : hs.gens()) {
        auto k = h.find(g.name);
        im.push_back(k ? h.g(*k) : Element{});
    }
    Morphism m{&hs, &h, im};
    auto mr = check_morphism(m, true);
    v.require(mr.ok, "projection is not a morphism: " + mr.witness);
    int W = hs.max_window().value_or(0);
    Bicomplex bs = hs.underlying_bicomplex(W), bt = h.underlying_bicomplex(W);
    v.require(is_pluripotential_qiso(bs, bt, m.bicomplex_map(bs, bt, W), W).verdict,
              "H_T(CP2) (x) S -> H(CP2) is not a pluripotential quasi-isomorphism");
    if (v.ok)
        v.detail = "C[t] (x) S acyclic through window " + std::to_string(w) + "; projection qiso on window " + std::to_string(W);
    return v;
}

Verdict c9() {
    Verdict v;
    for (const char* f : {"circle.tcb", "potential.tcb"}) {
        TCbba t = parse_tcbba(read_file(gen::fixture(f)));
        v.require(cartan_model(t).C.validate().ok, std::string(f) + ": d_T^2 != 0");
    }
    // synthetic circle action: w is closed of pure type and must extend
    {
        TCbba t = parse_tcbba(read_file(gen::fixture("circle.tcb")));
        CartanModel cm = cartan_model(t);
        auto e = extend_to_equivariant(t, cm, t.A.g("w"), 4);
        v.require(e.ok, "circle: " + e.failure);
        v.require(cm.C.reduce(cm.C.d(e.extension)).is_zero(), "circle: extension not d_T-closed");
        v.require(e.extension.bideg() == Bideg{1, 1}, "circle: extension not of pure type (1,1)");
    }
    {
        TCbba t = parse_tcbba(read_file(gen::fixture("potential.tcb")));
        CartanModel cm = cartan_model(t);
        auto e = extend_to_equivariant(t, cm, t.A.g("w"), 6);
        v.require(e.ok && e.stages == 1, "potential: " + e.failure);
        v.require(cm.C.reduce(cm.C.d(e.extension)).is_zero(), "potential: extension not d_T-closed");
    }
    gen::Rng r(99);
    int actions = 0, hyp = 0, thetas = 0;
    for (int trial = 0; trial < 40; ++trial) {
        TCbba t = gen::random_potential_action(r);
        CartanModel cm = cartan_model(t);
        ++actions;
        v.require(cm.C.validate().ok, "random action: d_T^2 != 0");
        const int window = 6;
        if (!cartan_ddbar_check(t, cm, window).surjective) continue;
        ++hyp;
        for (Bideg b : gen::bidegrees_upto(t.A, window)) {
            Element th = gen::closed_at(r, t.A, b);
            if (th.is_zero()) continue;
            auto e = extend_to_equivariant(t, cm, th, window);
            v.require(e.ok, "extension failed under the hypothesis: " + e.failure);
            if (!e.ok) continue;
            v.require(cm.C.reduce(cm.C.d(e.extension)).is_zero(), "extension not d_T-closed");
            v.require(t.A.reduce(cm.restrict_to(t.A, e.extension) - th).is_zero(), "extension does not restrict to theta");
            v.require(e.extension.bideg() == th.bideg(), "extension not of pure type");
            ++thetas;
        }
    }
    v.require(thetas > 0, "property suite exercised no instance");
    if (v.ok)
        v.detail = "fixtures closed; " + std::to_string(actions) + " random actions, " + std::to_string(hyp) +
                   " satisfy the hypothesis, " + std::to_string(thetas) + " extensions closed and pure";
    return v;
}

Verdict c10() {
    Verdict v;
    gen::Rng r(424242);
    int dd_ok = 0, dd_cert = 0, d_ok = 0, d_cert = 0, d_wit = 0;
    // solve_ddbar: solvable instances x = del delbar y
    while (dd_ok < 100) {
        auto s = gen::random_sample(r);
        for (const auto& [b, n] : s.b.dims) {
            Bideg src{b.first - 1, b.second - 1};
            if (s.b.dim(src) == 0 || dd_ok >= 100) continue;
            SparseVec y = random_vec(r, s.b.dim(src), false);
            SparseVec x = s.b.ddbar_at(src).apply(y);
            auto res = solve_ddbar(s.b, b, x);
            v.require(res.solution && vec::sub(s.b.ddbar_at(src).apply(*res.solution), x).empty(),
                      "solve_ddbar failed on a solvable instance");
            ++dd_ok;
        }
    }
    // unsolvable: a dot at b guarantees a cokernel there
    while (dd_cert < 100) {
        Bideg b{r.range(1, 4), r.range(1, 4)};
        std::vector<gen::Shape> shapes{gen::dot(b)};
        for (int k = r.range(0, 4); k > 0; --k) shapes.push_back(gen::random_shape(r));
        auto s = gen::assemble(shapes, &r, r.coin(0.3));
        SparseVec x = random_vec(r, s.b.dim(b), true);
        auto res = solve_ddbar(s.b, b, x);
        if (res.solution) continue;
        Bideg src{b.first - 1, b.second - 1};
        bool good = res.certificate && !vec::dot(*res.certificate, x).is_zero();
        for (const auto& col : s.b.ddbar_at(src).cols) good = good && vec::dot(*res.certificate, col).is_zero();
        v.require(good, "invalid solve_ddbar certificate");
        ++dd_cert;
    }
    // solve_d_bidegree: solvable instances on ddbar-complexes, a = d beta
    while (d_ok < 100) {
        auto s = gen::random_sample(r, 6, false);
        for (const auto& [b, n] : s.b.dims) {
            if (d_ok >= 100) break;
            SparseVec beta = random_vec(r, n, false);
            SparseVec a1 = s.b.del_at(b).apply(beta), a2 = s.b.delbar_at(b).apply(beta);
            auto res = solve_d_bidegree(s.b, b, a1, a2);
            v.require(res.ok && vec::sub(s.b.del_at(b).apply(res.beta), a1).empty() &&
                          vec::sub(s.b.delbar_at(b).apply(res.beta), a2).empty(),
                      "solve_d_bidegree failed on a solvable instance: " + res.failure);
            ++d_ok;
        }
    }
    // unsolvable: closed but not exact (a dot at (p+1,q)), and complexes without the ddbar property
    while (d_cert < 100) {
        Bideg pq{r.range(0, 3), r.range(0, 3)};
        Bideg b1{pq.first + 1, pq.second};
        std::vector<gen::Shape> shapes{gen::dot(b1)};
        for (int k = r.range(0, 4); k > 0; --k) shapes.push_back(gen::random_shape(r, 4, false));
        auto s = gen::assemble(shapes, &r, r.coin(0.3));
        SparseVec a1 = random_vec(r, s.b.dim(b1), true);
        auto res = solve_d_bidegree(s.b, pq, a1, {});
        if (res.ok) continue;
        int k = pq.first + pq.second;
        SparseVec a = s.b.embed(b1, a1);
        bool good = res.witness && !vec::dot(*res.witness, a).is_zero();
        for (const auto& col : s.b.d_total(k).cols) good = good && vec::dot(*res.witness, col).is_zero();
        v.require(good, "invalid non-exactness certificate: " + res.failure);
        ++d_cert;
    }
    while (d_wit < 100) {
        std::vector<gen::Shape> shapes{gen::zigzag(r.range(0, 2), r.range(3, 5), r.range(0, 1), r.range(2, 5))};
        for (int k = r.range(0, 3); k > 0; --k) shapes.push_back(gen::random_shape(r));
        auto s = gen::assemble(shapes, &r, r.coin(0.3));
        auto res = solve_d_bidegree(s.b, {0, 0}, {}, {});
        v.require(!res.ok && res.witness, "non-ddbar complex accepted");
        if (!res.witness) continue;
        // a Bott-Chern cocycle that is d-exact but not del-delbar-exact
        auto cert = ddbar_property(s.b);
        int k = cert.witness_degree.value_or(0);
        v.require(s.b.d_total(k).apply(*res.witness).empty(), "witness not closed");
        v.require(solve(s.b.d_total(k - 1), *res.witness).solution.has_value(), "witness not d-exact");
        ++d_wit;
    }
    if (v.ok) {
        std::ostringstream o;
        o << "solve_ddbar " << dd_ok << " solved, " << dd_cert << " certified; solve_d_bidegree " << d_ok
          << " solved, " << d_cert << " non-exactness and " << d_wit << " ddbar-failure certificates";
        v.detail = o.str();
    }
    return v;
}

}  // namespace

int main() {
    criterion(1, "minimal model of the connected-sum ring", 60, c1);
    criterion(2, "obstruction coefficient", 10, c2);
    criterion(3, "extension class agrees with the obstruction", 0, c3);
    criterion(4, "Lambda W table integrity, window 6", 0, c4);
    criterion(5, "bicomplex engine on 200 random samples", 30, c5);
    criterion(6, "toric fixtures", 0, c6);
    criterion(7, "Koszul models", 0, c7);
    criterion(8, "contractible extension A (x) S", 0, c8);
    criterion(9, "Cartan module", 0, c9);
    criterion(10, "solver round trips and certificates", 30, c10);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
