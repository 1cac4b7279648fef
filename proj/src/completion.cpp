#include "pluri/models.hpp"

namespace pluri {

namespace {

const Scalar I = Scalar::imag_unit();

/* classes in the kernel of H_fl(f) at total degree k, as cocycles keyed by bidegree */
std::map<Bideg, std::vector<SparseVec>> kernel_classes(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f,
                                                       Flavor fl, int k, std::map<Bideg, Quotient>& spaces) {
    auto hs = cohomology(s, fl, k);
    auto ind = induced_map(s, t, f, fl, k);
    std::map<Bideg, std::vector<SparseVec>> out;
    for (const auto& [b, q] : hs.spaces) {
        if (b.first + b.second != k || q.dim() == 0) continue;
        spaces[b] = q;
        std::vector<SparseVec> ker;
        auto it = ind.find(b);
        if (it == ind.end() || it->second.dst == 0) {
            for (int j = 0; j < q.dim(); ++j) ker.push_back(vec::unit(j));
        } else {
            ker = kernel(it->second);
        }
        for (const auto& c : ker) {
            SparseVec z;
            for (const auto& [j, a] : c) z = vec::axpy(z, a, q.reps()[j]);
            out[b].push_back(z);
        }
    }
    return out;
}

/* sigma-fixed cocycles spanning the same classes at a diagonal bidegree */
std::vector<SparseVec> realify(const Bicomplex& s, Bideg b, const Quotient& q, const std::vector<SparseVec>& zs) {
    std::vector<SparseVec> out;
    Echelon seen;
    for (const auto& z : zs) {
        SparseVec sz = s.apply_sigma(b, z);
        for (SparseVec c : {vec::add(z, sz), vec::scale(vec::sub(z, sz), I)}) {
            if (static_cast<int>(out.size()) == static_cast<int>(zs.size())) break;
            auto cc = q.coords(c);
            if (!cc || cc->empty()) continue;
            if (seen.insert(*cc)) out.push_back(c);
        }
    }
    return out;
}

struct Builder {
    Algebra& w;
    std::vector<Element>& images;
    std::vector<std::string>& log;
    const std::string& prefix;
    int counter = 0;

    int gen(const std::string& name, int p, int q) {
        int g = w.add_generator(name, p, q);
        images.emplace_back();
        return g;
    }
    /* sigma partners for a set of generators with differentials already set:
       del(g') = sigma(delbar g), delbar(g') = sigma(del g) */
    void partners(const std::vector<int>& set) {
        std::vector<int> made;
        for (int g : set) {
            const Generator& G = w.gen(g);
            int h = gen(G.name + "c", G.q, G.p);
            w.pair_generators(g, h);
            made.push_back(h);
        }
        for (size_t j = 0; j < set.size(); ++j) {
            w.set_del(made[j], w.sigma(w.delbar_of(set[j])));
            w.set_delbar(made[j], w.sigma(w.del_of(set[j])));
        }
    }
    /* kills the Bott-Chern class of z: del delbar u = -i z, i.e. delbar del u = i z */
    void square(Bideg b, const Element& z) {
        ++counter;
        std::string n = prefix + "q" + std::to_string(counter);
        int u = gen(n, b.first - 1, b.second - 1);
        int u1 = gen("d" + n, b.first, b.second - 1);
        int u2 = gen("db" + n, b.first - 1, b.second);
        w.set_del(u, w.g(u1));
        w.set_delbar(u, w.g(u2));
        w.set_delbar(u1, z.scaled(I));
        w.set_del(u2, z.scaled(-I));
        if (b.first == b.second) w.pair_generators(u1, u2);
        else partners({u, u1, u2});
        log.push_back("square " + n + " at (" + std::to_string(b.first - 1) + "," + std::to_string(b.second - 1) +
                      "): delbar del " + n + " = i*(" + w.str(z) + ")");
    }
    /* kills the Aeppli class of y: 2i y = del Pb - delbar P */
    void zigzag(Bideg b, const Element& y) {
        ++counter;
        std::string n = std::to_string(counter);
        auto [p, q] = b;
        int R = gen(prefix + "R" + n, p, q);
        int P = gen(prefix + "P" + n, p, q - 1);
        int Pb = gen(prefix + "Pb" + n, p - 1, q);
        int dP = gen("d" + prefix + "P" + n, p + 1, q - 1);
        int dbPb = gen("db" + prefix + "Pb" + n, p - 1, q + 1);
        Element dy = w.del(y), by = w.delbar(y);
        w.set_del(R, dy.scaled(-I));
        w.set_delbar(R, by.scaled(I));
        w.set_del(P, w.g(dP));
        w.set_delbar(P, w.g(R) - y.scaled(I));
        w.set_del(Pb, w.g(R) + y.scaled(I));
        w.set_delbar(Pb, w.g(dbPb));
        w.set_delbar(dP, dy.scaled(I * Scalar(2)));
        w.set_del(dbPb, by.scaled(-I * Scalar(2)));
        if (p == q) {
            w.pair_generators(P, Pb);
            w.pair_generators(dP, dbPb);
        } else {
            partners({R, P, Pb, dP, dbPb});
        }
        log.push_back("zigzag " + prefix + "R" + n + " at (" + std::to_string(p) + "," + std::to_string(q) + ") for " +
                      w.str(y));
    }
    /* y at (p,p+1) with del y = delbar sigma y.  The pair y, sigma y shares one real
       T at (p,p) instead of two conjugate P's, which would leave P - sigma P as a new class:
       delbar T = R - i y, del T = sigma R + i sigma y, del Pb = R + i y. */
    void adjacent_zigzag(Bideg b, const Element& y) {
        ++counter;
        std::string n = std::to_string(counter);
        auto [p, q] = b;
        int R = gen(prefix + "R" + n, p, q);
        int Pb = gen(prefix + "Pb" + n, p - 1, q);
        int dbPb = gen("db" + prefix + "Pb" + n, p - 1, q + 1);
        Element dy = w.del(y), by = w.delbar(y);
        w.set_del(R, dy.scaled(-I));
        w.set_delbar(R, by.scaled(I));
        w.set_del(Pb, w.g(R) + y.scaled(I));
        w.set_delbar(Pb, w.g(dbPb));
        w.set_del(dbPb, by.scaled(-I * Scalar(2)));
        partners({R, Pb, dbPb});
        int Rc = w.gen(R).partner;
        int T = gen(prefix + "T" + n, p, p);
        w.set_delbar(T, w.g(R) - y.scaled(I));
        w.set_del(T, w.g(Rc) + w.sigma(y).scaled(I));
        log.push_back("adjacent zigzag " + prefix + "T" + n + " at (" + std::to_string(p) + "," + std::to_string(p) +
                      ") for " + w.str(y));
    }
};

/* replaces y by y - 1/2 delbar u with u real and del delbar u = del y - delbar sigma y,
   so that del y = delbar sigma y; nullopt when no such u exists */
std::optional<Element> symmetrize(const Algebra& w, const Bicomplex& s, Bideg b, const Element& y) {
    Bideg top{b.first + 1, b.second};
    Element delta = w.del(y) - w.delbar(w.sigma(y));
    if (w.reduce(delta).is_zero()) return y;
    Bideg low{b.first, b.first};
    auto sol = solve_ddbar(s, top, w.coords(delta, top));
    if (!sol.solution) return std::nullopt;
    SparseVec u = *sol.solution;
    u = vec::scale(vec::add(u, s.apply_sigma(low, u)), Scalar(1, 2));
    Element ue = w.from_coords(u, low);
    return y - w.delbar(ue).scaled(Scalar(1, 2));
}

}  // namespace

ModelCompletion complete_pluripotential_model(const Algebra& w0, const Algebra& target,
                                              const std::vector<Element>& images0, int window,
                                              const std::string& prefix) {
    ModelCompletion res;
    auto w = std::make_shared<Algebra>(w0);
    auto t = std::make_shared<Algebra>(target);
    if (w->truncation() < window + 2) w->set_truncation(window + 2);
    if (t->truncation() < window + 2) t->set_truncation(window + 2);
    if (w->field() == FieldTag::Q) w->set_field(FieldTag::Qi);
    w->set_real_structure(true);
    res.model = w;
    res.target = t;
    res.images = images0;
    Builder bld{*w, res.images, res.log, prefix};
    auto fail = [&](const std::string& m) {
        res.ok = false;
        res.failure = m;
        res.added = bld.counter;
        return res;
    };
    // squares at degree k add generators of degree k-2 and k-1, so sweep until a pass adds nothing
    for (int pass = 0;; ++pass) {
        if (pass > 6) return fail("no convergence after 6 passes");
        int before = bld.counter;
        for (int k = 0; k <= window; ++k) {
            for (int round = 0;; ++round) {
                if (round > 8) return fail("degree " + std::to_string(k) + ": no convergence after 8 rounds");
                Bicomplex bs = w->underlying_bicomplex(k), bt = t->underlying_bicomplex(k);
                BicomplexMap f = res.morphism().bicomplex_map(bs, bt, k);
                std::map<Bideg, Quotient> spaces;
                auto bc = kernel_classes(bs, bt, f, Flavor::BC, k, spaces);
                bool changed = false;
                // convert to elements before any generator is added (bases change)
                std::vector<std::pair<Bideg, Element>> kills;
                for (const auto& [b, zs] : bc) {
                    if (b.first > b.second || zs.empty()) continue;
                    if (b.first < 1 || b.second < 1) return fail("Bott-Chern kernel class at an edge bidegree");
                    auto use = b.first == b.second ? realify(bs, b, spaces.at(b), zs) : zs;
                    for (const auto& z : use) kills.emplace_back(b, w->from_coords(z, b));
                }
                for (const auto& [b, z] : kills) bld.square(b, z);
                changed = !kills.empty();
                if (changed) continue;
                spaces.clear();
                auto ak = kernel_classes(bs, bt, f, Flavor::A, k, spaces);
                std::vector<std::pair<Bideg, Element>> adjacent;
                for (const auto& [b, ys] : ak) {
                    if (b.first > b.second || ys.empty()) continue;
                    if (b.first < 1 || b.second < 1) return fail("Aeppli kernel class at an edge bidegree");
                    if (b.second == b.first + 1) {
                        for (const auto& y : ys) {
                            auto sy = symmetrize(*w, bs, b, w->from_coords(y, b));
                            if (!sy) return fail("no real correction makes del y = delbar sigma y for " + w->str(w->from_coords(y, b)));
                            adjacent.emplace_back(b, *sy);
                        }
                        continue;
                    }
                    auto use = b.first == b.second ? realify(bs, b, spaces.at(b), ys) : ys;
                    for (const auto& y : use) kills.emplace_back(b, w->from_coords(y, b));
                }
                for (const auto& [b, y] : kills) bld.zigzag(b, y);
                for (const auto& [b, y] : adjacent) bld.adjacent_zigzag(b, y);
                if (!adjacent.empty()) kills.push_back(adjacent.front());
                changed = !kills.empty();
                if (!changed) break;
                auto v = w->validate();
                if (!v.ok) return fail("completed model failed validation: " + v.witness);
            }
        }
        if (bld.counter == before) break;
    }
    auto v = w->validate();
    if (!v.ok) return fail("completed model failed validation: " + v.witness);
    Bicomplex bs = w->underlying_bicomplex(window), bt = t->underlying_bicomplex(window);
    auto q = is_pluripotential_qiso(bs, bt, res.morphism().bicomplex_map(bs, bt, window), window);
    res.added = bld.counter;
    if (!q.verdict) {
        std::string s = "not a pluripotential quasi-isomorphism at";
        for (const auto& [fl, b] : q.failures)
            s += " " + to_string(fl) + "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")";
        return fail(s);
    }
    res.ok = true;
    return res;
}

}  // namespace pluri
