#include "pluri/toric.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace pluri {

namespace {

long gcd_all(const std::vector<long>& v) {
    long g = 0;
    for (long x : v) g = std::gcd(g, std::labs(x));
    return g;
}

/* exact integer determinant via Bareiss */
long det(std::vector<std::vector<long>> m) {
    int n = static_cast<int>(m.size());
    long sign = 1, prev = 1;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

/* gcd of the maximal minors of the k x n matrix of rays; 1 iff they extend to a Z-basis */
long minor_gcd(const std::vector<std::vector<long>>& rows, int n) {
    int k = static_cast<int>(rows.size());
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    long g = 0;
    while (true) {
        std::vector<std::vector<long>> m(k, std::vector<long>(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) m[i][j] = rows[i][cols[j]];
        g = std::gcd(g, std::labs(det(m)));
        int i = k - 1;
        while (i >= 0 && cols[i] == n - k + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
    }
    return g;
}

bool is_face(const Fan& f, const std::vector<int>& s) {
    for (const auto& c : f.cones)
        if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
    return false;
}

Fan sorted_cones(Fan f) {
    for (auto& c : f.cones) std::sort(c.begin(), c.end());
    return f;
}

long binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::optional<std::string> check_fan(const Fan& f0) {
    const Fan f = sorted_cones(f0);
    int m = static_cast<int>(f.rays.size());
    if (f.n < 1) return "rank must be positive";
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(f.rays[i].size()) != f.n) return "ray " + std::to_string(i) + " has the wrong length";
        if (gcd_all(f.rays[i]) != 1) return "ray " + std::to_string(i) + " is not primitive";
    }
    for (size_t ci = 0; ci < f.cones.size(); ++ci) {
        const auto& c = f.cones[ci];
        std::string nm = "cone " + std::to_string(ci);
        if (c.empty()) return nm + " is empty";
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) return nm + " repeats a ray";
        for (int r : c)
            if (r < 0 || r >= m) return nm + " names a missing ray";
        if (static_cast<int>(c.size()) > f.n) return nm + " is not simplicial";
        std::vector<std::vector<long>> rows;
        for (int r : c) rows.push_back(f.rays[r]);
        long g = minor_gcd(rows, f.n);
        if (g == 0) return nm + " is not simplicial";
        if (g != 1) return nm + " is not unimodular";
        for (size_t cj = 0; cj < f.cones.size(); ++cj)
            if (cj != ci && std::includes(f.cones[cj].begin(), f.cones[cj].end(), c.begin(), c.end()) &&
                (f.cones[cj].size() > c.size() || cj < ci))
                return nm + " is not maximal";
    }
    for (int r = 0; r < m; ++r)
        if (!is_face(f, {r})) return "ray " + std::to_string(r) + " lies in no cone";
    if (f.complete) {
        std::map<std::vector<int>, int> walls;
        for (const auto& c : f.cones) {
            if (static_cast<int>(c.size()) != f.n) return "complete fan has a maximal cone of dimension < n";
            for (size_t drop = 0; drop < c.size(); ++drop) {
                std::vector<int> w;
                for (size_t j = 0; j < c.size(); ++j)
                    if (j != drop) w.push_back(c[j]);
                ++walls[w];
            }
        }
        for (const auto& [w, k] : walls)
            if (k != 2) {
                std::string s = "wall {";
                for (size_t j = 0; j < w.size(); ++j) s += (j ? "," : "") + std::to_string(w[j]);
                return s + "} lies in " + std::to_string(k) + " maximal cones, expected 2";
            }
    }
    return std::nullopt;
}

std::vector<std::vector<int>> minimal_nonfaces(const Fan& f0) {
    const Fan f = sorted_cones(f0);
    int m = static_cast<int>(f.rays.size());
    std::vector<std::vector<int>> out;
    std::set<std::vector<int>> nonfaces;
    // subsets by size; a non-face is minimal when every facet of it is a face
    std::vector<std::vector<int>> layer{{}};
    for (int k = 1; k <= m; ++k) {
        std::vector<std::vector<int>> next;
        std::set<std::vector<int>> seen;
        for (const auto& s : layer)
            for (int r = (s.empty() ? 0 : s.back() + 1); r < m; ++r) {
                auto t = s;
                t.push_back(r);
                if (!seen.insert(t).second) continue;
                if (is_face(f, t)) {
                    next.push_back(t);
                    continue;
                }
                bool minimal = true;
                for (size_t j = 0; j < t.size() && minimal; ++j) {
                    auto u = t;
                    u.erase(u.begin() + j);
                    if (!is_face(f, u)) minimal = false;
                }
                if (minimal) out.push_back(t);
            }
        layer = std::move(next);
        if (layer.empty()) break;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
}

Algebra equivariant_cohomology(const Fan& f, int truncation) {
    if (auto err = check_fan(f)) throw AlgebraError("invalid fan: " + *err);
    Algebra a(true, truncation);
    a.set_field(FieldTag::Q);
    a.set_real_structure(true);
    for (size_t i = 0; i < f.rays.size(); ++i) a.add_generator("t" + std::to_string(i + 1), 1, 1);
    for (const auto& I : minimal_nonfaces(f)) {
        std::vector<std::pair<int, int>> ge;
        for (int r : I) ge.emplace_back(r, 1);
        Element rel;
        rel.add_term(make_mono(a, ge), Scalar(1));
        a.add_relation(rel);
    }
    return a;
}

std::vector<Element> linear_forms(const Fan& f, const Algebra& sr) {
    std::vector<Element> out;
    for (int j = 0; j < f.n; ++j) {
        Element th;
        for (size_t i = 0; i < f.rays.size(); ++i)
            if (f.rays[i][j] != 0) th.add_term(make_mono(sr, {{static_cast<int>(i), 1}}), Scalar(f.rays[i][j]));
        out.push_back(th);
    }
    return out;
}

Algebra ordinary_cohomology(const Fan& f, int truncation) {
    Algebra a = equivariant_cohomology(f, truncation);
    std::vector<std::vector<long>> rows;
    for (int j = 0; j < f.n; ++j) {
        std::vector<long> r;
        for (const auto& u : f.rays) r.push_back(u[j]);
        rows.push_back(r);
    }
    if (minor_gcd(rows, static_cast<int>(f.rays.size())) == 0)
        throw AlgebraError("linear forms are rank deficient (degenerate fan)");
    for (auto& th : linear_forms(f, a)) a.add_relation(th);
    return a;
}

std::vector<int> hilbert_series(const Algebra& a, int max_degree) {
    std::vector<int> h(max_degree + 1, 0);
    for (int k = 0; k <= max_degree; ++k)
        for (const auto& b : a.bidegrees(k)) h[k] += a.dim(b);
    return h;
}

std::vector<int> betti_numbers(const Fan& f) {
    Algebra h = ordinary_cohomology(f, 2 * f.n + 2);
    auto s = hilbert_series(h, 2 * f.n);
    std::vector<int> out;
    for (int k = 0; k <= 2 * f.n; k += 2) out.push_back(s[k]);
    return out;
}

std::vector<long> h_vector(const Fan& f0) {
    const Fan f = sorted_cones(f0);
    int n = f.n;
    std::set<std::vector<int>> faces;
    for (const auto& c : f.cones) {
        int k = static_cast<int>(c.size());
        for (int mask = 0; mask < (1 << k); ++mask) {
            std::vector<int> s;
            for (int j = 0; j < k; ++j)
                if (mask & (1 << j)) s.push_back(c[j]);
            faces.insert(s);
        }
    }
    std::vector<long> fv(n + 1, 0);
    for (const auto& s : faces) ++fv[s.size()];
    std::vector<long> h(n + 1, 0);
    for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= k; ++i) h[k] += ((k - i) % 2 ? -1 : 1) * binom(n - i, k - i) * fv[i];
    return h;
}

FreenessReport freeness_check(const Fan& f, int N) {
    FreenessReport rep;
    Algebra ht = equivariant_cohomology(f, N);
    auto he = hilbert_series(ht, N);
    auto b = betti_numbers(f);
    rep.equivariant.assign(he.begin(), he.end());
    rep.predicted.assign(N + 1, 0);
    for (int k = 0; 2 * k <= N; ++k)
        for (int j = 0; j <= k && j < static_cast<int>(b.size()); ++j)
            rep.predicted[2 * k] += b[j] * binom(k - j + f.n - 1, f.n - 1);
    rep.verdict = true;
    for (int d = 0; d <= N; ++d)
        if (rep.equivariant[d] != rep.predicted[d]) {
            rep.verdict = false;
            rep.first_mismatch = d;
            break;
        }
    return rep;
}

Algebra adjoin_contractible(const Algebra& a, const std::vector<Element>& images, const std::string& prefix) {
    if (!a.bigraded()) throw AlgebraError("adjoin_contractible needs a bigraded algebra");
    Algebra out(true, a.truncation());
    out.set_field(join(a.field(), FieldTag::Qi));
    out.set_real_structure(true);
    for (const auto& g : a.gens()) out.add_generator(g.name, g.p, g.q, g.weight);
    for (int i = 0; i < a.ngens(); ++i) {
        if (a.gen(i).partner > i) out.pair_generators(i, a.gen(i).partner);
        out.set_del(i, a.del_of(i));
        out.set_delbar(i, a.delbar_of(i));
    }
    for (const auto& r : a.relations()) out.add_relation(r);
    for (size_t j = 0; j < images.size(); ++j) {
        const Element& g = images[j];
        auto bd = g.bideg();
        if (!g.is_zero() && (!bd || *bd != Bideg{1, 1})) throw AlgebraError("image " + std::to_string(j + 1) + " is not of bidegree (1,1)");
        if (!a.reduce(a.del(g)).is_zero() || !a.reduce(a.delbar(g)).is_zero())
            throw AlgebraError("image " + std::to_string(j + 1) + " is not closed");
        int w = 2;
        for (const auto& [m, c] : g.terms) w = std::max(w, m.w);
        std::string nm = prefix + std::to_string(j + 1);
        int s = out.add_generator(nm, 0, 0, w);
        int ds = out.add_generator("d" + nm, 1, 0, w);
        int dbs = out.add_generator("db" + nm, 0, 1, w);
        out.pair_generators(ds, dbs);
        out.set_del(s, out.g(ds));
        out.set_delbar(s, out.g(dbs));
        // i del delbar s = g, so del(dbs) = -i g and delbar(ds) = i g
        out.set_del(dbs, g.scaled(-Scalar::imag_unit()));
        out.set_delbar(ds, g.scaled(Scalar::imag_unit()));
    }
    auto rep = out.validate();
    if (!rep.ok) throw AlgebraError("A tensor S failed validation: " + rep.witness);
    return out;
}

}  // namespace pluri
