#pragma once

// Hand-rolled generators shared by the unit tests and the acceptance binary.

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pluri/bicomplex.hpp"
#include "pluri/scalar.hpp"

namespace gen {

using pluri::Bicomplex;
using pluri::Bideg;
using pluri::Flavor;
using pluri::Scalar;

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(unsigned long long seed) : eng(seed) {}
    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(eng); }
};

inline Scalar small_rational(Rng& r, int bound = 5) {
    int den = r.range(1, bound);
    return Scalar(r.range(-bound, bound), den);
}

inline Scalar nonzero_rational(Rng& r, int bound = 5) {
    for (;;) {
        Scalar s = small_rational(r, bound);
        if (!s.is_zero()) return s;
    }
}

/* random element of the field named by tag; lambda parts are quotients of degree <= 2 polynomials */
inline Scalar scalar_in(Rng& r, pluri::FieldTag tag) {
    auto coeff = [&] {
        Scalar c = small_rational(r);
        if (pluri::contains(tag, pluri::FieldTag::Qi) && r.coin()) c = c + small_rational(r) * Scalar::imag_unit();
        return c;
    };
    if (!pluri::contains(tag, pluri::FieldTag::Qlambda) || r.coin(0.3)) return coeff();
    auto poly = [&](bool nonzero) {
        for (;;) {
            Scalar p = coeff();
            Scalar l = Scalar::lambda();
            int deg = r.range(0, 2);
            for (int k = 1; k <= deg; ++k) {
                p = p + coeff() * l;
                l = l * Scalar::lambda();
            }
            if (!nonzero || !p.is_zero()) return p;
        }
    };
    return poly(false) / poly(true);
}

/* one indecomposable: vertices with bidegrees and edges (kind 0 = del, 1 = delbar) */
struct Shape {
    std::string kind;  // dot, square, zigzag
    std::vector<Bideg> verts;
    std::vector<std::tuple<int, int, int, int>> edges;  // kind, from, to, coefficient
};

inline Shape dot(Bideg at) { return {"dot", {at}, {}}; }

inline Shape square(Bideg at) {
    auto [p, q] = at;
    return {"square",
            {{p, q}, {p + 1, q}, {p, q + 1}, {p + 1, q + 1}},
            {{0, 0, 1, 1}, {1, 0, 2, 1}, {0, 2, 3, 1}, {1, 1, 3, -1}}};
}

/* contiguous piece of the chain u_0, l_0, u_1, l_1, ... with l_j = (a+j, b-j),
   u_j = (a+j, b-j+1); del l_j = u_{j+1}, delbar l_j = u_j */
inline Shape zigzag(int a, int b, int start, int length) {
    Shape s{"zigzag", {}, {}};
    std::vector<int> pos;
    for (int t = start; t < start + length; ++t) {
        int j = t / 2;
        Bideg v = t % 2 == 0 ? Bideg{a + j, b - j + 1} : Bideg{a + j, b - j};
        s.verts.push_back(v);
        pos.push_back(t);
    }
    for (int i = 0; i < length; ++i) {
        if (pos[i] % 2 == 0) continue;
        if (i > 0) s.edges.emplace_back(1, i, i - 1, 1);
        if (i + 1 < length) s.edges.emplace_back(0, i, i + 1, 1);
    }
    return s;
}

/* expected dimension tables: BC, A, del, delbar per bidegree, dR per degree */
struct Expected {
    std::map<Flavor, std::map<Bideg, int>> bideg;
    std::map<int, int> dR;
};

inline void add_expected(const Shape& s, Expected& e) {
    int n = static_cast<int>(s.verts.size());
    std::vector<int> out(n, 0), in(n, 0), del_inc(n, 0), delbar_inc(n, 0);
    for (const auto& [k, f, t, c] : s.edges) {
        ++out[f];
        ++in[t];
        (k == 0 ? del_inc : delbar_inc)[f]++;
        (k == 0 ? del_inc : delbar_inc)[t]++;
    }
    if (s.kind == "square") return;
    int sources = 0, sinks = 0;
    for (int i = 0; i < n; ++i) {
        Bideg b = s.verts[i];
        if (out[i] == 0) ++e.bideg[Flavor::BC][b], ++sinks;
        if (in[i] == 0) ++e.bideg[Flavor::A][b], ++sources;
        if (del_inc[i] == 0) ++e.bideg[Flavor::Del][b];
        if (delbar_inc[i] == 0) ++e.bideg[Flavor::Delbar][b];
    }
    if (n == 1) {
        ++e.dR[s.verts[0].first + s.verts[0].second];
        return;
    }
    if (n % 2 == 0) return;
    // odd zigzag: one class on the level carrying the extra vertex
    int lo = 1 << 30;
    for (const auto& v : s.verts) lo = std::min(lo, v.first + v.second);
    ++e.dR[sinks > sources ? lo + 1 : lo];
}

struct Sample {
    Bicomplex b;
    Expected expected;
    std::vector<Shape> shapes;
};

inline Shape random_shape(Rng& r, int maxdeg = 4, bool allow_zigzag = true) {
    int kind = allow_zigzag ? r.range(0, 2) : r.range(0, 1);
    if (kind == 0) return dot({r.range(0, maxdeg), r.range(0, maxdeg)});
    if (kind == 1) return square({r.range(0, maxdeg - 1), r.range(0, maxdeg - 1)});
    int length = r.range(2, 5);
    int a = r.range(0, maxdeg - 1);
    int b = r.range(3, maxdeg + 2);
    return zigzag(a, b, r.range(0, 1), length);
}

/* dense helpers for basis changes */
using Dense = std::vector<std::vector<Scalar>>;

inline Dense identity(int n) {
    Dense m(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
    return m;
}

inline Dense mul(const Dense& a, const Dense& b) {
    int n = static_cast<int>(a.size()), k = static_cast<int>(b.size()), m = k ? static_cast<int>(b[0].size()) : 0;
    Dense c(n, std::vector<Scalar>(m, Scalar(0)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

/* random invertible matrix and its inverse, as products of elementary matrices */
inline std::pair<Dense, Dense> random_gl(Rng& r, int n, bool gaussian) {
    Dense p = identity(n), pinv = identity(n);
    int steps = n <= 1 ? 1 : 2 * n + 1;
    for (int s = 0; s < steps; ++s) {
        Dense e = identity(n), einv = identity(n);
        if (n == 1 || r.coin(0.3)) {
            int i = r.range(0, n - 1);
            Scalar c = nonzero_rational(r, 3);
            if (gaussian && r.coin()) c = c * Scalar::imag_unit();
            e[i][i] = c;
            einv[i][i] = c.inverse();
        } else {
            int i = r.range(0, n - 1), j = r.range(0, n - 2);
            if (j >= i) ++j;
            Scalar c = nonzero_rational(r, 3);
            if (gaussian && r.coin()) c = c + Scalar::imag_unit();
            e[i][j] = c;
            einv[i][j] = -c;
        }
        p = mul(e, p);
        pinv = mul(pinv, einv);
    }
    return {p, pinv};
}

inline Sample assemble(const std::vector<Shape>& shapes, Rng* r = nullptr, bool gaussian = false) {
    Sample out;
    out.shapes = shapes;
    // global basis index per (shape, vertex)
    std::map<Bideg, int> fill;
    std::vector<std::vector<int>> where(shapes.size());
    for (size_t si = 0; si < shapes.size(); ++si) {
        for (const auto& v : shapes[si].verts) where[si].push_back(fill[v]++);
        add_expected(shapes[si], out.expected);
    }
    std::map<Bideg, Dense> del, delbar;
    auto block = [&](std::map<Bideg, Dense>& tab, Bideg s, Bideg t) -> Dense& {
        auto it = tab.find(s);
        if (it == tab.end()) it = tab.emplace(s, Dense(fill[t], std::vector<Scalar>(fill[s], Scalar(0)))).first;
        return it->second;
    };
    for (size_t si = 0; si < shapes.size(); ++si)
        for (const auto& [k, f, t, c] : shapes[si].edges) {
            Bideg s = shapes[si].verts[f], d = shapes[si].verts[t];
            auto& m = block(k == 0 ? del : delbar, s, d);
            m[where[si][t]][where[si][f]] += Scalar(c);
        }
    std::map<Bideg, std::pair<Dense, Dense>> change;
    for (const auto& [b, n] : fill)
        change[b] = r ? random_gl(*r, n, gaussian) : std::make_pair(identity(n), identity(n));
    auto emit = [&](const std::map<Bideg, Dense>& tab, int dp, int dq, std::map<Bideg, pluri::LinearMap>& dst) {
        for (const auto& [s, m] : tab) {
            Bideg t{s.first + dp, s.second + dq};
            Dense conj = mul(change[t].first, mul(m, change[s].second));
            pluri::LinearMap lm(fill[s], fill[t]);
            for (int j = 0; j < fill[s]; ++j)
                for (int i = 0; i < fill[t]; ++i)
                    if (!conj[i][j].is_zero()) lm.cols[j].emplace_back(i, conj[i][j]);
            dst[s] = lm;
        }
    };
    for (const auto& [b, n] : fill) out.b.dims[b] = n;
    emit(del, 1, 0, out.b.del);
    emit(delbar, 0, 1, out.b.delbar);
    return out;
}

inline Sample random_sample(Rng& r, int max_shapes = 6, bool allow_zigzag = true) {
    std::vector<Shape> shapes;
    int n = r.range(1, max_shapes);
    for (int i = 0; i < n; ++i) shapes.push_back(random_shape(r, 4, allow_zigzag));
    return assemble(shapes, &r, r.coin(0.3));
}

}  // namespace gen
