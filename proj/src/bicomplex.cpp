#include "pluri/bicomplex.hpp"

#include <set>
#include <sstream>

namespace pluri {

std::string to_string(Flavor f) {
    switch (f) {
        case Flavor::dR: return "dR";
        case Flavor::Del: return "del";
        case Flavor::Delbar: return "delbar";
        case Flavor::BC: return "BC";
        case Flavor::A: return "A";
    }
    return "?";
}

Flavor parse_flavor(const std::string& s) {
    for (Flavor f : kAllFlavors)
        if (to_string(f) == s) return f;
    throw std::invalid_argument("unknown flavor '" + s + "'");
}

namespace {

std::string bd(Bideg b) { return "(" + std::to_string(b.first) + "," + std::to_string(b.second) + ")"; }

LinearMap lookup(const std::map<Bideg, LinearMap>& m, Bideg b, int src, int dst) {
    auto it = m.find(b);
    if (it != m.end()) return it->second;
    return LinearMap(src, dst);
}

bool maps_equal(const LinearMap& a, const LinearMap& b) {
    if (a.src != b.src) return false;
    for (int j = 0; j < a.src; ++j)
        if (!vec::sub(a.cols[j], b.cols[j]).empty()) return false;
    return true;
}

}  // namespace

int Bicomplex::dim(Bideg b) const {
    auto it = dims.find(b);
    return it == dims.end() ? 0 : it->second;
}

LinearMap Bicomplex::del_at(Bideg b) const {
    return lookup(del, b, dim(b), dim({b.first + 1, b.second}));
}

LinearMap Bicomplex::delbar_at(Bideg b) const {
    return lookup(delbar, b, dim(b), dim({b.first, b.second + 1}));
}

LinearMap Bicomplex::ddbar_at(Bideg b) const {
    return del_at({b.first, b.second + 1}).compose(delbar_at(b));
}

SparseVec Bicomplex::apply_sigma(Bideg b, const SparseVec& v) const {
    if (!sigma) throw InvalidBicomplex("no real structure");
    return lookup(*sigma, b, dim(b), dim({b.second, b.first})).apply(vec::conj(v));
}

std::vector<Bideg> Bicomplex::support() const {
    std::vector<Bideg> out;
    for (const auto& [b, n] : dims)
        if (n > 0) out.push_back(b);
    return out;
}

std::vector<int> Bicomplex::total_degrees() const {
    std::set<int> ks;
    for (const auto& b : support()) ks.insert(b.first + b.second);
    return {ks.begin(), ks.end()};
}

std::vector<std::pair<Bideg, int>> Bicomplex::total_layout(int k) const {
    std::vector<std::pair<Bideg, int>> out;
    int off = 0;
    for (const auto& [b, n] : dims) {
        if (n <= 0 || b.first + b.second != k) continue;
        out.emplace_back(b, off);
        off += n;
    }
    return out;
}

int Bicomplex::total_dim(int k) const {
    int n = 0;
    for (const auto& [b, d] : dims)
        if (b.first + b.second == k) n += d;
    return n;
}

SparseVec Bicomplex::embed(Bideg b, const SparseVec& v) const {
    for (const auto& [c, off] : total_layout(b.first + b.second))
        if (c == b) return vec::shift(v, off);
    if (v.empty()) return {};
    throw InvalidBicomplex("embed: bidegree " + bd(b) + " has dimension 0");
}

LinearMap Bicomplex::d_total(int k) const {
    auto src = total_layout(k), dst = total_layout(k + 1);
    std::map<Bideg, int> off;
    for (const auto& [b, o] : dst) off[b] = o;
    LinearMap m(total_dim(k), total_dim(k + 1));
    for (const auto& [b, o] : src) {
        LinearMap a = del_at(b), c = delbar_at(b);
        Bideg tb{b.first + 1, b.second}, tc{b.first, b.second + 1};
        for (int j = 0; j < dim(b); ++j) {
            SparseVec col;
            if (!a.cols[j].empty()) col = vec::shift(a.cols[j], off.at(tb));
            if (!c.cols[j].empty()) col = vec::add(col, vec::shift(c.cols[j], off.at(tc)));
            m.cols[o + j] = std::move(col);
        }
    }
    return m;
}

std::optional<std::string> Bicomplex::check() const {
    auto shape = [&](const std::map<Bideg, LinearMap>& m, int dp, int dq, const char* name)
        -> std::optional<std::string> {
        for (const auto& [b, f] : m) {
            int tgt = dim({b.first + dp, b.second + dq});
            if (f.src != dim(b) || static_cast<int>(f.cols.size()) != dim(b))
                return std::string(name) + " at " + bd(b) + ": source dimension mismatch";
            if (f.dst != tgt) return std::string(name) + " at " + bd(b) + ": target dimension mismatch";
            for (const auto& c : f.cols)
                for (const auto& [i, x] : c)
                    if (i < 0 || i >= tgt) return std::string(name) + " at " + bd(b) + ": index out of range";
        }
        return std::nullopt;
    };
    if (auto e = shape(del, 1, 0, "del")) return e;
    if (auto e = shape(delbar, 0, 1, "delbar")) return e;
    for (const auto& b : support()) {
        int p = b.first, q = b.second;
        if (!del_at({p + 1, q}).compose(del_at(b)).is_zero()) return "del^2 != 0 at " + bd(b);
        if (!delbar_at({p, q + 1}).compose(delbar_at(b)).is_zero()) return "delbar^2 != 0 at " + bd(b);
        LinearMap x = del_at({p, q + 1}).compose(delbar_at(b));
        LinearMap y = delbar_at({p + 1, q}).compose(del_at(b));
        for (int j = 0; j < dim(b); ++j)
            if (!vec::add(x.cols[j], y.cols[j]).empty()) return "del delbar + delbar del != 0 at " + bd(b);
    }
    if (sigma) {
        for (const auto& [b, s] : *sigma) {
            Bideg t{b.second, b.first};
            if (s.src != dim(b) || s.dst != dim(t)) return "sigma at " + bd(b) + ": dimension mismatch";
        }
        for (const auto& b : support()) {
            Bideg t{b.second, b.first};
            if (dim(t) != dim(b)) return "sigma: dimensions at " + bd(b) + " and " + bd(t) + " differ";
            for (int j = 0; j < dim(b); ++j) {
                SparseVec e = vec::unit(j);
                SparseVec s1 = apply_sigma(b, e);
                if (!vec::sub(apply_sigma(t, s1), e).empty()) return "sigma^2 != id at " + bd(b);
                SparseVec lhs = apply_sigma({t.first + 1, t.second}, del_at(t).apply(s1));
                SparseVec rhs = delbar_at(b).apply(e);
                if (!vec::sub(lhs, rhs).empty()) return "sigma del sigma != delbar at " + bd(b);
            }
        }
    }
    return std::nullopt;
}

void Bicomplex::validate() const {
    if (auto e = check()) throw InvalidBicomplex(*e);
}

LinearMap BicomplexMap::at(Bideg b, int src, int dst) const { return lookup(blocks, b, src, dst); }

std::optional<std::string> check_map(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f) {
    for (const auto& [b, m] : f.blocks)
        if (m.src != s.dim(b) || m.dst != t.dim(b)) return "map block at " + bd(b) + ": dimension mismatch";
    for (const auto& b : s.support()) {
        int p = b.first, q = b.second;
        LinearMap fb = f.at(b, s.dim(b), t.dim(b));
        Bideg b1{p + 1, q}, b2{p, q + 1};
        LinearMap l1 = f.at(b1, s.dim(b1), t.dim(b1)).compose(s.del_at(b));
        LinearMap r1 = t.del_at(b).compose(fb);
        if (!maps_equal(l1, r1)) return "map does not commute with del at " + bd(b);
        LinearMap l2 = f.at(b2, s.dim(b2), t.dim(b2)).compose(s.delbar_at(b));
        LinearMap r2 = t.delbar_at(b).compose(fb);
        if (!maps_equal(l2, r2)) return "map does not commute with delbar at " + bd(b);
        if (f.real && s.sigma && t.sigma) {
            Bideg c{q, p};
            for (int j = 0; j < s.dim(b); ++j) {
                SparseVec e = vec::unit(j);
                SparseVec lhs = f.at(c, s.dim(c), t.dim(c)).apply(s.apply_sigma(b, e));
                SparseVec rhs = t.apply_sigma(b, fb.apply(e));
                if (!vec::sub(lhs, rhs).empty()) return "map does not commute with sigma at " + bd(b);
            }
        }
    }
    return std::nullopt;
}

int CohomologySpace::dim(Bideg b) const {
    auto it = spaces.find(b);
    return it == spaces.end() ? 0 : it->second.dim();
}

int CohomologySpace::dim_total(int k) const {
    int n = 0;
    for (const auto& [b, q] : spaces) {
        int deg = flavor == Flavor::dR ? b.first : b.first + b.second;
        if (deg == k) n += q.dim();
    }
    return n;
}

std::map<Bideg, int> CohomologySpace::table() const {
    std::map<Bideg, int> t;
    for (const auto& [b, q] : spaces) t[b] = q.dim();
    return t;
}

namespace {

std::vector<SparseVec> cols_of(const LinearMap& m) { return m.cols; }

Quotient bideg_quotient(const Bicomplex& bc, Bideg b, Flavor f) {
    int p = b.first, q = b.second;
    switch (f) {
        case Flavor::Del:
            return Quotient(kernel(bc.del_at(b)), cols_of(bc.del_at({p - 1, q})));
        case Flavor::Delbar:
            return Quotient(kernel(bc.delbar_at(b)), cols_of(bc.delbar_at({p, q - 1})));
        case Flavor::BC:
            return Quotient(kernel(stack(bc.del_at(b), bc.delbar_at(b))), cols_of(bc.ddbar_at({p - 1, q - 1})));
        case Flavor::A: {
            auto den = cols_of(bc.del_at({p - 1, q}));
            for (auto& c : cols_of(bc.delbar_at({p, q - 1}))) den.push_back(std::move(c));
            return Quotient(kernel(bc.ddbar_at(b)), den);
        }
        case Flavor::dR: break;
    }
    throw std::logic_error("bideg_quotient: dR is not bigraded");
}

}  // namespace

CohomologySpace cohomology(const Bicomplex& b, Flavor f, std::optional<int> max_total) {
    CohomologySpace out{f, {}};
    if (f == Flavor::dR) {
        for (int k : b.total_degrees()) {
            if (max_total && k > *max_total) continue;
            out.spaces.emplace(Bideg{k, 0}, Quotient(kernel(b.d_total(k)), cols_of(b.d_total(k - 1))));
        }
        return out;
    }
    for (const auto& bb : b.support()) {
        if (max_total && bb.first + bb.second > *max_total) continue;
        out.spaces.emplace(bb, bideg_quotient(b, bb, f));
    }
    return out;
}

DdbarCertificate ddbar_property(const Bicomplex& b, std::optional<int> max_total) {
    DdbarCertificate cert;
    CohomologySpace bc = cohomology(b, Flavor::BC, max_total);
    CohomologySpace ae = cohomology(b, Flavor::A, max_total);
    CohomologySpace dr = cohomology(b, Flavor::dR, max_total);
    cert.verdict = true;
    cert.count_verdict = true;
    for (int k : b.total_degrees()) {
        if (max_total && k > *max_total) continue;
        std::vector<SparseVec> reps;
        for (const auto& [bb, qt] : bc.spaces) {
            if (bb.first + bb.second != k) continue;
            for (const auto& r : qt.reps()) reps.push_back(b.embed(bb, r));
        }
        const Quotient& h = dr.spaces.at({k, 0});
        LinearMap m(static_cast<int>(reps.size()), h.dim());
        for (size_t j = 0; j < reps.size(); ++j) {
            auto c = h.coords(reps[j]);
            if (!c) throw InvalidBicomplex("Bott-Chern representative is not d-closed");
            m.cols[j] = *c;
        }
        auto ker = kernel(m);
        if (!ker.empty() && cert.verdict) {
            cert.verdict = false;
            SparseVec w;
            for (const auto& [j, c] : ker.front()) w = vec::axpy(w, c, reps[j]);
            cert.witness = w;
            cert.witness_degree = k;
        }
        int hbc = bc.dim_total(k), ha = ae.dim_total(k), bk = dr.dim_total(k);
        cert.table[k] = {hbc, ha, bk};
        if (hbc + ha != 2 * bk) cert.count_verdict = false;
    }
    return cert;
}

namespace {

/* apply a bicomplex map to a total-degree vector */
SparseVec apply_total(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f, int k, const SparseVec& v) {
    auto tl = t.total_layout(k);
    std::map<Bideg, int> toff;
    for (const auto& [b, o] : tl) toff[b] = o;
    SparseVec out;
    for (const auto& [b, o] : s.total_layout(k)) {
        SparseVec part = vec::slice(v, o, o + s.dim(b), o);
        if (part.empty()) continue;
        SparseVec img = f.at(b, s.dim(b), t.dim(b)).apply(part);
        if (img.empty()) continue;
        out = vec::add(out, vec::shift(img, toff.at(b)));
    }
    return out;
}

}  // namespace

std::map<Bideg, LinearMap> induced_map(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f, Flavor fl,
                                       std::optional<int> max_total) {
    CohomologySpace hs = cohomology(s, fl, max_total), ht = cohomology(t, fl, max_total);
    std::set<Bideg> keys;
    for (const auto& [b, q] : hs.spaces) keys.insert(b);
    for (const auto& [b, q] : ht.spaces) keys.insert(b);
    std::map<Bideg, LinearMap> out;
    for (const auto& b : keys) {
        auto si = hs.spaces.find(b);
        auto ti = ht.spaces.find(b);
        int sd = si == hs.spaces.end() ? 0 : si->second.dim();
        int td = ti == ht.spaces.end() ? 0 : ti->second.dim();
        LinearMap m(sd, td);
        for (int j = 0; j < sd; ++j) {
            const SparseVec& r = si->second.reps()[j];
            SparseVec img = fl == Flavor::dR ? apply_total(s, t, f, b.first, r)
                                             : f.at(b, s.dim(b), t.dim(b)).apply(r);
            if (img.empty()) continue;
            if (ti == ht.spaces.end()) throw InvalidBicomplex("induced map: image outside target support");
            auto c = ti->second.coords(img);
            if (!c) throw InvalidBicomplex("induced map: image of a cocycle is not a cocycle at " + bd(b));
            m.cols[j] = *c;
        }
        out.emplace(b, std::move(m));
    }
    return out;
}

namespace {

bool all_iso(const std::map<Bideg, LinearMap>& m, Flavor fl, std::vector<std::pair<Flavor, Bideg>>* fails) {
    bool ok = true;
    for (const auto& [b, f] : m) {
        if (f.src == f.dst && rank(f) == f.src) continue;
        ok = false;
        if (fails) fails->emplace_back(fl, b);
    }
    return ok;
}

bool first_quadrant(const Bicomplex& b) {
    for (const auto& x : b.support())
        if (x.first < 0 || x.second < 0) return false;
    return true;
}

}  // namespace

QisoCertificate is_pluripotential_qiso(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f,
                                       std::optional<int> max_total) {
    QisoCertificate c;
    bool bc = all_iso(induced_map(s, t, f, Flavor::BC, max_total), Flavor::BC, &c.failures);
    bool a = all_iso(induced_map(s, t, f, Flavor::A, max_total), Flavor::A, &c.failures);
    c.verdict = bc && a;
    c.fast_path_applicable = first_quadrant(s) && first_quadrant(t);
    if (c.fast_path_applicable) {
        c.fast_path_verdict = all_iso(induced_map(s, t, f, Flavor::Del, max_total), Flavor::Del, nullptr) &&
                              all_iso(induced_map(s, t, f, Flavor::Delbar, max_total), Flavor::Delbar, nullptr);
    }
    return c;
}

DdbarSolve solve_ddbar(const Bicomplex& b, Bideg at, const SparseVec& x) {
    int n = b.dim(at);
    for (const auto& [i, c] : x)
        if (i < 0 || i >= n) throw std::out_of_range("solve_ddbar: vector does not live in bidegree " + bd(at));
    LinearMap m = b.ddbar_at({at.first - 1, at.second - 1});
    SolveResult r = solve(m, x);
    return {r.solution, r.certificate};
}

DSolve solve_d_bidegree(const Bicomplex& b, Bideg pq, const SparseVec& alpha, const SparseVec& alpha_prime,
                        bool check_ddbar, std::optional<int> max_total) {
    DSolve out;
    int p = pq.first, q = pq.second;
    Bideg b1{p + 1, q}, b2{p, q + 1};
    if (check_ddbar) {
        auto cert = ddbar_property(b, max_total);
        if (!cert.verdict) {
            out.failure = "ddbar property fails in degree " + std::to_string(*cert.witness_degree);
            out.witness = cert.witness;
            return out;
        }
    }
    int k = p + q + 1;
    SparseVec a = vec::add(b.embed(b1, alpha), b.embed(b2, alpha_prime));
    SolveResult ex = solve(b.d_total(k - 1), a);
    if (!ex.solution) {
        out.failure = "input is not d-exact";
        out.witness = ex.certificate;
        return out;
    }
    auto s1 = solve_ddbar(b, {p + 1, q + 1}, b.del_at(b2).apply(alpha_prime));
    if (!s1.solution) {
        out.failure = "del alpha' is not del-delbar-exact";
        out.witness = s1.certificate;
        return out;
    }
    const SparseVec& x = *s1.solution;
    auto s2 = solve_ddbar(b, b1, vec::sub(alpha, b.del_at(pq).apply(x)));
    auto s3 = solve_ddbar(b, b2, vec::sub(alpha_prime, b.delbar_at(pq).apply(x)));
    if (!s2.solution || !s3.solution) {
        out.failure = "second-stage del-delbar equation unsolvable";
        out.witness = s2.solution ? s3.certificate : s2.certificate;
        return out;
    }
    SparseVec beta = vec::sub(b.delbar_at({p, q - 1}).apply(*s2.solution), b.del_at({p - 1, q}).apply(*s3.solution));
    beta = vec::add(beta, x);
    if (!vec::sub(b.del_at(pq).apply(beta), alpha).empty() || !vec::sub(b.delbar_at(pq).apply(beta), alpha_prime).empty()) {
        out.failure = "internal: d beta != a";
        return out;
    }
    out.ok = true;
    out.beta = std::move(beta);
    return out;
}

}  // namespace pluri
