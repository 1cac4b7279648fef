#include "pluri/linalg.hpp"

#include <algorithm>

namespace pluri {

namespace vec {

SparseVec unit(int i) { return {{i, Scalar(1)}}; }

SparseVec axpy(const SparseVec& v, const Scalar& c, const SparseVec& w) {
    if (c.is_zero() || w.empty()) return v;
    SparseVec r;
    r.reserve(v.size() + w.size());
    size_t a = 0, b = 0;
    while (a < v.size() || b < w.size()) {
        if (b == w.size() || (a < v.size() && v[a].first < w[b].first)) {
            r.push_back(v[a++]);
        } else if (a == v.size() || w[b].first < v[a].first) {
            r.emplace_back(w[b].first, c * w[b].second);
            ++b;
        } else {
            Scalar s = v[a].second + c * w[b].second;
            if (!s.is_zero()) r.emplace_back(v[a].first, std::move(s));
            ++a;
            ++b;
        }
    }
    return r;
}

SparseVec scale(const SparseVec& v, const Scalar& c) {
    if (c.is_zero()) return {};
    SparseVec r;
    r.reserve(v.size());
    for (const auto& [i, x] : v) r.emplace_back(i, x * c);
    return r;
}

SparseVec add(const SparseVec& v, const SparseVec& w) { return axpy(v, Scalar(1), w); }
SparseVec sub(const SparseVec& v, const SparseVec& w) { return axpy(v, Scalar(-1), w); }

Scalar dot(const SparseVec& v, const SparseVec& w) {
    Scalar s;
    size_t a = 0, b = 0;
    while (a < v.size() && b < w.size()) {
        if (v[a].first < w[b].first) ++a;
        else if (w[b].first < v[a].first) ++b;
        else {
            s += v[a].second * w[b].second;
            ++a;
            ++b;
        }
    }
    return s;
}

Scalar at(const SparseVec& v, int i) {
    auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, int k) { return e.first < k; });
    if (it != v.end() && it->first == i) return it->second;
    return Scalar();
}

SparseVec shift(const SparseVec& v, int offset) {
    SparseVec r = v;
    for (auto& e : r) e.first += offset;
    return r;
}

SparseVec slice(const SparseVec& v, int lo, int hi, int offset) {
    SparseVec r;
    for (const auto& e : v)
        if (e.first >= lo && e.first < hi) r.emplace_back(e.first - offset, e.second);
    return r;
}

SparseVec conj(const SparseVec& v) {
    SparseVec r;
    r.reserve(v.size());
    for (const auto& [i, x] : v) r.emplace_back(i, x.conjugate());
    return r;
}

SparseVec from_dense(const std::vector<Scalar>& d) {
    SparseVec r;
    for (int i = 0; i < static_cast<int>(d.size()); ++i)
        if (!d[i].is_zero()) r.emplace_back(i, d[i]);
    return r;
}

std::vector<Scalar> to_dense(const SparseVec& v, int dim) {
    std::vector<Scalar> d(dim);
    for (const auto& [i, x] : v) d.at(i) = x;
    return d;
}

}  // namespace vec

LinearMap LinearMap::identity(int n) {
    LinearMap m(n, n);
    for (int j = 0; j < n; ++j) m.cols[j] = vec::unit(j);
    return m;
}

SparseVec LinearMap::apply(const SparseVec& v) const {
    SparseVec r;
    for (const auto& [j, c] : v) r = vec::axpy(r, c, cols.at(j));
    return r;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    LinearMap m(inner.src, dst);
    for (int j = 0; j < inner.src; ++j) m.cols[j] = apply(inner.cols[j]);
    return m;
}

LinearMap LinearMap::transpose() const {
    LinearMap t(dst, src);
    for (int j = 0; j < src; ++j)
        for (const auto& [i, c] : cols[j]) t.cols[i].emplace_back(j, c);
    return t;
}

bool LinearMap::is_zero() const {
    return std::all_of(cols.begin(), cols.end(), [](const SparseVec& c) { return c.empty(); });
}

DenseMatrix LinearMap::dense() const {
    DenseMatrix d(dst, std::vector<Scalar>(src));
    for (int j = 0; j < src; ++j)
        for (const auto& [i, c] : cols[j]) d[i][j] = c;
    return d;
}

bool Echelon::reduce(SparseVec& v, SparseVec* t) const {
    size_t k = 0;
    while (k < v.size()) {
        auto it = where_.find(v[k].first);
        if (it == where_.end()) {
            ++k;
            continue;
        }
        Scalar c = v[k].second;
        v = vec::axpy(v, -c, rows_[it->second]);
        if (t) *t = vec::axpy(*t, -c, track_[it->second]);
    }
    return v.empty();
}

bool Echelon::insert(SparseVec v, SparseVec t) {
    if (reduce(v, &t)) return false;
    Scalar inv = v.front().second.inverse();
    v = vec::scale(v, inv);
    t = vec::scale(t, inv);
    int p = v.front().first;
    where_[p] = static_cast<int>(rows_.size());
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    track_.push_back(std::move(t));
    return true;
}

KernelImage kernel_image(const LinearMap& m) {
    KernelImage out;
    Echelon e;
    for (int j = 0; j < m.src; ++j) {
        SparseVec v = m.cols[j], t = vec::unit(j);
        if (e.reduce(v, &t)) out.kernel.push_back(std::move(t));
        else e.insert(std::move(v), std::move(t));
    }
    out.image = e.rows();
    out.rank = e.rank();
    return out;
}

std::vector<SparseVec> kernel(const LinearMap& m) { return kernel_image(m).kernel; }

int rank(const LinearMap& m) {
    Echelon e;
    for (const auto& c : m.cols) e.insert(c);
    return e.rank();
}

int rank_of(const std::vector<SparseVec>& vs) {
    Echelon e;
    for (const auto& c : vs) e.insert(c);
    return e.rank();
}

LinearMap stack(const LinearMap& a, const LinearMap& b) {
    LinearMap m(a.src, a.dst + b.dst);
    for (int j = 0; j < a.src; ++j) {
        m.cols[j] = a.cols[j];
        auto tail = vec::shift(b.cols[j], a.dst);
        m.cols[j].insert(m.cols[j].end(), tail.begin(), tail.end());
    }
    return m;
}

SolveResult solve(const LinearMap& m, const SparseVec& b) {
    Echelon e;
    for (int j = 0; j < m.src; ++j) e.insert(m.cols[j], vec::unit(j));
    SparseVec r = b, t;
    SolveResult out;
    if (e.reduce(r, &t)) {
        out.solution = vec::scale(t, Scalar(-1));
        return out;
    }
    for (const auto& y : kernel(m.transpose())) {
        if (!vec::dot(y, b).is_zero()) {
            out.certificate = y;
            break;
        }
    }
    return out;
}

Quotient::Quotient(const std::vector<SparseVec>& numerator, const std::vector<SparseVec>& denominator) {
    for (const auto& b : denominator) {
        denom_.insert(b);
        full_.insert(b);
    }
    for (const auto& z : numerator) {
        SparseVec v = z, t = vec::unit(static_cast<int>(reps_.size()));
        if (full_.reduce(v, &t)) continue;
        reps_.push_back(z);
        full_.insert(std::move(v), std::move(t));
    }
}

std::optional<SparseVec> Quotient::coords(const SparseVec& w) const {
    SparseVec v = w, t;
    if (!full_.reduce(v, &t)) return std::nullopt;
    return vec::scale(t, Scalar(-1));
}

}  // namespace pluri
