#include "doctest.h"
#include "support/gen.hpp"

using namespace pluri;

namespace {

LinearMap random_map(gen::Rng& r, int src, int dst, int rank_cap) {
    // product of a dst x k and a k x src matrix, so rank <= k
    int k = std::min({rank_cap, src, dst});
    std::vector<SparseVec> left(k);
    for (int l = 0; l < k; ++l)
        for (int i = 0; i < dst; ++i)
            if (r.coin(0.6)) left[l].emplace_back(i, gen::nonzero_rational(r));
    LinearMap m(src, dst);
    for (int j = 0; j < src; ++j)
        for (int l = 0; l < k; ++l)
            if (r.coin(0.6)) m.cols[j] = vec::axpy(m.cols[j], gen::small_rational(r), left[l]);
    return m;
}

}  // namespace

TEST_CASE("property: rank-nullity and kernel vectors") {
    gen::Rng r(11);
    for (int trial = 0; trial < 200; ++trial) {
        int s = r.range(0, 7), d = r.range(0, 7);
        LinearMap m = random_map(r, s, d, r.range(0, 7));
        auto ki = kernel_image(m);
        CHECK(ki.rank + static_cast<int>(ki.kernel.size()) == s);
        CHECK(rank_of(ki.kernel) == static_cast<int>(ki.kernel.size()));
        for (const auto& v : ki.kernel) CHECK(m.apply(v).empty());
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("property: solve returns a solution or a separating certificate") {
    gen::Rng r(12);
    for (int trial = 0; trial < 200; ++trial) {
        int s = r.range(1, 6), d = r.range(1, 6);
        LinearMap m = random_map(r, s, d, r.range(0, 5));
        SparseVec b;
        for (int i = 0; i < d; ++i)
            if (r.coin()) b.emplace_back(i, gen::nonzero_rational(r));
        auto res = solve(m, b);
        CHECK(res.solution.has_value() != res.certificate.has_value());
        if (res.solution) {
            CHECK(vec::sub(m.apply(*res.solution), b).empty());
        } else {
            CHECK_FALSE(vec::dot(*res.certificate, b).is_zero());
            for (const auto& c : m.cols) CHECK(vec::dot(*res.certificate, c).is_zero());
        }
    }
}

TEST_CASE("Quotient keeps numerator order and detects zero classes") {
    // Z = span(e0, e1, e2), B = span(e0 + e1)
    SparseVec e0 = vec::unit(0), e1 = vec::unit(1), e2 = vec::unit(2);
    Quotient q({e0, e1, e2}, {vec::add(e0, e1)});
    CHECK(q.dim() == 2);
    CHECK(q.reps()[0] == e0);
    CHECK(q.reps()[1] == e2);
    CHECK(q.is_zero_class(vec::add(e0, e1)));
    auto c = q.coords(e1);
    REQUIRE(c);
    CHECK(*c == SparseVec{{0, Scalar(-1)}});
    CHECK_FALSE(q.coords(vec::unit(3)).has_value());
}

TEST_CASE("Echelon tracking reproduces the inserted combination") {
    gen::Rng r(13);
    Echelon e;
    std::vector<SparseVec> ins;
    for (int k = 0; k < 6; ++k) {
        SparseVec v;
        for (int i = 0; i < 5; ++i)
            if (r.coin()) v.emplace_back(i, gen::nonzero_rational(r));
        if (e.insert(v, vec::unit(static_cast<int>(ins.size())))) ins.push_back(v);
    }
    CHECK(e.rank() == static_cast<int>(ins.size()));
    for (const auto& v : ins) CHECK(e.contains(v));
}
