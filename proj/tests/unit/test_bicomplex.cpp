#include "doctest.h"
#include "support/gen.hpp"

using namespace pluri;

namespace {

void check_tables(const gen::Sample& s) {
    for (Flavor fl : {Flavor::BC, Flavor::A, Flavor::Del, Flavor::Delbar}) {
        auto got = cohomology(s.b, fl).table();
        auto want = s.expected.bideg.count(fl) ? s.expected.bideg.at(fl) : std::map<Bideg, int>{};
        for (auto it = got.begin(); it != got.end();)
            it = it->second == 0 ? got.erase(it) : std::next(it);
        CHECK_MESSAGE(got == want, to_string(fl));
    }
    auto dr = cohomology(s.b, Flavor::dR);
    std::map<int, int> got;
    for (const auto& [b, n] : dr.table())
        if (n) got[b.first] = n;
    CHECK(got == s.expected.dR);
}

bool has_zigzag_of_length_ge2(const gen::Sample& s) {
    for (const auto& sh : s.shapes)
        if (sh.kind == "zigzag") return true;
    return false;
}

}  // namespace

TEST_CASE("single indecomposables have the textbook cohomology") {
    check_tables(gen::assemble({gen::dot({1, 2})}));
    check_tables(gen::assemble({gen::square({0, 0})}));
    for (int start = 0; start < 2; ++start)
        for (int len = 2; len <= 5; ++len) check_tables(gen::assemble({gen::zigzag(1, 4, start, len)}));
}

TEST_CASE("fixture square has trivial cohomology and the ddbar property") {
    auto s = gen::assemble({gen::square({0, 0})});
    CHECK(s.b.check() == std::nullopt);
    auto c = ddbar_property(s.b);
    CHECK(c.verdict);
    CHECK(c.count_verdict);
}

TEST_CASE("property: random sums of indecomposables under basis change") {
    gen::Rng r(0xb1c0);
    for (int trial = 0; trial < 60; ++trial) {
        auto s = gen::random_sample(r);
        REQUIRE(s.b.check() == std::nullopt);
        check_tables(s);
        auto c = ddbar_property(s.b);
        CHECK(c.verdict == c.count_verdict);
        // with only dots and squares the ddbar property holds; a zigzag of length >= 2 breaks it
        CHECK(c.verdict == !has_zigzag_of_length_ge2(s));
    }
}

TEST_CASE("ddbar witness is a Bott-Chern cocycle with vanishing de Rham class") {
    auto s = gen::assemble({gen::zigzag(0, 3, 0, 3), gen::dot({0, 0})});
    auto c = ddbar_property(s.b);
    REQUIRE_FALSE(c.verdict);
    REQUIRE(c.witness);
    int k = *c.witness_degree;
    CHECK(s.b.d_total(k).apply(*c.witness).empty());
    CHECK(solve(s.b.d_total(k - 1), *c.witness).solution.has_value());
}

TEST_CASE("check rejects a non-anticommuting square") {
    auto s = gen::assemble({gen::square({0, 0})});
    s.b.delbar[{1, 0}].cols[0] = {{0, Scalar(1)}};
    auto e = s.b.check();
    REQUIRE(e);
    CHECK(e->find("del delbar + delbar del") != std::string::npos);
}

TEST_CASE("identity map is a pluripotential quasi-isomorphism; a zero map onto a dot is not") {
    auto s = gen::assemble({gen::dot({1, 1}), gen::zigzag(0, 3, 1, 3)});
    BicomplexMap id;
    for (const auto& [b, n] : s.b.dims) id.blocks[b] = LinearMap::identity(n);
    CHECK(is_pluripotential_qiso(s.b, s.b, id).verdict);
    BicomplexMap zero;
    auto q = is_pluripotential_qiso(s.b, s.b, zero);
    CHECK_FALSE(q.verdict);
    CHECK_FALSE(q.failures.empty());
}

TEST_CASE("property: solve_ddbar round trip and certificates") {
    gen::Rng r(77);
    int solved = 0, certified = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto s = gen::random_sample(r);
        for (const auto& [b, n] : s.b.dims) {
            Bideg src{b.first - 1, b.second - 1};
            int m = s.b.dim(src);
            SparseVec y;
            for (int j = 0; j < m; ++j) y = vec::axpy(y, gen::small_rational(r), vec::unit(j));
            SparseVec x = s.b.ddbar_at(src).apply(y);
            auto sol = solve_ddbar(s.b, b, x);
            REQUIRE(sol.solution);
            CHECK(vec::sub(s.b.ddbar_at(src).apply(*sol.solution), x).empty());
            ++solved;
            // a random vector is usually not in the image; then the certificate must separate it
            SparseVec z;
            for (int j = 0; j < n; ++j) z = vec::axpy(z, gen::small_rational(r), vec::unit(j));
            auto t = solve_ddbar(s.b, b, z);
            if (t.solution) {
                CHECK(vec::sub(s.b.ddbar_at(src).apply(*t.solution), z).empty());
            } else {
                REQUIRE(t.certificate);
                CHECK(!vec::dot(*t.certificate, z).is_zero());
                for (const auto& col : s.b.ddbar_at(src).cols) CHECK(vec::dot(*t.certificate, col).is_zero());
                ++certified;
            }
        }
    }
    CHECK(solved > 0);
    CHECK(certified > 0);
}

TEST_CASE("property: solve_d_bidegree on ddbar-complexes") {
    gen::Rng r(1234);
    for (int trial = 0; trial < 30; ++trial) {
        auto s = gen::random_sample(r, 6, false);
        for (const auto& [b, n] : s.b.dims) {
            SparseVec beta;
            for (int j = 0; j < n; ++j) beta = vec::axpy(beta, gen::small_rational(r), vec::unit(j));
            SparseVec a1 = s.b.del_at(b).apply(beta), a2 = s.b.delbar_at(b).apply(beta);
            auto res = solve_d_bidegree(s.b, b, a1, a2);
            REQUIRE_MESSAGE(res.ok, res.failure);
            CHECK(vec::sub(s.b.del_at(b).apply(res.beta), a1).empty());
            CHECK(vec::sub(s.b.delbar_at(b).apply(res.beta), a2).empty());
        }
    }
}

TEST_CASE("solve_d_bidegree refuses closed non-exact input and non-ddbar complexes") {
    auto s = gen::assemble({gen::dot({1, 0}), gen::square({0, 0})});
    // the dot at (1,0) is closed but not exact
    auto res = solve_d_bidegree(s.b, {0, 0}, vec::add(vec::unit(0), vec::unit(1)), {});
    CHECK_FALSE(res.ok);
    REQUIRE(res.witness);
    auto z = gen::assemble({gen::zigzag(0, 3, 0, 3)});
    auto bad = solve_d_bidegree(z.b, {0, 2}, {}, {});
    CHECK_FALSE(bad.ok);
    CHECK(bad.failure.find("ddbar property fails") != std::string::npos);
}
