#include <algorithm>

#include "doctest.h"
#include "pluri/models.hpp"
#include "support/alg.hpp"

using namespace pluri;

namespace {

std::map<int, int> dims_of(const MinimalModel& m) {
    std::map<int, int> d;
    for (const auto& [k, gs] : m.by_degree)
        if (!gs.empty()) d[k] = static_cast<int>(gs.size());
    return d;
}

/* the ring of build_H with generators declared in the given order */
Algebra permuted_H(const std::vector<std::string>& order) {
    Algebra h(false, 8);
    for (const auto& n : order) h.add_generator(n, n == "beta" ? 4 : 2);
    for (const char* r : {"alpha^2", "x*alpha", "y*alpha", "x*y", "x*beta", "y*beta", "beta^2", "alpha*beta - x^3",
                          "x^3 - y^3"})
        h.add_relation(h.parse(r));
    return h;
}

}  // namespace

TEST_CASE("minimal model of the 2-sphere: x and y with d y = x^2, nothing more") {
    Algebra s2 = gen::load("s2.alg");
    auto m = minimal_model(s2, 8);
    CHECK(dims_of(m) == std::map<int, int>{{2, 1}, {3, 1}});
    CHECK(m.certified == 7);
    const Algebra& M = *m.model;
    int y = m.by_degree.at(3)[0];
    int x = m.by_degree.at(2)[0];
    CHECK((M.d(M.g(y)) - M.pow(M.g(x), 2)).is_zero());
    CHECK_FALSE(dga_qiso_failure(m.morphism(), 7).has_value());
}

TEST_CASE("minimal model of the connected-sum ring has dims 3, 4, 5, 11") {
    auto m = minimal_model(build_H(), 6);
    CHECK(dims_of(m) == std::map<int, int>{{2, 3}, {3, 4}, {4, 5}, {5, 11}});
    for (const auto& [k, gs] : m.by_degree)
        for (int g : gs) CHECK(decomposable(m.model->del_of(g)));
    CHECK_FALSE(dga_qiso_failure(m.morphism(), 5).has_value());
}

TEST_CASE("property: minimal model dimensions do not depend on generator order") {
    std::vector<std::string> order{"alpha", "x", "y", "beta"};
    gen::Rng r(41);
    for (int trial = 0; trial < 4; ++trial) {
        std::shuffle(order.begin(), order.end(), r.eng);
        auto m = minimal_model(permuted_H(order), 6);
        CHECK(dims_of(m) == std::map<int, int>{{2, 3}, {3, 4}, {4, 5}, {5, 11}});
        CHECK_FALSE(dga_qiso_failure(m.morphism(), 5).has_value());
    }
}

TEST_CASE("minimal model refuses non simply connected input") {
    Algebra h = gen::load("heisenberg.alg");
    CHECK_THROWS_WITH_AS(minimal_model(h, 4), doctest::Contains("not simply connected"), AlgebraError);
    CHECK_THROWS_AS(minimal_model(gen::load("flag_C.alg"), 4), AlgebraError);
}

TEST_CASE("regular sequences: truncated polynomial and flag relations pass, x1x2, x1x3 fails") {
    CHECK(is_regular_sequence(gen::load("cp3.alg"), 20).verdict);
    CHECK(is_regular_sequence(gen::load("flag_Q.alg"), 20).verdict);
    Algebra a(false, 20);
    a.add_generator("x1", 2);
    a.add_generator("x2", 2);
    a.add_generator("x3", 2);
    a.add_relation(a.parse("x1*x2"));
    a.add_relation(a.parse("x1*x3"));
    auto rep = is_regular_sequence(a, 20);
    CHECK_FALSE(rep.verdict);
    REQUIRE(rep.first_mismatch);
    CHECK(*rep.first_mismatch == 6);
}

TEST_CASE("Koszul models of Q[x]/(x^(k+1)) verify through degree 8") {
    for (int k = 1; k <= 3; ++k) {
        Algebra h(false, 12);
        h.add_generator("x", 2);
        h.add_relation(h.pow(h.g("x"), k + 1));
        auto km = koszul_model(h, 9);
        CHECK_MESSAGE(km.verified, km.failure);
        CHECK(km.through == 8);
    }
}

TEST_CASE("bigraded Koszul model of the flag ring and its ddbar property") {
    auto km = bigraded_koszul_model(gen::load("flag_C.alg"), 9);
    REQUIRE_MESSAGE(km.verified, km.failure);
    for (int w = 0; w <= 8; ++w) CHECK(ddbar_property(km.model->underlying_bicomplex(w), w).verdict);
    CHECK(km.model->validate().ok);
}

TEST_CASE("bigraded Koszul model refuses off-diagonal relations") {
    Algebra h(true, 8);
    h.set_field(FieldTag::Qi);
    h.set_real_structure(true);
    int a = h.add_generator("a", 1, 0), b = h.add_generator("b", 0, 1);
    h.pair_generators(a, b);
    h.add_relation(h.mul(h.g(a), h.g(b)));
    CHECK_THROWS_AS(bigraded_koszul_model(h, 6), AlgebraError);
}

TEST_CASE("Massey product <x,x,y> in the Heisenberg algebra is x z and does not vanish") {
    Algebra h = gen::load("heisenberg.alg");
    auto m = triple_massey(h, h.g("x"), h.g("x"), h.g("y"));
    REQUIRE(m.defined);
    CHECK(h.str(m.representative) == "x*z");
    CHECK_FALSE(m.vanishes);
}

TEST_CASE("property: <u,u,w> is nonzero for every basis u, w of H^1 of the Heisenberg algebra") {
    Algebra h = gen::load("heisenberg.alg");
    gen::Rng r(43);
    for (int trial = 0; trial < 20; ++trial) {
        Scalar a = gen::small_rational(r), b = gen::small_rational(r), c = gen::small_rational(r),
               d = gen::small_rational(r);
        Element u = h.g("x").scaled(a) + h.g("y").scaled(b), w = h.g("x").scaled(c) + h.g("y").scaled(d);
        bool invertible = !(a * d - b * c).is_zero();
        auto m = triple_massey(h, u, u, w);
        REQUIRE(m.defined);
        CHECK(m.vanishes == !invertible);
    }
}

TEST_CASE("Massey products in a ring with zero differential vanish; undefined ones are reported") {
    Algebra H = build_H();
    auto m = triple_massey(H, H.g("x"), H.g("y"), H.g("alpha"));
    REQUIRE(m.defined);
    CHECK(m.vanishes);
    auto bad = triple_massey(H, H.g("x"), H.g("x"), H.g("y"));
    CHECK_FALSE(bad.defined);
    CHECK_FALSE(bad.failure.empty());
}

TEST_CASE("homotopy data of a minimal model has zero linear differential") {
    auto m = minimal_model(build_H(), 6);
    auto hd = homotopy(*m.model);
    int total = 0;
    for (const auto& [b, gs] : hd.basis) total += static_cast<int>(gs.size());
    CHECK(total == 3 + 4 + 5 + 11);
    for (const auto& [b, map] : hd.linear.del) CHECK(map.is_zero());
}
