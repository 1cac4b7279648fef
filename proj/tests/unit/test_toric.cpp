#include "doctest.h"
#include "pluri/toric.hpp"
#include "support/alg.hpp"

using namespace pluri;

namespace {

Fan fan(const std::string& name) { return parse_fan(read_file(gen::fixture(name))); }

}  // namespace

TEST_CASE("Betti numbers of the shipped fans agree with the h-vector") {
    struct Case {
        const char* file;
        std::vector<int> betti;
    };
    for (const auto& c : std::vector<Case>{{"cp1.fan", {1, 1}},
                                           {"cp2.fan", {1, 1, 1}},
                                           {"cp1xcp1.fan", {1, 2, 1}},
                                           {"cp3.fan", {1, 1, 1, 1}},
                                           {"hirzebruch_F0.fan", {1, 2, 1}},
                                           {"hirzebruch_F1.fan", {1, 2, 1}}}) {
        CAPTURE(c.file);
        Fan f = fan(c.file);
        auto b = betti_numbers(f);
        CHECK(b == c.betti);
        auto h = h_vector(f);
        CHECK(std::vector<int>(h.begin(), h.end()) == b);
        CHECK(freeness_check(f, 20).verdict);
    }
}

TEST_CASE("Stanley-Reisner relations of CP2 and CP1 x CP1") {
    auto nf = minimal_nonfaces(fan("cp2.fan"));
    CHECK(nf == std::vector<std::vector<int>>{{0, 1, 2}});
    auto nq = minimal_nonfaces(fan("cp1xcp1.fan"));
    CHECK(nq == std::vector<std::vector<int>>{{0, 2}, {1, 3}});
}

TEST_CASE("equivariant cohomology of CP1 has Hilbert series 1, 2, 2, 2, ...") {
    Algebra h = equivariant_cohomology(fan("cp1.fan"), 8);
    auto hs = hilbert_series(h, 8);
    CHECK(hs == std::vector<int>{1, 0, 2, 0, 2, 0, 2, 0, 2});
}

TEST_CASE("a fan whose walls are not shared twice is rejected as incomplete") {
    Fan f;
    f.n = 2;
    f.rays = {{1, 0}, {0, 1}, {-1, -1}};
    f.cones = {{0, 1}, {1, 2}};
    f.complete = true;
    auto e = check_fan(f);
    REQUIRE(e);
    CHECK(e->find("wall") != std::string::npos);
    f.complete = false;
    CHECK_FALSE(check_fan(f).has_value());
}

TEST_CASE("C[t] tensor S is acyclic in positive degrees for all five cohomologies") {
    Algebra a = gen::load("c_t.alg");
    Algebra s = adjoin_contractible(a, {a.g("t")});
    auto w = s.max_window();
    REQUIRE(w);
    Bicomplex b = s.underlying_bicomplex(*w);
    for (Flavor fl : kAllFlavors) {
        auto c = cohomology(b, fl, *w);
        for (const auto& [bd, n] : c.table()) {
            if (bd == Bideg{0, 0}) CHECK(n == 1);
            else CHECK(n == 0);
        }
    }
}

TEST_CASE("H_T(CP2) tensor S projects onto H(CP2) by a pluripotential quasi-isomorphism") {
    Fan f = fan("cp2.fan");
    Algebra ht = equivariant_cohomology(f, 8);
    Algebra hs = adjoin_contractible(ht, linear_forms(f, ht));
    Algebra h = ordinary_cohomology(f, 8);
    std::vector<Element> im;
    for (const auto& g : hs.gens()) {
        auto k = h.find(g.name);
        im.push_back(k ? h.g(*k) : Element{});
    }
    Morphism m{&hs, &h, im};
    REQUIRE(check_morphism(m, true).ok);
    int W = *hs.max_window();
    Bicomplex bs = hs.underlying_bicomplex(W), bt = h.underlying_bicomplex(W);
    CHECK(is_pluripotential_qiso(bs, bt, m.bicomplex_map(bs, bt, W), W).verdict);
}

TEST_CASE("adjoin_contractible refuses images that are not closed (1,1) classes") {
    Algebra a = gen::load("c_t.alg");
    CHECK_THROWS_AS(adjoin_contractible(a, {a.pow(a.g("t"), 2)}), AlgebraError);
}
