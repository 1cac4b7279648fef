#include <filesystem>
#include <functional>

#include "doctest.h"
#include "pluri/toric.hpp"
#include "support/alg.hpp"

using namespace pluri;
namespace fs = std::filesystem;

namespace {

InputError input_error(const std::function<void()>& f) {
    try {
        f();
    } catch (const InputError& e) {
        return e;
    }
    FAIL("expected an input error");
    return InputError(0, 0, "");
}

}  // namespace

TEST_CASE("every shipped fixture survives parse(serialize(x))") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(fixture_dir())) {
        std::string name = entry.path().filename().string();
        if (name.rfind("invalid_", 0) == 0 || entry.path().extension() == ".md") continue;
        std::string text = read_file(entry.path().string());
        std::string kind = detect_kind(text);
        CAPTURE(name);
        std::string once, twice;
        if (kind == "algebra") {
            once = serialize_algebra(parse_algebra(text));
            twice = serialize_algebra(parse_algebra(once));
        } else if (kind == "bicomplex") {
            once = serialize_bicomplex(parse_bicomplex(text));
            twice = serialize_bicomplex(parse_bicomplex(once));
        } else if (kind == "fan") {
            once = serialize_fan(parse_fan(text));
            twice = serialize_fan(parse_fan(once));
        } else {
            once = serialize_tcbba(parse_tcbba(text));
            twice = serialize_tcbba(parse_tcbba(once));
        }
        CHECK(once == twice);
        ++seen;
    }
    CHECK(seen >= 15);
}

TEST_CASE("round trip keeps the algebra structure of Lambda W") {
    Algebra w = load_lambda_W();
    Algebra w2 = parse_algebra(serialize_algebra(w));
    REQUIRE(w.ngens() == w2.ngens());
    for (int g = 0; g < w.ngens(); ++g) {
        CHECK(w.gen(g).name == w2.gen(g).name);
        CHECK(w.gen(g).bideg() == w2.gen(g).bideg());
        CHECK(w.gen(g).partner == w2.gen(g).partner);
        CHECK(w.str(w.del_of(g)) == w2.str(w2.del_of(g)));
        CHECK(w.str(w.delbar_of(g)) == w2.str(w2.delbar_of(g)));
    }
    CHECK(w.field() == w2.field());
    CHECK(w.truncation() == w2.truncation());
}

TEST_CASE("property: random bicomplexes round trip exactly") {
    gen::Rng r(31);
    for (int trial = 0; trial < 40; ++trial) {
        auto s = gen::random_sample(r);
        Bicomplex b = parse_bicomplex(serialize_bicomplex(s.b));
        CHECK(b.dims == s.b.dims);
        for (const auto& [at, n] : s.b.dims) {
            CHECK(b.del_at(at).cols == s.b.del_at(at).cols);
            CHECK(b.delbar_at(at).cols == s.b.delbar_at(at).cols);
        }
    }
}

TEST_CASE("the CP2 fan has three rays") {
    Fan f = parse_fan(read_file(gen::fixture("cp2.fan")));
    CHECK(f.rays.size() == 3);
    CHECK(f.complete);
}

TEST_CASE("semantic errors name the generator and its line") {
    std::string text =
        "algebra\n"
        "grading single\n"
        "truncate 6\n"
        "gen x 2\n"
        "gen y 3\n"
        "gen z 4\n"
        "d y = x^2\n"
        "d z = x*y\n";
    auto e = input_error([&] { parse_algebra(text); });
    CHECK(std::string(e.what()).find("z") != std::string::npos);
    CHECK(e.line == 8);  // the line defining d z
}

TEST_CASE("syntax errors carry line and column") {
    auto e = input_error([] { parse_algebra("algebra\ngen x (1,1\n"); });
    CHECK(e.line == 2);
    CHECK(e.col > 1);
    auto f = input_error([] { parse_algebra("algebra\ngen x (1,1)\ndel x = x*q\n"); });
    CHECK(f.line == 3);
    CHECK(std::string(f.what()).find("unknown generator") != std::string::npos);
    auto g = input_error([] { parse_bicomplex("bicomplex\ndim (0,0) 1\ndel (0,0) 0 0 1/0\n"); });
    CHECK(g.line == 3);
    auto h = input_error([] { parse_fan("fan\nrank 2\nray 1 0\nray 0 1\ncone 0 1\n"); });
    CHECK(std::string(h.what()).find("completeness") != std::string::npos);
    auto k = input_error([] { parse_fan("fan\nrank 2\nray 2 0\nray 0 1\ncone 0 1\ncomplete false\n"); });
    CHECK(std::string(k.what()).find("primitive") != std::string::npos);
}

TEST_CASE("invalid torus action is rejected with the failing generator") {
    auto e = input_error([] { parse_tcbba(read_file(gen::fixture("invalid_circle_iota_w.tcb"))); });
    CHECK(std::string(e.what()).find("invariance") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored") {
    Bicomplex a = parse_bicomplex("# header comment\n\nbicomplex  # trailing\ndim (0,0) 1 # one\n");
    CHECK(a.dim({0, 0}) == 1);
}
