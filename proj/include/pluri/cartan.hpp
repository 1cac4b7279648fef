#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pluri/algebra.hpp"

namespace pluri {

/* A cbba with k contraction derivations.  iota10[a][g] is the (-1,0) part of
   iota_a on generator g, iota01[a][g] the (0,-1) part. */
struct TCbba {
    Algebra A{true};
    int rank = 0;
    std::vector<std::vector<Element>> iota10, iota01;

    void resize();
    Element contract(int a, const Element& x, int part) const;  // part: 10, 01, or 0 for both
    ValidationReport validate() const;
};

/* C = C[xi^1..xi^k] (x) A, xi at (1,1).  The xi generators come first. */
struct CartanModel {
    Algebra C{true};
    int rank = 0;
    int offset = 0;  // index of the first generator of A inside C

    Element lift(const Algebra& A, const Element& x) const;     // 1 (x) x
    Element restrict_to(const Algebra& A, const Element& x) const;  // xi -> 0
    Morphism restriction(const Algebra& A) const;
};

/* throws AlgebraError on invariance failure (message names the generator) */
CartanModel cartan_model(const TCbba& t);

struct ExtensionResult {
    bool ok = false;
    Element extension;  // in C
    int stages = 0;
    std::string failure;
    std::optional<int> failed_stage;
};
ExtensionResult extend_to_equivariant(const TCbba& t, const CartanModel& c, const Element& theta, int window);

struct CartanDdbarReport {
    bool verdict = false;
    bool surjective = false;  // C -> A surjective on window de Rham cohomology
    std::map<int, std::array<int, 3>> table;
};
CartanDdbarReport cartan_ddbar_check(const TCbba& t, const CartanModel& c, int window);

}  // namespace pluri
