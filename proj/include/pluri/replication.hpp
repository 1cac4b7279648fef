#pragma once

#include <map>
#include <string>
#include <vector>

#include "pluri/models.hpp"

namespace pluri {

struct CheckLine {
    std::string name;
    bool ok = false;
    std::string detail;
};

bool all_ok(const std::vector<CheckLine>& cs);

/* fixture directory compiled in; overridable for relocated installs */
std::string fixture_dir();

/* cohomology ring of CP^3 # CP^3 # (S^2 x S^4): alpha, x, y in degree 2, beta in degree 4 */
Algebra build_H(int truncation = 8);
/* the same ring over Q(i), generators at (1,1) and (2,2), with the trivial real structure */
Algebra build_H_complex(int truncation = 8);

/* shipped rational model Lambda V (generators through degree 5) and bigraded model Lambda W */
Algebra load_lambda_V();
Algebra load_lambda_W();
/* the eleven degree-6 cocycles v_1..v_11 of Lambda V^{<=4}, i.e. d q_i */
std::vector<Element> listed_cocycles(const Algebra& V);

struct VReport {
    MinimalModel computed;
    std::map<int, int> dims;  // degree -> dim V^k of the computed model
    int kernel_dim = 0;       // dim ker H^6(Lambda V^{<=4}) -> H^6
    std::vector<CheckLine> checks;
    bool ok = false;
};
/* runs minimal_model(build_H(), N) and checks it against the shipped Lambda V */
VReport build_V(int N = 6);

/* phi + lambda xi : Lambda V (x) Q(lambda) -> H (x) Q(lambda) */
Morphism build_psi(const Algebra& V, const Algebra& H, const Scalar& lambda, bool mutate_xi = false);

struct WReport {
    std::vector<CheckLine> checks;
    bool ok = false;
    std::map<int, bool> qiso_by_window;  // window -> verdict
};
/* validates Lambda W and its map to H (x) C on windows 0..window */
WReport build_W(int window = 6);
/* Lambda W completed by squares and zigzags until Phi is a pluripotential
   quasi-isomorphism on windows 0..window */
ModelCompletion complete_lambda_W(int window = 6);

/* psi-tilde on Lambda V^{<=4}, into totalize(Lambda W) over Q(i,lambda) */
struct PsiTilde {
    Algebra source;  // Lambda V^{<=4} over Q(lambda)
    Algebra target;  // totalize(Lambda W) over Q(i,lambda)
    Morphism map() const { return {&source, &target, images}; }
    std::vector<Element> images;
};
PsiTilde build_psi_tilde(const Scalar& lambda);

struct ObstructionReport {
    Scalar lambda;
    std::vector<std::string> pi4_V_basis, pi4_W_basis;
    std::vector<std::vector<Scalar>> pi4_matrix;  // columns: images of the pi^4(V) basis in the pi^4(W) basis
    std::vector<std::string> kernel_basis;        // ker(pi^4_dR -> pi^4_A) of Lambda W
    Scalar coeff_p3, coeff_p4;                    // [beta]-coefficients
    bool obstructed = false;
    std::vector<CheckLine> checks;
};
ObstructionReport obstruction(const Scalar& lambda);

struct MhsReport {
    Scalar lambda;
    std::vector<Scalar> cls;        // lambda pr xi on p_1..p_4, in C = <beta>
    std::vector<Scalar> residue;    // entries not in Q (others zeroed)
    bool trivial = false;
    std::vector<CheckLine> checks;
};
MhsReport mhs_extension(const Scalar& lambda);

struct FlagReport {
    std::vector<int> betti;
    KoszulModel rational, complex;
    std::vector<CheckLine> checks;
    bool ok = false;
};
FlagReport flag_certificate(int N = 9);

}  // namespace pluri
