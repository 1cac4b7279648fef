#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pluri/algebra.hpp"

namespace pluri {

/* a free model together with its map to a target; owns both algebras */
struct ModelMap {
    std::shared_ptr<Algebra> model, target;
    std::vector<Element> images;  // per model generator, in target

    Morphism morphism() const { return {model.get(), target.get(), images}; }
};

/* singly graded (or totalized) dga helpers: H^k as a quotient at (k,0), induced maps */
Quotient dga_cohomology(const Algebra& a, int k);
LinearMap dga_induced(const Morphism& f, int k);
/* first degree <= through where H(f) is not bijective */
std::optional<int> dga_qiso_failure(const Morphism& f, int through);
bool decomposable(const Element& x);  // no monomial of word length <= 1
Element linear_part(const Element& x);

struct MinimalModel : ModelMap {
    std::vector<std::string> log;          // one line per added generator
    std::map<int, std::vector<int>> by_degree;  // degree -> generator indices
    int certified = 0;                     // quasi-isomorphism through this degree, injective one above
};

/* Sullivan minimal model of a simply connected cdga with H^0 = k, generators through degree N-1 */
MinimalModel minimal_model(const Algebra& a, int N);

struct KoszulModel : ModelMap {
    bool verified = false;
    int through = 0;
    std::string failure;
};

struct RegularSequenceReport {
    std::vector<int> degrees;         // relation degrees
    std::vector<long> quotient;       // Hilb(k[x]/(r)) coefficients 0..N
    std::vector<long> product;        // Hilb(k[x]) * prod (1 - t^d_i)
    bool verdict = false;
    std::optional<int> first_mismatch;
    int N = 0;
};
/* a: polynomial generators (even degrees) with relations */
RegularSequenceReport is_regular_sequence(const Algebra& a, int N);

/* K = k[x] (x) Lambda(p_i), d p_i = r_i; verified through degree N-1 */
KoszulModel koszul_model(const Algebra& h, int N);
/* K = C[X] (x) Lambda(P_j, del P_j, delbar P_j) with i del delbar P_j = R_j; verified on the window N-1 */
KoszulModel bigraded_koszul_model(const Algebra& h, int N);

struct HomotopyData {
    bool bigraded = false;
    std::vector<int> generators;  // generator indices in basis order of the bicomplex
    Bicomplex linear;             // W with linear parts; singly graded data sits at (k,0)
    std::map<Bideg, std::vector<int>> basis;  // bidegree -> generator indices
};
/* throws AlgebraError naming the offending generator when not minimal */
HomotopyData homotopy(const Algebra& m);
HomotopyData homotopy_bicomplex(const Algebra& w);

struct MasseyResult {
    bool defined = false;
    std::string failure;                   // when a product does not vanish
    Element representative;                // s w - (-1)^|u| u t
    std::vector<Element> indeterminacy;    // spanning set of u H + H w in that degree
    bool vanishes = false;
};
/* u, v, w closed; window bounds the degrees used for solving */
MasseyResult triple_massey(const Algebra& a, const Element& u, const Element& v, const Element& w);

/* Completes a supplied bigraded model against a target with zero differentials:
   adjoins squares for Bott-Chern kernel classes and zigzags for Aeppli kernel
   classes, sigma-compatibly, degree by degree until the map is a pluripotential
   quasi-isomorphism on the window. */
struct ModelCompletion : ModelMap {
    bool ok = false;
    std::string failure;
    std::vector<std::string> log;
    int added = 0;
};
ModelCompletion complete_pluripotential_model(const Algebra& w, const Algebra& target, const std::vector<Element>& images,
                                              int window, const std::string& prefix = "W");

}  // namespace pluri
