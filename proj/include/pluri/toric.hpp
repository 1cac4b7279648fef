#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pluri/algebra.hpp"

namespace pluri {

struct Fan {
    std::string name;
    int n = 0;                             // ambient rank
    std::vector<std::vector<long>> rays;   // primitive integer vectors
    std::vector<std::vector<int>> cones;   // maximal cones, 0-based ray indices
    bool complete = false;
};

/* nullopt when valid; otherwise the first violated condition */
std::optional<std::string> check_fan(const Fan& f);

/* minimal subsets of rays not contained in a common cone, sorted */
std::vector<std::vector<int>> minimal_nonfaces(const Fan& f);

/* C[tau_1..tau_m]/(SR), tau_i at (1,1), all tau_i fixed by sigma */
Algebra equivariant_cohomology(const Fan& f, int truncation);

/* linear forms theta_j = sum_i <e_j,u_i> tau_i as elements of the SR algebra */
std::vector<Element> linear_forms(const Fan& f, const Algebra& sr);

/* SR ring modulo the linear forms; throws when the forms are dependent */
Algebra ordinary_cohomology(const Fan& f, int truncation);

/* total-degree dimensions 0..max_degree of a presented algebra */
std::vector<int> hilbert_series(const Algebra& a, int max_degree);

/* Betti numbers b_0, b_2, ..., b_2n */
std::vector<int> betti_numbers(const Fan& f);

/* h-vector from the face counts of the fan (f-vector of the simplicial complex) */
std::vector<long> h_vector(const Fan& f);

struct FreenessReport {
    bool verdict = false;
    std::vector<long> equivariant;  // Hilb(H_T) coefficients in degrees 0..N (even degrees carry data)
    std::vector<long> predicted;    // Hilb(H) / (1 - t^2)^n
    std::optional<int> first_mismatch;
};
FreenessReport freeness_check(const Fan& f, int N);

/* A tensor S: for each image g_j adjoin s_j at (0,0) (weight = weight of g_j),
   ds_j, dbs_j with i del delbar s_j = g_j and sigma fixing s_j */
Algebra adjoin_contractible(const Algebra& a, const std::vector<Element>& images,
                            const std::string& prefix = "s");

}  // namespace pluri
