#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pluri/linalg.hpp"

namespace pluri {

using Bideg = std::pair<int, int>;

enum class Flavor { dR, Del, Delbar, BC, A };
std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);
inline const Flavor kAllFlavors[] = {Flavor::dR, Flavor::Del, Flavor::Delbar, Flavor::BC, Flavor::A};

struct InvalidBicomplex : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Finite bigraded space with anticommuting differentials.  Maps are keyed by
   their source bidegree; a missing key means the zero map.  sigma, when
   present, is antilinear: sigma(v) = S conj(v). */
class Bicomplex {
public:
    std::map<Bideg, int> dims;
    std::map<Bideg, LinearMap> del, delbar;
    std::optional<std::map<Bideg, LinearMap>> sigma;

    int dim(Bideg b) const;
    LinearMap del_at(Bideg b) const;
    LinearMap delbar_at(Bideg b) const;
    LinearMap ddbar_at(Bideg b) const;  // del o delbar, (p,q) -> (p+1,q+1)
    SparseVec apply_sigma(Bideg b, const SparseVec& v) const;

    std::vector<Bideg> support() const;  // bidegrees of positive dimension
    std::vector<int> total_degrees() const;
    /* bidegrees of total degree k with their offsets inside the total space */
    std::vector<std::pair<Bideg, int>> total_layout(int k) const;
    int total_dim(int k) const;
    LinearMap d_total(int k) const;  // total degree k -> k+1
    SparseVec embed(Bideg b, const SparseVec& v) const;  // into total degree p+q

    /* nullopt when valid, otherwise a message naming the failing bidegree */
    std::optional<std::string> check() const;
    void validate() const;  // throws InvalidBicomplex
};

/* blocks keyed by bidegree, source dim -> target dim */
struct BicomplexMap {
    std::map<Bideg, LinearMap> blocks;
    bool real = false;

    LinearMap at(Bideg b, int src, int dst) const;
};
std::optional<std::string> check_map(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f);

struct CohomologySpace {
    Flavor flavor;
    std::map<Bideg, Quotient> spaces;  // for dR the key is (k, 0)

    int dim(Bideg b) const;
    int dim_total(int k) const;  // sum over p+q=k (or the dR degree)
    std::map<Bideg, int> table() const;
};

/* max_total limits the computed degrees (window); nullopt means everything */
CohomologySpace cohomology(const Bicomplex& b, Flavor f, std::optional<int> max_total = std::nullopt);

struct DdbarCertificate {
    bool verdict = false;       // H_BC -> H_dR injective on all considered degrees
    bool count_verdict = false; // h_BC + h_A = 2 b_k on all considered degrees
    std::map<int, std::array<int, 3>> table;  // k -> (h_BC, h_A, b_k)
    std::optional<int> witness_degree;
    std::optional<SparseVec> witness;  // BC cocycle (total coordinates) whose dR class vanishes
};
DdbarCertificate ddbar_property(const Bicomplex& b, std::optional<int> max_total = std::nullopt);

/* induced map per (bi)degree; dR keyed by (k,0) */
std::map<Bideg, LinearMap> induced_map(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f, Flavor fl,
                                       std::optional<int> max_total = std::nullopt);

struct QisoCertificate {
    bool verdict = false;
    std::vector<std::pair<Flavor, Bideg>> failures;
    bool fast_path_applicable = false;
    bool fast_path_verdict = false;  // H_del(f) and H_delbar(f) isomorphisms
};
QisoCertificate is_pluripotential_qiso(const Bicomplex& s, const Bicomplex& t, const BicomplexMap& f,
                                       std::optional<int> max_total = std::nullopt);

struct DdbarSolve {
    std::optional<SparseVec> solution;     // at (p-1,q-1)
    std::optional<SparseVec> certificate;  // functional on B^{p,q}
};
DdbarSolve solve_ddbar(const Bicomplex& b, Bideg at, const SparseVec& x);

struct DSolve {
    bool ok = false;
    SparseVec beta;  // at (p,q)
    std::string failure;
    std::optional<SparseVec> witness;
};
/* a = alpha + alpha' with alpha at (p+1,q), alpha' at (p,q+1); returns beta at (p,q)
   with d beta = a.  check_ddbar runs the ddbar_property precondition on
   degrees <= max_total. */
DSolve solve_d_bidegree(const Bicomplex& b, Bideg pq, const SparseVec& alpha, const SparseVec& alpha_prime,
                        bool check_ddbar = true, std::optional<int> max_total = std::nullopt);

}  // namespace pluri
