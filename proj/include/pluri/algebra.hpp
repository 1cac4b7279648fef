#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pluri/bicomplex.hpp"
#include "pluri/linalg.hpp"
#include "pluri/scalar.hpp"

namespace pluri {

/* Singly graded algebras put a generator of degree k at (k,0) and store d in
   the del slot, so every algebra is handled by the same code path. */
struct Generator {
    std::string name;
    int p = 0, q = 0;
    int weight = 0;    // positive; truncation bounds the weight of monomials
    int partner = -1;  // index of sigma(g) when paired, -1 when fixed by sigma
    int degree() const { return p + q; }
    bool odd() const { return (p + q) % 2 != 0; }
    Bideg bideg() const { return {p, q}; }
};

/* exponent vector without trailing zeros; odd generators have exponent <= 1 */
struct Mono {
    int p = 0, q = 0, w = 0;
    std::vector<uint8_t> e;
    int degree() const { return p + q; }
    Bideg bideg() const { return {p, q}; }
    friend bool operator<(const Mono& a, const Mono& b) {
        if (a.p + a.q != b.p + b.q) return a.p + a.q < b.p + b.q;
        if (a.p != b.p) return a.p < b.p;
        return a.e < b.e;
    }
    friend bool operator==(const Mono& a, const Mono& b) { return a.p == b.p && a.q == b.q && a.e == b.e; }
};

struct Element {
    std::map<Mono, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
    void add_term(const Mono& m, const Scalar& c);
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(const Scalar& c) const;
    Element conj_coeffs() const;
    /* bidegree of the terms when homogeneous */
    std::optional<Bideg> bideg() const;
    bool homogeneous() const;
    FieldTag tag() const;
};

struct AlgebraError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationReport {
    bool ok = true;
    std::string witness;  // first failing generator / relation with a message
};

class Algebra {
public:
    Algebra(bool bigraded = false, int truncation = 8) : bigraded_(bigraded), N_(truncation) {}

    bool bigraded() const { return bigraded_; }
    int truncation() const { return N_; }
    void set_truncation(int n);
    FieldTag field() const { return field_; }
    void set_field(FieldTag t) { field_ = t; }
    bool has_real_structure() const { return real_; }
    void set_real_structure(bool r) { real_ = r; }

    /* generators */
    int add_generator(const std::string& name, int p, int q = 0, int weight = 0);
    void pair_generators(int a, int b);
    int index(const std::string& name) const;
    std::optional<int> find(const std::string& name) const;
    const std::vector<Generator>& gens() const { return gens_; }
    const Generator& gen(int i) const { return gens_.at(i); }
    int ngens() const { return static_cast<int>(gens_.size()); }

    /* differentials on generators; d of a singly graded algebra is set_del */
    void set_del(int g, Element v);
    void set_delbar(int g, Element v);
    void set_d(int g, Element v) { set_del(g, std::move(v)); }
    const Element& del_of(int g) const { return del_.at(g); }
    const Element& delbar_of(int g) const { return delbar_.at(g); }

    void add_relation(Element r);
    const std::vector<Element>& relations() const { return relations_; }

    /* elements */
    Element one() const;
    Element constant(const Scalar& s) const;
    Element g(int i) const;
    Element g(const std::string& name) const { return g(index(name)); }
    Element mul(const Element& a, const Element& b, bool* truncated = nullptr) const;
    Element pow(const Element& a, int k) const;
    Mono mono_mul(const Mono& a, const Mono& b, int& sign) const;  // sign 0 means zero
    Element del(const Element& x) const;
    Element delbar(const Element& x) const;
    Element d(const Element& x) const;  // del + delbar
    Element sigma(const Element& x) const;
    /* odd derivation with the given values on generators */
    Element derivation(const Element& x, const std::vector<Element>& on_gens) const { return leibniz(x, on_gens); }
    Element reduce(const Element& x) const;  // normal form modulo relations
    bool is_zero_mod(const Element& x) const { return reduce(x).is_zero(); }
    Element parse(const std::string& text) const;
    std::string str(const Element& x) const;
    std::string mono_str(const Mono& m) const;
    int weight_of(const std::vector<uint8_t>& e) const;

    /* per-bidegree linear algebra */
    const std::vector<Mono>& basis(Bideg b) const;  // standard monomials
    int dim(Bideg b) const { return static_cast<int>(basis(b).size()); }
    SparseVec coords(const Element& x, Bideg b) const;
    Element from_coords(const SparseVec& v, Bideg b) const;
    LinearMap del_matrix(Bideg b) const;
    LinearMap delbar_matrix(Bideg b) const;
    LinearMap sigma_matrix(Bideg b) const;  // antilinear part: (p,q) -> (q,p)
    std::vector<Bideg> bidegrees(int total) const;  // bidegrees of that total degree with dim > 0
    /* all monomials of a bidegree (weight <= N), descending */
    const std::vector<Mono>& monomials(Bideg b) const;

    /* true when every differential term has the weight of its generator */
    bool weight_homogeneous() const;
    bool degree_weights() const;
    /* largest total degree D for which the window <= D is certified */
    std::optional<int> max_window() const;
    Bicomplex underlying_bicomplex(int window) const;

    ValidationReport validate() const;

private:
    struct DegreeData {
        std::vector<Mono> monos;  // descending
        std::map<std::vector<uint8_t>, int> index;
        Echelon ideal;
        std::vector<int> std_of;  // position -> standard index or -1
        std::vector<Mono> standard;
    };

    bool bigraded_;
    int N_;
    FieldTag field_ = FieldTag::Q;
    bool real_ = false;
    std::vector<Generator> gens_;
    std::map<std::string, int> by_name_;
    std::vector<Element> del_, delbar_;
    std::vector<Element> relations_;
    mutable std::map<Bideg, std::shared_ptr<DegreeData>> cache_;

    void invalidate() { cache_.clear(); }
    const DegreeData& data(Bideg b) const;
    void enumerate(Bideg b, std::vector<Mono>& out) const;
    Element leibniz(const Element& x, const std::vector<Element>& dg) const;
    SparseVec full_coords(const Element& x, const DegreeData& dd) const;
};

/* generator bidegree helper for building elements from single generators */
Mono make_mono(const Algebra& a, const std::vector<std::pair<int, int>>& gen_exp);

struct Morphism {
    const Algebra* src = nullptr;
    const Algebra* dst = nullptr;
    std::vector<Element> images;  // per source generator, in dst

    Element apply(const Element& x) const;
    /* blocks per bidegree for the window, dst bidegrees matched to src */
    BicomplexMap bicomplex_map(const Bicomplex& s, const Bicomplex& t, int window) const;
};

struct MorphismReport {
    bool ok = true;
    std::string witness;
};
/* check_sigma compares f o sigma with sigma o f on generators */
MorphismReport check_morphism(const Morphism& f, bool check_sigma = false);

/* same generators with merged grading and d = del + delbar */
Algebra totalize(const Algebra& a);
/* sigma-fixed points of the totalization: pairs (g, g') become re_g = g + g'
   and im_g = i(g - g'); coefficients must land in the conjugation-fixed field */
Algebra real_points(const Algebra& a);
/* isomorphism real_points(a) -> totalize(a) (over the complexified field) */
Morphism real_points_inclusion(const Algebra& rp, const Algebra& tot);

}  // namespace pluri
