#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pluri/scalar.hpp"

namespace pluri {

/* sparse vector: (index, value) pairs sorted by index, no explicit zeros */
using SparseVec = std::vector<std::pair<int, Scalar>>;
using DenseMatrix = std::vector<std::vector<Scalar>>;

namespace vec {
SparseVec unit(int i);
SparseVec axpy(const SparseVec& v, const Scalar& c, const SparseVec& w);  // v + c w
SparseVec scale(const SparseVec& v, const Scalar& c);
SparseVec add(const SparseVec& v, const SparseVec& w);
SparseVec sub(const SparseVec& v, const SparseVec& w);
Scalar dot(const SparseVec& v, const SparseVec& w);
Scalar at(const SparseVec& v, int i);
SparseVec shift(const SparseVec& v, int offset);
SparseVec slice(const SparseVec& v, int lo, int hi, int offset);  // entries in [lo,hi), reindexed by -offset
SparseVec conj(const SparseVec& v);
SparseVec from_dense(const std::vector<Scalar>& d);
std::vector<Scalar> to_dense(const SparseVec& v, int dim);
}  // namespace vec

/* A linear map stored as the images of the source basis vectors. */
struct LinearMap {
    int src = 0, dst = 0;
    std::vector<SparseVec> cols;

    LinearMap() = default;
    LinearMap(int s, int d) : src(s), dst(d), cols(s) {}
    static LinearMap zero(int s, int d) { return LinearMap(s, d); }
    static LinearMap identity(int n);
    SparseVec apply(const SparseVec& v) const;
    LinearMap compose(const LinearMap& inner) const;  // this o inner
    LinearMap transpose() const;
    bool is_zero() const;
    DenseMatrix dense() const;
};

/* Row echelon basis of a subspace.  Every stored row has its lowest index as
   pivot with pivot coefficient 1; pivots are distinct.  Optional tracking
   vectors record which combination of inserted vectors produced a row. */
class Echelon {
public:
    Echelon() = default;

    /* reduces v (and t alongside) until no entry sits on a pivot;
       returns true when v became zero */
    bool reduce(SparseVec& v, SparseVec* t = nullptr) const;
    bool contains(SparseVec v) const { return reduce(v); }
    /* inserts v; returns false if v was dependent */
    bool insert(SparseVec v, SparseVec t = {});
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    std::vector<SparseVec> rows_, track_;
    std::vector<int> pivots_;
    std::map<int, int> where_;
};

struct KernelImage {
    std::vector<SparseVec> kernel;   // basis, in source coordinates
    std::vector<SparseVec> image;    // independent columns actually hit (echelon rows)
    int rank = 0;
};

KernelImage kernel_image(const LinearMap& m);
std::vector<SparseVec> kernel(const LinearMap& m);
int rank(const LinearMap& m);
int rank_of(const std::vector<SparseVec>& vs);

/* map into a direct sum: v -> (a v, b v) */
LinearMap stack(const LinearMap& a, const LinearMap& b);

struct SolveResult {
    std::optional<SparseVec> solution;  // m x = b
    std::optional<SparseVec> certificate;  // y with y.m = 0, y.b != 0
};
SolveResult solve(const LinearMap& m, const SparseVec& b);

/* Z / B where B is contained in span Z.  Representatives are chosen among the
   given numerator basis vectors in order (first independent ones win). */
class Quotient {
public:
    Quotient() = default;
    Quotient(const std::vector<SparseVec>& numerator, const std::vector<SparseVec>& denominator);

    int dim() const { return static_cast<int>(reps_.size()); }
    const std::vector<SparseVec>& reps() const { return reps_; }
    /* coordinates of w in the rep basis, nullopt if w is not in span(B) + span(reps) */
    std::optional<SparseVec> coords(const SparseVec& w) const;
    bool is_zero_class(const SparseVec& w) const { return denom_.contains(w); }

private:
    std::vector<SparseVec> reps_;
    Echelon denom_;
    Echelon full_;
};

}  // namespace pluri
